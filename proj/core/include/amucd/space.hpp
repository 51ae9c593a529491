#pragma once

#include "amucd/types.hpp"

namespace amucd {

enum class SpaceKind { Hardy, PaleyWiener };

/// A reproducing kernel Hilbert space backend.
///
/// Hardy is H^2 of the open unit disc with the Szego kernel
/// K(z, conj(w)) = 1/(1 - conj(w) z). PaleyWiener is W(pi/h), the entire
/// functions of exponential type pi/h that are square integrable on the real
/// line, with the sinc kernel K_h(z, conj(w)) = sin((pi/h)(z - conj(w))) /
/// (pi (z - conj(w))).
class SpaceModel {
public:
    static constexpr int kDefaultMaxOrder = 8;

    static SpaceModel hardy(int max_derivative_order = kDefaultMaxOrder);
    static SpaceModel paley_wiener(double h = 1.0,
                                   int max_derivative_order = kDefaultMaxOrder);

    SpaceKind kind() const noexcept { return kind_; }

    /// Band parameter; meaningful for PaleyWiener only (1 by default).
    double h() const noexcept { return h_; }

    int max_derivative_order() const noexcept { return max_order_; }

    bool contains(Complex p) const noexcept;

    /// Distance-to-boundary surrogate: 1-|z| for Hardy, 1/(1+|z|) for
    /// Paley-Wiener. Tends to zero exactly when p approaches the boundary
    /// (|z| -> 1^- resp. |z| -> infinity).
    double boundary_distance(Complex p) const noexcept;

    bool operator==(const SpaceModel&) const = default;

private:
    SpaceModel(SpaceKind kind, double h, int max_order)
        : kind_(kind), h_(h), max_order_(max_order) {}

    SpaceKind kind_;
    double h_;
    int max_order_;
};

/// d^a/dp^a d^b/d(conj q)^b K(p, conj(q)): the mixed kernel derivative.
/// This is the inner product of the dictionary elements at (q, b) and (p, a):
/// <K~(., conj q; b), K~(., conj p; a)>. Hermitian in the sense
/// kernel_mixed_derivative(p,q,a,b) == conj(kernel_mixed_derivative(q,p,b,a)).
Complex kernel_mixed_derivative(const SpaceModel& space, Complex p, Complex q,
                                int a, int b);

void require_in_domain(const SpaceModel& space, Complex p);
void require_order(const SpaceModel& space, int order);
void validate_element(const SpaceModel& space, const DictionaryElement& e);

}  // namespace amucd
