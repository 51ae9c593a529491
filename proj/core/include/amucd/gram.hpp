#pragma once

#include <vector>

#include "amucd/signal.hpp"

namespace amucd {

/// Hermitian system A_n over an ordered list of dictionary elements together
/// with its incremental orthonormalization state.
///
/// matrix[j][k] = kernel_mixed_derivative(center_j, center_k, order_j, order_k)
///             = <K~_k, K~_j>.
/// ortho_coords[k] holds the k+1 coordinates of the orthonormal basis
/// function beta~_k in the K~ basis (Gram-Schmidt in the A-metric; the
/// coordinate matrix C satisfies C^H A C = I and is the inverse of the upper
/// Cholesky factor of A).
struct GramSystem {
    SpaceModel space;
    std::vector<DictionaryElement> elements;
    std::vector<std::vector<Complex>> matrix;
    std::vector<std::vector<Complex>> ortho_coords;
    std::vector<double> residual_norms;

    std::size_t size() const noexcept { return elements.size(); }
};

GramSystem make_gram(const SpaceModel& space);
GramSystem build_gram(const SpaceModel& space,
                      const std::vector<DictionaryElement>& elements);

/// The dictionary element denoted by a raw point given the current system:
/// a center within the snap radius (1e-9) of an accepted center is treated
/// as coincident and the derivative order raised accordingly.
DictionaryElement snap_candidate(const GramSystem& state, Complex p);

/// Cross data for extending the system by one element, without committing.
struct ExtensionProbe {
    std::vector<Complex> projections;  // <K~_cand, beta~_j>, j = 0..n-1
    double diag = 0.0;                 // a_{n+1,n+1}
    double schur = 0.0;                // ||alpha_{n+1}||^2 = diag - sum |proj|^2
    bool dependent = false;            // schur below the independence threshold
};

ExtensionProbe probe_extension(const GramSystem& state,
                               const DictionaryElement& e);

/// Appends e (after coincidence snapping) and returns ||alpha_{n+1}||.
/// Throws LinearDependenceError and leaves the system unchanged when the
/// relative Schur complement falls below 1e-10.
double orthonormal_extend(GramSystem& state, DictionaryElement e);

struct Decomposition {
    std::vector<DictionaryElement> elements;
    std::vector<Complex> kernel_coeffs;  // f* = sum c_k K~(., conj p_k; m_k)
    std::vector<Complex> ortho_coeffs;   // <f, beta~_k>
    std::vector<double> energy_track;    // ||f||^2, then residual after each element
    double norm_sq_f = 0.0;
};

/// Orthogonal projection of f onto the span of the system's elements.
/// Interpolation contract: the moments of the projection at every accepted
/// element match those of f.
Decomposition project(const SpaceModel& space, const SignalSpec& f,
                      const GramSystem& state);

/// ||f||^2 - sum_k |<f, beta~_k>|^2 given moments[j] = <f, K~_j>.
/// Clamped at zero within -1e-10; larger negativity throws
/// NumericalConsistency.
double residual_energy(const SignalSpec& f, const GramSystem& state,
                       const std::vector<Complex>& moments);

/// f*(p) = sum_k kernel_coeffs[k] * d^{m_k}/d(conj q)^{m_k} K(p, conj q)|_{q=p_k}.
Complex reconstruct_at(const SpaceModel& space, const Decomposition& d,
                       Complex p);

/// beta~_k evaluated at p (k is 0-based).
Complex evaluate_basis(const GramSystem& state, std::size_t k, Complex p);

}  // namespace amucd
