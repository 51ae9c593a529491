#pragma once

#include <variant>
#include <vector>

#include "amucd/space.hpp"

namespace amucd {

/// f(z) = sum c_n z^n. Hardy only; the monomials are orthonormal there.
struct TaylorPolynomial {
    std::vector<Complex> coeffs;
};

struct KernelTerm {
    DictionaryElement element;
    Complex coeff;
};

/// f = sum coeff_k K~(., conj(center_k); order_k). Valid in either space.
struct KernelCombination {
    std::vector<KernelTerm> terms;
};

struct SpectrumSample {
    double t = 0.0;
    Complex value;
};

/// Samples of F on [-pi/h, pi/h], interpreted piecewise-linearly; the signal
/// is f(z) = (1/2pi) integral F(t) exp(-izt) dt. Paley-Wiener only.
struct Spectrum {
    std::vector<SpectrumSample> samples;
};

struct SignalSpec {
    SpaceKind kind = SpaceKind::Hardy;
    double h = 1.0;
    std::variant<TaylorPolynomial, KernelCombination, Spectrum> payload;

    static SignalSpec taylor(std::vector<Complex> coeffs);
    static SignalSpec kernels(SpaceKind kind, double h,
                              std::vector<KernelTerm> terms);
    static SignalSpec spectrum(double h, std::vector<SpectrumSample> samples);
};

/// Throws SpaceMismatch unless f belongs to `space` (same kind, same h).
void require_same_space(const SpaceModel& space, const SignalSpec& f);

/// <f, K~(., conj(center); order)> = f^(order)(center), in closed form for
/// Taylor and kernel-combination signals and by quadrature for spectra.
Complex signal_moment(const SpaceModel& space, const SignalSpec& f,
                      const DictionaryElement& e);

double signal_norm_sq(const SpaceModel& space, const SignalSpec& f);

/// Pointwise evaluation; identical to the order-0 moment at p.
Complex signal_eval(const SpaceModel& space, const SignalSpec& f, Complex p);

}  // namespace amucd
