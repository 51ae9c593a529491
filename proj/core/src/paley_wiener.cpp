#include "amucd/paley_wiener.hpp"

#include <cmath>

#include "kernels_detail.hpp"

namespace amucd {

Complex sinc_kernel(double h, Complex z, Complex w) {
    if (!(h > 0.0))
        throw std::invalid_argument("Paley-Wiener band parameter h must be positive");
    return detail::sinc_mixed_derivative(h, z, w, 0, 0);
}

Complex shannon_partial_sum(const SignalSpec& f, double h, int j_max, Complex z) {
    if (j_max < 1) throw std::invalid_argument("shannon_partial_sum needs J >= 1");
    const SpaceModel space = SpaceModel::paley_wiener(h);
    require_same_space(space, f);
    // The integer-translate sinc system is orthogonal with
    // <K_h(., jh), K_h(., kh)> = delta_{jk} K_h(0,0) = delta_{jk} / h, so the
    // partial sum carries the normalization h.
    Complex acc = 0.0;
    for (int j = -j_max; j <= j_max; ++j) {
        const Complex sample = signal_eval(space, f, Complex(j * h, 0.0));
        acc += sample * sinc_kernel(h, z, Complex(j * h, 0.0)) * h;
    }
    return acc;
}

SignalSpec spectrum_to_signal(std::vector<SpectrumSample> samples, double h) {
    return SignalSpec::spectrum(h, std::move(samples));
}

double pw_growth_denominator(double y) {
    const double t = 2.0 * detail::kPi * y;
    double ratio;
    if (std::abs(y) < 1e-4) {
        const double t2 = t * t;
        ratio = 1.0 + t2 / 6.0 + t2 * t2 / 120.0;
    } else {
        ratio = std::sinh(t) / t;
    }
    return std::sqrt(ratio);
}

}  // namespace amucd
