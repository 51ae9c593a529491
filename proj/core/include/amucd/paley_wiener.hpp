#pragma once

#include "amucd/signal.hpp"

namespace amucd {

/// K_h(z, conj(w)) = sin((pi/h)(z - conj(w))) / (pi (z - conj(w))), with the
/// removable singularity on the diagonal handled by a series switch.
Complex sinc_kernel(double h, Complex z, Complex w);

/// sum_{|j| <= J} f(jh) K_h(z, jh) / K_h(0, 0): the truncated Shannon series.
Complex shannon_partial_sum(const SignalSpec& f, double h, int j_max, Complex z);

/// Wraps band-limited spectrum samples as a SignalSpec. Throws BandViolation
/// when any |t| exceeds pi/h.
SignalSpec spectrum_to_signal(std::vector<SpectrumSample> samples, double h);

/// sqrt((e^{2 pi y} - e^{-2 pi y}) / (4 pi y)) = sqrt(K_1(z, conj z)) for
/// z = x + iy; evaluates the y -> 0 limit 1 by series.
double pw_growth_denominator(double y);

}  // namespace amucd
