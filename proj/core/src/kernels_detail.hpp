#pragma once

#include <algorithm>
#include <cmath>

#include "amucd/detail/numerics.hpp"

// Closed-form kernel derivative engines shared by space.cpp and
// paley_wiener.cpp. All derivatives are with respect to p (holomorphic slot)
// and conj(q) (anti-holomorphic slot).

namespace amucd::detail {

inline constexpr double kPi = 3.14159265358979323846;

/// d^a/dz^a d^b/d(wbar)^b (1 - wbar z)^{-1}, z = p, wbar = conj(q).
/// Leibniz expansion of d^a/dz^a [ b! z^b (1 - wbar z)^{-(b+1)} ]:
///   sum_{i=0}^{min(a,b)} C(a,i) b!/(b-i)! (a+b-i)! z^{b-i} wbar^{a-i} s^{a+b+1-i},
/// s = 1/(1 - wbar z).
inline Complex szego_mixed_derivative(Complex p, Complex q, int a, int b) {
    const Complex z = p;
    const Complex wb = std::conj(q);
    const Complex s = 1.0 / (1.0 - wb * z);
    Complex sum = 0.0;
    const int imax = std::min(a, b);
    for (int i = 0; i <= imax; ++i) {
        const double coeff =
            binomial(a, i) * falling_factorial(b, i) * factorial(a + b - i);
        sum += coeff * pow_int(z, b - i) * pow_int(wb, a - i) *
               pow_int(s, a + b + 1 - i);
    }
    return sum;
}

/// m-th derivative of g(x) = sin(x)/x, entire. Series about 0 for moderate
/// |x| (the closed form cancels catastrophically there once m > 0), Leibniz
/// closed form otherwise. The switch point grows with m because the closed
/// form's leading term scales like m!/x^{m+1}.
inline Complex sinc_derivative(int m, Complex x) {
    const double ax = std::abs(x);
    if (ax < 0.5 * m + 3.0) {
        // g^{(m)}(x) = sum over l = m%2, m%2+2, ... of
        //   (-1)^{(l+m)/2} x^l / (l! (l+m+1))
        const int l0 = m % 2;
        Complex term = (l0 == 0) ? Complex(1.0) : x;
        double sign = (((l0 + m) / 2) % 2 == 0) ? 1.0 : -1.0;
        const Complex x2 = x * x;
        Complex sum = 0.0;
        for (int l = l0; l <= 512; l += 2) {
            sum += sign * term / double(l + m + 1);
            sign = -sign;
            term *= x2 / double((l + 1) * (l + 2));
            if (l >= ax && std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    // g^{(m)}(x) = sum_j C(m,j) sin(x + j pi/2) (-1)^{m-j} (m-j)! x^{-(m-j+1)}
    const Complex sx = std::sin(x);
    const Complex cx = std::cos(x);
    const Complex dsin[4] = {sx, cx, -sx, -cx};
    const Complex xinv = 1.0 / x;
    Complex xinv_pow = pow_int(xinv, m + 1);
    Complex sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
        sum += binomial(m, j) * factorial(m - j) * sgn * dsin[j % 4] * xinv_pow;
        xinv_pow *= x;
    }
    return sum;
}

/// d^a/dp^a d^b/d(conj q)^b K_h(p, conj q) for the sinc kernel
/// K_h(z, wbar) = sin((pi/h)(z - wbar)) / (pi (z - wbar)). The kernel depends
/// on u = p - conj(q) only, so the mixed derivative is (-1)^b phi^{(a+b)}(u)
/// with phi(u) = (c/pi) g(c u), c = pi/h.
inline Complex sinc_mixed_derivative(double h, Complex p, Complex q, int a, int b) {
    const double c = kPi / h;
    const Complex u = p - std::conj(q);
    const int m = a + b;
    double scale = c / kPi;
    for (int i = 0; i < m; ++i) scale *= c;
    Complex v = scale * sinc_derivative(m, c * u);
    return (b % 2 == 0) ? v : -v;
}

}  // namespace amucd::detail
