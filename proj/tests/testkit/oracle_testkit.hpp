#pragma once

// Brute-force oracles for validating the closed-form paths. Test-surface
// only: nothing here may be linked into the CLI.

#include <functional>
#include <vector>

#include "amucd/gram.hpp"
#include "amucd/hardy.hpp"

namespace amucd::testkit {

struct OracleSolution {
    std::vector<Complex> coefficients;
    double residual = 0.0;
};

/// Normal equations A c = F solved by a dense Hermitian factorization with a
/// full-pivot fallback; residual through the energy identity. Independent of
/// the incremental Gram-Schmidt path in gram.cpp.
OracleSolution least_squares_oracle(const SpaceModel& space, const SignalSpec& f,
                                    const std::vector<DictionaryElement>& elements);

/// Iterated central differences (real steps in both slots) estimating
/// d^a/dp^a d^b/d(conj q)^b K(p, conj q) from order-(0,0) kernel values,
/// with O(step^2) error.
Complex finite_difference_derivative(const SpaceModel& space, Complex p, Complex q,
                                     int a, int b, double step);

/// A function presented to the quadrature oracle: boundary values on the
/// unit circle (Hardy) or the spectrum on [-pi/h, pi/h] (Paley-Wiener).
struct Representation {
    std::function<Complex(Complex)> boundary;
    std::function<Complex(double)> spectrum;
};

Representation represent(const SpaceModel& space, const SignalSpec& f);
Representation represent(const SpaceModel& space, const DictionaryElement& e);
Representation represent(const BlaschkeSystem& sys, std::size_t j);  // 1-based

/// <f, g> by 512-point trapezoid on the circle (Hardy) or composite
/// Gauss-Legendre on the band (Paley-Wiener).
Complex quadrature_inner_product(const SpaceModel& space, const Representation& f,
                                 const Representation& g);

}  // namespace amucd::testkit
