#pragma once

#include <vector>

#include "amucd/types.hpp"

namespace amucd::detail {

double factorial(int n);
double falling_factorial(int n, int k);  // n! / (n-k)!
double binomial(int n, int k);

Complex pow_int(Complex z, int k);  // k >= 0

struct QuadratureNode {
    double x = 0.0;  // abscissa on [-1, 1]
    double w = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per n.
const std::vector<QuadratureNode>& gauss_legendre(int n);

}  // namespace amucd::detail
