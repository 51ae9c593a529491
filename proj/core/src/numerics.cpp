#include "amucd/detail/numerics.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace amucd::detail {

namespace {

constexpr int kMaxFactorial = 170;  // largest n! representable in double

const std::array<double, kMaxFactorial + 1>& factorial_table() {
    static const auto table = [] {
        std::array<double, kMaxFactorial + 1> t{};
        t[0] = 1.0;
        for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * n;
        return t;
    }();
    return table;
}

std::vector<QuadratureNode> compute_gauss_legendre(int n) {
    // Newton iteration on P_n, starting from the Chebyshev estimate.
    std::vector<QuadratureNode> nodes(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = {-x, w};
        nodes[n - 1 - i] = {x, w};
    }
    return nodes;
}

}  // namespace

double factorial(int n) { return factorial_table()[n]; }

double falling_factorial(int n, int k) {
    if (k > n) return 0.0;
    return factorial(n) / factorial(n - k);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Complex pow_int(Complex z, int k) {
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

const std::vector<QuadratureNode>& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::vector<QuadratureNode>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

}  // namespace amucd::detail
