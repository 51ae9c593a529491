#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_testkit.hpp"
#include "test_util.hpp"

using namespace amucd;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("szego kernel values and derivatives") {
    const SpaceModel hardy = SpaceModel::hardy();
    CHECK(std::abs(kernel_mixed_derivative(hardy, 0.0, 0.0, 0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(kernel_mixed_derivative(hardy, 0.5, 0.5, 0, 0) - 4.0 / 3.0) < 1e-15);
    CHECK(std::abs(kernel_mixed_derivative(hardy, 0.0, 0.0, 1, 1) - 1.0) < 1e-15);

    // d/d(conj w) K at w=0 is z/(1 - conj(w) z)^2 = z.
    CHECK(std::abs(kernel_mixed_derivative(hardy, Complex(0.3, 0.2), 0.0, 0, 1) -
                   Complex(0.3, 0.2)) < 1e-15);
}

TEST_CASE("sinc kernel diagonal") {
    const SpaceModel pw = SpaceModel::paley_wiener(1.0);
    CHECK(std::abs(kernel_mixed_derivative(pw, 0.5, 0.5, 0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(kernel_mixed_derivative(pw, 1.0, 0.0, 0, 0)) < 1e-15);
    CHECK(std::abs(kernel_mixed_derivative(pw, 0.5, 0.0, 0, 0) - 2.0 / kPi) < 1e-15);
}

TEST_CASE("hermitian symmetry across all orders") {
    std::mt19937_64 rng(11);
    for (const SpaceModel& space :
         {SpaceModel::hardy(), SpaceModel::paley_wiener(1.0),
          SpaceModel::paley_wiener(0.5)}) {
        for (int trial = 0; trial < 8; ++trial) {
            const Complex p = space.kind() == SpaceKind::Hardy
                                  ? testutil::random_disc(rng, 0.85)
                                  : testutil::random_box(rng, 3.0, 1.5);
            const Complex q = space.kind() == SpaceKind::Hardy
                                  ? testutil::random_disc(rng, 0.85)
                                  : testutil::random_box(rng, 3.0, 1.5);
            for (int a = 0; a <= space.max_derivative_order(); ++a) {
                for (int b = 0; b <= space.max_derivative_order(); ++b) {
                    const Complex lhs = kernel_mixed_derivative(space, p, q, a, b);
                    const Complex rhs =
                        std::conj(kernel_mixed_derivative(space, q, p, b, a));
                    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
                }
            }
        }
    }
}

TEST_CASE("derivative consistency against finite differences") {
    std::mt19937_64 rng(12);
    for (const SpaceModel& space :
         {SpaceModel::hardy(), SpaceModel::paley_wiener(1.0)}) {
        for (int trial = 0; trial < 6; ++trial) {
            const Complex p = space.kind() == SpaceKind::Hardy
                                  ? testutil::random_disc(rng, 0.6)
                                  : testutil::random_box(rng, 2.0, 1.0);
            const Complex q = space.kind() == SpaceKind::Hardy
                                  ? testutil::random_disc(rng, 0.6)
                                  : testutil::random_box(rng, 2.0, 1.0);
            // The stated step/tolerance pair applies while roundoff
            // (~eps / step^(a+b)) stays under the truncation term.
            for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}) {
                const Complex exact = kernel_mixed_derivative(space, p, q, a, b);
                const Complex est =
                    testkit::finite_difference_derivative(space, p, q, a, b, 1e-4);
                CHECK(std::abs(exact - est) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
            for (auto [a, b] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
                const Complex exact = kernel_mixed_derivative(space, p, q, a, b);
                const Complex est =
                    testkit::finite_difference_derivative(space, p, q, a, b, 5e-3);
                CHECK(std::abs(exact - est) <= 1e-3 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("diagonal positivity") {
    std::mt19937_64 rng(13);
    for (const SpaceModel& space :
         {SpaceModel::hardy(), SpaceModel::paley_wiener(1.0)}) {
        for (int trial = 0; trial < 12; ++trial) {
            const Complex p = space.kind() == SpaceKind::Hardy
                                  ? testutil::random_disc(rng, 0.9)
                                  : testutil::random_box(rng, 4.0, 2.0);
            for (int a = 0; a <= 4; ++a) {
                const Complex d = kernel_mixed_derivative(space, p, p, a, a);
                CHECK(std::abs(d.imag()) <= 1e-10 * std::max(1.0, std::abs(d.real())));
                CHECK(d.real() > 0.0);
            }
        }
    }
}

TEST_CASE("boundary distance behaves at the boundary") {
    const SpaceModel hardy = SpaceModel::hardy();
    CHECK(hardy.boundary_distance(0.0) == 1.0);
    CHECK(hardy.boundary_distance(Complex(0.999, 0.0)) ==
          doctest::Approx(0.001).epsilon(1e-9));
    const SpaceModel pw = SpaceModel::paley_wiener(1.0);
    CHECK(pw.boundary_distance(0.0) == 1.0);
    CHECK(pw.boundary_distance(Complex(99.0, 0.0)) == doctest::Approx(0.01));
    CHECK(!hardy.contains(Complex(1.0, 0.0)));
    CHECK(pw.contains(Complex(1e6, 1e6)));
}

TEST_CASE("error paths") {
    const SpaceModel hardy = SpaceModel::hardy();
    CHECK_THROWS_AS((void)kernel_mixed_derivative(hardy, 0.2, 0.3, 9, 0), Error);
    CHECK_THROWS_AS((void)kernel_mixed_derivative(hardy, Complex(1.1, 0.0), 0.0, 0, 0),
                    Error);
    try {
        (void)kernel_mixed_derivative(hardy, 0.2, 0.3, 9, 0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderCapExceeded);
    }
    try {
        (void)kernel_mixed_derivative(hardy, Complex(1.1, 0.0), 0.0, 0, 0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainViolation);
    }
}
