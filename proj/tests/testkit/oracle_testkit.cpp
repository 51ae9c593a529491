#include "oracle_testkit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "amucd/detail/numerics.hpp"

namespace amucd::testkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXcd gram_matrix(const SpaceModel& space,
                             const std::vector<DictionaryElement>& elements) {
    const Eigen::Index n = static_cast<Eigen::Index>(elements.size());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            a(j, k) = kernel_mixed_derivative(space, elements[j].center,
                                              elements[k].center,
                                              elements[j].order, elements[k].order);
    return a;
}

// K~(z, conj(center); m) = m! z^m / (1 - conj(center) z)^{m+1}, usable on the
// closed disc since the pole sits outside.
Complex hardy_element_value(const DictionaryElement& e, Complex z) {
    const Complex denom = 1.0 - std::conj(e.center) * z;
    return detail::factorial(e.order) * detail::pow_int(z, e.order) /
           detail::pow_int(denom, e.order + 1);
}

// Spectrum of K~_h(., conj(center); m): (it)^m exp(i conj(center) t).
Complex pw_element_spectrum(const DictionaryElement& e, double t) {
    return detail::pow_int(Complex(0.0, t), e.order) *
           std::exp(Complex(0.0, 1.0) * std::conj(e.center) * t);
}

Complex taylor_value(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

Complex piecewise_linear(const std::vector<SpectrumSample>& samples, double t) {
    if (samples.empty() || t < samples.front().t || t > samples.back().t)
        return 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (t <= samples[i + 1].t) {
            const double dt = samples[i + 1].t - samples[i].t;
            const double w = (t - samples[i].t) / dt;
            return samples[i].value + (samples[i + 1].value - samples[i].value) * w;
        }
    }
    return samples.back().value;
}

}  // namespace

OracleSolution least_squares_oracle(const SpaceModel& space, const SignalSpec& f,
                                    const std::vector<DictionaryElement>& elements) {
    const Eigen::Index n = static_cast<Eigen::Index>(elements.size());
    if (n == 0) throw std::invalid_argument("oracle needs at least one element");
    const Eigen::MatrixXcd a = gram_matrix(space, elements);
    Eigen::VectorXcd moments(n);
    for (Eigen::Index j = 0; j < n; ++j)
        moments(j) = signal_moment(space, f, elements[j]);

    Eigen::VectorXcd c;
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt = a.ldlt();
    const bool ldlt_ok = ldlt.info() == Eigen::Success &&
                         ldlt.vectorD().real().minCoeff() >
                             1e-14 * ldlt.vectorD().real().maxCoeff();
    if (ldlt_ok) {
        c = ldlt.solve(moments);
    } else {
        const Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
        if (!lu.isInvertible())
            throw Error(ErrorCode::SingularSystem,
                        "gram matrix is not positive definite");
        c = lu.solve(moments);
    }

    OracleSolution solution;
    solution.coefficients.assign(c.data(), c.data() + n);
    const double captured = moments.dot(c).real();  // F^H c = F^H A^{-1} F
    solution.residual = std::max(0.0, signal_norm_sq(space, f) - captured);
    return solution;
}

Complex finite_difference_derivative(const SpaceModel& space, Complex p, Complex q,
                                     int a, int b, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    Complex sum = 0.0;
    for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            const Complex pp = p + Complex((a - 2.0 * i) * step, 0.0);
            const Complex qq = q + Complex((b - 2.0 * j) * step, 0.0);
            sum += sign * detail::binomial(a, i) * detail::binomial(b, j) *
                   kernel_mixed_derivative(space, pp, qq, 0, 0);
        }
    }
    return sum / std::pow(2.0 * step, a + b);
}

Representation represent(const SpaceModel& space, const SignalSpec& f) {
    require_same_space(space, f);
    Representation r;
    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        const auto coeffs = taylor->coeffs;
        r.boundary = [coeffs](Complex z) { return taylor_value(coeffs, z); };
        return r;
    }
    if (const auto* comb = std::get_if<KernelCombination>(&f.payload)) {
        const auto terms = comb->terms;
        if (space.kind() == SpaceKind::Hardy) {
            r.boundary = [terms](Complex z) {
                Complex acc = 0.0;
                for (const auto& t : terms) acc += t.coeff * hardy_element_value(t.element, z);
                return acc;
            };
        } else {
            r.spectrum = [terms](double t) {
                Complex acc = 0.0;
                for (const auto& term : terms)
                    acc += term.coeff * pw_element_spectrum(term.element, t);
                return acc;
            };
        }
        return r;
    }
    const auto samples = std::get<Spectrum>(f.payload).samples;
    r.spectrum = [samples](double t) { return piecewise_linear(samples, t); };
    return r;
}

Representation represent(const SpaceModel& space, const DictionaryElement& e) {
    Representation r;
    if (space.kind() == SpaceKind::Hardy)
        r.boundary = [e](Complex z) { return hardy_element_value(e, z); };
    else
        r.spectrum = [e](double t) { return pw_element_spectrum(e, t); };
    return r;
}

Representation represent(const BlaschkeSystem& sys, std::size_t j) {
    Representation r;
    r.boundary = [sys, j](Complex z) {
        const Complex z_j = sys.centers[j - 1];
        Complex value = std::sqrt(1.0 - std::norm(z_j)) / (1.0 - std::conj(z_j) * z);
        for (std::size_t k = 0; k + 1 < j; ++k)
            value *= (z - sys.centers[k]) / (1.0 - std::conj(sys.centers[k]) * z);
        return value;
    };
    return r;
}

Complex quadrature_inner_product(const SpaceModel& space, const Representation& f,
                                 const Representation& g) {
    if (space.kind() == SpaceKind::Hardy) {
        if (!f.boundary || !g.boundary)
            throw std::invalid_argument("Hardy quadrature needs boundary values");
        constexpr int kNodes = 512;
        Complex acc = 0.0;
        for (int k = 0; k < kNodes; ++k) {
            const double t = 2.0 * kPi * k / kNodes;
            const Complex z(std::cos(t), std::sin(t));
            acc += f.boundary(z) * std::conj(g.boundary(z));
        }
        return acc / static_cast<double>(kNodes);
    }
    if (!f.spectrum || !g.spectrum)
        throw std::invalid_argument("Paley-Wiener quadrature needs spectra");
    const double band = kPi / space.h();
    const auto& rule = amucd::detail::gauss_legendre(20);
    constexpr int kPanels = 24;
    Complex acc = 0.0;
    for (int panel = 0; panel < kPanels; ++panel) {
        const double a = -band + 2.0 * band * panel / kPanels;
        const double b = -band + 2.0 * band * (panel + 1) / kPanels;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (const auto& node : rule) {
            const double t = mid + half * node.x;
            acc += node.w * half * f.spectrum(t) * std::conj(g.spectrum(t));
        }
    }
    return acc / (2.0 * kPi);
}

}  // namespace amucd::testkit
