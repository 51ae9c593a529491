#include "amucd/signal.hpp"

#include <cmath>
#include <sstream>

#include "kernels_detail.hpp"

namespace amucd {

namespace {

bool finite(Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

void validate_spectrum_samples(const std::vector<SpectrumSample>& samples, double h) {
    if (samples.size() < 2)
        throw std::invalid_argument("spectrum signals need at least two samples");
    const double band = detail::kPi / h;
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (!std::isfinite(s.t) || !finite(s.value))
            throw std::invalid_argument("spectrum samples must be finite");
        if (!(s.t > prev))
            throw std::invalid_argument("spectrum abscissae must be strictly increasing");
        if (std::abs(s.t) > band + 1e-12) {
            std::ostringstream msg;
            msg << "spectrum sample at t = " << s.t << " lies outside the band [-"
                << band << ", " << band << "]";
            throw Error(ErrorCode::BandViolation, msg.str());
        }
        prev = s.t;
    }
}

/// (1/2pi) integral of integrand(t, F(t)) dt over the sample range with F
/// piecewise linear. Composite Gauss-Legendre aligned to the sample
/// intervals; subdivision doubles until the result moves by < 1e-10.
template <class Integrand>
Complex integrate_spectrum(const std::vector<SpectrumSample>& samples,
                           Integrand integrand) {
    const auto& rule = detail::gauss_legendre(10);
    auto pass = [&](int subdiv) {
        Complex total = 0.0;
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            const double t0 = samples[i].t, t1 = samples[i + 1].t;
            const Complex v0 = samples[i].value, v1 = samples[i + 1].value;
            const double dt = t1 - t0;
            for (int s = 0; s < subdiv; ++s) {
                const double a = t0 + dt * s / subdiv;
                const double b = t0 + dt * (s + 1) / subdiv;
                const double half = 0.5 * (b - a);
                const double mid = 0.5 * (a + b);
                for (const auto& node : rule) {
                    const double t = mid + half * node.x;
                    const Complex ft = v0 + (v1 - v0) * ((t - t0) / dt);
                    total += node.w * half * integrand(t, ft);
                }
            }
        }
        return total / (2.0 * detail::kPi);
    };
    Complex prev = pass(1);
    for (int subdiv = 2; subdiv <= 64; subdiv *= 2) {
        const Complex cur = pass(subdiv);
        if (std::abs(cur - prev) < 1e-10) return cur;
        prev = cur;
    }
    return prev;
}

Complex taylor_moment(const std::vector<Complex>& coeffs, Complex p, int m) {
    Complex acc = 0.0;
    for (int n = static_cast<int>(coeffs.size()) - 1; n >= m; --n)
        acc = acc * p + coeffs[n] * detail::falling_factorial(n, m);
    return acc;
}

}  // namespace

SignalSpec SignalSpec::taylor(std::vector<Complex> coeffs) {
    for (const auto& c : coeffs)
        if (!finite(c)) throw std::invalid_argument("Taylor coefficients must be finite");
    SignalSpec f;
    f.kind = SpaceKind::Hardy;
    f.payload = TaylorPolynomial{std::move(coeffs)};
    return f;
}

SignalSpec SignalSpec::kernels(SpaceKind kind, double h,
                               std::vector<KernelTerm> terms) {
    if (kind == SpaceKind::PaleyWiener && !(h > 0.0))
        throw std::invalid_argument("Paley-Wiener band parameter h must be positive");
    for (const auto& t : terms) {
        if (!finite(t.coeff) || !finite(t.element.center))
            throw std::invalid_argument("kernel terms must be finite");
        if (kind == SpaceKind::Hardy && !(std::abs(t.element.center) < 1.0))
            throw Error(ErrorCode::DomainViolation,
                        "Hardy kernel centers must lie in the open unit disc");
    }
    SignalSpec f;
    f.kind = kind;
    f.h = (kind == SpaceKind::PaleyWiener) ? h : 1.0;
    f.payload = KernelCombination{std::move(terms)};
    return f;
}

SignalSpec SignalSpec::spectrum(double h, std::vector<SpectrumSample> samples) {
    if (!(h > 0.0))
        throw std::invalid_argument("Paley-Wiener band parameter h must be positive");
    validate_spectrum_samples(samples, h);
    SignalSpec f;
    f.kind = SpaceKind::PaleyWiener;
    f.h = h;
    f.payload = Spectrum{std::move(samples)};
    return f;
}

void require_same_space(const SpaceModel& space, const SignalSpec& f) {
    if (space.kind() != f.kind)
        throw Error(ErrorCode::SpaceMismatch,
                    "signal belongs to a different space than requested");
    if (space.kind() == SpaceKind::PaleyWiener &&
        std::abs(space.h() - f.h) > 1e-12 * std::max(1.0, space.h()))
        throw Error(ErrorCode::SpaceMismatch,
                    "signal band parameter h differs from the space's");
}

Complex signal_moment(const SpaceModel& space, const SignalSpec& f,
                      const DictionaryElement& e) {
    require_same_space(space, f);
    validate_element(space, e);

    Complex value;
    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        value = taylor_moment(taylor->coeffs, e.center, e.order);
    } else if (const auto* comb = std::get_if<KernelCombination>(&f.payload)) {
        Complex acc = 0.0;
        for (const auto& term : comb->terms) {
            validate_element(space, term.element);
            acc += term.coeff * kernel_mixed_derivative(space, e.center,
                                                        term.element.center,
                                                        e.order, term.element.order);
        }
        value = acc;
    } else {
        const auto& samples = std::get<Spectrum>(f.payload).samples;
        // f^(m)(z) = (1/2pi) integral F(t) (-it)^m exp(-izt) dt
        const Complex z = e.center;
        const int m = e.order;
        value = integrate_spectrum(samples, [&](double t, Complex ft) {
            const Complex phase = std::exp(Complex(0.0, -1.0) * z * t);
            return ft * detail::pow_int(Complex(0.0, -t), m) * phase;
        });
    }
    if (!finite(value))
        throw Error(ErrorCode::NumericalConsistency,
                    "signal moment evaluated to a non-finite value");
    return value;
}

double signal_norm_sq(const SpaceModel& space, const SignalSpec& f) {
    require_same_space(space, f);

    double norm_sq = 0.0;
    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        for (const auto& c : taylor->coeffs) norm_sq += std::norm(c);
    } else if (const auto* comb = std::get_if<KernelCombination>(&f.payload)) {
        const auto& terms = comb->terms;
        Complex acc = 0.0;
        for (const auto& tj : terms) {
            validate_element(space, tj.element);
            for (const auto& tk : terms) {
                acc += std::conj(tj.coeff) * tk.coeff *
                       kernel_mixed_derivative(space, tj.element.center,
                                               tk.element.center,
                                               tj.element.order, tk.element.order);
            }
        }
        norm_sq = acc.real();
    } else {
        const auto& samples = std::get<Spectrum>(f.payload).samples;
        norm_sq = integrate_spectrum(samples, [](double, Complex ft) {
                      return Complex(std::norm(ft), 0.0);
                  }).real();
    }
    if (!std::isfinite(norm_sq))
        throw Error(ErrorCode::NumericalConsistency,
                    "signal norm evaluated to a non-finite value");
    if (norm_sq < 0.0) {
        if (norm_sq < -1e-10)
            throw Error(ErrorCode::NumericalConsistency,
                        "signal norm evaluated significantly negative");
        norm_sq = 0.0;
    }
    return norm_sq;
}

Complex signal_eval(const SpaceModel& space, const SignalSpec& f, Complex p) {
    return signal_moment(space, f, DictionaryElement{p, 0});
}

}  // namespace amucd
