#include "amucd/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_detail.hpp"

namespace amucd {

namespace {

// ---- dense polynomial helpers (coeffs[i] is the z^i coefficient) ----------

using Poly = std::vector<Complex>;

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Complex poly_eval(const Poly& p, Complex z) {
    Complex acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

// Quotient of p by the monic factor (z - root); the remainder (tiny by the
// interpolation property when root is an accepted center) is dropped.
Poly poly_deflate(const Poly& p, Complex root) {
    if (p.size() <= 1) return {};
    Poly q(p.size() - 1, 0.0);
    Complex carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + root * carry;
    }
    return q;
}

// ---- truncated local series in u = z - z0 ---------------------------------

using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b) {
    Series out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// base * sum_i (ratio u)^i, the local expansion of 1/(1 - cz) at z0 with
// base = 1/(1 - c z0) and ratio = c * base.
Series series_geometric(Complex base, Complex ratio, std::size_t len) {
    Series out(len);
    Complex v = base;
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = v;
        v *= ratio;
    }
    return out;
}

double normalizer(Complex z_j) { return std::sqrt(1.0 - std::norm(z_j)); }

// Local series of B_j about p, truncated at `order`.
Series blaschke_local_series(const BlaschkeSystem& sys, std::size_t j, Complex p,
                             int order) {
    const std::size_t len = static_cast<std::size_t>(order) + 1;
    Series s(len, 0.0);
    s[0] = normalizer(sys.centers[j - 1]);
    for (std::size_t k = 0; k + 1 < j; ++k) {
        Series factor(len, 0.0);
        factor[0] = p - sys.centers[k];
        if (len > 1) factor[1] = 1.0;
        s = series_mul(s, factor);
    }
    for (std::size_t l = 0; l < j; ++l) {
        const Complex c = std::conj(sys.centers[l]);
        const Complex base = 1.0 / (1.0 - c * p);
        s = series_mul(s, series_geometric(base, c * base, len));
    }
    return s;
}

// Local series of K~(z, conj(center); m) = m! z^m / (1 - conj(center) z)^{m+1}.
Series kernel_local_series(const DictionaryElement& e, Complex p, int order) {
    const std::size_t len = static_cast<std::size_t>(order) + 1;
    const int m = e.order;
    Series numerator(len, 0.0);  // (z0 + u)^m
    for (int i = 0; i <= m && i < static_cast<int>(len); ++i)
        numerator[i] = detail::binomial(m, i) * detail::pow_int(p, m - i);
    const Complex c = std::conj(e.center);
    const Complex base = 1.0 / (1.0 - c * p);
    const Series geometric = series_geometric(base, c * base, len);
    Series denom(len, 0.0);
    denom[0] = 1.0;
    for (int i = 0; i <= m; ++i) denom = series_mul(denom, geometric);
    Series out = series_mul(numerator, denom);
    for (auto& v : out) v *= detail::factorial(m);
    return out;
}

// Local series of f about p, truncated at `order`.
Series signal_local_series(const SignalSpec& f, Complex p, int order) {
    const std::size_t len = static_cast<std::size_t>(order) + 1;
    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        Series out(len, 0.0);
        const auto& c = taylor->coeffs;
        for (std::size_t i = 0; i < len; ++i) {
            Complex acc = 0.0;
            for (int n = static_cast<int>(c.size()) - 1;
                 n >= static_cast<int>(i); --n)
                acc = acc * p + c[n] * detail::binomial(n, static_cast<int>(i));
            out[i] = acc;
        }
        return out;
    }
    const auto& comb = std::get<KernelCombination>(f.payload);
    Series out(len, 0.0);
    for (const auto& term : comb.terms) {
        const Series k = kernel_local_series(term.element, p, order);
        for (std::size_t i = 0; i < len; ++i) out[i] += term.coeff * k[i];
    }
    return out;
}

// Global Taylor series of B_j about 0, truncated at `degree`.
Poly blaschke_global_series(const BlaschkeSystem& sys, std::size_t j, int degree) {
    Series s(static_cast<std::size_t>(degree) + 1, 0.0);
    s[0] = normalizer(sys.centers[j - 1]);
    for (std::size_t k = 0; k + 1 < j; ++k) {
        Series factor(s.size(), 0.0);
        factor[0] = -sys.centers[k];
        if (s.size() > 1) factor[1] = 1.0;
        s = series_mul(s, factor);
    }
    for (std::size_t l = 0; l < j; ++l) {
        const Complex c = std::conj(sys.centers[l]);
        s = series_mul(s, series_geometric(1.0, c, s.size()));
    }
    return s;
}

void require_hardy_signal(const SignalSpec& f) {
    if (f.kind != SpaceKind::Hardy)
        throw Error(ErrorCode::SpaceMismatch,
                    "expected a Hardy-space signal");
    if (std::holds_alternative<Spectrum>(f.payload))
        throw Error(ErrorCode::SpaceMismatch,
                    "spectrum signals are Paley-Wiener only");
}

void validate_system(const BlaschkeSystem& sys) {
    for (const Complex& z : sys.centers)
        if (!(std::abs(z) < 1.0))
            throw Error(ErrorCode::DomainViolation,
                        "Blaschke centers must lie in the open unit disc");
}

}  // namespace

BlaschkeSystem blaschke_from_elements(const std::vector<DictionaryElement>& elements) {
    BlaschkeSystem sys;
    sys.centers.reserve(elements.size());
    for (const auto& e : elements) sys.centers.push_back(e.center);
    validate_system(sys);
    return sys;
}

Complex blaschke_eval(const BlaschkeSystem& sys, std::size_t j, Complex z) {
    validate_system(sys);
    if (j < 1 || j > sys.centers.size())
        throw std::invalid_argument("Blaschke index out of range (1-based)");
    if (!(std::abs(z) < 1.0))
        throw Error(ErrorCode::DomainViolation,
                    "Blaschke evaluation point must lie in the open unit disc");
    const Complex z_j = sys.centers[j - 1];
    Complex value = normalizer(z_j) / (1.0 - std::conj(z_j) * z);
    for (std::size_t k = 0; k + 1 < j; ++k) {
        const Complex z_k = sys.centers[k];
        value *= (z - z_k) / (1.0 - std::conj(z_k) * z);
    }
    return value;
}

std::vector<Complex> afd_coefficients(const SignalSpec& f,
                                      const BlaschkeSystem& sys) {
    require_hardy_signal(f);
    validate_system(sys);
    const std::size_t n = sys.centers.size();
    std::vector<Complex> coeffs(n, 0.0);

    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        // <f, B_j> = sum_n f_n conj(b_{j,n}) over the orthonormal monomials;
        // only the first deg(f)+1 series coefficients of B_j contribute.
        const int degree = static_cast<int>(taylor->coeffs.size()) - 1;
        for (std::size_t j = 1; j <= n; ++j) {
            if (degree < 0) break;
            const Poly b = blaschke_global_series(sys, j, degree);
            Complex acc = 0.0;
            for (std::size_t i = 0; i < taylor->coeffs.size(); ++i)
                acc += taylor->coeffs[i] * std::conj(b[i]);
            coeffs[j - 1] = acc;
        }
        return coeffs;
    }

    // Kernel combination: <K~(., conj p; m), B_j> = conj(B_j^{(m)}(p)).
    const auto& comb = std::get<KernelCombination>(f.payload);
    for (std::size_t j = 1; j <= n; ++j) {
        Complex acc = 0.0;
        for (const auto& term : comb.terms) {
            const int m = term.element.order;
            const Series local =
                blaschke_local_series(sys, j, term.element.center, m);
            const Complex derivative = detail::factorial(m) * local[m];
            acc += term.coeff * std::conj(derivative);
        }
        coeffs[j - 1] = acc;
    }
    return coeffs;
}

double hardy_selection_objective(const SignalSpec& f, const GramSystem& state,
                                 Complex z) {
    require_hardy_signal(f);
    if (state.space.kind() != SpaceKind::Hardy)
        throw Error(ErrorCode::SpaceMismatch, "state is not a Hardy system");
    if (!(std::abs(z) < 1.0))
        throw Error(ErrorCode::DomainViolation,
                    "objective point must lie in the open unit disc");

    const BlaschkeSystem sys = blaschke_from_elements(state.elements);
    const std::vector<Complex> coeffs = afd_coefficients(f, sys);
    const std::size_t n = sys.centers.size();
    const double weight = 1.0 - std::norm(z);

    if (const auto* taylor = std::get_if<TaylorPolynomial>(&f.payload)) {
        // Fully polynomial route: over the common denominator
        // Q = prod (1 - conj(z_l) z) the remainder is P/Q with
        // P = f Q - sum_j <f,B_j> (B_j Q) a polynomial that vanishes at every
        // center to its multiplicity, so g = P / prod (z - z_l) deflates
        // exactly.
        Poly q{1.0};
        for (const Complex& c : sys.centers) q = poly_mul(q, Poly{1.0, -std::conj(c)});
        Poly p = taylor->coeffs.empty() ? Poly{} : poly_mul(taylor->coeffs, q);
        for (std::size_t j = 1; j <= n; ++j) {
            Poly bq{normalizer(sys.centers[j - 1])};
            for (std::size_t k = 0; k + 1 < j; ++k)
                bq = poly_mul(bq, Poly{-sys.centers[k], 1.0});
            for (std::size_t l = j; l < n; ++l)
                bq = poly_mul(bq, Poly{1.0, -std::conj(sys.centers[l])});
            if (p.size() < bq.size()) p.resize(bq.size(), 0.0);
            for (std::size_t i = 0; i < bq.size(); ++i)
                p[i] -= coeffs[j - 1] * bq[i];
        }
        Poly g = p;
        for (const Complex& c : sys.centers) g = poly_deflate(g, c);
        return weight * std::norm(poly_eval(g, z));
    }

    // Kernel combination: evaluate the remainder-over-Blaschke form directly;
    // close to a center switch to the local series (the generalized
    // L'Hopital limit of the reduced remainder).
    constexpr double kNearCenter = 1e-8;
    double min_dist = std::numeric_limits<double>::infinity();
    Complex nearest;
    for (const Complex& c : sys.centers) {
        const double d = std::abs(z - c);
        if (d < min_dist) {
            min_dist = d;
            nearest = c;
        }
    }

    if (n == 0 || min_dist >= kNearCenter) {
        Complex value = 0.0;
        {
            const auto& comb = std::get<KernelCombination>(f.payload);
            for (const auto& term : comb.terms)
                value += term.coeff *
                         detail::szego_mixed_derivative(z, term.element.center, 0,
                                                        term.element.order);
        }
        for (std::size_t j = 1; j <= n; ++j)
            value -= coeffs[j - 1] * blaschke_eval(sys, j, z);
        for (const Complex& c : sys.centers)
            value *= (1.0 - std::conj(c) * z) / (z - c);
        return weight * std::norm(value);
    }

    const int mult = static_cast<int>(
        std::count(sys.centers.begin(), sys.centers.end(), nearest));
    Series remainder = signal_local_series(f, nearest, mult);
    for (std::size_t j = 1; j <= n; ++j) {
        const Series b = blaschke_local_series(sys, j, nearest, mult);
        for (std::size_t i = 0; i < remainder.size(); ++i)
            remainder[i] -= coeffs[j - 1] * b[i];
    }
    Complex value = remainder[mult];
    value *= detail::pow_int(1.0 - std::norm(nearest), mult);
    for (const Complex& c : sys.centers) {
        if (c == nearest) continue;
        value *= (1.0 - std::conj(c) * nearest) / (nearest - c);
    }
    return weight * std::norm(value);
}

}  // namespace amucd
