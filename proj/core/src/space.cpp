#include "amucd/space.hpp"

#include <cmath>
#include <sstream>

#include "kernels_detail.hpp"

namespace amucd {

SpaceModel SpaceModel::hardy(int max_derivative_order) {
    if (max_derivative_order < 0)
        throw std::invalid_argument("max_derivative_order must be >= 0");
    return SpaceModel(SpaceKind::Hardy, 1.0, max_derivative_order);
}

SpaceModel SpaceModel::paley_wiener(double h, int max_derivative_order) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("Paley-Wiener band parameter h must be positive");
    if (max_derivative_order < 0)
        throw std::invalid_argument("max_derivative_order must be >= 0");
    return SpaceModel(SpaceKind::PaleyWiener, h, max_derivative_order);
}

bool SpaceModel::contains(Complex p) const noexcept {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return false;
    if (kind_ == SpaceKind::Hardy) return std::abs(p) < 1.0;
    return true;  // Paley-Wiener functions are entire
}

double SpaceModel::boundary_distance(Complex p) const noexcept {
    if (kind_ == SpaceKind::Hardy) return 1.0 - std::abs(p);
    return 1.0 / (1.0 + std::abs(p));
}

void require_in_domain(const SpaceModel& space, Complex p) {
    if (!space.contains(p)) {
        std::ostringstream msg;
        msg << "point (" << p.real() << ", " << p.imag() << ") is outside the "
            << (space.kind() == SpaceKind::Hardy ? "unit disc" : "domain");
        throw Error(ErrorCode::DomainViolation, msg.str());
    }
}

void require_order(const SpaceModel& space, int order) {
    if (order < 0)
        throw Error(ErrorCode::OrderCapExceeded, "derivative order must be >= 0");
    if (order > space.max_derivative_order()) {
        std::ostringstream msg;
        msg << "derivative order " << order << " exceeds the cap "
            << space.max_derivative_order();
        throw Error(ErrorCode::OrderCapExceeded, msg.str());
    }
}

void validate_element(const SpaceModel& space, const DictionaryElement& e) {
    require_in_domain(space, e.center);
    require_order(space, e.order);
}

Complex kernel_mixed_derivative(const SpaceModel& space, Complex p, Complex q,
                                int a, int b) {
    require_order(space, a);
    require_order(space, b);
    require_in_domain(space, p);
    require_in_domain(space, q);
    const Complex v = (space.kind() == SpaceKind::Hardy)
                          ? detail::szego_mixed_derivative(p, q, a, b)
                          : detail::sinc_mixed_derivative(space.h(), p, q, a, b);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorCode::NumericalConsistency,
                    "kernel derivative evaluated to a non-finite value");
    return v;
}

}  // namespace amucd
