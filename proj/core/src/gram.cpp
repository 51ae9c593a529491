#include "amucd/gram.hpp"

#include <cmath>
#include <sstream>

namespace amucd {

namespace {

// Relative Schur-complement threshold for the linear-dependence guard.
constexpr double kIndependenceTol = 1e-10;
// Centers closer than this are treated as coincident (order raised).
constexpr double kSnapRadius = 1e-9;
// Residual energies this far below zero are clamped; further is an error.
constexpr double kNegativeEnergyTol = 1e-10;

double clamp_energy(double value) {
    if (value < -kNegativeEnergyTol) {
        std::ostringstream msg;
        msg << "residual energy " << value << " is negative beyond tolerance";
        throw Error(ErrorCode::NumericalConsistency, msg.str());
    }
    return std::max(value, 0.0);
}

int multiplicity_of(const GramSystem& state, Complex center) {
    int count = 0;
    for (const auto& e : state.elements)
        if (e.center == center) ++count;
    return count;
}

// <f, beta~_k> for every k, given the raw moments F_j = <f, K~_j>.
std::vector<Complex> ortho_projections(const GramSystem& state,
                                       const std::vector<Complex>& moments) {
    const std::size_t n = state.size();
    std::vector<Complex> o(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        const auto& col = state.ortho_coords[k];
        for (std::size_t i = 0; i <= k; ++i) acc += std::conj(col[i]) * moments[i];
        o[k] = acc;
    }
    return o;
}

// c = C o: coordinates in the K~ basis of sum o_k beta~_k.
std::vector<Complex> kernel_coordinates(const GramSystem& state,
                                        const std::vector<Complex>& o) {
    const std::size_t n = state.size();
    std::vector<Complex> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& col = state.ortho_coords[k];
        for (std::size_t i = 0; i <= k; ++i) c[i] += col[i] * o[k];
    }
    return c;
}

std::vector<Complex> apply_matrix(const GramSystem& state,
                                  const std::vector<Complex>& x) {
    const std::size_t n = state.size();
    std::vector<Complex> y(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += state.matrix[j][k] * x[k];
        y[j] = acc;
    }
    return y;
}

}  // namespace

GramSystem make_gram(const SpaceModel& space) {
    return GramSystem{space, {}, {}, {}, {}};
}

GramSystem build_gram(const SpaceModel& space,
                      const std::vector<DictionaryElement>& elements) {
    if (elements.empty())
        throw std::invalid_argument("build_gram requires at least one element");
    GramSystem state = make_gram(space);
    for (const auto& e : elements) orthonormal_extend(state, e);
    return state;
}

DictionaryElement snap_candidate(const GramSystem& state, Complex p) {
    bool found = false;
    Complex best_center;
    double best_dist = kSnapRadius;
    for (const auto& e : state.elements) {
        const double d = std::abs(p - e.center);
        if (d < best_dist || (d <= best_dist && !found)) {
            best_dist = d;
            best_center = e.center;
            found = true;
        }
    }
    if (!found) return DictionaryElement{p, 0};
    return DictionaryElement{best_center, multiplicity_of(state, best_center)};
}

ExtensionProbe probe_extension(const GramSystem& state,
                               const DictionaryElement& e) {
    validate_element(state.space, e);
    const std::size_t n = state.size();

    std::vector<Complex> column(n);
    for (std::size_t j = 0; j < n; ++j)
        column[j] = kernel_mixed_derivative(state.space, state.elements[j].center,
                                            e.center, state.elements[j].order,
                                            e.order);
    const Complex diag_c =
        kernel_mixed_derivative(state.space, e.center, e.center, e.order, e.order);
    const double diag = diag_c.real();
    if (!(diag > 0.0))
        throw Error(ErrorCode::NumericalConsistency,
                    "kernel diagonal is not strictly positive");

    ExtensionProbe probe;
    probe.diag = diag;
    probe.projections.resize(n);
    double captured = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        // <K~_cand, beta~_j> = sum_i conj(C[i][j]) a_{i,cand}
        Complex acc = 0.0;
        const auto& col = state.ortho_coords[j];
        for (std::size_t i = 0; i <= j; ++i) acc += std::conj(col[i]) * column[i];
        probe.projections[j] = acc;
        captured += std::norm(acc);
    }
    probe.schur = diag - captured;
    probe.dependent = !(probe.schur > kIndependenceTol * diag);
    return probe;
}

double orthonormal_extend(GramSystem& state, DictionaryElement e) {
    const DictionaryElement snapped = snap_candidate(state, e.center);
    if (snapped.center != e.center) {
        e = snapped;  // near-duplicate center: realize the coincident limit
    } else {
        const int required = multiplicity_of(state, e.center);
        if (e.order != required) {
            std::ostringstream msg;
            msg << "element order " << e.order << " violates the multiplicity rule"
                << " (expected " << required << " for this center)";
            throw std::invalid_argument(msg.str());
        }
    }

    const ExtensionProbe probe = probe_extension(state, e);
    if (probe.dependent) {
        std::ostringstream msg;
        msg << "element " << state.size() << " is numerically dependent on the"
            << " accepted span (schur " << probe.schur << ", diagonal "
            << probe.diag << ")";
        throw LinearDependenceError(state.size(), msg.str());
    }

    const std::size_t n = state.size();
    const double residual_norm = std::sqrt(probe.schur);

    // Extend the Hermitian matrix by the new row/column.
    std::vector<Complex> column(n);
    for (std::size_t j = 0; j < n; ++j)
        column[j] = kernel_mixed_derivative(state.space, state.elements[j].center,
                                            e.center, state.elements[j].order,
                                            e.order);
    for (std::size_t j = 0; j < n; ++j)
        state.matrix[j].push_back(column[j]);
    std::vector<Complex> new_row(n + 1);
    for (std::size_t k = 0; k < n; ++k) new_row[k] = std::conj(column[k]);
    new_row[n] = probe.diag;
    state.matrix.push_back(std::move(new_row));

    // beta~_{n+1} = (K~_{n+1} - sum_j t_j beta~_j) / ||alpha_{n+1}||
    std::vector<Complex> coords(n + 1, 0.0);
    coords[n] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex t = probe.projections[j];
        const auto& col = state.ortho_coords[j];
        for (std::size_t i = 0; i <= j; ++i) coords[i] -= t * col[i];
    }
    for (auto& v : coords) v /= residual_norm;

    state.elements.push_back(e);
    state.ortho_coords.push_back(std::move(coords));
    state.residual_norms.push_back(residual_norm);
    return residual_norm;
}

Decomposition project(const SpaceModel& space, const SignalSpec& f,
                      const GramSystem& state) {
    require_same_space(space, f);
    if (!(space == state.space))
        throw Error(ErrorCode::SpaceMismatch,
                    "gram system was built over a different space");

    const std::size_t n = state.size();
    std::vector<Complex> moments(n);
    for (std::size_t j = 0; j < n; ++j)
        moments[j] = signal_moment(space, f, state.elements[j]);

    std::vector<Complex> o = ortho_projections(state, moments);
    std::vector<Complex> c = kernel_coordinates(state, o);

    // One pass of iterative refinement on A c = F; keeps the interpolation
    // contract tight when centers cluster.
    std::vector<Complex> r = apply_matrix(state, c);
    for (std::size_t j = 0; j < n; ++j) r[j] = moments[j] - r[j];
    const std::vector<Complex> delta = ortho_projections(state, r);
    for (std::size_t k = 0; k < n; ++k) o[k] += delta[k];
    c = kernel_coordinates(state, o);

    Decomposition d;
    d.elements = state.elements;
    d.kernel_coeffs = std::move(c);
    d.ortho_coeffs = std::move(o);
    d.norm_sq_f = signal_norm_sq(space, f);
    d.energy_track.reserve(n + 1);
    d.energy_track.push_back(clamp_energy(d.norm_sq_f));
    double captured = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        captured += std::norm(d.ortho_coeffs[k]);
        d.energy_track.push_back(clamp_energy(d.norm_sq_f - captured));
    }
    return d;
}

double residual_energy(const SignalSpec& f, const GramSystem& state,
                       const std::vector<Complex>& moments) {
    if (moments.size() != state.size())
        throw std::invalid_argument("moments size does not match the system");
    const double norm_sq = signal_norm_sq(state.space, f);
    double captured = 0.0;
    for (const auto& o : ortho_projections(state, moments)) captured += std::norm(o);
    return clamp_energy(norm_sq - captured);
}

Complex reconstruct_at(const SpaceModel& space, const Decomposition& d,
                       Complex p) {
    require_in_domain(space, p);
    Complex acc = 0.0;
    for (std::size_t k = 0; k < d.elements.size(); ++k)
        acc += d.kernel_coeffs[k] *
               kernel_mixed_derivative(space, p, d.elements[k].center, 0,
                                       d.elements[k].order);
    return acc;
}

Complex evaluate_basis(const GramSystem& state, std::size_t k, Complex p) {
    if (k >= state.size()) throw std::invalid_argument("basis index out of range");
    require_in_domain(state.space, p);
    Complex acc = 0.0;
    const auto& col = state.ortho_coords[k];
    for (std::size_t i = 0; i <= k; ++i)
        acc += col[i] * kernel_mixed_derivative(state.space, p,
                                                state.elements[i].center, 0,
                                                state.elements[i].order);
    return acc;
}

}  // namespace amucd
