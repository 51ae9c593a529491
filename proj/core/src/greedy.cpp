#include "amucd/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "kernels_detail.hpp"

namespace amucd {

namespace {

constexpr double kSnapRadius = 1e-9;  // must match gram.cpp

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Argmax comparator: larger gain wins, ties break toward the
// lexicographically smallest (re, im) point.
bool better_candidate(double gain, Complex p, double best_gain, Complex best_p) {
    if (gain != best_gain) return gain > best_gain;
    return lex_less(p, best_p);
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads <= 1 || n < 64) {
        body(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> hardy_radii(const HardyGridShape& shape) {
    std::vector<double> radii(shape.n_radial);
    if (shape.n_radial == 1) {
        radii[0] = shape.r_max;
        return radii;
    }
    // Chebyshev-Lobatto points mapped onto [0, r_max].
    for (int i = 0; i < shape.n_radial; ++i)
        radii[i] = shape.r_max *
                   (1.0 - std::cos(detail::kPi * i / (shape.n_radial - 1))) / 2.0;
    return radii;
}

double hardy_angle(const HardyGridShape& shape, int j) {
    return 2.0 * detail::kPi * j / shape.n_angular;
}

double clamp_residual(double value, double scale) {
    if (value < -1e-10 * std::max(1.0, scale))
        throw Error(ErrorCode::NumericalConsistency,
                    "residual energy drifted negative beyond tolerance");
    return std::max(value, 0.0);
}

// Per-candidate cache for the adaptive loop. After each accepted element the
// cache is advanced with one kernel evaluation and an O(n) dot product per
// candidate (the new Schur-complement data), instead of refactorizing.
struct ScorerEntry {
    Complex point;
    DictionaryElement element;
    Complex moment;
    double diag = 0.0;
    std::vector<Complex> proj;  // <K~_cand, beta~_j>
    Complex corr;               // sum_j conj(proj_j) <f, beta~_j>
    double captured = 0.0;      // sum_j |proj_j|^2
    bool invalid = false;

    double gain() const {
        const double schur = diag - captured;
        return std::norm(moment - corr) / schur;
    }
};

class GridScorer {
public:
    GridScorer(const SpaceModel& space, const SignalSpec& f,
               const std::vector<Complex>& points, int threads)
        : space_(space), f_(f), threads_(threads) {
        entries_.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) entries_[i].point = points[i];
    }

    void initialize(const GreedyState& state) {
        parallel_for(entries_.size(), threads_, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) rebuild(entries_[i], state);
        });
    }

    /// Advance all caches after `added` was accepted with projections `tau`,
    /// residual norm `rho` and new orthonormal coefficient `o_new`.
    void advance(const GreedyState& state, const DictionaryElement& added,
                 const std::vector<Complex>& tau, double rho, Complex o_new) {
        parallel_for(entries_.size(), threads_, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                ScorerEntry& e = entries_[i];
                if (e.invalid) continue;
                const bool affected = e.element.center == added.center ||
                                      std::abs(e.point - added.center) <= kSnapRadius;
                if (affected) {
                    rebuild(e, state);
                    continue;
                }
                // <K~_cand, beta~_new> via the Gram-Schmidt recursion.
                const Complex inner = kernel_mixed_derivative(
                    space_, added.center, e.element.center, added.order,
                    e.element.order);
                Complex t = inner;
                for (std::size_t j = 0; j < tau.size(); ++j)
                    t -= std::conj(tau[j]) * e.proj[j];
                t /= rho;
                e.proj.push_back(t);
                e.captured += std::norm(t);
                e.corr += std::conj(t) * o_new;
                if (!(e.diag - e.captured > 1e-10 * e.diag)) e.invalid = true;
            }
        });
    }

    /// Index of the best valid candidate, or npos when all are rejected.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t best() const {
        std::size_t best_i = npos;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const ScorerEntry& e = entries_[i];
            if (e.invalid) continue;
            const double g = e.gain();
            if (best_i == npos ||
                better_candidate(g, e.point, best_gain, entries_[best_i].point)) {
                best_i = i;
                best_gain = g;
            }
        }
        return best_i;
    }

    ScorerEntry& entry(std::size_t i) { return entries_[i]; }

private:
    void rebuild(ScorerEntry& e, const GreedyState& state) {
        e.element = snap_candidate(state.gram, e.point);
        if (e.element.order > space_.max_derivative_order()) {
            e.invalid = true;
            return;
        }
        const ExtensionProbe probe = probe_extension(state.gram, e.element);
        if (probe.dependent) {
            e.invalid = true;
            return;
        }
        e.moment = signal_moment(space_, f_, e.element);
        e.diag = probe.diag;
        e.proj = probe.projections;
        e.captured = 0.0;
        e.corr = 0.0;
        for (std::size_t j = 0; j < e.proj.size(); ++j) {
            e.captured += std::norm(e.proj[j]);
            e.corr += std::conj(e.proj[j]) * state.ortho_coeffs[j];
        }
        e.invalid = false;
    }

    SpaceModel space_;
    const SignalSpec& f_;
    int threads_;
    std::vector<ScorerEntry> entries_;
};

}  // namespace

CandidateGrid make_hardy_grid(int n_radial, int n_angular, double r_max) {
    if (n_radial < 1 || n_angular < 1)
        throw std::invalid_argument("grid needs at least one radius and one angle");
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw std::invalid_argument("hardy grid r_max must lie in (0, 1)");
    HardyGridShape shape{n_radial, n_angular, r_max};
    CandidateGrid grid;
    grid.shape = shape;
    for (double r : hardy_radii(shape)) {
        if (r == 0.0) {
            grid.points.emplace_back(0.0, 0.0);
            continue;
        }
        for (int j = 0; j < n_angular; ++j) {
            const double theta = hardy_angle(shape, j);
            grid.points.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
    }
    return grid;
}

CandidateGrid make_rect_grid(double x_extent, double y_extent, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("rect grid step must be positive");
    if (x_extent < 0.0 || y_extent < 0.0)
        throw std::invalid_argument("rect grid extents must be nonnegative");
    CandidateGrid grid;
    grid.shape = RectGridShape{x_extent, y_extent, step};
    const int nx = static_cast<int>(std::floor(2.0 * x_extent / step + 1e-9)) + 1;
    const int ny = static_cast<int>(std::floor(2.0 * y_extent / step + 1e-9)) + 1;
    for (int iy = 0; iy < ny; ++iy) {
        const double y = -y_extent + iy * step;
        for (int ix = 0; ix < nx; ++ix) {
            const double x = -x_extent + ix * step;
            grid.points.emplace_back(x, y);
        }
    }
    return grid;
}

CandidateGrid make_custom_grid(std::vector<Complex> points) {
    if (points.empty()) throw std::invalid_argument("grid must be nonempty");
    CandidateGrid grid;
    for (const Complex& p : points) {
        bool seen = false;
        for (const Complex& q : grid.points)
            if (p == q) seen = true;
        if (!seen) grid.points.push_back(p);
    }
    return grid;
}

CandidateGrid default_grid(const SpaceModel& space) {
    if (space.kind() == SpaceKind::Hardy) return make_hardy_grid(64, 128, 0.995);
    return make_rect_grid(8.0, 8.0, 0.125);
}

GreedyState greedy_init(const SpaceModel& space, const SignalSpec& f) {
    require_same_space(space, f);
    GreedyState state{make_gram(space), {}, {}, 0.0, 0.0};
    state.norm_sq_f = signal_norm_sq(space, f);
    state.residual_energy = state.norm_sq_f;
    return state;
}

ScoreResult score_candidate(const SpaceModel& space, const SignalSpec& f,
                            const GreedyState& state, Complex p) {
    require_same_space(space, f);
    require_in_domain(space, p);
    const DictionaryElement e = snap_candidate(state.gram, p);
    if (e.order > space.max_derivative_order()) return {0.0, true, e};
    const ExtensionProbe probe = probe_extension(state.gram, e);
    if (probe.dependent) return {0.0, true, e};
    Complex num = signal_moment(space, f, e);
    for (std::size_t j = 0; j < probe.projections.size(); ++j)
        num -= std::conj(probe.projections[j]) * state.ortho_coeffs[j];
    return {std::norm(num) / probe.schur, false, e};
}

Selection select_next(const SpaceModel& space, const SignalSpec& f,
                      const GreedyState& state, const CandidateGrid& grid,
                      int threads) {
    if (grid.points.empty()) throw std::invalid_argument("grid must be nonempty");
    std::vector<ScoreResult> scores(grid.points.size());
    parallel_for(grid.points.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            scores[i] = score_candidate(space, f, state, grid.points[i]);
    });
    std::size_t best = grid.points.size();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i].dependent) continue;
        if (best == grid.points.size() ||
            better_candidate(scores[i].gain, grid.points[i], scores[best].gain,
                             grid.points[best]))
            best = i;
    }
    if (best == grid.points.size())
        throw Error(ErrorCode::AllCandidatesDependent,
                    "every grid candidate was rejected as dependent");
    return Selection{grid.points[best], scores[best].gain, scores[best].element};
}

Selection refine_selection(const SpaceModel& space, const SignalSpec& f,
                           const GreedyState& state, const CandidateGrid& grid,
                           const Selection& selected) {
    std::vector<Complex> window;
    if (const auto* shape = std::get_if<HardyGridShape>(&grid.shape)) {
        const auto radii = hardy_radii(*shape);
        const double r = std::abs(selected.point);
        std::size_t i = 0;
        for (std::size_t k = 1; k < radii.size(); ++k)
            if (std::abs(radii[k] - r) < std::abs(radii[i] - r)) i = k;
        const double r_lo = radii[i == 0 ? 0 : i - 1];
        const double r_hi = radii[std::min(radii.size() - 1, i + 1)];
        const double theta = std::atan2(selected.point.imag(), selected.point.real());
        const double dtheta = 2.0 * detail::kPi / shape->n_angular;
        for (int a = 0; a < 7; ++a) {
            double rr = r_lo + (r_hi - r_lo) * a / 6.0;
            rr = std::clamp(rr, 0.0, shape->r_max);
            if (rr == 0.0) {
                window.emplace_back(0.0, 0.0);
                continue;
            }
            for (int b = -3; b <= 3; ++b) {
                const double tt = theta + dtheta * b / 3.0;
                window.emplace_back(rr * std::cos(tt), rr * std::sin(tt));
            }
        }
    } else if (const auto* shape = std::get_if<RectGridShape>(&grid.shape)) {
        for (int a = -3; a <= 3; ++a) {
            const double x = std::clamp(selected.point.real() + shape->step * a / 3.0,
                                        -shape->x_extent, shape->x_extent);
            for (int b = -3; b <= 3; ++b) {
                const double y =
                    std::clamp(selected.point.imag() + shape->step * b / 3.0,
                               -shape->y_extent, shape->y_extent);
                window.emplace_back(x, y);
            }
        }
    } else {
        return selected;
    }

    Selection best = selected;
    for (const Complex& p : window) {
        const ScoreResult score = score_candidate(space, f, state, p);
        if (score.dependent) continue;
        if (better_candidate(score.gain, p, best.gain, best.point))
            best = Selection{p, score.gain, score.element};
    }
    return best;
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::EnergyTolerance: return "energy_tolerance";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::Stagnation: return "stagnation";
        case StopReason::AllCandidatesDependent: return "all_candidates_dependent";
    }
    return "unknown";
}

DecomposeResult decompose(const SpaceModel& space, const SignalSpec& f,
                          const CandidateGrid& grid, const StoppingRule& stop,
                          int threads, bool refine) {
    require_same_space(space, f);
    if (grid.points.empty()) throw std::invalid_argument("grid must be nonempty");
    if (stop.max_iterations < 1)
        throw std::invalid_argument("stopping rule needs max_iterations >= 1");

    GreedyState state = greedy_init(space, f);
    DecomposeResult result;
    result.reason = StopReason::MaxIterations;

    std::vector<double> track{state.residual_energy};
    GridScorer scorer(space, f, grid.points, threads);
    scorer.initialize(state);

    double captured_sum = 0.0;
    int iter = 1;
    std::size_t attempts = 0;
    const std::size_t attempt_limit =
        grid.points.size() + 16 * static_cast<std::size_t>(stop.max_iterations);
    while (iter <= stop.max_iterations) {
        if (state.residual_energy <= stop.energy_tol * state.norm_sq_f) {
            result.reason = StopReason::EnergyTolerance;
            break;
        }
        if (++attempts > attempt_limit)
            throw Error(ErrorCode::NumericalConsistency,
                        "selection loop failed to make progress");

        const std::size_t best_i = scorer.best();
        if (best_i == GridScorer::npos) {
            result.reason = StopReason::AllCandidatesDependent;
            break;
        }
        ScorerEntry& grid_best = scorer.entry(best_i);
        Selection sel{grid_best.point, grid_best.gain(), grid_best.element};
        if (refine) sel = refine_selection(space, f, state, grid, sel);

        if (sel.gain < stop.stagnation_tol * state.norm_sq_f) {
            result.reason = StopReason::Stagnation;
            break;
        }

        ExtensionProbe probe;
        double rho = 0.0;
        try {
            probe = probe_extension(state.gram, sel.element);
            rho = orthonormal_extend(state.gram, sel.element);
        } catch (const LinearDependenceError&) {
            grid_best.invalid = true;  // retry with the next candidate
            continue;
        }

        const Complex mu = signal_moment(space, f, sel.element);
        state.moments.push_back(mu);
        const auto& col = state.gram.ortho_coords.back();
        Complex o_new = 0.0;
        for (std::size_t i = 0; i < state.moments.size(); ++i)
            o_new += std::conj(col[i]) * state.moments[i];
        state.ortho_coeffs.push_back(o_new);
        captured_sum += std::norm(o_new);
        state.residual_energy =
            clamp_residual(state.norm_sq_f - captured_sum, state.norm_sq_f);
        track.push_back(state.residual_energy);

        result.log.push_back(IterationRow{iter, sel.element.center,
                                          sel.element.order, std::norm(o_new),
                                          state.residual_energy,
                                          bvc_ratio(space, f, sel.element)});

        scorer.advance(state, sel.element, probe.projections, rho, o_new);
        ++iter;
    }
    if (iter > stop.max_iterations &&
        state.residual_energy <= stop.energy_tol * state.norm_sq_f)
        result.reason = StopReason::EnergyTolerance;

    if (state.gram.size() == 0) {
        result.decomposition.norm_sq_f = state.norm_sq_f;
        result.decomposition.energy_track = std::move(track);
        return result;
    }

    Decomposition d = project(space, f, state.gram);
    d.ortho_coeffs = state.ortho_coeffs;  // keep the loop-exact bookkeeping
    d.energy_track = std::move(track);
    result.decomposition = std::move(d);
    return result;
}

Decomposition project_fixed_points(const SpaceModel& space, const SignalSpec& f,
                                   const std::vector<DictionaryElement>& elements) {
    const GramSystem state = build_gram(space, elements);
    return project(space, f, state);
}

double bvc_ratio(const SpaceModel& space, const SignalSpec& f,
                 const DictionaryElement& e) {
    validate_element(space, e);
    const double diag =
        kernel_mixed_derivative(space, e.center, e.center, e.order, e.order).real();
    return std::abs(signal_moment(space, f, e)) / std::sqrt(diag);
}

}  // namespace amucd
