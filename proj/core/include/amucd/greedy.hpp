#pragma once

#include <variant>
#include <vector>

#include "amucd/gram.hpp"

namespace amucd {

struct HardyGridShape {
    int n_radial = 64;
    int n_angular = 128;
    double r_max = 0.995;
};

struct RectGridShape {
    double x_extent = 8.0;
    double y_extent = 8.0;
    double step = 0.125;
};

struct CandidateGrid {
    std::vector<Complex> points;
    std::variant<std::monostate, HardyGridShape, RectGridShape> shape;
};

/// Chebyshev-spaced radii on [0, r_max] crossed with uniform angles.
CandidateGrid make_hardy_grid(int n_radial, int n_angular, double r_max);
/// Uniform lattice on [-x_extent, x_extent] x [-y_extent, y_extent].
CandidateGrid make_rect_grid(double x_extent, double y_extent, double step);
CandidateGrid make_custom_grid(std::vector<Complex> points);
CandidateGrid default_grid(const SpaceModel& space);

struct StoppingRule {
    int max_iterations = 50;
    double energy_tol = 1e-10;    // stop when residual <= energy_tol * ||f||^2
    double stagnation_tol = 0.0;  // stop when best gain < stagnation_tol * ||f||^2
};

struct GreedyState {
    GramSystem gram;
    std::vector<Complex> moments;       // <f, K~_j>
    std::vector<Complex> ortho_coeffs;  // <f, beta~_j>
    double residual_energy = 0.0;       // ||f||^2 - sum |ortho_coeffs|^2
    double norm_sq_f = 0.0;
};

GreedyState greedy_init(const SpaceModel& space, const SignalSpec& f);

struct ScoreResult {
    double gain = 0.0;  // |<f, beta~'>|^2, the energy captured by extending at p
    bool dependent = false;
    DictionaryElement element;  // the candidate after coincidence snapping
};

ScoreResult score_candidate(const SpaceModel& space, const SignalSpec& f,
                            const GreedyState& state, Complex p);

struct Selection {
    Complex point;
    double gain = 0.0;
    DictionaryElement element;
};

/// Grid point maximizing score_candidate; ties break toward the
/// lexicographically smallest (re, im). Throws AllCandidatesDependent when
/// every candidate is rejected.
Selection select_next(const SpaceModel& space, const SignalSpec& f,
                      const GreedyState& state, const CandidateGrid& grid,
                      int threads = 1);

/// One-pass local refinement at 3x resolution around a selected grid point.
/// No-op (returns `selected`) for grids without shape information.
Selection refine_selection(const SpaceModel& space, const SignalSpec& f,
                           const GreedyState& state, const CandidateGrid& grid,
                           const Selection& selected);

enum class StopReason {
    EnergyTolerance,
    MaxIterations,
    Stagnation,
    AllCandidatesDependent,
};

const char* to_string(StopReason reason);

struct IterationRow {
    int n = 0;  // 1-based iteration number
    Complex point;
    int order = 0;
    double gain = 0.0;
    double residual_energy = 0.0;
    double bvc_at_selected = 0.0;
};

struct DecomposeResult {
    Decomposition decomposition;
    std::vector<IterationRow> log;
    StopReason reason = StopReason::MaxIterations;
};

/// The adaptive loop: select (with refinement), extend, track energies.
DecomposeResult decompose(const SpaceModel& space, const SignalSpec& f,
                          const CandidateGrid& grid, const StoppingRule& stop,
                          int threads = 1, bool refine = true);

/// Non-adaptive mode over a user-fixed element list (e.g. Shannon grids).
Decomposition project_fixed_points(const SpaceModel& space, const SignalSpec& f,
                                   const std::vector<DictionaryElement>& elements);

/// |<f, K~(., conj center; order)>| / sqrt(<K~, K~>), the boundary-vanishing
/// diagnostic.
double bvc_ratio(const SpaceModel& space, const SignalSpec& f,
                 const DictionaryElement& e);

}  // namespace amucd
