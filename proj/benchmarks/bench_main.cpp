#include <benchmark/benchmark.h>

#include <cmath>

#include "amucd/greedy.hpp"
#include "amucd/hardy.hpp"

using namespace amucd;

namespace {

// Golden-angle spiral: well separated points, so the dependence guard stays
// quiet up to a few dozen elements.
std::vector<DictionaryElement> spiral_elements(int n) {
    std::vector<DictionaryElement> elements;
    for (int k = 0; k < n; ++k) {
        const double r = 0.2 + 0.65 * k / std::max(1, n - 1);
        const double theta = 2.39996322972865332 * k;
        elements.push_back({Complex(r * std::cos(theta), r * std::sin(theta)), 0});
    }
    return elements;
}

void BM_SzegoMixedDerivative(benchmark::State& state) {
    const SpaceModel hardy = SpaceModel::hardy();
    const int order = static_cast<int>(state.range(0));
    const Complex p(0.4, 0.2), q(-0.3, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_mixed_derivative(hardy, p, q, order, order));
}
BENCHMARK(BM_SzegoMixedDerivative)->Arg(0)->Arg(2)->Arg(4)->Arg(8);

void BM_SincMixedDerivative(benchmark::State& state) {
    const SpaceModel pw = SpaceModel::paley_wiener(1.0);
    const int order = static_cast<int>(state.range(0));
    const Complex p(0.4, 0.2), q(0.42, 0.19);  // near the diagonal: series branch
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_mixed_derivative(pw, p, q, order, order));
}
BENCHMARK(BM_SincMixedDerivative)->Arg(0)->Arg(2)->Arg(4);

void BM_BuildGram(benchmark::State& state) {
    const SpaceModel hardy = SpaceModel::hardy();
    const auto elements = spiral_elements(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_gram(hardy, elements));
}
BENCHMARK(BM_BuildGram)->Arg(4)->Arg(8)->Arg(16);

void BM_ScoreCandidate(benchmark::State& state) {
    const SpaceModel hardy = SpaceModel::hardy();
    const SignalSpec f = SignalSpec::taylor({0.2, 1.0, -0.5, 0.0, 0.3});
    GreedyState st = greedy_init(hardy, f);
    for (const auto& e : spiral_elements(static_cast<int>(state.range(0)))) {
        orthonormal_extend(st.gram, e);
        st.moments.push_back(signal_moment(hardy, f, e));
        const auto& col = st.gram.ortho_coords.back();
        Complex o = 0.0;
        for (std::size_t i = 0; i < st.moments.size(); ++i)
            o += std::conj(col[i]) * st.moments[i];
        st.ortho_coeffs.push_back(o);
    }
    const Complex probe(0.1, -0.55);
    for (auto _ : state)
        benchmark::DoNotOptimize(score_candidate(hardy, f, st, probe));
}
BENCHMARK(BM_ScoreCandidate)->Arg(4)->Arg(8)->Arg(16);

void BM_DecomposeStep(benchmark::State& state) {
    const SpaceModel hardy = SpaceModel::hardy();
    const SignalSpec f = SignalSpec::taylor({0.2, 1.0, -0.5, 0.0, 0.3});
    const CandidateGrid grid = default_grid(hardy);
    StoppingRule stop;
    stop.max_iterations = static_cast<int>(state.range(0));
    stop.energy_tol = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(decompose(hardy, f, grid, stop));
}
BENCHMARK(BM_DecomposeStep)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BlaschkeEval(benchmark::State& state) {
    std::vector<Complex> centers;
    for (const auto& e : spiral_elements(static_cast<int>(state.range(0))))
        centers.push_back(e.center);
    const BlaschkeSystem sys{centers};
    const Complex z(0.2, 0.3);
    for (auto _ : state)
        benchmark::DoNotOptimize(blaschke_eval(sys, sys.centers.size(), z));
}
BENCHMARK(BM_BlaschkeEval)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
