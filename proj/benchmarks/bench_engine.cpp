#include <benchmark/benchmark.h>

#include "pestpolicy/domain.hpp"
#include "pestpolicy/epidemic.hpp"
#include "pestpolicy/sweep.hpp"

using namespace pestpolicy;

namespace {

void BM_PolicyAtState(benchmark::State& st) {
    const ForestState s = initial_state(0.4, 0.15);
    const EpidemicParams p = case_study_epidemic();
    const EconParams e = case_study_econ();
    const AssessmentMatrix m = case_study_assessment();
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            policy_at_state(s, p, e, m, PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic));
    }
}
BENCHMARK(BM_PolicyAtState);

void BM_Simulate50Years(benchmark::State& st) {
    SimulationOptions opts;
    opts.horizon = 50.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(simulate(initial_state(0.4, 0.01), case_study_epidemic(), case_study_econ(),
                                          case_study_assessment(),
                                          {PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, std::nullopt},
                                          opts));
    }
}
BENCHMARK(BM_Simulate50Years)->Unit(benchmark::kMillisecond);

void BM_PolicyMap(benchmark::State& st) {
    const SimplexGrid grid = simplex_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            policy_map(grid, case_study_epidemic(), case_study_econ(), case_study_assessment(), 1));
    }
}
BENCHMARK(BM_PolicyMap)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
