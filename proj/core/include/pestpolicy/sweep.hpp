#pragma once

// Batch drivers over prevalence grids, social-value ranges, scenario arms
// and policy start times. Work is spread over threads; row order never
// depends on scheduling.

#include <cstddef>
#include <vector>

#include "pestpolicy/domain.hpp"
#include "pestpolicy/epidemic.hpp"

namespace pestpolicy {

struct SimplexGrid {
    int resolution = 0;
    std::vector<Prevalence> points;  // (i/n, j/n, 1 - (i+j)/n), i outer, j inner
};

SimplexGrid simplex_grid(int resolution);

struct PolicyMapRow {
    Prevalence prevalence;
    AssessedState assessed = AssessedState::Healthy;
    double k = 0.0;
    double l = 0.0;
    double s_star = 0.0;
    double treat_prob_subsidized = 0.0;
    double treat_prob_unsubsidized = 0.0;
    double public_treat = 0.0;
};

/// One row per (grid point, assessed label), grid order then label order.
std::vector<PolicyMapRow> policy_map(const SimplexGrid& grid, const EpidemicParams& params,
                                     const EconParams& econ, const AssessmentMatrix& matrix,
                                     std::size_t workers = 0);

/// first, first + step, ... up to and always including `last`.
std::vector<double> delta_range(double first, double last, double step);

struct DeltaSweepRow {
    double delta_m = 0.0;
    AssessedState assessed = AssessedState::Healthy;
    double s_star = 0.0;
    double treat_prob = 0.0;
    double survival_3y = 0.0;
};

/// Horizon used for the survival column of delta_sweep.
inline constexpr double kSweepSurvivalYears = 3.0;

/// For each Δ_m: optimal subsidy, uptake and expected survival of a tree
/// with each assessed label. Survival is
/// 1 - Σ_φ P(φ | label) [p μ_t(φ) + (1 - p) μ_u(φ)] with μ over three years
/// and p the equilibrium treatment probability. Labels with zero marginal
/// probability report NaN survival.
std::vector<DeltaSweepRow> delta_sweep(const std::vector<double>& deltas, const EpidemicParams& params,
                                       const EconParams& econ, const AssessmentMatrix& matrix,
                                       const Prevalence& prevalence, std::size_t workers = 0);

struct ScenarioRun {
    ScenarioSpec scenario;
    Trajectory trajectory;
};

/// All three private arms crossed with both public arms.
std::vector<ScenarioRun> scenario_matrix(const ForestState& initial, const EpidemicParams& params,
                                         const EconParams& econ, const AssessmentMatrix& matrix,
                                         const SimulationOptions& options, std::size_t workers = 0);

struct TimingRow {
    double switch_time = 0.0;
    double survival_total = 0.0;
    double survival_public = 0.0;   // surviving share of public trees
    double survival_private = 0.0;  // surviving share of private trees
};

/// One simulation per switch time: no action, then optimal subsidy and
/// optimal public treatment from the switch onward.
std::vector<TimingRow> timing_study(const std::vector<double>& switch_times, const ForestState& initial,
                                    const EpidemicParams& params, const EconParams& econ,
                                    const AssessmentMatrix& matrix, const SimulationOptions& options,
                                    std::size_t workers = 0);

}  // namespace pestpolicy
