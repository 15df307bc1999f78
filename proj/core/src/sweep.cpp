#include "pestpolicy/sweep.hpp"

#include <cmath>
#include <limits>

#include "pestpolicy/bayes.hpp"
#include "pestpolicy/parallel.hpp"
#include "pestpolicy/policy.hpp"
#include "pestpolicy/risk.hpp"

namespace pestpolicy {

SimplexGrid simplex_grid(int resolution) {
    if (resolution < 1) throw ValidationError({{"resolution", double(resolution), "must be >= 1"}});
    SimplexGrid grid;
    grid.resolution = resolution;
    const double n = resolution;
    grid.points.reserve(static_cast<std::size_t>(resolution + 1) * (resolution + 2) / 2);
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution - i; ++j) {
            grid.points.push_back({i / n, j / n, (resolution - i - j) / n});
        }
    }
    return grid;
}

std::vector<PolicyMapRow> policy_map(const SimplexGrid& grid, const EpidemicParams& params,
                                     const EconParams& econ, const AssessmentMatrix& matrix,
                                     std::size_t workers) {
    std::vector<PolicyMapRow> rows(grid.points.size() * 3);
    parallel_for(
        grid.points.size(),
        [&](std::size_t p) {
            const Prevalence& prev = grid.points[p];
            const auto points = evaluate_policies(prev, params, econ, matrix);
            for (AssessedState s : kAssessedStates) {
                const AssessedPolicyPoint& pt = points[index(s)];
                rows[3 * p + index(s)] = {prev,
                                          s,
                                          pt.effect.k,
                                          pt.effect.l,
                                          pt.subsidized.s_star,
                                          pt.subsidized.treat_prob,
                                          pt.unsubsidized_prob,
                                          pt.public_treat};
            }
        },
        workers);
    return rows;
}

std::vector<double> delta_range(double first, double last, double step) {
    std::vector<ValidationIssue> issues;
    if (!std::isfinite(first)) issues.push_back({"delta_min", first, "must be finite"});
    if (!std::isfinite(last) || last < first) issues.push_back({"delta_max", last, "must be >= delta_min"});
    if (!std::isfinite(step) || !(step > 0.0)) issues.push_back({"delta_step", step, "must be > 0"});
    if (!issues.empty()) throw ValidationError(std::move(issues));
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::min(first + step * double(i), last));
    if (out.back() < last - 1e-9 * step) out.push_back(last);
    return out;
}

std::vector<DeltaSweepRow> delta_sweep(const std::vector<double>& deltas, const EpidemicParams& params,
                                       const EconParams& econ, const AssessmentMatrix& matrix,
                                       const Prevalence& prevalence, std::size_t workers) {
    if (deltas.empty()) throw ValidationError({{"delta_range", 0.0, "must not be empty"}});
    const auto effects = assessed_effects(prevalence, params, matrix);
    EpidemicParams survival_params = params;
    survival_params.tau_star = kSweepSurvivalYears;
    const DirectRisks mu =
        direct_risks(survival_params, {.i0 = prevalence.p_i, .h0_comm = prevalence.p_h});

    std::vector<DeltaSweepRow> rows(deltas.size() * 3);
    parallel_for(
        deltas.size(),
        [&](std::size_t d) {
            EconParams e = econ;
            e.delta_m = deltas[d];
            e.decomposition.reset();
            for (AssessedState s : kAssessedStates) {
                const auto [k, l] = effects[index(s)];
                const SubsidyDecision dec = optimal_subsidy(k, l, e);
                double survival = std::numeric_limits<double>::quiet_NaN();
                if (assessed_marginal(prevalence, matrix, s) > 0.0) {
                    const Posterior post = posterior(prevalence, matrix, s);
                    double dying = 0.0;
                    for (TreeState t : kTreeStates) {
                        const auto q = index(t);
                        dying += post[t] * (dec.treat_prob * mu.mu_t[q] + (1.0 - dec.treat_prob) * mu.mu_u[q]);
                    }
                    survival = 1.0 - dying;
                }
                rows[3 * d + index(s)] = {deltas[d], s, dec.s_star, dec.treat_prob, survival};
            }
        },
        workers);
    return rows;
}

std::vector<ScenarioRun> scenario_matrix(const ForestState& initial, const EpidemicParams& params,
                                         const EconParams& econ, const AssessmentMatrix& matrix,
                                         const SimulationOptions& options, std::size_t workers) {
    std::vector<ScenarioRun> runs;
    for (PrivateArm priv : kPrivateArms) {
        for (PublicArm pub : kPublicArms) runs.push_back({ScenarioSpec{priv, pub, std::nullopt}, {}});
    }
    parallel_for(
        runs.size(),
        [&](std::size_t r) {
            runs[r].trajectory = simulate(initial, params, econ, matrix, runs[r].scenario, options);
        },
        workers);
    return runs;
}

std::vector<TimingRow> timing_study(const std::vector<double>& switch_times, const ForestState& initial,
                                    const EpidemicParams& params, const EconParams& econ,
                                    const AssessmentMatrix& matrix, const SimulationOptions& options,
                                    std::size_t workers) {
    std::vector<ValidationIssue> issues;
    for (double s : switch_times) {
        if (!(s >= 0.0 && s <= options.horizon)) issues.push_back({"switch_time", s, "must lie in [0, horizon]"});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));

    std::vector<TimingRow> rows(switch_times.size());
    parallel_for(
        switch_times.size(),
        [&](std::size_t i) {
            const ScenarioSpec spec{PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, switch_times[i]};
            const Trajectory traj = simulate(initial, params, econ, matrix, spec, options);
            const ForestState& end = traj.records.back().state;
            const double public_total = end.h_m + end.i_m + end.d_m;
            const double private_total = end.h_o + end.i_o + end.d_o;
            rows[i] = {switch_times[i], 1.0 - end.dying(),
                       public_total > 0.0 ? (end.h_m + end.i_m) / public_total : 0.0,
                       private_total > 0.0 ? (end.h_o + end.i_o) / private_total : 0.0};
        },
        workers);
    return rows;
}

}  // namespace pestpolicy
