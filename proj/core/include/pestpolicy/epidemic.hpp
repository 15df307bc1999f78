#pragma once

// Six-compartment pest model over public (m) and private (o) trees, with
// treatment policies fed back from the current community state.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pestpolicy/domain.hpp"
#include "pestpolicy/game.hpp"
#include "pestpolicy/policy.hpp"

namespace pestpolicy {

/// Population fractions by ownership and health. Also used for rates.
struct ForestState {
    double h_m = 0.0;
    double i_m = 0.0;
    double d_m = 0.0;
    double h_o = 0.0;
    double i_o = 0.0;
    double d_o = 0.0;

    std::array<double, 6> to_array() const noexcept { return {h_m, i_m, d_m, h_o, i_o, d_o}; }
    static ForestState from_array(const std::array<double, 6>& v) noexcept {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    double total() const noexcept { return h_m + i_m + d_m + h_o + i_o + d_o; }
    double dying() const noexcept { return d_m + d_o; }
    /// Community prevalence (p_h, p_i, p_d) pooled over both ownerships.
    Prevalence prevalence() const noexcept { return {h_m + h_o, i_m + i_o, d_m + d_o}; }

    bool operator==(const ForestState&) const = default;
};

std::vector<ValidationIssue> check(const ForestState& s);
ForestState validate(const ForestState& s);

/// Case-study start: given public share, infestation split proportionally.
ForestState initial_state(double public_share, double infested_fraction) noexcept;

/// Treatment probability per assessed label, indexed by AssessedState.
struct AssessedPolicy {
    std::array<double, 3> treat{};
};

/// Treatment probability per true state.
struct TrueStatePolicy {
    double p_th = 0.0;
    double p_ti = 0.0;
    double p_td = 0.0;  // affects only welfare accounting
};

TrueStatePolicy assessed_to_true(const AssessedPolicy& policy, const AssessmentMatrix& matrix) noexcept;

/// Right-hand side of the compartment ODE.
ForestState derivatives(const ForestState& state, const EpidemicParams& params,
                        const TrueStatePolicy& pol_m, const TrueStatePolicy& pol_o) noexcept;

struct OwnershipPolicy {
    AssessedPolicy assessed;
    TrueStatePolicy true_state;
};

struct PolicySnapshot {
    OwnershipPolicy public_trees;
    OwnershipPolicy private_trees;
    std::array<double, 3> subsidies{};  // s* per assessed label (0 unless subsidized)
    std::array<TreatmentEffect, 3> effects{};
};

PolicySnapshot policy_at_state(const ForestState& state, const EpidemicParams& params,
                               const EconParams& econ, const AssessmentMatrix& matrix,
                               PrivateArm private_arm, PublicArm public_arm);

/// Annualized flows in currency per year, per ownership.
struct WelfareFlows {
    double benefit_m = 0.0;
    double benefit_o = 0.0;
    double treatment_cost_m = 0.0;
    double subsidy_cost_o = 0.0;
    double mortality_cost_m = 0.0;
    double mortality_cost_o = 0.0;
    double net_m = 0.0;
    double net_o = 0.0;
};

class MissingDecomposition : public Error {
public:
    MissingDecomposition() : Error("welfare accounting needs econ.v_m, econ.w_m and econ.w_m_prime") {}
};

WelfareFlows welfare_flows(const ForestState& state, const PolicySnapshot& policies,
                           const ForestState& rates, const EconParams& econ,
                           const EpidemicParams& params, const AssessmentMatrix& matrix);

struct ScenarioSpec {
    PrivateArm private_arm = PrivateArm::OptimalSubsidy;
    PublicArm public_arm = PublicArm::OptimalPublic;
    /// Before this time the no-action pair (NoSubsidy, NoPublicTreatment) applies.
    std::optional<double> switch_time;
};

struct TrajectoryRecord {
    double time = 0.0;
    ForestState state;
    TrueStatePolicy policy_m;
    TrueStatePolicy policy_o;
    std::array<double, 3> subsidies{};
    std::optional<WelfareFlows> welfare;  // present when econ has a decomposition
};

struct SimulationOptions {
    double horizon = 50.0;
    double dt = 1.0 / 64.0;
    double output_interval = 0.25;
    /// Receives diagnostic messages (e.g. renormalization); may be empty.
    std::function<void(std::string_view)> log;
};

struct SimulationStats {
    std::size_t steps = 0;
    std::size_t events = 0;
    std::size_t sliding_entries = 0;
    std::size_t chatter_fallbacks = 0;
    std::size_t renormalizations = 0;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    SimulationStats stats;
};

/// A compartment left [-1e-9, 1 + 1e-9] within one step.
class StepTooLarge : public Error {
public:
    StepTooLarge(double time, double dt);
    double time() const noexcept { return time_; }
    double dt() const noexcept { return dt_; }

private:
    double time_;
    double dt_;
};

/// Fixed-step RK4 with policy feedback.
///
/// Policies are piecewise smooth in the state. The integrator keeps the
/// active piece of every policy formula fixed within a step, locates the
/// time at which a piece changes by bisection, and restarts there. Where a
/// discontinuous public decision is attracting from both sides the state
/// slides along the switching surface with the Filippov convex combination
/// of the two fields, instead of chattering at the step size.
Trajectory simulate(const ForestState& initial, const EpidemicParams& params, const EconParams& econ,
                    const AssessmentMatrix& matrix, const ScenarioSpec& scenario,
                    const SimulationOptions& options = {});

}  // namespace pestpolicy
