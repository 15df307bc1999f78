// Acceptance checks for the engine. One PASS/FAIL line per criterion; the
// exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pestpolicy/epidemic.hpp"
#include "pestpolicy/game.hpp"
#include "pestpolicy/risk.hpp"
#include "pestpolicy/sweep.hpp"

using namespace pestpolicy;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

Trajectory case_study_run(PrivateArm pa, PublicArm pu, double horizon, double dt = 1.0 / 64) {
    SimulationOptions opts;
    opts.horizon = horizon;
    opts.dt = dt;
    return simulate(initial_state(0.4, 0.01), case_study_epidemic(), case_study_econ(), case_study_assessment(),
                    {pa, pu, std::nullopt}, opts);
}

Outcome baseline_mortality() {
    const auto start = Clock::now();
    const Trajectory t = case_study_run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment, 15.0);
    const double secs = seconds_since(start);
    const double d15 = t.records.back().state.dying();
    return {d15 >= 0.80 && secs < 1.0, fmt("D(15) = %.6f, runtime %.3f s", d15, secs)};
}

Outcome optimal_survival() {
    const auto start = Clock::now();
    const Trajectory t = case_study_run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, 50.0);
    const double secs = seconds_since(start);
    const double survival = 1.0 - t.records.back().state.dying();
    return {survival >= 0.70 && survival <= 0.90 && secs < 5.0,
            fmt("survival(50) = %.6f, runtime %.3f s", survival, secs)};
}

Outcome null_policy_indistinguishable() {
    const Trajectory nosub = case_study_run(PrivateArm::NoSubsidy, PublicArm::NoPublicTreatment, 50.0);
    const Trajectory none = case_study_run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment, 50.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < none.records.size(); ++j) {
        worst = std::max(worst, std::abs(nosub.records[j].state.dying() - none.records[j].state.dying()));
    }
    return {worst <= 0.05, fmt("sup |D_nosub - D_none| = %.6f", worst)};
}

// Owner values spread by at least 100 and l up to 10k; c from 10 to 600,
// Δ_m up to 3000. The case study (k ~ 0.03-0.17, l ~ 7k, b - a = 425) lies inside.
struct Draw {
    double k, l;
    EconParams e;
};

Draw random_draw(std::mt19937_64& g) {
    const double k = oracle::uniform(g, 0.01, 1.0);
    const double l = oracle::uniform(g, 0.0, 10.0 * k);
    const double a = oracle::uniform(g, 0.0, 1500.0);
    const double b = a + oracle::uniform(g, 100.0, 1500.0);
    const double c = oracle::uniform(g, 10.0, 600.0);
    const double dm = oracle::uniform(g, 0.0, 3000.0);
    return {k, l, {c, a, b, dm, 1.5 * dm, std::nullopt}};
}

Outcome subsidy_oracle() {
    const auto start = Clock::now();
    auto g = oracle::rng(1001);
    int failures = 0;
    double worst_gap = -INFINITY;
    for (int n = 0; n < 1000; ++n) {
        const Draw d = random_draw(g);
        const SubsidyDecision dec = optimal_subsidy(d.k, d.l, d.e);
        const auto grid = oracle::muni_grid(d.k, d.l, d.e.cost_c, d.e.a, d.e.b, d.e.delta_m, 10000);
        const double at_star = oracle::muni_utility(dec.s_star, d.k, d.l, d.e.cost_c, d.e.a, d.e.b, d.e.delta_m);
        const double gap = grid.best - grid.max_step_change - at_star;
        worst_gap = std::max(worst_gap, gap);
        if (gap > 0.0 || dec.s_star < 0.0 || dec.s_star > d.e.cost_c) ++failures;
    }
    const double secs = seconds_since(start);
    return {failures == 0 && secs < 30.0,
            fmt("%g of 1000 draws below grid max minus step variation, worst margin %.3g, runtime %.2f s",
                failures, worst_gap, secs)};
}

Outcome bateman_oracle() {
    auto g = oracle::rng(1002);
    double worst = 0.0;
    int near_equal = 0;
    for (int n = 0; n < 10000; ++n) {
        const double r1 = oracle::uniform(g, 1e-6, 5.0);
        double r2 = oracle::uniform(g, 1e-6, 5.0);
        if (n % 4 == 0) {
            r2 = r1 * (1.0 + std::pow(10.0, -oracle::uniform(g, 3.0, 12.0)));
            ++near_equal;
        }
        const double tau = oracle::uniform(g, 1e-3, 10.0);
        const double h0 = oracle::uniform(g, 0, 1), i0 = oracle::uniform(g, 0, 1 - h0);
        const double d0 = 1 - h0 - i0;
        worst = std::max(worst, std::abs(bateman_d(h0, i0, d0, r1, r2, tau) -
                                         oracle::chain_dying(h0, i0, d0, r1, r2, tau)));
    }
    return {worst <= 1e-8, fmt("max |closed - ODE| = %.3g over 10000 draws (%g near-equal rates)", worst, near_equal)};
}

Outcome conservation_and_monotonicity() {
    double worst_sum = 0.0;
    double worst_drop = 0.0;
    for (PrivateArm pa : kPrivateArms) {
        for (PublicArm pu : kPublicArms) {
            const Trajectory t = case_study_run(pa, pu, 200.0);
            double prev = 0.0;
            for (const auto& r : t.records) {
                worst_sum = std::max(worst_sum, std::abs(r.state.total() - 1.0));
                worst_drop = std::max(worst_drop, prev - r.state.dying());
                prev = r.state.dying();
            }
        }
    }
    return {worst_sum <= 1e-9 && worst_drop <= 0.0,
            fmt("max |sum - 1| = %.3g, largest decrease in D = %.3g", worst_sum, std::max(worst_drop, 0.0))};
}

Outcome bertrand_certificate() {
    auto g = oracle::rng(1003);
    double worst_gain = -INFINITY;
    for (int n = 0; n < 200; ++n) {
        const Draw d = random_draw(g);
        const double c = d.e.cost_c, a = d.e.a, b = d.e.b, k = d.k;
        const double s = oracle::uniform(g, std::max(0.0, c - b * k), c);
        const double eq = c - s;
        const double base = firm_expected_profit(eq, eq, s, k, a, b, c);
        for (int j = 0; j < 1000; ++j) {
            const double dev = (c + b * k) * j / 999.0;
            worst_gain = std::max(worst_gain, firm_expected_profit(dev, eq, s, k, a, b, c) - base);
        }
    }
    double worst_excess = -INFINITY, worst_equal = 0.0;
    int monopoly_draws = 0;
    for (int n = 0; n < 20000 && monopoly_draws < 200; ++n) {
        Draw d = random_draw(g);
        if (!(d.e.b * d.k < d.e.cost_c)) continue;
        ++monopoly_draws;
        worst_excess = std::max(worst_excess, monopoly_case(d.k, d.l, d.e).muni_eu -
                                                  optimal_subsidy(d.k, d.l, d.e).muni_eu);
        d.e.b = d.e.a;
        worst_equal = std::max(worst_equal, std::abs(monopoly_case(d.k, d.l, d.e).muni_eu -
                                                     optimal_subsidy(d.k, d.l, d.e).muni_eu));
    }
    // The equilibrium margin (c - s) + s - c is zero only up to rounding, so
    // gains are compared at the same 1e-9 used for the utility comparison.
    return {worst_gain <= 1e-9 && worst_excess <= 1e-9 && worst_equal <= 1e-9,
            fmt("best deviation gain %.3g; monopoly minus equal utility <= %.3g; |diff| at a=b <= %.3g", worst_gain,
                worst_excess, worst_equal)};
}

Outcome treatment_probability_properties() {
    auto g = oracle::rng(1004);
    const double delta = 1e-6;
    double worst_jump = 0.0;
    int range_violations = 0, order_violations = 0;
    for (int n = 0; n < 1000; ++n) {
        Draw d = random_draw(g);
        const double kl = d.k + d.l, c = d.e.cost_c, a = d.e.a, b = d.e.b, k = d.k;
        auto prob = [&](double dm) {
            EconParams e = d.e;
            e.delta_m = dm;
            return optimal_subsidy(k, d.l, e).treat_prob;
        };
        for (double boundary : {(c + b * k - 2 * a * k) / kl, std::abs(c - b * k) / kl}) {
            if (boundary < delta) continue;
            const double at = prob(boundary);
            worst_jump = std::max({worst_jump, std::abs(prob(boundary + delta) - at),
                                   std::abs(at - prob(boundary - delta))});
        }
        double prev = -1.0;
        for (int j = 0; j <= 100; ++j) {
            const double p = prob(30.0 * j);
            if (p < 0.0 || p > 1.0) ++range_violations;
            if (p < prev) ++order_violations;
            prev = p;
        }
        prev = -1.0;
        for (int j = 0; j <= 100; ++j) {
            const double p = private_treatment_probability(k, d.l, d.e, c * j / 100.0);
            if (p < 0.0 || p > 1.0) ++range_violations;
            if (p < prev) ++order_violations;
            prev = p;
        }
    }
    return {worst_jump <= 1e-6 && range_violations == 0 && order_violations == 0,
            fmt("max boundary jump %.3g, %g range and %g ordering violations", worst_jump, range_violations,
                order_violations)};
}

Outcome timing_monotonicity() {
    const std::vector<double> times{0, 3.5, 7, 10.5, 14, 17.5, 21, 24.5, 28};
    SimulationOptions opts;
    const auto rows = timing_study(times, initial_state(0.4, 0.01), case_study_epidemic(), case_study_econ(),
                                   case_study_assessment(), opts);
    bool nonincreasing = true;
    for (std::size_t j = 1; j < rows.size(); ++j) nonincreasing &= rows[j].survival_total <= rows[j - 1].survival_total;
    return {nonincreasing && rows[1].survival_total > rows[4].survival_total,
            fmt("survival(0) = %.4f, survival(3.5) = %.4f, survival(14) = %.4f", rows[0].survival_total,
                rows[1].survival_total, rows[4].survival_total)};
}

Outcome step_halving() {
    double worst = 0.0;
    for (PrivateArm pa : kPrivateArms) {
        for (PublicArm pu : kPublicArms) {
            const Trajectory coarse = case_study_run(pa, pu, 50.0, 1.0 / 64);
            const Trajectory fine = case_study_run(pa, pu, 50.0, 1.0 / 128);
            for (std::size_t j = 0; j < coarse.records.size(); ++j) {
                const auto x = coarse.records[j].state.to_array();
                const auto y = fine.records[j].state.to_array();
                for (std::size_t c = 0; c < 6; ++c) worst = std::max(worst, std::abs(x[c] - y[c]));
            }
        }
    }
    return {worst <= 1e-6, fmt("max sup-norm difference %.3g over six scenarios", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"baseline-mortality", baseline_mortality},
        {"optimal-policy-survival", optimal_survival},
        {"null-policy-indistinguishable", null_policy_indistinguishable},
        {"subsidy-optimum-oracle", subsidy_oracle},
        {"bateman-oracle", bateman_oracle},
        {"conservation-monotonicity", conservation_and_monotonicity},
        {"bertrand-deviation-certificate", bertrand_certificate},
        {"treatment-probability-properties", treatment_probability_properties},
        {"timing-monotonicity", timing_monotonicity},
        {"step-halving", step_halving},
    };
    int failures = 0;
    for (const auto& [id, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
