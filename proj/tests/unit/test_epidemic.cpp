#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pestpolicy/epidemic.hpp"
#include "pestpolicy/sweep.hpp"

using namespace pestpolicy;

namespace {

struct Fixture {
    EpidemicParams params = case_study_epidemic();
    EconParams econ = case_study_econ();
    AssessmentMatrix matrix = case_study_assessment();
    ForestState start = initial_state(0.4, 0.01);

    Trajectory run(PrivateArm pa, PublicArm pu, SimulationOptions opts = {},
                   std::optional<double> switch_time = std::nullopt) const {
        return simulate(start, params, econ, matrix, {pa, pu, switch_time}, opts);
    }
};

double dying(const TrajectoryRecord& r) { return r.state.d_m + r.state.d_o; }

const TrajectoryRecord& at(const Trajectory& t, double time) {
    for (const auto& r : t.records) {
        if (std::abs(r.time - time) < 1e-9) return r;
    }
    throw std::runtime_error("no record at requested time");
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (const auto& r : a.records) {
        const auto x = r.state.to_array();
        const auto y = at(b, r.time).state.to_array();
        for (std::size_t c = 0; c < 6; ++c) worst = std::max(worst, std::abs(x[c] - y[c]));
    }
    return worst;
}

}  // namespace

TEST(Initial, CaseStudySplit) {
    const ForestState x = initial_state(0.4, 0.01);
    EXPECT_DOUBLE_EQ(x.h_m, 0.396);
    EXPECT_DOUBLE_EQ(x.i_m, 0.004);
    EXPECT_DOUBLE_EQ(x.h_o, 0.594);
    EXPECT_DOUBLE_EQ(x.i_o, 0.006);
    EXPECT_NEAR(x.total(), 1.0, 1e-15);
}

TEST(Derivatives, HandEvaluatedDeathRates) {
    const ForestState x{0.396, 0.004, 0, 0.594, 0.006, 0};
    const ForestState r = derivatives(x, case_study_epidemic(), {}, {});
    EXPECT_NEAR(r.d_m, 0.0012, 1e-15);
    EXPECT_NEAR(r.d_o, 0.0018, 1e-15);
    // New infestations: β H_m (I_m + I_o).
    EXPECT_NEAR(r.h_m, -0.396 * 0.01, 1e-15);
}

TEST(Derivatives, DiseaseFreeIsFixed) {
    const ForestState r = derivatives({0.3, 0, 0.1, 0.5, 0, 0.1}, case_study_epidemic(), {}, {});
    for (double v : r.to_array()) EXPECT_EQ(v, 0.0);
}

TEST(Derivatives, RatesSumToZero) {
    auto g = oracle::rng(51);
    for (int n = 0; n < 5000; ++n) {
        std::array<double, 6> v;
        for (double& x : v) x = oracle::uniform(g, 0, 1);
        EpidemicParams p = case_study_epidemic();
        p.beta = oracle::uniform(g, 0, 5);
        p.eps_h = oracle::uniform(g, 0, 1);
        p.eps_i = oracle::uniform(g, 0, 1);
        const TrueStatePolicy pm{oracle::uniform(g, 0, 1), oracle::uniform(g, 0, 1), 0};
        const TrueStatePolicy po{oracle::uniform(g, 0, 1), oracle::uniform(g, 0, 1), 0};
        const ForestState r = derivatives(ForestState::from_array(v), p, pm, po);
        EXPECT_NEAR(r.total(), 0.0, 1e-14);
    }
}

TEST(Derivatives, MatchedPoliciesKeepOwnershipRatio) {
    auto g = oracle::rng(52);
    for (int n = 0; n < 1000; ++n) {
        const double share = oracle::uniform(g, 0.05, 0.95);
        const double h = oracle::uniform(g, 0, 1), i = oracle::uniform(g, 0, 1 - h);
        const ForestState x{share * h, share * i, share * (1 - h - i),
                            (1 - share) * h, (1 - share) * i, (1 - share) * (1 - h - i)};
        const TrueStatePolicy pol{oracle::uniform(g, 0, 1), oracle::uniform(g, 0, 1), 0};
        const ForestState r = derivatives(x, case_study_epidemic(), pol, pol);
        EXPECT_NEAR(r.h_m * (1 - share), r.h_o * share, 1e-15);
        EXPECT_NEAR(r.i_m * (1 - share), r.i_o * share, 1e-15);
    }
}

TEST(Simulate, AllHealthyStaysPut) {
    Fixture f;
    f.start = initial_state(0.4, 0.0);
    for (PrivateArm pa : kPrivateArms) {
        const Trajectory t = f.run(pa, PublicArm::OptimalPublic, {.horizon = 10});
        for (const auto& r : t.records) EXPECT_EQ(r.state, f.start);
    }
}

TEST(Simulate, NoTreatmentKillsMostTreesWithinFifteenYears) {
    const Trajectory t = Fixture{}.run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment,
                                       {.horizon = 15});
    EXPECT_GE(dying(t.records.back()), 0.80);
}

TEST(Simulate, OptimalPoliciesSaveAboutFourFifths) {
    const Trajectory t = Fixture{}.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic);
    const double survival = 1.0 - dying(t.records.back());
    EXPECT_GE(survival, 0.70);
    EXPECT_LE(survival, 0.90);
}

TEST(Simulate, ConservationAndMonotoneDeathOver200Years) {
    const Fixture f;
    for (PrivateArm pa : kPrivateArms) {
        for (PublicArm pu : kPublicArms) {
            const Trajectory t = f.run(pa, pu, {.horizon = 200});
            double dm = 0.0, d_o = 0.0;
            for (const auto& r : t.records) {
                EXPECT_LE(std::abs(r.state.total() - 1.0), 1e-9);
                EXPECT_GE(r.state.d_m, dm);
                EXPECT_GE(r.state.d_o, d_o);
                dm = r.state.d_m;
                d_o = r.state.d_o;
            }
        }
    }
}

TEST(Simulate, StepHalvingConverges) {
    const Fixture f;
    for (PrivateArm pa : kPrivateArms) {
        for (PublicArm pu : kPublicArms) {
            const Trajectory coarse = f.run(pa, pu, {.dt = 1.0 / 64});
            const Trajectory fine = f.run(pa, pu, {.dt = 1.0 / 128});
            EXPECT_LE(sup_distance(coarse, fine), 1e-6) << name(pa) << "/" << name(pu);
        }
    }
}

TEST(Simulate, ScenarioDominance) {
    const Fixture f;
    const Trajectory best = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic);
    const Trajectory nosub = f.run(PrivateArm::NoSubsidy, PublicArm::NoPublicTreatment);
    const Trajectory none = f.run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment);
    for (std::size_t j = 0; j < best.records.size(); ++j) {
        EXPECT_LE(dying(best.records[j]), dying(nosub.records[j]) + 1e-12);
        EXPECT_LE(dying(nosub.records[j]), dying(none.records[j]) + 1e-12);
    }
}

TEST(Simulate, NullPoliciesIndistinguishable) {
    const Fixture f;
    const Trajectory nosub = f.run(PrivateArm::NoSubsidy, PublicArm::NoPublicTreatment);
    const Trajectory none = f.run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment);
    double worst = 0.0;
    for (std::size_t j = 0; j < none.records.size(); ++j) {
        worst = std::max(worst, std::abs(dying(nosub.records[j]) - dying(none.records[j])));
    }
    EXPECT_LE(worst, 0.05);
}

TEST(Simulate, OwnershipRatioHeldWithoutTreatment) {
    const Trajectory t = Fixture{}.run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment);
    for (const auto& r : t.records) {
        EXPECT_NEAR(r.state.h_m / (r.state.h_m + r.state.h_o), 0.4, 1e-9);
        EXPECT_NEAR(r.state.d_m * 0.6, r.state.d_o * 0.4, 1e-9);
    }
}

TEST(Simulate, OutputCadenceDoesNotChangeTrajectory) {
    const Fixture f;
    const Trajectory dense = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, {.output_interval = 0.1});
    const Trajectory sparse = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, {.output_interval = 1.0});
    for (const auto& r : sparse.records) {
        const auto& d = at(dense, r.time);
        const auto x = r.state.to_array(), y = d.state.to_array();
        for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(x[c], y[c], 1e-12) << "t=" << r.time;
    }
}

TEST(Simulate, OutputSamplesOnCadence) {
    const Trajectory t = Fixture{}.run(PrivateArm::NoSubsidy, PublicArm::OptimalPublic, {.horizon = 10});
    ASSERT_EQ(t.records.size(), 41u);
    for (std::size_t j = 0; j < t.records.size(); ++j) EXPECT_NEAR(t.records[j].time, 0.25 * j, 1e-12);
}

TEST(Simulate, LateSwitchIsNoAction) {
    const Fixture f;
    const Trajectory late = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, {.horizon = 20}, 20.0);
    const Trajectory idle = f.run(PrivateArm::NoSubsidy, PublicArm::NoPublicTreatment, {.horizon = 20});
    EXPECT_LE(sup_distance(late, idle), 1e-12);
}

TEST(Simulate, SwitchAtZeroIsAlwaysOptimal) {
    const Fixture f;
    const Trajectory zero = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, {}, 0.0);
    const Trajectory always = f.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic);
    EXPECT_LE(sup_distance(zero, always), 1e-12);
}

TEST(Simulate, HugeStepIsReported) {
    try {
        Fixture{}.run(PrivateArm::NoPrivateTreatment, PublicArm::NoPublicTreatment, {.dt = 5.0});
        FAIL() << "expected StepTooLarge";
    } catch (const StepTooLarge& e) {
        EXPECT_EQ(e.dt(), 5.0);
    }
}

TEST(Simulate, RejectsInvalidInputs) {
    Fixture f;
    f.start = {0.5, 0.5, 0.5, 0, 0, 0};
    EXPECT_THROW(f.run(PrivateArm::NoSubsidy, PublicArm::OptimalPublic), ValidationError);
    Fixture g;
    EXPECT_THROW(g.run(PrivateArm::NoSubsidy, PublicArm::OptimalPublic, {.dt = -1}), ValidationError);
}

TEST(Simulate, RecordsCarryPolicies) {
    const Trajectory t = Fixture{}.run(PrivateArm::OptimalSubsidy, PublicArm::OptimalPublic, {.horizon = 1});
    const auto& r = t.records[1];
    const PolicySnapshot s = policy_at_state(r.state, case_study_epidemic(), case_study_econ(),
                                             case_study_assessment(), PrivateArm::OptimalSubsidy,
                                             PublicArm::OptimalPublic);
    EXPECT_NEAR(r.policy_o.p_ti, s.private_trees.true_state.p_ti, 1e-9);
    EXPECT_NEAR(r.subsidies[1], s.subsidies[1], 1e-9);
    EXPECT_FALSE(r.welfare.has_value());
}
