#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pestpolicy/domain.hpp"

using namespace pestpolicy;

TEST(Domain, FixedStateOrdering) {
    EXPECT_EQ(index(kTreeStates[0]), 0u);
    EXPECT_EQ(index(kTreeStates[2]), 2u);
    EXPECT_EQ(name(TreeState::Infested), "infested");
    EXPECT_EQ(name(AssessedState::Dying), "dying");
    EXPECT_EQ(parse_assessed("i"), AssessedState::Infested);
    EXPECT_EQ(parse_assessed("healthy"), AssessedState::Healthy);
    EXPECT_FALSE(parse_assessed("sick").has_value());
}

TEST(Domain, CaseStudyPrevalenceIsValid) {
    const Prevalence p{0.8, 0.15, 0.05};
    EXPECT_TRUE(check(p).empty());
    EXPECT_EQ(validate(p), p);
}

TEST(Domain, PrevalenceOffSimplexIsRejectedWithSum) {
    try {
        validate(Prevalence{0.5, 0.5, 0.5});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_EQ(e.issues()[0].field, "prevalence");
        EXPECT_DOUBLE_EQ(e.issues()[0].value, 1.5);
        EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
    }
}

TEST(Domain, SmallDriftIsRenormalized) {
    const Prevalence p = validate(Prevalence{0.8 + 4e-10, 0.15, 0.05});
    EXPECT_NEAR(p.p_h + p.p_i + p.p_d, 1.0, 1e-15);
}

TEST(Domain, ReportsEveryProblem) {
    const auto issues = check(Prevalence{-0.5, 2.0, std::numeric_limits<double>::quiet_NaN()});
    EXPECT_EQ(issues.size(), 3u);
}

TEST(Domain, CaseStudyAssessmentRowsAreValid) {
    const AssessmentMatrix m = case_study_assessment();
    EXPECT_TRUE(check(m).empty());
    EXPECT_DOUBLE_EQ(m(TreeState::Healthy, AssessedState::Healthy), 0.89);
    EXPECT_DOUBLE_EQ(m(TreeState::Healthy, AssessedState::Infested), 0.10);
    EXPECT_DOUBLE_EQ(m(TreeState::Healthy, AssessedState::Dying), 0.01);
}

TEST(Domain, AssessmentRowMustSumToOne) {
    AssessmentMatrix m = case_study_assessment();
    m.entries[1] = {0.5, 0.5, 0.5};
    const auto issues = check(m);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_EQ(issues[0].field, "assessment[infested]");
}

TEST(Domain, EpidemicParamRanges) {
    EpidemicParams p = case_study_epidemic();
    EXPECT_TRUE(check(p).empty());
    p.beta = 0.0;
    p.eps_i = 1.5;
    EXPECT_EQ(check(p).size(), 2u);
    EXPECT_THROW(validate(p), ValidationError);
}

TEST(Domain, EconDecompositionMustAddUp) {
    EconParams e = case_study_econ();
    EXPECT_TRUE(check(e).empty());
    e.decomposition = SocialValues{500.0, 650.0, 1350.0};
    EXPECT_TRUE(check(e).empty());
    e.decomposition->w_m = 600.0;
    const auto issues = check(e);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_EQ(issues[0].field, "econ.delta_m");
    e = case_study_econ();
    e.b = e.a - 1.0;
    EXPECT_EQ(check(e).size(), 1u);
}

TEST(Domain, ValidationIsTotalOverFiniteInputs) {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> wide(-1e6, 1e6);
    std::uniform_real_distribution<double> unit(-0.5, 1.5);
    for (int n = 0; n < 2000; ++n) {
        const Prevalence p{unit(g), unit(g), unit(g)};
        const EpidemicParams e{wide(g), wide(g), wide(g), unit(g), unit(g), wide(g)};
        const EconParams c{wide(g), wide(g), wide(g), wide(g), wide(g), std::nullopt};
        for (auto attempt : {0, 1, 2}) {
            try {
                if (attempt == 0) validate(p);
                if (attempt == 1) validate(e);
                if (attempt == 2) validate(c);
            } catch (const ValidationError& err) {
                EXPECT_FALSE(err.issues().empty());
            }
        }
    }
}
