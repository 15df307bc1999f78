#include "pestpolicy/policy.hpp"

#include "pestpolicy/bayes.hpp"
#include "pestpolicy/risk.hpp"

namespace pestpolicy {

std::string_view name(PrivateArm arm) noexcept {
    switch (arm) {
        case PrivateArm::NoPrivateTreatment: return "no_treatment";
        case PrivateArm::NoSubsidy: return "no_subsidy";
        case PrivateArm::OptimalSubsidy: return "optimal_subsidy";
    }
    return "unknown";
}

std::string_view name(PublicArm arm) noexcept {
    switch (arm) {
        case PublicArm::NoPublicTreatment: return "no_treatment";
        case PublicArm::OptimalPublic: return "optimal";
    }
    return "unknown";
}

std::optional<PrivateArm> parse_private_arm(std::string_view text) noexcept {
    for (PrivateArm arm : kPrivateArms) {
        if (text == name(arm)) return arm;
    }
    return std::nullopt;
}

std::optional<PublicArm> parse_public_arm(std::string_view text) noexcept {
    for (PublicArm arm : kPublicArms) {
        if (text == name(arm)) return arm;
    }
    return std::nullopt;
}

std::array<TreatmentEffect, 3> assessed_effects(const Prevalence& prior, const EpidemicParams& params,
                                                const AssessmentMatrix& matrix) {
    std::array<TreatmentEffect, 3> effects{};
    if (!(prior.p_i > 0.0)) return effects;
    const RiskProfile risks = risk_profile(params, {.i0 = prior.p_i, .h0_comm = prior.p_h});
    for (AssessedState s : kAssessedStates) {
        if (!(assessed_marginal(prior, matrix, s) > 0.0)) continue;
        effects[index(s)] = treatment_effects(posterior(prior, matrix, s), risks);
    }
    return effects;
}

std::array<AssessedPolicyPoint, 3> evaluate_policies(const Prevalence& prior,
                                                     const EpidemicParams& params,
                                                     const EconParams& econ,
                                                     const AssessmentMatrix& matrix) {
    const auto effects = assessed_effects(prior, params, matrix);
    std::array<AssessedPolicyPoint, 3> out{};
    for (std::size_t j = 0; j < 3; ++j) {
        const auto [k, l] = effects[j];
        AssessedPolicyPoint& p = out[j];
        p.effect = effects[j];
        p.subsidized = optimal_subsidy(k, l, econ);
        p.unsubsidized_prob = k > 0.0 ? private_treatment_probability(k, l, econ, 0.0) : 0.0;
        p.public_treat = public_treatment_decision(k, l, econ);
    }
    return out;
}

}  // namespace pestpolicy
