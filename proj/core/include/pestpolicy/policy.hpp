#pragma once

// Policy arms and the per-assessed-state policy evaluation shared by the
// epidemic simulator and the batch sweeps.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pestpolicy/domain.hpp"
#include "pestpolicy/game.hpp"

namespace pestpolicy {

enum class PrivateArm : std::uint8_t { NoPrivateTreatment, NoSubsidy, OptimalSubsidy };
enum class PublicArm : std::uint8_t { NoPublicTreatment, OptimalPublic };

inline constexpr std::array<PrivateArm, 3> kPrivateArms{
    PrivateArm::NoPrivateTreatment, PrivateArm::NoSubsidy, PrivateArm::OptimalSubsidy};
inline constexpr std::array<PublicArm, 2> kPublicArms{PublicArm::NoPublicTreatment,
                                                      PublicArm::OptimalPublic};

// Short names used in file names and on the command line.
std::string_view name(PrivateArm arm) noexcept;  // no_treatment | no_subsidy | optimal_subsidy
std::string_view name(PublicArm arm) noexcept;   // no_treatment | optimal
std::optional<PrivateArm> parse_private_arm(std::string_view text) noexcept;
std::optional<PublicArm> parse_public_arm(std::string_view text) noexcept;

/// k and l for every assessed label at a community prevalence.
///
/// No infested trees means no risk, so every effect is zero and Bayes is
/// never consulted. A label with zero marginal probability carries no trees;
/// its effect is reported as zero instead of raising ZeroMarginal.
std::array<TreatmentEffect, 3> assessed_effects(const Prevalence& prior, const EpidemicParams& params,
                                                const AssessmentMatrix& matrix);

/// Everything the arms need for one assessed label.
struct AssessedPolicyPoint {
    TreatmentEffect effect;
    SubsidyDecision subsidized;           // municipality's optimal subsidy
    double unsubsidized_prob = 0.0;       // private uptake at s = 0
    double public_treat = 0.0;            // 0 or 1
};

std::array<AssessedPolicyPoint, 3> evaluate_policies(const Prevalence& prior,
                                                     const EpidemicParams& params,
                                                     const EconParams& econ,
                                                     const AssessmentMatrix& matrix);

}  // namespace pestpolicy
