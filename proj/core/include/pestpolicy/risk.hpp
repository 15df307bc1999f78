#pragma once

// Perceived mortality risks over the planning horizon: direct risk to the
// focal tree (μ) and expected spillover deaths among other trees (λ).

#include <array>
#include <vector>

#include "pestpolicy/domain.hpp"

namespace pestpolicy {

/// Community state as seen by a decision maker.
struct RiskSnapshot {
    double i0 = 0.0;       // infested fraction of all trees
    double h0_comm = 0.0;  // healthy fraction of all trees
};

std::vector<ValidationIssue> check(const RiskSnapshot& snap);

/// Per-true-state risks, indexed by TreeState.
struct DirectRisks {
    std::array<double, 3> mu_u{};
    std::array<double, 3> mu_t{};
};

struct SpilloverRisks {
    std::array<double, 3> lam_u{};
    std::array<double, 3> lam_t{};
};

struct RiskProfile {
    std::array<double, 3> mu_u{};
    std::array<double, 3> mu_t{};
    std::array<double, 3> lam_u{};
    std::array<double, 3> lam_t{};
};

/// γ(1-ε_i) + α ε_i vanished, so treated spillover is undefined.
class DegenerateRates : public Error {
public:
    using Error::Error;
};

/// Probability of reaching the dying state by time tau in the chain
/// healthy -(r1)-> infested -(r2)-> dying, starting from (h0, i0, d0).
double bateman_d(double h0, double i0, double d0, double r1, double r2, double tau) noexcept;

DirectRisks direct_risks(const EpidemicParams& params, const RiskSnapshot& snap) noexcept;
SpilloverRisks spillover_risks(const EpidemicParams& params, const RiskSnapshot& snap);
RiskProfile risk_profile(const EpidemicParams& params, const RiskSnapshot& snap);

}  // namespace pestpolicy
