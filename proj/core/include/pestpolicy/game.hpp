#pragma once

// Equilibrium layer: treatment effects, payoffs, the owner's decision, the
// Bertrand price game between treatment firms, the municipality's optimal
// subsidy, and the public-tree treatment rule.

#include <cstdint>
#include <string_view>

#include "pestpolicy/bayes.hpp"
#include "pestpolicy/domain.hpp"
#include "pestpolicy/risk.hpp"

namespace pestpolicy {

struct TreatmentEffect {
    double k = 0.0;  // gain in focal-tree survival probability
    double l = 0.0;  // expected gain in survivors among other trees
};

TreatmentEffect treatment_effects(const Posterior& post, const RiskProfile& risks) noexcept;

struct Payoffs {
    double treated = 0.0;
    double untreated = 0.0;
};

/// Owner payoff, with V_o = v_o_share and W_o = delta_o - v_o_share.
Payoffs owner_payoffs(const Posterior& post, const RiskProfile& risks, double delta_o,
                      double v_o_share) noexcept;

/// Municipal payoff for one tree, excluding any treatment cost or subsidy.
/// Pass (v_m, w_m) for private trees and (v_m, w_m_prime) for public ones.
Payoffs municipal_payoffs(const Posterior& post, const RiskProfile& risks, double v_m,
                          double w_m) noexcept;

/// Treat iff delta_o * k >= price.
bool owner_decision(double delta_o, double k, double price) noexcept;

/// P(price <= Δ_o k) for Δ_o ~ U[a, b].
double acceptance_probability(double price, double k, double a, double b) noexcept;

enum class BidKind : std::uint8_t { AnyBidAtLeast, Undercut, Monopolist };

struct BidResponse {
    BidKind kind = BidKind::AnyBidAtLeast;
    double price = 0.0;  // the bound, the matched bid, or the monopoly price
};

BidResponse firm_best_response(double p_other, double s_own, double k, double a, double b,
                               double cost_c) noexcept;

/// Firm's expected profit (p + s - c) * P(win), ties split evenly.
double firm_expected_profit(double p_own, double p_other, double s_own, double k, double a,
                            double b, double cost_c) noexcept;

enum class SubsidyRegime : std::uint8_t { FreeRiding, FullCoverage, Interior, NoSubsidy };

std::string_view name(SubsidyRegime r) noexcept;

struct SubsidyDecision {
    double s_star = 0.0;
    SubsidyRegime regime = SubsidyRegime::NoSubsidy;
    double price = 0.0;  // owner's price, cost_c - s_star
    double treat_prob = 0.0;
    double muni_eu = 0.0;
};

/// Signed quantities whose signs pick the piece of every policy formula.
/// Each is "active" when positive, or when zero for the inclusive ones.
struct SwitchingFunctions {
    double effect = 0.0;          // k                           (> 0)
    double free_riding = 0.0;     // a k - c                     (>= 0)
    double full_coverage = 0.0;   // Δ_m(k+l) - (c + bk - 2ak)   (>= 0)
    double interior = 0.0;        // Δ_m(k+l) - |c - bk|         (> 0)
    double partial_uptake = 0.0;  // b k - c                     (> 0)
    double public_benefit = 0.0;  // Δ'_m(k+l) - c               (>= 0)
};

SwitchingFunctions switching_functions(double k, double l, const EconParams& econ) noexcept;

/// Regime from switching-function signs; boundaries follow the case order.
SubsidyRegime classify_subsidy(const SwitchingFunctions& sw) noexcept;

/// Municipal expected utility Π_u + (Δ_m(k+l) - s) * P(c - s <= Δ_o k).
double municipal_expected_utility(double s, double k, double l, const EconParams& econ,
                                  double pi_u_baseline) noexcept;

SubsidyDecision optimal_subsidy(double k, double l, const EconParams& econ,
                                double pi_u_baseline = 0.0) noexcept;

/// P(c - s <= Δ_o k) for Δ_o ~ U[a, b].
double private_treatment_probability(double k, double l, const EconParams& econ, double s) noexcept;

// Closed-form uptake on individual pieces; used when the piece is fixed
// externally (the integrator holds a piece across a step).
double unsubsidized_uptake(double k, const EconParams& econ) noexcept;
double interior_uptake(double k, double l, const EconParams& econ) noexcept;

/// 1 iff c <= Δ'_m (k+l).
double public_treatment_decision(double k, double l, const EconParams& econ) noexcept;

/// Only firm 1 is subsidized and b k < c.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

struct MonopolyOutcome {
    double s1_star = 0.0;
    double p1_star = 0.0;
    double treat_prob = 0.0;
    double muni_eu = 0.0;
    double firm_eu = 0.0;
};

MonopolyOutcome monopoly_case(double k, double l, const EconParams& econ,
                              double pi_u_baseline = 0.0);

/// Municipal expected utility when firms get subsidies s1 >= s2, taking the
/// limit of the undercutting equilibrium (firm 1 wins at min(p', c - s2)).
double unequal_subsidy_utility(double s1, double s2, double k, double l, const EconParams& econ,
                               double pi_u_baseline = 0.0) noexcept;

}  // namespace pestpolicy
