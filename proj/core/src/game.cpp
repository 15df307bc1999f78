#include "pestpolicy/game.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pestpolicy {

namespace {

constexpr auto kH = index(TreeState::Healthy);
constexpr auto kI = index(TreeState::Infested);

double clamp01(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TreatmentEffect treatment_effects(const Posterior& post, const RiskProfile& r) noexcept {
    return {post.p_h_given * (r.mu_u[kH] - r.mu_t[kH]) + post.p_i_given * (r.mu_u[kI] - r.mu_t[kI]),
            post.p_h_given * (r.lam_u[kH] - r.lam_t[kH]) + post.p_i_given * (r.lam_u[kI] - r.lam_t[kI])};
}

Payoffs owner_payoffs(const Posterior& post, const RiskProfile& r, double delta_o,
                      double v_o_share) noexcept {
    const double v = v_o_share;
    const double w = delta_o - v_o_share;
    auto payoff = [&](const std::array<double, 3>& mu) {
        return post.p_h_given * ((1.0 - mu[kH]) * v - mu[kH] * w) +
               post.p_i_given * ((1.0 - mu[kI]) * v - mu[kI] * w) - post.p_d_given * w;
    };
    return {payoff(r.mu_t), payoff(r.mu_u)};
}

Payoffs municipal_payoffs(const Posterior& post, const RiskProfile& r, double v_m, double w_m) noexcept {
    const double delta = v_m + w_m;
    auto payoff = [&](const std::array<double, 3>& mu, const std::array<double, 3>& lam) {
        return post.p_h_given * (v_m - delta * (mu[kH] + lam[kH])) +
               post.p_i_given * (v_m - delta * (mu[kI] + lam[kI])) - post.p_d_given * w_m;
    };
    return {payoff(r.mu_t, r.lam_t), payoff(r.mu_u, r.lam_u)};
}

bool owner_decision(double delta_o, double k, double price) noexcept { return delta_o * k >= price; }

double acceptance_probability(double price, double k, double a, double b) noexcept {
    // Δ_o k is uniform on [lo, hi]; owners accept when it reaches the price.
    const double lo = std::min(a * k, b * k);
    const double hi = std::max(a * k, b * k);
    if (price <= lo) return 1.0;
    if (price >= hi) return 0.0;
    return clamp01((hi - price) / (hi - lo));
}

BidResponse firm_best_response(double p_other, double s_own, double k, double a, double b,
                               double cost_c) noexcept {
    const double floor = cost_c - s_own;
    const double monopoly = std::max(0.5 * (b * k + cost_c - s_own), a * k);
    if (s_own < cost_c - b * k || p_other < floor) return {BidKind::AnyBidAtLeast, floor};
    if (p_other <= monopoly) return {BidKind::Undercut, p_other};
    return {BidKind::Monopolist, monopoly};
}

double firm_expected_profit(double p_own, double p_other, double s_own, double k, double a,
                            double b, double cost_c) noexcept {
    if (p_own > p_other) return 0.0;
    const double profit = (p_own + s_own - cost_c) * acceptance_probability(p_own, k, a, b);
    return p_own < p_other ? profit : 0.5 * profit;
}

std::string_view name(SubsidyRegime r) noexcept {
    switch (r) {
        case SubsidyRegime::FreeRiding: return "free_riding";
        case SubsidyRegime::FullCoverage: return "full_coverage";
        case SubsidyRegime::Interior: return "interior";
        case SubsidyRegime::NoSubsidy: return "no_subsidy";
    }
    return "unknown";
}

SwitchingFunctions switching_functions(double k, double l, const EconParams& e) noexcept {
    const double x = e.delta_m * (k + l);
    const double c = e.cost_c;
    return {.effect = k,
            .free_riding = e.a * k - c,
            .full_coverage = x - (c + e.b * k - 2.0 * e.a * k),
            .interior = x - std::abs(c - e.b * k),
            .partial_uptake = e.b * k - c,
            .public_benefit = e.delta_m_prime * (k + l) - c};
}

SubsidyRegime classify_subsidy(const SwitchingFunctions& sw) noexcept {
    if (!(sw.effect > 0.0)) return SubsidyRegime::NoSubsidy;
    if (sw.free_riding >= 0.0) return SubsidyRegime::FreeRiding;
    if (sw.full_coverage >= 0.0) return SubsidyRegime::FullCoverage;
    if (sw.interior > 0.0) return SubsidyRegime::Interior;
    return SubsidyRegime::NoSubsidy;
}

double private_treatment_probability(double k, double /*l*/, const EconParams& e, double s) noexcept {
    return acceptance_probability(e.cost_c - s, k, e.a, e.b);
}

double unsubsidized_uptake(double k, const EconParams& e) noexcept {
    if (!(k > 0.0) || !(e.b > e.a)) return 0.0;
    return (e.b * k - e.cost_c) / (k * (e.b - e.a));
}

double interior_uptake(double k, double l, const EconParams& e) noexcept {
    if (!(k > 0.0) || !(e.b > e.a)) return 0.0;
    return (e.delta_m * (k + l) - e.cost_c + e.b * k) / (2.0 * k * (e.b - e.a));
}

double municipal_expected_utility(double s, double k, double l, const EconParams& e,
                                  double pi_u_baseline) noexcept {
    const double x = e.delta_m * (k + l);
    return pi_u_baseline + (x - s) * private_treatment_probability(k, l, e, s);
}

SubsidyDecision optimal_subsidy(double k, double l, const EconParams& e, double pi_u_baseline) noexcept {
    SubsidyDecision d;
    d.price = e.cost_c;
    d.muni_eu = pi_u_baseline;
    if (!(k > 0.0)) return d;

    const SwitchingFunctions sw = switching_functions(k, l, e);
    const double x = e.delta_m * (k + l);
    d.regime = classify_subsidy(sw);
    switch (d.regime) {
        case SubsidyRegime::FreeRiding:
            d.s_star = 0.0;
            d.treat_prob = 1.0;
            break;
        case SubsidyRegime::FullCoverage:
            d.s_star = e.cost_c - e.a * k;
            d.treat_prob = 1.0;
            break;
        case SubsidyRegime::Interior:
            d.s_star = 0.5 * (x + e.cost_c - e.b * k);
            d.treat_prob = clamp01(interior_uptake(k, l, e));
            break;
        case SubsidyRegime::NoSubsidy:
            d.s_star = 0.0;
            d.treat_prob = sw.partial_uptake > 0.0 ? clamp01(unsubsidized_uptake(k, e)) : 0.0;
            break;
    }
    d.price = e.cost_c - d.s_star;
    d.muni_eu = pi_u_baseline + (x - d.s_star) * d.treat_prob;
    return d;
}

double public_treatment_decision(double k, double l, const EconParams& e) noexcept {
    return e.cost_c <= e.delta_m_prime * (k + l) ? 1.0 : 0.0;
}

MonopolyOutcome monopoly_case(double k, double l, const EconParams& e, double pi_u_baseline) {
    const double c = e.cost_c;
    if (!(e.b * k < c)) {
        throw PreconditionViolated("single-subsidized-firm analysis requires b*k < cost_c");
    }
    MonopolyOutcome out{.s1_star = 0.0, .p1_star = c, .treat_prob = 0.0, .muni_eu = pi_u_baseline,
                        .firm_eu = 0.0};
    if (!(k > 0.0)) return out;

    const double x = e.delta_m * (k + l);
    const double a = e.a;
    const double b = e.b;
    const double lower = c - b * k;
    const double upper = c + 3.0 * b * k - 4.0 * a * k;
    if (x < lower) return out;
    if (x < upper) {
        const double surplus = x - c + b * k;
        const double spread = (b - a) * k;
        out.s1_star = 0.5 * (x + c - b * k);
        out.p1_star = (c + 3.0 * b * k - x) / 4.0;
        out.treat_prob = surplus / (4.0 * spread);
        out.firm_eu = surplus * surplus / (16.0 * spread);
        out.muni_eu = pi_u_baseline + surplus * surplus / (8.0 * spread);
        return out;
    }
    out.s1_star = c + b * k - 2.0 * a * k;
    out.p1_star = a * k;
    out.treat_prob = 1.0;
    out.firm_eu = k * (b - a);
    out.muni_eu = pi_u_baseline + x - c - b * k + 2.0 * a * k;
    return out;
}

double unequal_subsidy_utility(double s1, double s2, double k, double l, const EconParams& e,
                               double pi_u_baseline) noexcept {
    if (s1 < s2) std::swap(s1, s2);
    const double c = e.cost_c;
    if (s1 < c - e.b * k) return pi_u_baseline;
    const double monopoly = std::max(0.5 * (e.b * k + c - s1), e.a * k);
    const double price = std::min(monopoly, c - s2);
    const double x = e.delta_m * (k + l);
    return pi_u_baseline + (x - s1) * acceptance_probability(price, k, e.a, e.b);
}

}  // namespace pestpolicy
