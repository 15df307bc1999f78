#include "pestpolicy/risk.hpp"

#include <algorithm>
#include <cmath>

namespace pestpolicy {

namespace {

// (1 - e^{-x}) / x, accurate near zero.
double one_minus_exp_over(double x) noexcept {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

}  // namespace

std::vector<ValidationIssue> check(const RiskSnapshot& snap) {
    std::vector<ValidationIssue> issues;
    if (!(snap.i0 >= 0.0 && snap.i0 <= 1.0)) issues.push_back({"i0", snap.i0, "must lie in [0, 1]"});
    if (!(snap.h0_comm >= 0.0 && snap.h0_comm <= 1.0)) {
        issues.push_back({"h0_comm", snap.h0_comm, "must lie in [0, 1]"});
    }
    if (snap.i0 + snap.h0_comm > 1.0 + kProbabilityTolerance) {
        issues.push_back({"i0 + h0_comm", snap.i0 + snap.h0_comm, "must not exceed 1"});
    }
    return issues;
}

double bateman_d(double h0, double i0, double d0, double r1, double r2, double tau) noexcept {
    const double infested_to_dying = -std::expm1(-r2 * tau);
    double from_healthy = 0.0;
    if (h0 != 0.0) {
        if (std::abs(r1 - r2) <= 1e-9 * std::max(1.0, r1)) {
            const double r = r1;
            from_healthy = 1.0 - (1.0 + r * tau) * std::exp(-r * tau);
        } else {
            // 1 - e^{-r1 τ} - r1 (e^{-r1 τ} - e^{-r2 τ})/(r2 - r1), written so the
            // difference quotient stays accurate when r1 and r2 are close.
            const double e1 = std::exp(-r1 * tau);
            const double infested_now = r1 * tau * e1 * one_minus_exp_over((r2 - r1) * tau);
            from_healthy = -std::expm1(-r1 * tau) - infested_now;
        }
    }
    const double d = d0 + i0 * infested_to_dying + h0 * from_healthy;
    return std::clamp(d, 0.0, 1.0);
}

DirectRisks direct_risks(const EpidemicParams& p, const RiskSnapshot& snap) noexcept {
    DirectRisks out;
    const auto h = index(TreeState::Healthy);
    const auto i = index(TreeState::Infested);
    const auto d = index(TreeState::Dying);
    const double r1_u = p.beta * snap.i0;
    const double r2_u = p.gamma;
    const double r1_t = p.beta * snap.i0 * (1.0 - p.eps_h);
    const double r2_t = p.gamma * (1.0 - p.eps_i);
    out.mu_u[h] = snap.i0 > 0.0 ? bateman_d(1, 0, 0, r1_u, r2_u, p.tau_star) : 0.0;
    out.mu_t[h] = snap.i0 > 0.0 ? bateman_d(1, 0, 0, r1_t, r2_t, p.tau_star) : 0.0;
    out.mu_u[i] = bateman_d(0, 1, 0, r1_u, r2_u, p.tau_star);
    out.mu_t[i] = bateman_d(0, 1, 0, r1_t, r2_t, p.tau_star);
    out.mu_u[d] = 1.0;
    out.mu_t[d] = 1.0;
    return out;
}

SpilloverRisks spillover_risks(const EpidemicParams& p, const RiskSnapshot& snap) {
    SpilloverRisks out;
    if (snap.h0_comm <= 0.0) return out;
    const double treated_exit = p.gamma * (1.0 - p.eps_i) + p.alpha * p.eps_i;
    if (!(treated_exit > 0.0)) {
        throw DegenerateRates("treated infested trees never leave the infested state "
                              "(gamma*(1-eps_i) + alpha*eps_i = 0)");
    }
    const auto h = index(TreeState::Healthy);
    const auto i = index(TreeState::Infested);
    const double pressure = p.beta * snap.h0_comm;
    out.lam_u[i] = pressure / p.gamma;
    out.lam_t[i] = pressure / treated_exit;
    if (snap.i0 > 0.0) {
        out.lam_u[h] = -std::expm1(-p.beta * snap.i0 * p.tau_star) * out.lam_u[i];
        out.lam_t[h] = -std::expm1(-p.beta * snap.i0 * (1.0 - p.eps_h) * p.tau_star) * out.lam_t[i];
    }
    return out;
}

RiskProfile risk_profile(const EpidemicParams& params, const RiskSnapshot& snap) {
    const DirectRisks direct = direct_risks(params, snap);
    const SpilloverRisks spill = spillover_risks(params, snap);
    return {direct.mu_u, direct.mu_t, spill.lam_u, spill.lam_t};
}

}  // namespace pestpolicy
