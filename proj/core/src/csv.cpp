#include "pestpolicy/csv.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>

namespace pestpolicy {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value);
    return buf;
}

namespace {

void row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_number(v);
        first = false;
    }
}

}  // namespace

std::size_t write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
    os << "t,H_m,I_m,D_m,H_o,I_o,D_o,p_thm,p_tim,p_tho,p_tio,s_hat_h,s_hat_i,s_hat_d,"
          "net_value_m,net_value_o\n";
    for (const TrajectoryRecord& r : trajectory.records) {
        const ForestState& x = r.state;
        const double nan = std::nan("");
        row(os, {r.time, x.h_m, x.i_m, x.d_m, x.h_o, x.i_o, x.d_o, r.policy_m.p_th, r.policy_m.p_ti,
                 r.policy_o.p_th, r.policy_o.p_ti, r.subsidies[0], r.subsidies[1], r.subsidies[2],
                 r.welfare ? r.welfare->net_m : nan, r.welfare ? r.welfare->net_o : nan});
        os << '\n';
    }
    return trajectory.records.size();
}

std::size_t write_policy_map_csv(std::ostream& os, const std::vector<PolicyMapRow>& rows) {
    os << "p_h,p_i,p_d,assessed,k,l,s_star,treat_prob_subsidized,treat_prob_unsubsidized,public_treat\n";
    for (const PolicyMapRow& r : rows) {
        row(os, {r.prevalence.p_h, r.prevalence.p_i, r.prevalence.p_d});
        os << ',' << name(r.assessed) << ',';
        row(os, {r.k, r.l, r.s_star, r.treat_prob_subsidized, r.treat_prob_unsubsidized, r.public_treat});
        os << '\n';
    }
    return rows.size();
}

std::size_t write_delta_sweep_csv(std::ostream& os, const std::vector<DeltaSweepRow>& rows) {
    os << "# survival_3y = 1 - sum_phi P(phi|assessed) * (treat_prob * mu_t(phi) + (1 - treat_prob) * "
          "mu_u(phi)), mu over 3 years\n";
    os << "delta_m,assessed,s_star,treat_prob,survival_3y\n";
    for (const DeltaSweepRow& r : rows) {
        os << format_number(r.delta_m) << ',' << name(r.assessed) << ',';
        row(os, {r.s_star, r.treat_prob, r.survival_3y});
        os << '\n';
    }
    return rows.size();
}

std::size_t write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows) {
    os << "switch_time,survival_50y_total,survival_50y_public,survival_50y_private\n";
    for (const TimingRow& r : rows) {
        row(os, {r.switch_time, r.survival_total, r.survival_public, r.survival_private});
        os << '\n';
    }
    return rows.size();
}

}  // namespace pestpolicy
