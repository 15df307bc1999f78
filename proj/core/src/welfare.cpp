#include "pestpolicy/epidemic.hpp"

namespace pestpolicy {

WelfareFlows welfare_flows(const ForestState& x, const PolicySnapshot& pol, const ForestState& rates,
                           const EconParams& econ, const EpidemicParams& params,
                           const AssessmentMatrix& matrix) {
    if (!econ.decomposition) throw MissingDecomposition();
    const SocialValues& v = *econ.decomposition;
    const double per_year = 1.0 / params.tau_star;

    WelfareFlows w;
    w.benefit_m = v.v_m * per_year * (x.h_m + x.i_m);
    w.benefit_o = v.v_m * per_year * (x.h_o + x.i_o);

    const TrueStatePolicy& pm = pol.public_trees.true_state;
    w.treatment_cost_m = econ.cost_c * per_year * (pm.p_th * x.h_m + pm.p_ti * x.i_m + pm.p_td * x.d_m);

    const std::array<double, 3> private_trees{x.h_o, x.i_o, x.d_o};
    for (AssessedState s : kAssessedStates) {
        double share = 0.0;
        for (TreeState t : kTreeStates) share += matrix(t, s) * private_trees[index(t)];
        w.subsidy_cost_o += pol.subsidies[index(s)] * pol.private_trees.assessed.treat[index(s)] * share;
    }
    w.subsidy_cost_o *= per_year;

    w.mortality_cost_m = rates.d_m * v.w_m_prime;
    w.mortality_cost_o = rates.d_o * v.w_m;
    w.net_m = w.benefit_m - w.treatment_cost_m - w.mortality_cost_m;
    w.net_o = w.benefit_o - w.subsidy_cost_o - w.mortality_cost_o;
    return w;
}

}  // namespace pestpolicy
