#include "pestpolicy/bayes.hpp"

#include <string>

namespace pestpolicy {

double Posterior::operator[](TreeState s) const noexcept {
    switch (s) {
        case TreeState::Healthy: return p_h_given;
        case TreeState::Infested: return p_i_given;
        case TreeState::Dying: return p_d_given;
    }
    return 0.0;
}

ZeroMarginal::ZeroMarginal(AssessedState assessed)
    : Error("assessed state '" + std::string(name(assessed)) + "' has zero probability under the prior"),
      assessed_(assessed) {}

double assessed_marginal(const Prevalence& prior, const AssessmentMatrix& matrix,
                         AssessedState assessed) noexcept {
    double total = 0.0;
    for (TreeState t : kTreeStates) total += matrix(t, assessed) * prior[t];
    return total;
}

Posterior posterior(const Prevalence& prior, const AssessmentMatrix& matrix, AssessedState assessed) {
    const double marginal = assessed_marginal(prior, matrix, assessed);
    if (!(marginal > 0.0)) throw ZeroMarginal(assessed);
    return {matrix(TreeState::Healthy, assessed) * prior.p_h / marginal,
            matrix(TreeState::Infested, assessed) * prior.p_i / marginal,
            matrix(TreeState::Dying, assessed) * prior.p_d / marginal};
}

std::array<double, 3> assessed_shares(const Prevalence& prior, const AssessmentMatrix& matrix) noexcept {
    std::array<double, 3> shares{};
    for (AssessedState s : kAssessedStates) shares[index(s)] = assessed_marginal(prior, matrix, s);
    return shares;
}

}  // namespace pestpolicy
