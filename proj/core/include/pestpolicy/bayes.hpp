#pragma once

// Posterior beliefs about a tree's true state given its assessed state.

#include <array>

#include "pestpolicy/domain.hpp"

namespace pestpolicy {

struct Posterior {
    double p_h_given = 0.0;
    double p_i_given = 0.0;
    double p_d_given = 0.0;

    double operator[](TreeState s) const noexcept;
    bool operator==(const Posterior&) const = default;
};

/// The assessed state is impossible under the prior (zero marginal).
class ZeroMarginal : public Error {
public:
    explicit ZeroMarginal(AssessedState assessed);
    AssessedState assessed() const noexcept { return assessed_; }

private:
    AssessedState assessed_;
};

/// Σ_φ P(assessed | φ) P(φ).
double assessed_marginal(const Prevalence& prior, const AssessmentMatrix& matrix,
                         AssessedState assessed) noexcept;

/// Bayes' rule; throws ZeroMarginal when the marginal is not positive.
Posterior posterior(const Prevalence& prior, const AssessmentMatrix& matrix, AssessedState assessed);

/// Share of trees carrying each assessed label, indexed by AssessedState.
std::array<double, 3> assessed_shares(const Prevalence& prior, const AssessmentMatrix& matrix) noexcept;

}  // namespace pestpolicy
