#pragma once

// Core value types and parameter records shared by every module, plus the
// validation rules that guard them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pestpolicy {

/// Absolute tolerance for probability invariants (sums, bounds).
inline constexpr double kProbabilityTolerance = 1e-12;
/// Inputs this close to the simplex are renormalized; farther ones are rejected.
inline constexpr double kRenormalizeTolerance = 1e-9;
/// Tolerance for Δ_m = V_m + W_m style decomposition checks.
inline constexpr double kDecompositionTolerance = 1e-9;

enum class TreeState : std::uint8_t { Healthy, Infested, Dying };
enum class AssessedState : std::uint8_t { Healthy, Infested, Dying };

inline constexpr std::array<TreeState, 3> kTreeStates{TreeState::Healthy, TreeState::Infested,
                                                      TreeState::Dying};
inline constexpr std::array<AssessedState, 3> kAssessedStates{
    AssessedState::Healthy, AssessedState::Infested, AssessedState::Dying};

constexpr std::size_t index(TreeState s) noexcept { return static_cast<std::size_t>(s); }
constexpr std::size_t index(AssessedState s) noexcept { return static_cast<std::size_t>(s); }

std::string_view name(TreeState s) noexcept;
std::string_view name(AssessedState s) noexcept;
/// Accepts "healthy", "infested", "dying" (and the one-letter forms h, i, d).
std::optional<AssessedState> parse_assessed(std::string_view text) noexcept;

/// Community-level probabilities of the true health states.
struct Prevalence {
    double p_h = 1.0;
    double p_i = 0.0;
    double p_d = 0.0;

    double operator[](TreeState s) const noexcept;
    bool operator==(const Prevalence&) const = default;
};

/// P(assessed | true): rows are true states, columns assessed states.
struct AssessmentMatrix {
    std::array<std::array<double, 3>, 3> entries{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

    double operator()(TreeState truth, AssessedState assessed) const noexcept {
        return entries[index(truth)][index(assessed)];
    }
    bool operator==(const AssessmentMatrix&) const = default;

    static AssessmentMatrix identity() noexcept { return {}; }
    static AssessmentMatrix uniform() noexcept;
};

struct EpidemicParams {
    double beta = 0.0;      // pest spread rate, 1/year
    double gamma = 0.0;     // pest-induced mortality rate, 1/year
    double alpha = 0.0;     // recovery rate under effective treatment, 1/year
    double eps_h = 0.0;     // treatment effectiveness, healthy trees
    double eps_i = 0.0;     // treatment effectiveness, infested trees
    double tau_star = 0.0;  // planning horizon, years

    bool operator==(const EpidemicParams&) const = default;
};

/// Optional split of the social values, needed only for welfare accounting.
struct SocialValues {
    double v_m = 0.0;        // annualized benefit stream of a surviving tree
    double w_m = 0.0;        // one-time loss when a private tree dies
    double w_m_prime = 0.0;  // one-time loss when a public tree dies, incl. removal

    bool operator==(const SocialValues&) const = default;
};

struct EconParams {
    double cost_c = 0.0;
    double a = 0.0;  // owner value of avoiding mortality ~ U[a, b]
    double b = 0.0;
    double delta_m = 0.0;
    double delta_m_prime = 0.0;
    std::optional<SocialValues> decomposition;

    bool operator==(const EconParams&) const = default;
};

struct ValidationIssue {
    std::string field;
    double value = 0.0;
    std::string message;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Carries every violated invariant, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

std::vector<ValidationIssue> check(const Prevalence& p);
std::vector<ValidationIssue> check(const AssessmentMatrix& m);
std::vector<ValidationIssue> check(const EpidemicParams& p);
std::vector<ValidationIssue> check(const EconParams& e);

// validate() returns the input unchanged when it is valid. Probability
// vectors within kRenormalizeTolerance of the simplex are rescaled; anything
// else throws ValidationError listing all problems.
Prevalence validate(const Prevalence& p);
AssessmentMatrix validate(const AssessmentMatrix& m);
EpidemicParams validate(const EpidemicParams& p);
EconParams validate(const EconParams& e);

EpidemicParams case_study_epidemic() noexcept;
EconParams case_study_econ() noexcept;
AssessmentMatrix case_study_assessment() noexcept;

}  // namespace pestpolicy
