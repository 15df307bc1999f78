#include "pestpolicy/domain.hpp"

#include <cmath>
#include <sstream>

namespace pestpolicy {

std::string_view name(TreeState s) noexcept {
    switch (s) {
        case TreeState::Healthy: return "healthy";
        case TreeState::Infested: return "infested";
        case TreeState::Dying: return "dying";
    }
    return "unknown";
}

std::string_view name(AssessedState s) noexcept {
    switch (s) {
        case AssessedState::Healthy: return "healthy";
        case AssessedState::Infested: return "infested";
        case AssessedState::Dying: return "dying";
    }
    return "unknown";
}

std::optional<AssessedState> parse_assessed(std::string_view text) noexcept {
    if (text == "healthy" || text == "h") return AssessedState::Healthy;
    if (text == "infested" || text == "i") return AssessedState::Infested;
    if (text == "dying" || text == "d") return AssessedState::Dying;
    return std::nullopt;
}

double Prevalence::operator[](TreeState s) const noexcept {
    switch (s) {
        case TreeState::Healthy: return p_h;
        case TreeState::Infested: return p_i;
        case TreeState::Dying: return p_d;
    }
    return 0.0;
}

AssessmentMatrix AssessmentMatrix::uniform() noexcept {
    constexpr double third = 1.0 / 3.0;
    AssessmentMatrix m;
    for (auto& row : m.entries) row = {third, third, third};
    return m;
}

namespace {

std::string summarize(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "invalid input (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
    for (const auto& issue : issues) {
        os << "\n  " << issue.field;
        if (!std::isnan(issue.value)) os << " = " << issue.value;
        os << ": " << issue.message;
    }
    return os.str();
}

// Appends an issue for every reason a probability vector must be rejected.
// Vectors that pass may still need rescaling onto the simplex.
bool check_simplex(const std::array<double, 3>& v, const std::array<std::string, 3>& names,
                   const std::string& sum_name, std::vector<ValidationIssue>& issues) {
    bool ok = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!std::isfinite(v[i])) {
            issues.push_back({names[i], v[i], "must be finite"});
            ok = false;
            continue;
        }
        if (v[i] < -kProbabilityTolerance || v[i] > 1.0 + kProbabilityTolerance) {
            issues.push_back({names[i], v[i], "must lie in [0, 1]"});
            ok = false;
        }
        sum += v[i];
    }
    if (ok && std::abs(sum - 1.0) > kRenormalizeTolerance) {
        std::ostringstream msg;
        msg << "components must sum to 1 (simplex sum " << sum << ")";
        issues.push_back({sum_name, sum, msg.str()});
        ok = false;
    }
    return ok;
}

std::array<double, 3> renormalized(std::array<double, 3> v) {
    double sum = 0.0;
    for (double& x : v) {
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        for (double& x : v) x /= sum;
    }
    return v;
}

void require(std::vector<ValidationIssue>& issues, bool ok, const char* field, double value,
             const char* message) {
    if (!std::isfinite(value)) {
        issues.push_back({field, value, "must be finite"});
    } else if (!ok) {
        issues.push_back({field, value, message});
    }
}

template <class T>
T throw_if(std::vector<ValidationIssue> issues, T value) {
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return value;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(summarize(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> check(const Prevalence& p) {
    std::vector<ValidationIssue> issues;
    check_simplex({p.p_h, p.p_i, p.p_d}, {"prevalence.p_h", "prevalence.p_i", "prevalence.p_d"},
                  "prevalence", issues);
    return issues;
}

std::vector<ValidationIssue> check(const AssessmentMatrix& m) {
    std::vector<ValidationIssue> issues;
    for (TreeState t : kTreeStates) {
        const std::string row = "assessment[" + std::string(name(t)) + "]";
        std::array<std::string, 3> names;
        for (AssessedState s : kAssessedStates) {
            names[index(s)] = row + "[" + std::string(name(s)) + "]";
        }
        check_simplex(m.entries[index(t)], names, row, issues);
    }
    return issues;
}

std::vector<ValidationIssue> check(const EpidemicParams& p) {
    std::vector<ValidationIssue> issues;
    require(issues, p.beta > 0.0, "epidemic.beta", p.beta, "must be > 0");
    require(issues, p.gamma > 0.0, "epidemic.gamma", p.gamma, "must be > 0");
    require(issues, p.alpha >= 0.0, "epidemic.alpha", p.alpha, "must be >= 0");
    require(issues, p.eps_h >= 0.0 && p.eps_h <= 1.0, "epidemic.eps_h", p.eps_h,
            "must lie in [0, 1]");
    require(issues, p.eps_i >= 0.0 && p.eps_i <= 1.0, "epidemic.eps_i", p.eps_i,
            "must lie in [0, 1]");
    require(issues, p.tau_star > 0.0, "epidemic.tau_star", p.tau_star, "must be > 0");
    return issues;
}

std::vector<ValidationIssue> check(const EconParams& e) {
    std::vector<ValidationIssue> issues;
    require(issues, e.cost_c > 0.0, "econ.cost_c", e.cost_c, "must be > 0");
    require(issues, e.a >= 0.0, "econ.a", e.a, "must be >= 0");
    require(issues, e.b >= e.a, "econ.b", e.b, "must be >= a");
    require(issues, e.delta_m >= 0.0, "econ.delta_m", e.delta_m, "must be >= 0");
    require(issues, e.delta_m_prime >= 0.0, "econ.delta_m_prime", e.delta_m_prime,
            "must be >= 0");
    if (e.decomposition) {
        const SocialValues& d = *e.decomposition;
        require(issues, true, "econ.v_m", d.v_m, "");
        require(issues, true, "econ.w_m", d.w_m, "");
        require(issues, true, "econ.w_m_prime", d.w_m_prime, "");
        const double private_sum = d.v_m + d.w_m;
        const double public_sum = d.v_m + d.w_m_prime;
        if (std::isfinite(private_sum) && std::isfinite(e.delta_m) &&
            std::abs(private_sum - e.delta_m) > kDecompositionTolerance) {
            issues.push_back({"econ.delta_m", e.delta_m, "must equal v_m + w_m"});
        }
        if (std::isfinite(public_sum) && std::isfinite(e.delta_m_prime) &&
            std::abs(public_sum - e.delta_m_prime) > kDecompositionTolerance) {
            issues.push_back({"econ.delta_m_prime", e.delta_m_prime, "must equal v_m + w_m_prime"});
        }
    }
    return issues;
}

Prevalence validate(const Prevalence& p) {
    throw_if(check(p), 0);
    const auto v = renormalized({p.p_h, p.p_i, p.p_d});
    return {v[0], v[1], v[2]};
}

AssessmentMatrix validate(const AssessmentMatrix& m) {
    throw_if(check(m), 0);
    AssessmentMatrix out;
    for (std::size_t r = 0; r < 3; ++r) out.entries[r] = renormalized(m.entries[r]);
    return out;
}

EpidemicParams validate(const EpidemicParams& p) { return throw_if(check(p), p); }

EconParams validate(const EconParams& e) { return throw_if(check(e), e); }

EpidemicParams case_study_epidemic() noexcept {
    return {.beta = 1.0, .gamma = 0.3, .alpha = 1.0, .eps_h = 0.97, .eps_i = 0.5, .tau_star = 3.0};
}

EconParams case_study_econ() noexcept {
    return {.cost_c = 250.0, .a = 675.0, .b = 1100.0, .delta_m = 1150.0, .delta_m_prime = 1850.0,
            .decomposition = std::nullopt};
}

AssessmentMatrix case_study_assessment() noexcept {
    AssessmentMatrix m;
    m.entries = {{{0.89, 0.10, 0.01}, {0.49, 0.50, 0.01}, {0.01, 0.19, 0.80}}};
    return m;
}

}  // namespace pestpolicy
