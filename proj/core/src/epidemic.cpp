#include "pestpolicy/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace pestpolicy {

std::vector<ValidationIssue> check(const ForestState& s) {
    static constexpr std::array<const char*, 6> names{"h_m", "i_m", "d_m", "h_o", "i_o", "d_o"};
    std::vector<ValidationIssue> issues;
    const auto v = s.to_array();
    for (std::size_t q = 0; q < v.size(); ++q) {
        if (!std::isfinite(v[q]) || v[q] < 0.0 || v[q] > 1.0) {
            issues.push_back({names[q], v[q], "must lie in [0, 1]"});
        }
    }
    if (issues.empty() && std::abs(s.total() - 1.0) > kRenormalizeTolerance) {
        issues.push_back({"state", s.total(), "compartments must sum to 1"});
    }
    return issues;
}

ForestState validate(const ForestState& s) {
    auto issues = check(s);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return s;
}

ForestState initial_state(double public_share, double infested_fraction) noexcept {
    const double private_share = 1.0 - public_share;
    return {public_share * (1.0 - infested_fraction), public_share * infested_fraction, 0.0,
            private_share * (1.0 - infested_fraction), private_share * infested_fraction, 0.0};
}

TrueStatePolicy assessed_to_true(const AssessedPolicy& policy, const AssessmentMatrix& matrix) noexcept {
    auto mix = [&](TreeState truth) {
        double p = 0.0;
        for (AssessedState s : kAssessedStates) p += matrix(truth, s) * policy.treat[index(s)];
        return p;
    };
    return {mix(TreeState::Healthy), mix(TreeState::Infested), mix(TreeState::Dying)};
}

ForestState derivatives(const ForestState& x, const EpidemicParams& p, const TrueStatePolicy& pol_m,
                        const TrueStatePolicy& pol_o) noexcept {
    const double infested = x.i_m + x.i_o;
    const double new_m = p.beta * (1.0 - p.eps_h * pol_m.p_th) * x.h_m * infested;
    const double new_o = p.beta * (1.0 - p.eps_h * pol_o.p_th) * x.h_o * infested;
    const double recover_m = p.alpha * p.eps_i * pol_m.p_ti * x.i_m;
    const double recover_o = p.alpha * p.eps_i * pol_o.p_ti * x.i_o;
    const double die_m = p.gamma * (1.0 - p.eps_i * pol_m.p_ti) * x.i_m;
    const double die_o = p.gamma * (1.0 - p.eps_i * pol_o.p_ti) * x.i_o;
    return {-new_m + recover_m, new_m - die_m - recover_m, die_m,
            -new_o + recover_o, new_o - die_o - recover_o, die_o};
}

PolicySnapshot policy_at_state(const ForestState& state, const EpidemicParams& params,
                               const EconParams& econ, const AssessmentMatrix& matrix,
                               PrivateArm private_arm, PublicArm public_arm) {
    const auto points = evaluate_policies(state.prevalence(), params, econ, matrix);
    PolicySnapshot snap;
    for (std::size_t j = 0; j < 3; ++j) {
        const AssessedPolicyPoint& pt = points[j];
        snap.effects[j] = pt.effect;
        switch (private_arm) {
            case PrivateArm::NoPrivateTreatment: break;
            case PrivateArm::NoSubsidy: snap.private_trees.assessed.treat[j] = pt.unsubsidized_prob; break;
            case PrivateArm::OptimalSubsidy:
                snap.private_trees.assessed.treat[j] = pt.subsidized.treat_prob;
                snap.subsidies[j] = pt.subsidized.s_star;
                break;
        }
        if (public_arm == PublicArm::OptimalPublic) snap.public_trees.assessed.treat[j] = pt.public_treat;
    }
    snap.private_trees.true_state = assessed_to_true(snap.private_trees.assessed, matrix);
    snap.public_trees.true_state = assessed_to_true(snap.public_trees.assessed, matrix);
    return snap;
}

StepTooLarge::StepTooLarge(double time, double dt)
    : Error([&] {
          std::ostringstream os;
          os << "integration step of " << dt << " years near t = " << time
             << " pushed a compartment outside [0, 1]; reduce dt";
          return os.str();
      }()),
      time_(time),
      dt_(dt) {}

namespace {

using Vec = std::array<double, 6>;

constexpr std::size_t kPerLabel = 6;
constexpr std::size_t kSwitches = 3 * kPerLabel;
constexpr double kEventTolerance = 1e-13;     // bisection width, years
constexpr std::size_t kMaxEventsPerStep = 256;
constexpr double kStateSlack = 1e-9;
constexpr double kDriftTolerance = 1e-12;

using Switches = std::array<double, kSwitches>;
using Signs = std::array<bool, kSwitches>;

// Offsets of the switching functions within one label's block.
enum Slot : std::size_t { kEffect, kFreeRiding, kFullCoverage, kInterior, kPartial, kPublic };

// Which closed form supplies private uptake for one label.
enum class Piece : std::uint8_t { None, All, Unsubsidized, Interior };

struct Mode {
    std::array<Piece, 3> priv{};
    std::array<bool, 3> pub{};
    bool operator==(const Mode&) const = default;
};

struct Arms {
    PrivateArm priv;
    PublicArm pub;
};

struct Point {
    std::array<TreatmentEffect, 3> effects{};
    Switches g{};
};

Vec axpy(const Vec& x, double h, const Vec& f) noexcept {
    Vec out;
    for (std::size_t q = 0; q < 6; ++q) out[q] = x[q] + h * f[q];
    return out;
}

double max_abs(const Vec& v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Signs signs_of(const Switches& g) noexcept {
    Signs s{};
    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t o = j * kPerLabel;
        s[o + kEffect] = g[o + kEffect] > 0.0;
        s[o + kFreeRiding] = g[o + kFreeRiding] >= 0.0;
        s[o + kFullCoverage] = g[o + kFullCoverage] >= 0.0;
        s[o + kInterior] = g[o + kInterior] > 0.0;
        s[o + kPartial] = g[o + kPartial] > 0.0;
        s[o + kPublic] = g[o + kPublic] >= 0.0;
    }
    return s;
}

// Mirrors optimal_subsidy / private_treatment_probability /
// public_treatment_decision, expressed through switching-function signs.
Mode classify(const Signs& s, Arms arms) noexcept {
    Mode m;
    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t o = j * kPerLabel;
        Piece piece = Piece::None;
        if (arms.priv != PrivateArm::NoPrivateTreatment && s[o + kEffect]) {
            const bool optimal = arms.priv == PrivateArm::OptimalSubsidy;
            if (s[o + kFreeRiding] || (optimal && s[o + kFullCoverage])) {
                piece = Piece::All;
            } else if (optimal && s[o + kInterior]) {
                piece = Piece::Interior;
            } else if (s[o + kPartial]) {
                piece = Piece::Unsubsidized;
            }
        }
        m.priv[j] = piece;
        m.pub[j] = arms.pub == PublicArm::OptimalPublic && s[o + kPublic];
    }
    return m;
}

Signs forced(Signs s, std::size_t i, bool value) noexcept {
    s[i] = value;
    return s;
}

struct Sliding {
    std::size_t index = 0;
    Mode plus;
    Mode minus;
};

// Dynamics in force over one sub-step: a single mode, or sliding.
struct Regime {
    Mode mode;
    std::optional<Sliding> sliding;
};

class Model {
public:
    Model(const EpidemicParams& params, const EconParams& econ, const AssessmentMatrix& matrix)
        : params_(params), econ_(econ), matrix_(matrix) {}

    Point evaluate(const Vec& x) const {
        Point pt;
        const Prevalence prior{x[0] + x[3], x[1] + x[4], x[2] + x[5]};
        pt.effects = assessed_effects(prior, params_, matrix_);
        for (std::size_t j = 0; j < 3; ++j) {
            const auto sw = switching_functions(pt.effects[j].k, pt.effects[j].l, econ_);
            const std::size_t o = j * kPerLabel;
            pt.g[o + kEffect] = sw.effect;
            pt.g[o + kFreeRiding] = sw.free_riding;
            pt.g[o + kFullCoverage] = sw.full_coverage;
            pt.g[o + kInterior] = sw.interior;
            pt.g[o + kPartial] = sw.partial_uptake;
            pt.g[o + kPublic] = sw.public_benefit;
        }
        return pt;
    }

    // (public, private) assessed policies for a mode.
    std::pair<AssessedPolicy, AssessedPolicy> assessed(const Point& pt, const Mode& m) const noexcept {
        AssessedPolicy pub;
        AssessedPolicy priv;
        for (std::size_t j = 0; j < 3; ++j) {
            const auto [k, l] = pt.effects[j];
            switch (m.priv[j]) {
                case Piece::None: break;
                case Piece::All: priv.treat[j] = 1.0; break;
                case Piece::Unsubsidized: priv.treat[j] = unsubsidized_uptake(k, econ_); break;
                case Piece::Interior: priv.treat[j] = interior_uptake(k, l, econ_); break;
            }
            pub.treat[j] = m.pub[j] ? 1.0 : 0.0;
        }
        return {pub, priv};
    }

    Vec field(const Vec& x, const Point& pt, const Mode& m) const noexcept {
        const auto [pub, priv] = assessed(pt, m);
        return rates(x, pub, priv);
    }

    Vec rates(const Vec& x, const AssessedPolicy& pub, const AssessedPolicy& priv) const noexcept {
        return derivatives(ForestState::from_array(x), params_, assessed_to_true(pub, matrix_),
                           assessed_to_true(priv, matrix_))
            .to_array();
    }

    // Rate of change of switching function i along f, by central difference.
    double rate_along(const Vec& x, std::size_t i, const Vec& f) const {
        const double scale = max_abs(f);
        if (scale == 0.0) return 0.0;
        const double h = 1e-7 / scale;
        return (evaluate(axpy(x, h, f)).g[i] - evaluate(axpy(x, -h, f)).g[i]) / (2.0 * h);
    }

    // Filippov combination on surface i. The weight is clamped, so past the
    // exit point this degrades continuously to the field of the side the
    // trajectory leaves into.
    struct SlidingField {
        Vec f;
        double theta;
        bool attracting;
    };
    SlidingField sliding_field(const Vec& x, const Point& pt, const Sliding& s) const {
        const Vec fp = field(x, pt, s.plus);
        const Vec fm = field(x, pt, s.minus);
        const double sp = rate_along(x, s.index, fp);
        const double sm = rate_along(x, s.index, fm);
        const double denom = sm - sp;
        const double theta = denom != 0.0 ? std::clamp(sm / denom, 0.0, 1.0) : 0.5;
        Vec f;
        for (std::size_t q = 0; q < 6; ++q) f[q] = theta * fp[q] + (1.0 - theta) * fm[q];
        return {f, theta, sp < 0.0 && sm > 0.0};
    }

    const EconParams& econ() const noexcept { return econ_; }
    const EpidemicParams& params() const noexcept { return params_; }
    const AssessmentMatrix& matrix() const noexcept { return matrix_; }

private:
    EpidemicParams params_;
    EconParams econ_;
    AssessmentMatrix matrix_;
};

class Integrator {
public:
    Integrator(const Model& model, Arms arms, SimulationStats& stats)
        : model_(model), arms_(arms), stats_(stats) {}

    void set_arms(Arms arms) noexcept {
        arms_ = arms;
        sliding_.reset();
    }

    // Regime in force at x, dropping a slide that is no longer attracting.
    Regime resolve(const Vec& x, const Point& pt) {
        const Signs s = signs_of(pt.g);
        if (sliding_) {
            Sliding candidate{sliding_->index, classify(forced(s, sliding_->index, true), arms_),
                              classify(forced(s, sliding_->index, false), arms_)};
            if (!(candidate.plus == candidate.minus) && model_.sliding_field(x, pt, candidate).attracting) {
                sliding_ = candidate;
                return {candidate.plus, sliding_};
            }
            sliding_.reset();
        }
        return {classify(s, arms_), std::nullopt};
    }

    Vec field(const Vec& x, const Regime& r) const {
        const Point pt = model_.evaluate(x);
        if (r.sliding) return model_.sliding_field(x, pt, *r.sliding).f;
        return model_.field(x, pt, r.mode);
    }

    // Whether the regime chosen at the start still holds at x.
    bool holds(const Vec& x, const Regime& r) const {
        const Point pt = model_.evaluate(x);
        const Signs s = signs_of(pt.g);
        if (!r.sliding) return classify(s, arms_) == r.mode;
        const Sliding& sl = *r.sliding;
        return classify(forced(s, sl.index, true), arms_) == sl.plus &&
               classify(forced(s, sl.index, false), arms_) == sl.minus &&
               model_.sliding_field(x, pt, sl).attracting;
    }

    Vec rk4(const Vec& x, double h, const Regime& r, double t) const {
        const Vec k1 = field(x, r);
        const Vec x2 = axpy(x, 0.5 * h, k1);
        guard(x2, t, h);
        const Vec k2 = field(x2, r);
        const Vec x3 = axpy(x, 0.5 * h, k2);
        guard(x3, t, h);
        const Vec k3 = field(x3, r);
        const Vec x4 = axpy(x, h, k3);
        guard(x4, t, h);
        const Vec k4 = field(x4, r);
        Vec out;
        for (std::size_t q = 0; q < 6; ++q) {
            out[q] = x[q] + h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        }
        guard(out, t, h);
        return out;
    }

    // Advance x from t by h, stopping at every change of policy piece.
    Vec advance(Vec x, double t, double h) {
        double done = 0.0;
        std::size_t events = 0;
        while (h - done > kEventTolerance) {
            const double remaining = h - done;
            const Point pt = model_.evaluate(x);
            const Regime regime = resolve(x, pt);
            const Vec full = rk4(x, remaining, regime, t + done);
            if (events >= kMaxEventsPerStep) {
                ++stats_.chatter_fallbacks;
                return full;
            }
            if (holds(full, regime)) return full;

            double lo = 0.0;
            double hi = remaining;
            while (hi - lo > kEventTolerance) {
                const double mid = 0.5 * (lo + hi);
                if (holds(rk4(x, mid, regime, t + done), regime)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const Signs before = signs_of(pt.g);
            x = rk4(x, hi, regime, t + done);
            done += hi;
            ++events;
            ++stats_.events;
            if (!regime.sliding) maybe_enter_sliding(x, before);
        }
        return x;
    }

    // Effective policies at x, for output.
    std::pair<AssessedPolicy, AssessedPolicy> policies(const Vec& x) {
        const Point pt = model_.evaluate(x);
        const Regime r = resolve(x, pt);
        if (r.sliding) {
            const double theta = model_.sliding_field(x, pt, *r.sliding).theta;
            const auto [pub_p, priv_p] = model_.assessed(pt, r.sliding->plus);
            const auto [pub_m, priv_m] = model_.assessed(pt, r.sliding->minus);
            AssessedPolicy pub;
            AssessedPolicy priv;
            for (std::size_t j = 0; j < 3; ++j) {
                pub.treat[j] = theta * pub_p.treat[j] + (1.0 - theta) * pub_m.treat[j];
                priv.treat[j] = theta * priv_p.treat[j] + (1.0 - theta) * priv_m.treat[j];
            }
            return {pub, priv};
        }
        return model_.assessed(pt, r.mode);
    }

    Arms arms() const noexcept { return arms_; }

    // Copy that reports to other statistics; used for off-grid samples.
    Integrator probe(SimulationStats& scratch) const {
        Integrator copy(model_, arms_, scratch);
        copy.sliding_ = sliding_;
        return copy;
    }

private:
    void guard(const Vec& x, double t, double h) const {
        for (double v : x) {
            if (!(v >= -kStateSlack && v <= 1.0 + kStateSlack)) throw StepTooLarge(t, h);
        }
    }

    // After crossing into x, start sliding if a discontinuous switch traps
    // the trajectory from both sides.
    void maybe_enter_sliding(const Vec& x, const Signs& before) {
        const Point pt = model_.evaluate(x);
        const Signs now = signs_of(pt.g);
        for (std::size_t i = 0; i < kSwitches; ++i) {
            if (now[i] == before[i]) continue;
            Sliding candidate{i, classify(forced(now, i, true), arms_),
                              classify(forced(now, i, false), arms_)};
            if (candidate.plus == candidate.minus) continue;
            const Vec fp = model_.field(x, pt, candidate.plus);
            const Vec fm = model_.field(x, pt, candidate.minus);
            double jump = 0.0;
            for (std::size_t q = 0; q < 6; ++q) jump = std::max(jump, std::abs(fp[q] - fm[q]));
            if (jump <= 1e-10 * std::max({max_abs(fp), max_abs(fm), 1e-300})) continue;
            if (model_.sliding_field(x, pt, candidate).attracting) {
                sliding_ = candidate;
                ++stats_.sliding_entries;
                return;
            }
        }
    }

    const Model& model_;
    Arms arms_;
    SimulationStats& stats_;
    std::optional<Sliding> sliding_;
};

TrajectoryRecord make_record(double t, const Vec& x, Integrator& integ, const Model& model) {
    TrajectoryRecord rec;
    rec.time = t;
    rec.state = ForestState::from_array(x);
    const auto [pub, priv] = integ.policies(x);
    rec.policy_m = assessed_to_true(pub, model.matrix());
    rec.policy_o = assessed_to_true(priv, model.matrix());

    PolicySnapshot snap;
    snap.public_trees = {pub, rec.policy_m};
    snap.private_trees = {priv, rec.policy_o};
    if (integ.arms().priv == PrivateArm::OptimalSubsidy) {
        snap.effects = assessed_effects(rec.state.prevalence(), model.params(), model.matrix());
        for (std::size_t j = 0; j < 3; ++j) {
            rec.subsidies[j] = optimal_subsidy(snap.effects[j].k, snap.effects[j].l, model.econ()).s_star;
        }
    }
    snap.subsidies = rec.subsidies;
    if (model.econ().decomposition) {
        const ForestState rates = derivatives(rec.state, model.params(), rec.policy_m, rec.policy_o);
        rec.welfare = welfare_flows(rec.state, snap, rates, model.econ(), model.params(), model.matrix());
    }
    return rec;
}

}  // namespace

Trajectory simulate(const ForestState& initial, const EpidemicParams& params, const EconParams& econ,
                    const AssessmentMatrix& matrix, const ScenarioSpec& scenario,
                    const SimulationOptions& options) {
    std::vector<ValidationIssue> issues = check(initial);
    for (auto& issue : check(params)) issues.push_back(std::move(issue));
    for (auto& issue : check(econ)) issues.push_back(std::move(issue));
    for (auto& issue : check(matrix)) issues.push_back(std::move(issue));
    if (!(options.dt > 0.0) || !std::isfinite(options.dt)) issues.push_back({"dt", options.dt, "must be > 0"});
    if (!(options.horizon >= 0.0) || !std::isfinite(options.horizon)) {
        issues.push_back({"horizon", options.horizon, "must be >= 0"});
    }
    if (!(options.output_interval > 0.0) || !std::isfinite(options.output_interval)) {
        issues.push_back({"output_interval", options.output_interval, "must be > 0"});
    }
    if (scenario.switch_time && !(*scenario.switch_time >= 0.0)) {
        issues.push_back({"switch_time", *scenario.switch_time, "must be >= 0"});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));

    Trajectory traj;
    const Model model(params, econ, matrix);
    const Arms target{scenario.private_arm, scenario.public_arm};
    const Arms idle{PrivateArm::NoSubsidy, PublicArm::NoPublicTreatment};
    const double switch_at = scenario.switch_time && *scenario.switch_time > 0.0
                                 ? *scenario.switch_time
                                 : std::numeric_limits<double>::infinity();
    Integrator integ(model, std::isfinite(switch_at) ? idle : target, traj.stats);

    Vec x = initial.to_array();
    double t = 0.0;
    std::size_t step = 0;
    std::size_t sample = 0;
    traj.records.push_back(make_record(t, x, integ, model));

    // The step grid is k*dt, plus the switch time and the horizon. Output
    // samples that fall between grid points are taken by a side integration
    // from the last grid point, so the output cadence never alters the
    // trajectory itself.
    const double horizon = options.horizon;
    auto sample_time = [&](std::size_t m) { return static_cast<double>(m) * options.output_interval; };
    while (t < horizon) {
        const double next_step = static_cast<double>(step + 1) * options.dt;
        double target_t = std::min(next_step, horizon);
        if (switch_at > t) target_t = std::min(target_t, switch_at);

        const Vec start = x;
        SimulationStats scratch;
        const Integrator before = integ.probe(scratch);
        x = integ.advance(x, t, target_t - t);

        for (double ts = sample_time(sample + 1); ts < target_t; ts = sample_time(++sample + 1)) {
            Integrator side = before.probe(scratch);
            const Vec xs = side.advance(start, t, ts - t);
            traj.records.push_back(make_record(ts, xs, side, model));
        }

        t = target_t;
        if (t == next_step) {
            ++step;
            ++traj.stats.steps;
        }

        const double total = x[0] + x[1] + x[2] + x[3] + x[4] + x[5];
        if (std::abs(total - 1.0) > kDriftTolerance) {
            for (double& v : x) v /= total;
            ++traj.stats.renormalizations;
            if (options.log) {
                std::ostringstream os;
                os << "renormalized state at t = " << t << " (sum was " << total << ")";
                options.log(os.str());
            }
        }
        if (t == switch_at) integ.set_arms(target);
        const bool on_sample = t == sample_time(sample + 1);
        if (on_sample) ++sample;
        if (on_sample || t == horizon) traj.records.push_back(make_record(t, x, integ, model));
    }
    return traj;
}

}  // namespace pestpolicy
