#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "pestpolicy/config.hpp"
#include "pestpolicy/csv.hpp"
#include "pestpolicy/epidemic.hpp"
#include "pestpolicy/parallel.hpp"
#include "pestpolicy/policy.hpp"
#include "pestpolicy/risk.hpp"
#include "pestpolicy/sweep.hpp"

namespace pestpolicy::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> dt;
    std::optional<double> horizon;
    std::optional<int> resolution;
    std::optional<std::string> scenario;
    std::optional<std::string> switch_times;
    std::optional<std::string> prevalence;
    std::optional<std::string> assessed;
    std::uint64_t seed = 20240101;
    std::size_t mc_samples = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double parse_number(const std::string& text, const std::string& field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError({{field, std::nan(""), "'" + text + "' is not a number"}});
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(parse_number(part, field));
    return values;
}

// --scenario private=...,public=...[,switch=T]
void apply_scenario(ScenarioConfig& s, const std::string& text) {
    std::vector<ValidationIssue> issues;
    for (const std::string& part : split(text, ',')) {
        const auto eq = part.find('=');
        const std::string key = part.substr(0, eq);
        const std::string value = eq == std::string::npos ? "" : part.substr(eq + 1);
        if (key == "private") {
            s.private_arm = parse_private_arm(value);
            if (!s.private_arm) issues.push_back({"--scenario private", std::nan(""), "unknown arm '" + value + "'"});
        } else if (key == "public") {
            s.public_arm = parse_public_arm(value);
            if (!s.public_arm) issues.push_back({"--scenario public", std::nan(""), "unknown arm '" + value + "'"});
        } else if (key == "switch") {
            s.switch_time = parse_number(value, "--scenario switch");
        } else {
            issues.push_back({"--scenario", std::nan(""), "unknown key '" + key + "'"});
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

// --horizon sets the horizon of the command being run, so a short simulate
// run does not invalidate the configured timing switch times.
RunConfig effective_config(const Overrides& o, bool timing) {
    RunConfig c = load_run_config(o.config);
    if (o.out) c.output_dir = *o.out;
    if (o.dt) c.scenario.dt = *o.dt;
    if (o.horizon) (timing ? c.timing.horizon : c.scenario.horizon) = *o.horizon;
    if (o.resolution) c.sweep.resolution = *o.resolution;
    if (o.scenario) apply_scenario(c.scenario, *o.scenario);
    if (o.switch_times) c.timing.switch_times = parse_list(*o.switch_times, "--switch-times");
    if (o.prevalence) {
        const auto v = parse_list(*o.prevalence, "--prevalence");
        if (v.size() != 3) {
            throw ValidationError({{"--prevalence", std::nan(""), "expects three values p_h,p_i,p_d"}});
        }
        c.model.prevalence = {v[0], v[1], v[2]};
    }
    if (auto issues = check(c); !issues.empty()) throw ValidationError(std::move(issues));
    c.model.prevalence = validate(c.model.prevalence);
    c.model.assessment = validate(c.model.assessment);
    return c;
}

SimulationOptions simulation_options(const RunConfig& c, double horizon, std::ostream& err) {
    auto mutex = std::make_shared<std::mutex>();
    SimulationOptions opts;
    opts.horizon = horizon;
    opts.dt = c.scenario.dt;
    opts.output_interval = c.scenario.output_interval;
    opts.log = [mutex, &err](std::string_view msg) {
        std::lock_guard lock(*mutex);
        err << "note: " << msg << '\n';
    };
    return opts;
}

ForestState start_state(const RunConfig& c) {
    return initial_state(c.scenario.public_share, c.scenario.initial_infested);
}

// Fraction of `samples` trees reaching the dying state within tau, drawn
// from exponential holding times of the healthy -> infested -> dying chain.
double sampled_mortality(TreeState start, double r1, double r2, double tau, std::size_t samples,
                         std::mt19937_64& rng) {
    if (start == TreeState::Dying) return 1.0;
    std::size_t dead = 0;
    for (std::size_t n = 0; n < samples; ++n) {
        double t = 0.0;
        if (start == TreeState::Healthy) {
            if (!(r1 > 0.0)) continue;
            t += std::exponential_distribution<double>(r1)(rng);
        }
        if (r2 > 0.0) t += std::exponential_distribution<double>(r2)(rng);
        else continue;
        if (t <= tau) ++dead;
    }
    return static_cast<double>(dead) / static_cast<double>(samples);
}

json monte_carlo_block(const RunConfig& c, const Overrides& o) {
    const EpidemicParams& p = c.model.epidemic;
    const Prevalence& prior = c.model.prevalence;
    const double i0 = prior.p_i;
    const DirectRisks exact = direct_risks(p, {.i0 = i0, .h0_comm = prior.p_h});
    std::mt19937_64 rng(o.seed);
    json rows = json::array();
    for (TreeState s : kTreeStates) {
        const double mu_u = sampled_mortality(s, p.beta * i0, p.gamma, p.tau_star, o.mc_samples, rng);
        const double mu_t = sampled_mortality(s, p.beta * i0 * (1.0 - p.eps_h), p.gamma * (1.0 - p.eps_i),
                                              p.tau_star, o.mc_samples, rng);
        rows.push_back({{"true_state", std::string(name(s))},
                        {"mu_u", exact.mu_u[index(s)]},
                        {"mu_u_sampled", mu_u},
                        {"mu_t", exact.mu_t[index(s)]},
                        {"mu_t_sampled", mu_t}});
    }
    return {{"samples", o.mc_samples}, {"seed", o.seed}, {"direct_risks", rows}};
}

int cmd_policy(const RunConfig& c, const Overrides& o, std::ostream& out) {
    std::optional<AssessedState> only;
    if (o.assessed) {
        only = parse_assessed(*o.assessed);
        if (!only) {
            throw ValidationError(
                {{"--assessed", std::nan(""), "must be one of healthy, infested, dying (got '" + *o.assessed + "')"}});
        }
    }
    const ModelConfig& m = c.model;
    const auto points = evaluate_policies(m.prevalence, m.epidemic, m.econ, m.assessment);
    json entries = json::array();
    for (AssessedState s : kAssessedStates) {
        if (only && *only != s) continue;
        const AssessedPolicyPoint& pt = points[index(s)];
        const SubsidyDecision& d = pt.subsidized;
        entries.push_back({{"assessed", std::string(name(s))},
                           {"k", pt.effect.k},
                           {"l", pt.effect.l},
                           {"subsidy",
                            {{"s_star", d.s_star},
                             {"regime", std::string(name(d.regime))},
                             {"price", d.price},
                             {"treat_prob", d.treat_prob},
                             {"muni_eu", d.muni_eu}}},
                           {"unsubsidized_treat_prob", pt.unsubsidized_prob},
                           {"public_treat", pt.public_treat}});
    }
    json doc = {{"engine_version", std::string(engine_version())},
                {"config_hash", config_hash(c)},
                {"prevalence", {{"p_h", m.prevalence.p_h}, {"p_i", m.prevalence.p_i}, {"p_d", m.prevalence.p_d}}},
                {"decisions", entries}};
    if (o.mc_samples > 0) doc["monte_carlo"] = monte_carlo_block(c, o);
    out << doc.dump(2) << '\n';
    return kOk;
}

template <class Writer>
ManifestEntry emit(const fs::path& dir, const std::string& file, const std::string& command, Writer writer,
                   std::ostream& err) {
    const std::size_t rows = write_atomically(dir / file, writer);
    err << "wrote " << rows << " rows to " << (dir / file).string() << '\n';
    return {file, command, rows};
}

int cmd_simulate(const RunConfig& c, std::ostream& err) {
    std::vector<ScenarioSpec> specs;
    for (PrivateArm pa : kPrivateArms) {
        if (c.scenario.private_arm && *c.scenario.private_arm != pa) continue;
        for (PublicArm pu : kPublicArms) {
            if (c.scenario.public_arm && *c.scenario.public_arm != pu) continue;
            specs.push_back({pa, pu, c.scenario.switch_time});
        }
    }
    const ModelConfig& m = c.model;
    const ForestState start = start_state(c);
    const SimulationOptions opts = simulation_options(c, c.scenario.horizon, err);
    std::vector<Trajectory> runs(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) {
        runs[i] = simulate(start, m.epidemic, m.econ, m.assessment, specs[i], opts);
    });
    const fs::path dir = c.output_dir;
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::string file = "traj_" + std::string(name(specs[i].private_arm)) + "_" +
                                 std::string(name(specs[i].public_arm)) + ".csv";
        entries.push_back(emit(
            dir, file, "simulate", [&](std::ostream& os) { return write_trajectory_csv(os, runs[i]); }, err));
    }
    update_manifest(dir, config_hash(c), std::string(engine_version()), entries);
    return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& err) {
    const ModelConfig& m = c.model;
    const auto map = policy_map(simplex_grid(c.sweep.resolution), m.epidemic, m.econ, m.assessment);
    const auto deltas = delta_range(c.sweep.delta_min, c.sweep.delta_max, c.sweep.delta_step);
    const auto sweep = delta_sweep(deltas, m.epidemic, m.econ, m.assessment, m.prevalence);
    const fs::path dir = c.output_dir;
    std::vector<ManifestEntry> entries;
    entries.push_back(emit(
        dir, "policy_map.csv", "sweep", [&](std::ostream& os) { return write_policy_map_csv(os, map); }, err));
    entries.push_back(emit(
        dir, "delta_sweep.csv", "sweep", [&](std::ostream& os) { return write_delta_sweep_csv(os, sweep); }, err));
    update_manifest(dir, config_hash(c), std::string(engine_version()), entries);
    return kOk;
}

int cmd_timing(const RunConfig& c, std::ostream& err) {
    const ModelConfig& m = c.model;
    const auto rows = timing_study(c.timing.switch_times, start_state(c), m.epidemic, m.econ, m.assessment,
                                   simulation_options(c, c.timing.horizon, err));
    const fs::path dir = c.output_dir;
    const auto entry =
        emit(dir, "timing.csv", "timing", [&](std::ostream& os) { return write_timing_csv(os, rows); }, err);
    update_manifest(dir, config_hash(c), std::string(engine_version()), {entry});
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pest-treatment subsidy policies and forest epidemic simulation", "pestpolicy"};
    app.set_version_flag("--version", std::string(engine_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config, "Run configuration (JSON)")->required();
    app.add_option("--out", o.out, "Output directory, overrides output_dir (default ./out)");
    app.add_option("--dt", o.dt, "Integrator step in years");
    app.add_option("--horizon", o.horizon, "Simulated years for simulate and timing");
    app.add_option("--resolution", o.resolution, "Simplex grid resolution for sweep");
    app.add_option("--scenario", o.scenario, "Arms for simulate: private=ARM,public=ARM[,switch=YEARS]");
    app.add_option("--switch-times", o.switch_times, "Policy start times for timing: a,b,c");
    app.add_option("--prevalence", o.prevalence, "Community prevalence p_h,p_i,p_d");
    app.add_option("--assessed", o.assessed, "Restrict policy output to one assessed state");
    app.add_option("--seed", o.seed, "Seed for Monte Carlo checks");
    app.add_option("--mc-samples", o.mc_samples, "Monte Carlo samples per direct-risk check in policy (0 = off)");

    CLI::App* policy = app.add_subcommand("policy", "Equilibrium subsidy and public decision per assessed state (JSON)");
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Trajectory CSVs for one scenario or the scenario matrix");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Simplex policy map and social-value sweep CSVs");
    CLI::App* timing_cmd = app.add_subcommand("timing", "Survival against policy start time CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const RunConfig c = effective_config(o, timing_cmd->parsed());
        if (policy->parsed()) return cmd_policy(c, o, out);
        if (simulate_cmd->parsed()) return cmd_simulate(c, err);
        if (sweep_cmd->parsed()) return cmd_sweep(c, err);
        if (timing_cmd->parsed()) return cmd_timing(c, err);
        return kUsage;
    } catch (const StepTooLarge& e) {
        err << "error: " << e.what() << "\nhint: reduce --dt (currently " << format_number(e.dt())
            << " years); 1/64 is stable at the case-study rates\n";
        return kStepTooLarge;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace pestpolicy::cli
