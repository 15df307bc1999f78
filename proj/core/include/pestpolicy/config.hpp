#pragma once

// JSON configuration documents. Parsing collects every problem (syntax,
// missing or unknown fields, violated invariants) into one ValidationError.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pestpolicy/domain.hpp"
#include "pestpolicy/policy.hpp"

namespace pestpolicy {

/// The model proper: top-level keys epidemic, econ, assessment, prevalence.
struct ModelConfig {
    EpidemicParams epidemic;
    EconParams econ;
    AssessmentMatrix assessment;
    Prevalence prevalence;

    bool operator==(const ModelConfig&) const = default;
};

ModelConfig case_study_config();

struct ScenarioConfig {
    std::optional<PrivateArm> private_arm;
    std::optional<PublicArm> public_arm;
    std::optional<double> switch_time;
    double dt = 1.0 / 64.0;
    double horizon = 50.0;
    double output_interval = 0.25;
    double public_share = 0.4;
    double initial_infested = 0.01;

    bool operator==(const ScenarioConfig&) const = default;
};

struct SweepConfig {
    int resolution = 100;
    double delta_min = 0.0;
    double delta_max = 2000.0;
    double delta_step = 10.0;

    bool operator==(const SweepConfig&) const = default;
};

struct TimingConfig {
    std::vector<double> switch_times{0.0, 3.5, 7.0, 10.5, 14.0, 17.5, 21.0, 24.5, 28.0};
    double horizon = 50.0;

    bool operator==(const TimingConfig&) const = default;
};

/// Model plus the optional command blocks scenario, sweep, timing, output_dir.
struct RunConfig {
    ModelConfig model;
    ScenarioConfig scenario;
    SweepConfig sweep;
    TimingConfig timing;
    std::string output_dir = "./out";

    bool operator==(const RunConfig&) const = default;
};

std::vector<ValidationIssue> check(const RunConfig& config);

std::string to_json(const EpidemicParams& p);
std::string to_json(const EconParams& e);
std::string to_json(const AssessmentMatrix& m);
std::string to_json(const Prevalence& p);
std::string to_json(const ModelConfig& c);
std::string to_json(const RunConfig& c);

/// Parses one record or document; throws ValidationError.
template <class T>
T parse_json(std::string_view text);

template <>
EpidemicParams parse_json<EpidemicParams>(std::string_view text);
template <>
EconParams parse_json<EconParams>(std::string_view text);
template <>
AssessmentMatrix parse_json<AssessmentMatrix>(std::string_view text);
template <>
Prevalence parse_json<Prevalence>(std::string_view text);
template <>
ModelConfig parse_json<ModelConfig>(std::string_view text);
template <>
RunConfig parse_json<RunConfig>(std::string_view text);

/// Reads and parses a run configuration. A missing or unreadable file is
/// reported as a ValidationError naming the path.
RunConfig load_run_config(const std::filesystem::path& path);

/// Library version, recorded in run manifests.
std::string_view engine_version() noexcept;

/// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace pestpolicy
