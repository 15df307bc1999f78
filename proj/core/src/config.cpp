#include "pestpolicy/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace pestpolicy {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Reader {
public:
    std::vector<ValidationIssue> issues;

    void fail(std::string field, std::string message, double value = kNaN) {
        issues.push_back({std::move(field), value, std::move(message)});
    }

    bool object(const json& j, const std::string& path) {
        if (j.is_object()) return true;
        fail(path, "must be a JSON object");
        return false;
    }

    void known_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
        for (const auto& [key, value] : obj.items()) {
            bool found = false;
            for (std::string_view k : keys) found = found || key == k;
            if (!found) fail(join(path, key), "unknown field");
        }
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "missing required field");
            return std::nullopt;
        }
        if (!it->is_number()) {
            fail(join(path, key), "must be a number");
            return std::nullopt;
        }
        return it->get<double>();
    }

    double number_or(const json& obj, const std::string& path, const char* key, double fallback) {
        return number(obj, path, key, false).value_or(fallback);
    }

    static std::string join(const std::string& path, std::string_view key) {
        return path.empty() ? std::string(key) : path + "." + std::string(key);
    }
};

void absorb(Reader& r, std::vector<ValidationIssue> issues) {
    for (auto& issue : issues) r.issues.push_back(std::move(issue));
}

EpidemicParams read_epidemic(Reader& r, const json& j, const std::string& path) {
    EpidemicParams p;
    if (!r.object(j, path)) return p;
    r.known_keys(j, path, {"beta", "gamma", "alpha", "eps_h", "eps_i", "tau_star"});
    const std::size_t before = r.issues.size();
    p.beta = r.number(j, path, "beta", true).value_or(kNaN);
    p.gamma = r.number(j, path, "gamma", true).value_or(kNaN);
    p.alpha = r.number(j, path, "alpha", true).value_or(kNaN);
    p.eps_h = r.number(j, path, "eps_h", true).value_or(kNaN);
    p.eps_i = r.number(j, path, "eps_i", true).value_or(kNaN);
    p.tau_star = r.number(j, path, "tau_star", true).value_or(kNaN);
    if (r.issues.size() == before) absorb(r, check(p));
    return p;
}

EconParams read_econ(Reader& r, const json& j, const std::string& path) {
    EconParams e;
    if (!r.object(j, path)) return e;
    r.known_keys(j, path, {"cost_c", "a", "b", "delta_m", "delta_m_prime", "v_m", "w_m", "w_m_prime"});
    const std::size_t before = r.issues.size();
    e.cost_c = r.number(j, path, "cost_c", true).value_or(kNaN);
    e.a = r.number(j, path, "a", true).value_or(kNaN);
    e.b = r.number(j, path, "b", true).value_or(kNaN);

    const auto v_m = r.number(j, path, "v_m", false);
    const auto w_m = r.number(j, path, "w_m", false);
    const auto w_m_prime = r.number(j, path, "w_m_prime", false);
    const int parts = int(v_m.has_value()) + int(w_m.has_value()) + int(w_m_prime.has_value());
    if (parts == 3) {
        e.decomposition = SocialValues{*v_m, *w_m, *w_m_prime};
    } else if (parts != 0) {
        r.fail(Reader::join(path, "v_m"), "v_m, w_m and w_m_prime must be given together");
    }
    // Δ values may be omitted when the decomposition determines them.
    const bool derive = e.decomposition.has_value();
    const auto delta_m = r.number(j, path, "delta_m", !derive);
    const auto delta_m_prime = r.number(j, path, "delta_m_prime", !derive);
    e.delta_m = delta_m ? *delta_m : derive ? e.decomposition->v_m + e.decomposition->w_m : kNaN;
    e.delta_m_prime = delta_m_prime ? *delta_m_prime
                      : derive      ? e.decomposition->v_m + e.decomposition->w_m_prime
                                    : kNaN;
    if (r.issues.size() == before) absorb(r, check(e));
    return e;
}

AssessmentMatrix read_assessment(Reader& r, const json& j, const std::string& path) {
    AssessmentMatrix m;
    auto bad_shape = [&] { r.fail(path, "must be a 3x3 array of numbers (rows: true state)"); };
    if (!j.is_array() || j.size() != 3) {
        bad_shape();
        return m;
    }
    for (std::size_t row = 0; row < 3; ++row) {
        if (!j[row].is_array() || j[row].size() != 3) {
            bad_shape();
            return m;
        }
        for (std::size_t col = 0; col < 3; ++col) {
            if (!j[row][col].is_number()) {
                bad_shape();
                return m;
            }
            m.entries[row][col] = j[row][col].get<double>();
        }
    }
    const auto issues = check(m);
    if (!issues.empty()) {
        absorb(r, issues);
        return m;
    }
    return validate(m);
}

Prevalence read_prevalence(Reader& r, const json& j, const std::string& path) {
    Prevalence p;
    if (!r.object(j, path)) return p;
    r.known_keys(j, path, {"p_h", "p_i", "p_d"});
    const std::size_t before = r.issues.size();
    p.p_h = r.number(j, path, "p_h", true).value_or(kNaN);
    p.p_i = r.number(j, path, "p_i", true).value_or(kNaN);
    p.p_d = r.number(j, path, "p_d", true).value_or(kNaN);
    if (r.issues.size() != before) return p;
    const auto issues = check(p);
    if (!issues.empty()) {
        absorb(r, issues);
        return p;
    }
    return validate(p);
}

const json& member(Reader& r, const json& doc, const char* key) {
    static const json null_value;
    const auto it = doc.find(key);
    if (it == doc.end()) {
        r.fail(key, "missing required section");
        return null_value;
    }
    return *it;
}

ModelConfig read_model(Reader& r, const json& doc) {
    ModelConfig c;
    if (!r.object(doc, "<document>")) return c;
    if (const json& j = member(r, doc, "epidemic"); !j.is_null()) c.epidemic = read_epidemic(r, j, "epidemic");
    if (const json& j = member(r, doc, "econ"); !j.is_null()) c.econ = read_econ(r, j, "econ");
    if (const json& j = member(r, doc, "assessment"); !j.is_null()) {
        c.assessment = read_assessment(r, j, "assessment");
    }
    if (const json& j = member(r, doc, "prevalence"); !j.is_null()) {
        c.prevalence = read_prevalence(r, j, "prevalence");
    }
    return c;
}

ScenarioConfig read_scenario(Reader& r, const json& j) {
    ScenarioConfig s;
    const std::string path = "scenario";
    if (!r.object(j, path)) return s;
    r.known_keys(j, path,
                 {"private", "public", "switch_time", "dt", "horizon", "output_interval", "public_share",
                  "initial_infested"});
    if (const auto it = j.find("private"); it != j.end()) {
        if (it->is_string()) s.private_arm = parse_private_arm(it->get<std::string>());
        if (!s.private_arm) r.fail("scenario.private", "must be one of no_treatment, no_subsidy, optimal_subsidy");
    }
    if (const auto it = j.find("public"); it != j.end()) {
        if (it->is_string()) s.public_arm = parse_public_arm(it->get<std::string>());
        if (!s.public_arm) r.fail("scenario.public", "must be one of no_treatment, optimal");
    }
    s.switch_time = r.number(j, path, "switch_time", false);
    s.dt = r.number_or(j, path, "dt", s.dt);
    s.horizon = r.number_or(j, path, "horizon", s.horizon);
    s.output_interval = r.number_or(j, path, "output_interval", s.output_interval);
    s.public_share = r.number_or(j, path, "public_share", s.public_share);
    s.initial_infested = r.number_or(j, path, "initial_infested", s.initial_infested);
    return s;
}

SweepConfig read_sweep(Reader& r, const json& j) {
    SweepConfig s;
    const std::string path = "sweep";
    if (!r.object(j, path)) return s;
    r.known_keys(j, path, {"resolution", "delta_min", "delta_max", "delta_step"});
    if (const auto it = j.find("resolution"); it != j.end()) {
        if (it->is_number_integer()) {
            s.resolution = it->get<int>();
        } else {
            r.fail("sweep.resolution", "must be an integer");
        }
    }
    s.delta_min = r.number_or(j, path, "delta_min", s.delta_min);
    s.delta_max = r.number_or(j, path, "delta_max", s.delta_max);
    s.delta_step = r.number_or(j, path, "delta_step", s.delta_step);
    return s;
}

TimingConfig read_timing(Reader& r, const json& j) {
    TimingConfig t;
    const std::string path = "timing";
    if (!r.object(j, path)) return t;
    r.known_keys(j, path, {"switch_times", "horizon"});
    if (const auto it = j.find("switch_times"); it != j.end()) {
        t.switch_times.clear();
        if (!it->is_array()) {
            r.fail("timing.switch_times", "must be an array of numbers");
        } else {
            for (const json& v : *it) {
                if (v.is_number()) {
                    t.switch_times.push_back(v.get<double>());
                } else {
                    r.fail("timing.switch_times", "must be an array of numbers");
                    break;
                }
            }
        }
    }
    t.horizon = r.number_or(j, path, "horizon", t.horizon);
    return t;
}

json to_value(const EpidemicParams& p) {
    return {{"beta", p.beta},   {"gamma", p.gamma}, {"alpha", p.alpha},
            {"eps_h", p.eps_h}, {"eps_i", p.eps_i}, {"tau_star", p.tau_star}};
}

json to_value(const EconParams& e) {
    json j = {{"cost_c", e.cost_c},
              {"a", e.a},
              {"b", e.b},
              {"delta_m", e.delta_m},
              {"delta_m_prime", e.delta_m_prime}};
    if (e.decomposition) {
        j["v_m"] = e.decomposition->v_m;
        j["w_m"] = e.decomposition->w_m;
        j["w_m_prime"] = e.decomposition->w_m_prime;
    }
    return j;
}

json to_value(const AssessmentMatrix& m) {
    json j = json::array();
    for (const auto& row : m.entries) j.push_back({row[0], row[1], row[2]});
    return j;
}

json to_value(const Prevalence& p) { return {{"p_h", p.p_h}, {"p_i", p.p_i}, {"p_d", p.p_d}}; }

json to_value(const ModelConfig& c) {
    return {{"epidemic", to_value(c.epidemic)},
            {"econ", to_value(c.econ)},
            {"assessment", to_value(c.assessment)},
            {"prevalence", to_value(c.prevalence)}};
}

json to_value(const RunConfig& c) {
    json j = to_value(c.model);
    json scenario = {{"dt", c.scenario.dt},
                     {"horizon", c.scenario.horizon},
                     {"output_interval", c.scenario.output_interval},
                     {"public_share", c.scenario.public_share},
                     {"initial_infested", c.scenario.initial_infested}};
    if (c.scenario.private_arm) scenario["private"] = std::string(name(*c.scenario.private_arm));
    if (c.scenario.public_arm) scenario["public"] = std::string(name(*c.scenario.public_arm));
    if (c.scenario.switch_time) scenario["switch_time"] = *c.scenario.switch_time;
    j["scenario"] = scenario;
    j["sweep"] = {{"resolution", c.sweep.resolution},
                  {"delta_min", c.sweep.delta_min},
                  {"delta_max", c.sweep.delta_max},
                  {"delta_step", c.sweep.delta_step}};
    j["timing"] = {{"switch_times", c.timing.switch_times}, {"horizon", c.timing.horizon}};
    j["output_dir"] = c.output_dir;
    return j;
}

json parse_document(Reader& r, std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        r.fail("<document>", std::string("malformed JSON: ") + e.what());
        return json();
    }
}

template <class T>
T finish(Reader& r, T value) {
    if (!r.issues.empty()) throw ValidationError(std::move(r.issues));
    return value;
}

}  // namespace

ModelConfig case_study_config() {
    return {case_study_epidemic(), case_study_econ(), case_study_assessment(), Prevalence{0.8, 0.15, 0.05}};
}

std::vector<ValidationIssue> check(const RunConfig& c) {
    std::vector<ValidationIssue> issues = check(c.model.epidemic);
    for (auto& i : check(c.model.econ)) issues.push_back(std::move(i));
    for (auto& i : check(c.model.assessment)) issues.push_back(std::move(i));
    for (auto& i : check(c.model.prevalence)) issues.push_back(std::move(i));

    auto need = [&](bool ok, const char* field, double value, const char* message) {
        if (!ok || !std::isfinite(value)) issues.push_back({field, value, message});
    };
    const ScenarioConfig& s = c.scenario;
    need(s.dt > 0.0, "scenario.dt", s.dt, "must be > 0");
    need(s.horizon >= 0.0, "scenario.horizon", s.horizon, "must be >= 0");
    need(s.output_interval > 0.0, "scenario.output_interval", s.output_interval, "must be > 0");
    need(s.public_share >= 0.0 && s.public_share <= 1.0, "scenario.public_share", s.public_share,
         "must lie in [0, 1]");
    need(s.initial_infested >= 0.0 && s.initial_infested <= 1.0, "scenario.initial_infested",
         s.initial_infested, "must lie in [0, 1]");
    if (s.switch_time) need(*s.switch_time >= 0.0, "scenario.switch_time", *s.switch_time, "must be >= 0");

    need(c.sweep.resolution >= 1, "sweep.resolution", c.sweep.resolution, "must be >= 1");
    need(std::isfinite(c.sweep.delta_min), "sweep.delta_min", c.sweep.delta_min, "must be finite");
    need(c.sweep.delta_max >= c.sweep.delta_min, "sweep.delta_max", c.sweep.delta_max, "must be >= delta_min");
    need(c.sweep.delta_step > 0.0, "sweep.delta_step", c.sweep.delta_step, "must be > 0");

    need(c.timing.horizon >= 0.0, "timing.horizon", c.timing.horizon, "must be >= 0");
    for (double t : c.timing.switch_times) {
        need(t >= 0.0 && t <= c.timing.horizon, "timing.switch_times", t, "must lie in [0, timing.horizon]");
    }
    if (c.output_dir.empty()) issues.push_back({"output_dir", kNaN, "must not be empty"});
    return issues;
}

std::string to_json(const EpidemicParams& p) { return to_value(p).dump(2); }
std::string to_json(const EconParams& e) { return to_value(e).dump(2); }
std::string to_json(const AssessmentMatrix& m) { return to_value(m).dump(2); }
std::string to_json(const Prevalence& p) { return to_value(p).dump(2); }
std::string to_json(const ModelConfig& c) { return to_value(c).dump(2); }
std::string to_json(const RunConfig& c) { return to_value(c).dump(2); }

template <>
EpidemicParams parse_json<EpidemicParams>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    EpidemicParams p = r.issues.empty() ? read_epidemic(r, doc, "epidemic") : EpidemicParams{};
    return finish(r, p);
}

template <>
EconParams parse_json<EconParams>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    EconParams e = r.issues.empty() ? read_econ(r, doc, "econ") : EconParams{};
    return finish(r, e);
}

template <>
AssessmentMatrix parse_json<AssessmentMatrix>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    AssessmentMatrix m = r.issues.empty() ? read_assessment(r, doc, "assessment") : AssessmentMatrix{};
    return finish(r, m);
}

template <>
Prevalence parse_json<Prevalence>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    Prevalence p = r.issues.empty() ? read_prevalence(r, doc, "prevalence") : Prevalence{};
    return finish(r, p);
}

template <>
ModelConfig parse_json<ModelConfig>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    ModelConfig c;
    if (r.issues.empty()) {
        c = read_model(r, doc);
        if (doc.is_object()) {
            r.known_keys(doc, "", {"epidemic", "econ", "assessment", "prevalence", "scenario", "sweep",
                                   "timing", "output_dir"});
        }
    }
    return finish(r, c);
}

template <>
RunConfig parse_json<RunConfig>(std::string_view text) {
    Reader r;
    const json doc = parse_document(r, text);
    RunConfig c;
    if (r.issues.empty()) {
        c.model = read_model(r, doc);
        if (doc.is_object()) {
            r.known_keys(doc, "", {"epidemic", "econ", "assessment", "prevalence", "scenario", "sweep",
                                   "timing", "output_dir"});
            if (const auto it = doc.find("scenario"); it != doc.end()) c.scenario = read_scenario(r, *it);
            if (const auto it = doc.find("sweep"); it != doc.end()) c.sweep = read_sweep(r, *it);
            if (const auto it = doc.find("timing"); it != doc.end()) c.timing = read_timing(r, *it);
            if (const auto it = doc.find("output_dir"); it != doc.end()) {
                if (it->is_string()) {
                    c.output_dir = it->get<std::string>();
                } else {
                    r.fail("output_dir", "must be a string");
                }
            }
        }
        if (r.issues.empty()) {
            for (auto& issue : check(c)) r.issues.push_back(std::move(issue));
        }
    }
    return finish(r, c);
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError({{"config", kNaN, "cannot read config file '" + path.string() + "'"}});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json<RunConfig>(buf.str());
}

std::string_view engine_version() noexcept { return PESTPOLICY_VERSION; }

std::string config_hash(const RunConfig& config) {
    const std::string canonical = to_value(config).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace pestpolicy
