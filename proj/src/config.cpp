#include "pioneer/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(key), "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key), "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return v;
}

template <class Enum>
Enum to_enum(std::string_view key, std::string_view text, std::initializer_list<std::pair<std::string_view, Enum>> options) {
    text = trim(text);
    for (const auto& [name, value] : options) {
        if (name == text) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : "|") + std::string(name);
    throw ConfigError(std::string(key), "expected one of " + allowed + ", got '" + std::string(text) + "'");
}

// Walks a KeyValues map, marking keys as consumed; leftovers are unknown keys.
class Reader {
public:
    explicit Reader(KeyValues kv) : kv_(std::move(kv)) {}

    template <class F>
    void take(const std::string& key, F&& apply) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return;
        apply(std::string_view(it->second.first));
        kv_.erase(it);
    }

    void take_double(const std::string& key, double& out) {
        take(key, [&](std::string_view v) { out = to_double(key, v); });
    }
    void take_size(const std::string& key, std::size_t& out) {
        take(key, [&](std::string_view v) { out = static_cast<std::size_t>(to_unsigned(key, v)); });
    }
    void take_u64(const std::string& key, std::uint64_t& out) {
        take(key, [&](std::string_view v) { out = to_unsigned(key, v); });
    }

    void finish() const {
        if (!kv_.empty()) {
            const auto& [key, entry] = *kv_.begin();
            throw ConfigError(key, "unknown key (line " + std::to_string(entry.second) + ")");
        }
    }

private:
    KeyValues kv_;
};

void read_scenario_keys(Reader& r, ScenarioConfig& s) {
    r.take_size("m", s.experts);
    r.take_double("alpha_pre", s.alpha_pre);
    r.take_double("alpha_post", s.alpha_post);
    r.take_size("shock_period", s.shock_period);
    r.take_size("T", s.horizon);
    r.take_size("burn_in", s.burn_in);
    r.take_u64("seed", s.seed);
    r.take_size("obs_per_period", s.obs_per_period);
    r.take_double("period_step", s.period_step);
    r.take_double("granger_level", s.pooling.granger_significance);
    r.take("regime_mode", [&](std::string_view v) {
        s.regime = to_enum<RegimeMode>("regime_mode", v,
                                       {{"reset_at_shock", RegimeMode::reset_at_shock},
                                        {"full_history", RegimeMode::full_history}});
    });
    r.take("estimate_rule", [&](std::string_view v) {
        s.estimate_rule = to_enum<EstimateRule>("estimate_rule", v,
                                                {{"posterior_mean", EstimateRule::posterior_mean},
                                                 {"posterior_mode", EstimateRule::posterior_mode}});
    });
    r.take("center", [&](std::string_view v) {
        s.pooling.pdm.center = to_enum<Center>("center", v, {{"mean", Center::mean}, {"median", Center::median}});
    });
    r.take("fallback", [&](std::string_view v) {
        s.pooling.pdm.fallback = to_enum<Fallback>(
            "fallback", v, {{"carry_previous", Fallback::carry_previous}, {"uniform", Fallback::uniform}});
    });
    r.take("methods", [&](std::string_view v) { s.methods = parse_method_list("methods", v); });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class T, class F>
std::vector<T> parse_list(std::string_view text, F&& one) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(one(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
    KeyValues kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        if (value.empty()) throw ConfigError(key, "empty value (line " + std::to_string(line_no) + ")");
        const auto [it, inserted] = kv.emplace(key, std::pair{value, line_no});
        if (!inserted) {
            throw ConfigError(key, "duplicate key (lines " + std::to_string(it->second.second) + " and " +
                                       std::to_string(line_no) + ")");
        }
    }
    return kv;
}

SimulateSettings parse_scenario_text(std::string_view text) {
    Reader r(parse_key_values(text));
    SimulateSettings out;
    read_scenario_keys(r, out.scenario);
    r.take_size("reps", out.replications);
    r.finish();
    out.scenario.validate();
    if (out.replications < 2) throw ConfigError("reps", "must be >= 2");
    return out;
}

LinearTsSettings parse_linear_ts_text(std::string_view text) {
    Reader r(parse_key_values(text));
    LinearTsSettings out;
    auto& l = out.linear;
    r.take_double("a", l.a);
    r.take_double("b", l.b);
    r.take_double("c", l.c);
    r.take_double("d", l.d);
    r.take_double("e", l.e);
    r.take_double("noise_sd", l.noise_sd);
    r.take_size("T", l.horizon);
    r.take_u64("seed", l.seed);
    r.take_size("reps", out.replications);
    r.finish();
    l.validate();
    if (out.replications < 2) throw ConfigError("reps", "must be >= 2");
    return out;
}

WelfarePipelineConfig parse_welfare_text(std::string_view text) {
    Reader r(parse_key_values(text));
    WelfarePipelineConfig out;
    auto& w = out.welfare;
    r.take_double("wealth_c", w.wealth_c);
    r.take_double("indemnity_scale_a", w.indemnity_scale_a);
    r.take_double("c_S", w.supervisory_cost);
    r.take_double("lambda", w.lambda);
    r.take_double("n_obs", w.n_obs);
    r.take_double("alpha_mean", w.alpha_mean);
    r.take_double("confidence", w.confidence);
    r.take_size("m_min", out.m_min);
    r.take_size("m_max", out.m_max);
    r.take_size("reps", out.replications);
    r.take_size("eval_offset", out.eval_offset);
    r.take("tool", [&](std::string_view v) {
        const auto kind = parse_pooling_kind(trim(v));
        if (!kind) throw ConfigError("tool", "unknown pooling method '" + std::string(v) + "'");
        out.tool = *kind;
    });
    ScenarioConfig& s = out.scenario;
    r.take_double("alpha_pre", s.alpha_pre);
    r.take_size("shock_period", s.shock_period);
    r.take_size("burn_in", s.burn_in);
    r.take_u64("seed", s.seed);
    r.take_size("obs_per_period", s.obs_per_period);
    r.take("regime_mode", [&](std::string_view v) {
        s.regime = to_enum<RegimeMode>("regime_mode", v,
                                       {{"reset_at_shock", RegimeMode::reset_at_shock},
                                        {"full_history", RegimeMode::full_history}});
    });
    r.take("center", [&](std::string_view v) {
        s.pooling.pdm.center = to_enum<Center>("center", v, {{"mean", Center::mean}, {"median", Center::median}});
    });
    r.take("fallback", [&](std::string_view v) {
        s.pooling.pdm.fallback = to_enum<Fallback>(
            "fallback", v, {{"carry_previous", Fallback::carry_previous}, {"uniform", Fallback::uniform}});
    });
    r.finish();
    s.alpha_post = w.alpha_mean;
    s.horizon = s.shock_period + out.eval_offset + 1;
    s.experts = std::max<std::size_t>(out.m_min, 2);
    out.validate();
    s.validate();
    return out;
}

AnyConfig parse_config(const std::filesystem::path& path, ConfigKind kind) {
    const std::string text = read_file(path);
    switch (kind) {
        case ConfigKind::scenario: return parse_scenario_text(text);
        case ConfigKind::linear_ts: return parse_linear_ts_text(text);
        case ConfigKind::welfare: return parse_welfare_text(text);
    }
    throw ConfigError("", "unknown config kind");
}

std::vector<double> parse_double_list(std::string_view key, std::string_view text) {
    return parse_list<double>(text, [&](std::string_view v) { return to_double(key, v); });
}

std::vector<std::size_t> parse_size_list(std::string_view key, std::string_view text) {
    return parse_list<std::size_t>(text, [&](std::string_view v) { return static_cast<std::size_t>(to_unsigned(key, v)); });
}

std::vector<PoolingKind> parse_method_list(std::string_view key, std::string_view text) {
    auto kinds = parse_list<PoolingKind>(text, [&](std::string_view v) {
        const auto kind = parse_pooling_kind(trim(v));
        if (!kind) throw ConfigError(std::string(key), "unknown pooling method '" + std::string(trim(v)) + "'");
        return *kind;
    });
    std::set<PoolingKind> seen;
    for (PoolingKind k : kinds) {
        if (!seen.insert(k).second) throw ConfigError(std::string(key), "method listed twice");
    }
    return kinds;
}

}  // namespace pioneer
