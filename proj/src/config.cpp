#include "lrq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace lrq {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Cgc: return "cgc";
        case ExperimentKind::Fgc: return "fgc";
        case ExperimentKind::RateFunction: return "rate_function";
        case ExperimentKind::FiniteSizeSweep: return "finite_size_sweep";
        case ExperimentKind::TcProfile: return "tc_profile";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    for (auto k : {ExperimentKind::Cgc, ExperimentKind::Fgc, ExperimentKind::RateFunction,
                   ExperimentKind::FiniteSizeSweep, ExperimentKind::TcProfile})
        if (to_string(k) == s) return k;
    throw InvalidArgument("unknown experiment kind '" + s +
                          "' (expected cgc, fgc, rate_function, finite_size_sweep or tc_profile)");
}

std::string Diagnostic::format(const std::string& source) const {
    std::string where = line > 0 ? source + ":" + std::to_string(line) : source + " (command line)";
    return where + ": " + (key.empty() ? "" : key + ": ") + message;
}

namespace {

std::string join_diags(const std::string& src, const std::vector<Diagnostic>& d) {
    std::string s;
    for (const auto& x : d) s += (s.empty() ? "" : "\n") + x.format(src);
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto t = trim(s);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw InvalidArgument("expected a number, got '" + s + "'");
    if (!std::isfinite(v)) throw InvalidArgument("value must be finite");
    return v;
}

int parse_int(const std::string& s) {
    int v = 0;
    const auto t = trim(s);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw InvalidArgument("expected an integer, got '" + s + "'");
    return v;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_int(item));
    }
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> s = {
        {"experiment.kind", [](auto& c, const auto& v) { c.kind = experiment_kind_from_string(trim(v)); }},
        {"model.N", [](auto& c, const auto& v) { c.N = parse_int(v); }},
        {"model.h_initial", [](auto& c, const auto& v) { c.h_initial = parse_double(v); }},
        {"model.alpha_initial", [](auto& c, const auto& v) { c.alpha_initial = parse_double(v); }},
        {"model.h_final", [](auto& c, const auto& v) { c.h_final = parse_double(v); }},
        {"model.alpha_final", [](auto& c, const auto& v) { c.alpha_final = parse_double(v); }},
        {"model.h_final_cross", [](auto& c, const auto& v) { c.h_final_cross = parse_double(v); }},
        {"time.dt", [](auto& c, const auto& v) { c.dt = parse_double(v); }},
        {"time.t_max", [](auto& c, const auto& v) { c.t_max = parse_double(v); }},
        {"time.steady_state_time", [](auto& c, const auto& v) { c.steady_state_time = parse_double(v); }},
        {"time.average_window", [](auto& c, const auto& v) { c.average_window = parse_double(v); }},
        {"time.average_samples", [](auto& c, const auto& v) { c.average_samples = parse_int(v); }},
        {"profile.r_list", [](auto& c, const auto& v) { c.r_list = parse_int_list(v); }},
        {"sweep.sizes", [](auto& c, const auto& v) { c.sizes = parse_int_list(v); }},
        {"fit.r_min", [](auto& c, const auto& v) { c.fit.r_min = parse_int(v); }},
        {"fit.tail_fraction", [](auto& c, const auto& v) { c.fit.tail_fraction = parse_double(v); }},
        {"fit.window",
         [](auto& c, const auto& v) {
             const auto w = parse_int_list(v);
             if (w.empty()) {
                 c.fit.window.reset();
                 return;
             }
             if (w.size() != 2) throw InvalidArgument("window needs two integers 'R_min, R_max'");
             c.fit.window = std::make_pair(w[0], w[1]);
         }},
        {"fit.noise_floor", [](auto& c, const auto& v) { c.fit.noise_floor = parse_double(v); }},
        {"fit.inconclusive_band", [](auto& c, const auto& v) { c.fit.inconclusive_band = parse_double(v); }},
        {"fit.min_points", [](auto& c, const auto& v) { c.fit.min_points = parse_int(v); }},
        {"cusp.multiplier", [](auto& c, const auto& v) { c.cusp.multiplier = parse_double(v); }},
        {"cusp.half_window", [](auto& c, const auto& v) { c.cusp.half_window = parse_int(v); }},
        {"output.dir", [](auto& c, const auto& v) { c.output_dir = trim(v); }},
        {"output.workers", [](auto& c, const auto& v) { c.workers = parse_int(v); }},
    };
    return s;
}

}  // namespace

ConfigError::ConfigError(std::string source, std::vector<Diagnostic> d)
    : InvalidArgument(join_diags(source, d)), source_(std::move(source)), diags_(std::move(d)) {}

ConfigMap parse_config_text(const std::string& text, const std::string& source) {
    ConfigMap m;
    std::vector<Diagnostic> diags;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                diags.push_back({line, "", "unterminated section header"});
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            diags.push_back({line, "", "expected 'key = value'"});
            continue;
        }
        auto value = trim(s.substr(eq + 1));
        // trailing comment
        for (char c : {'#', ';'}) {
            const auto p = value.find(std::string(" ") + c);
            if (p != std::string::npos) value = trim(value.substr(0, p));
        }
        const std::string key = (section.empty() ? "" : section + ".") + trim(s.substr(0, eq));
        if (m.count(key)) diags.push_back({line, key, "duplicate key (first set on line " + std::to_string(m[key].line) + ")"});
        m[key] = {value, line};
    }
    if (!diags.empty()) throw ConfigError(source, diags);
    return m;
}

ConfigMap read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ConfigMap to_config_map(const ExperimentConfig& c) {
    ConfigMap m;
    auto put = [&](const std::string& k, const std::string& v) { m[k] = {v, 0}; };
    put("experiment.kind", to_string(c.kind));
    put("model.N", std::to_string(c.N));
    put("model.h_initial", format_double(c.h_initial));
    put("model.alpha_initial", format_double(c.alpha_initial));
    put("model.h_final", format_double(c.h_final));
    put("model.alpha_final", format_double(c.alpha_final));
    put("model.h_final_cross", format_double(c.h_final_cross));
    put("time.dt", format_double(c.dt));
    put("time.t_max", format_double(c.t_max));
    put("time.steady_state_time", format_double(c.steady_state_time));
    put("time.average_window", format_double(c.average_window));
    put("time.average_samples", std::to_string(c.average_samples));
    put("profile.r_list", join_ints(c.r_list));
    put("sweep.sizes", join_ints(c.sizes));
    put("fit.r_min", std::to_string(c.fit.r_min));
    put("fit.tail_fraction", format_double(c.fit.tail_fraction));
    put("fit.window", c.fit.window ? std::to_string(c.fit.window->first) + "," + std::to_string(c.fit.window->second) : "");
    put("fit.noise_floor", format_double(c.fit.noise_floor));
    put("fit.inconclusive_band", format_double(c.fit.inconclusive_band));
    put("fit.min_points", std::to_string(c.fit.min_points));
    put("cusp.multiplier", format_double(c.cusp.multiplier));
    put("cusp.half_window", std::to_string(c.cusp.half_window));
    put("output.dir", c.output_dir);
    put("output.workers", std::to_string(c.workers));
    return m;
}

ConfigMap default_config_map() { return to_config_map(ExperimentConfig{}); }

std::string to_config_text(const ExperimentConfig& c) {
    std::string out, section;
    for (const auto& [k, e] : to_config_map(c)) {
        const auto dot = k.find('.');
        const auto sec = k.substr(0, dot);
        if (sec != section) {
            out += (out.empty() ? "" : "\n") + std::string("[") + sec + "]\n";
            section = sec;
        }
        out += k.substr(dot + 1) + " = " + e.value + "\n";
    }
    return out;
}

std::vector<Diagnostic> check_config(const ExperimentConfig& c, const ConfigMap& lines) {
    std::vector<Diagnostic> d;
    auto add = [&](const std::string& key, const std::string& msg) {
        const auto it = lines.find(key);
        d.push_back({it == lines.end() ? 0 : it->second.line, key, msg});
    };
    const bool uses_snapshot = c.kind != ExperimentKind::RateFunction;

    if (c.kind != ExperimentKind::FiniteSizeSweep && (c.N < 4 || c.N % 2 != 0))
        add("model.N", "N must be an even integer >= 4, got " + std::to_string(c.N));
    if (!(c.alpha_initial > 0.0)) add("model.alpha_initial", "alpha must be positive");
    if (!(c.alpha_final > 0.0)) add("model.alpha_final", "alpha must be positive");
    if (!(c.dt > 0.0)) add("time.dt", "dt must be positive");
    if (!(c.t_max > 0.0)) add("time.t_max", "t_max must be positive");
    if (uses_snapshot && (c.steady_state_time < 0.0 || c.steady_state_time > c.t_max))
        add("time.steady_state_time", "steady-state time must lie within [0, t_max]");
    if (c.average_window < 0.0 || c.average_window > c.steady_state_time)
        add("time.average_window", "averaging window must lie within [0, steady_state_time]");
    if (c.average_window > 0.0 && c.average_samples < 2)
        add("time.average_samples", "time averaging needs at least 2 samples");

    for (int R : c.r_list)
        if (R < 1 || R > c.N / 2 - 1) {
            add("profile.r_list", "distance " + std::to_string(R) + " outside [1, N/2 - 1] = [1, " +
                                      std::to_string(c.N / 2 - 1) + "]");
            break;
        }

    if (c.fit.r_min < 1) add("fit.r_min", "r_min must be >= 1");
    if (c.fit.tail_fraction < 0.0 || c.fit.tail_fraction >= 1.0) add("fit.tail_fraction", "must lie in [0, 1)");
    if (c.fit.window && c.fit.window->first >= c.fit.window->second) add("fit.window", "need R_min < R_max");
    if (!(c.fit.noise_floor > 0.0)) add("fit.noise_floor", "noise floor must be positive");
    if (c.fit.inconclusive_band < 0.0) add("fit.inconclusive_band", "band must be non-negative");
    if (c.fit.min_points < 2) add("fit.min_points", "need at least 2 points");
    if (!(c.cusp.multiplier > 0.0)) add("cusp.multiplier", "multiplier must be positive");
    if (c.cusp.half_window < 0) add("cusp.half_window", "half window must be >= 0");
    if (c.workers < 1) add("output.workers", "need at least one worker");
    if (c.output_dir.empty()) add("output.dir", "output directory must not be empty");

    switch (c.kind) {
        case ExperimentKind::Cgc:
            if (c.alpha_initial >= 1.0)
                add("model.alpha_initial",
                    "the coarse-grained criterion starts from the non-local regime: alpha_initial must be < 1");
            break;
        case ExperimentKind::Fgc: {
            if (c.alpha_initial != c.alpha_final)
                add("model.alpha_final", "the fine-grained criterion uses local quenches in h: alpha_final must equal alpha_initial");
            if (c.N >= 4 && c.N % 2 == 0 && c.alpha_initial > 0.0) {
                const double hc2 = critical_field_lower(ModelParams(c.N, 0.0, c.alpha_initial));
                const double hc1 = critical_field_upper();
                auto ordered = [&](double h) { return h > hc2 && h < hc1; };
                if (!ordered(c.h_initial))
                    add("model.h_initial", "the initial state must be in the ordered phase (" + format_double(hc2) +
                                               " < h < 2); h_initial = " + format_double(c.h_initial) +
                                               " is disordered");
                if (!ordered(c.h_final))
                    add("model.h_final", "the same-phase quench must stay in the ordered phase (" +
                                             format_double(hc2) + " < h < 2)");
                if (!(c.h_final_cross > hc1))
                    add("model.h_final_cross", "the cross-phase quench must end in the disordered phase (h > 2)");
            }
            break;
        }
        case ExperimentKind::FiniteSizeSweep: {
            if (c.sizes.size() < 4) add("sweep.sizes", "a finite-size sweep needs at least 4 sizes");
            for (std::size_t i = 0; i < c.sizes.size(); ++i) {
                if (c.sizes[i] < 4 || c.sizes[i] % 2 != 0) {
                    add("sweep.sizes", "every size must be an even integer >= 4, got " + std::to_string(c.sizes[i]));
                    break;
                }
                if (i && c.sizes[i] <= c.sizes[i - 1]) {
                    add("sweep.sizes", "sizes must be strictly increasing");
                    break;
                }
            }
            if (!c.r_list.empty()) add("profile.r_list", "r_list is not used by finite_size_sweep (each N uses 1..N/2-1)");
            break;
        }
        case ExperimentKind::RateFunction:
        case ExperimentKind::TcProfile:
            break;
    }
    return d;
}

ExperimentConfig resolve_config(const ConfigMap& m, const std::string& source) {
    ExperimentConfig c;
    std::vector<Diagnostic> d;
    const auto& s = setters();
    // kind first so later checks know what they are looking at
    if (auto it = m.find("experiment.kind"); it != m.end()) {
        try {
            s.at("experiment.kind")(c, it->second.value);
        } catch (const std::exception& e) {
            d.push_back({it->second.line, it->first, e.what()});
        }
    } else {
        d.push_back({0, "experiment.kind", "missing required key [experiment] kind"});
    }
    for (const auto& [key, e] : m) {
        if (key == "experiment.kind") continue;
        const auto it = s.find(key);
        if (it == s.end()) {
            d.push_back({e.line, key, "unknown key"});
            continue;
        }
        try {
            it->second(c, e.value);
        } catch (const std::exception& ex) {
            d.push_back({e.line, key, ex.what()});
        }
    }
    if (d.empty()) d = check_config(c, m);
    if (!d.empty()) throw ConfigError(source, d);
    return c;
}

}  // namespace lrq
