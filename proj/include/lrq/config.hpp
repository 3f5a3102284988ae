#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrq/analysis.hpp"
#include "lrq/errors.hpp"
#include "lrq/evolution.hpp"

namespace lrq {

enum class ExperimentKind { Cgc, Fgc, RateFunction, FiniteSizeSweep, TcProfile };
std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::TcProfile;

    int N = 200;
    double h_initial = 0.5;
    double alpha_initial = 0.5;
    double h_final = 0.5;        // for fgc: the same-phase quench
    double alpha_final = 0.8;
    double h_final_cross = 2.5;  // fgc only: the quench across the transition

    double dt = 0.05;
    double t_max = 200.0;
    double steady_state_time = 200.0;
    // Opt-in: average I_R over this many samples spread across
    // [steady_state_time - average_window, steady_state_time].
    double average_window = 0.0;
    int average_samples = 11;

    std::vector<int> r_list;  // empty: 1..N/2-1
    std::vector<int> sizes;   // finite_size_sweep

    FitOptions fit;
    CuspOptions cusp;

    std::string output_dir = "out";
    int workers = 1;
};

// One entry of the flat key/value store: "section.key" -> value, with the line
// it came from (0 for command-line overrides).
struct ConfigEntry {
    std::string value;
    int line = 0;
};
using ConfigMap = std::map<std::string, ConfigEntry>;

struct Diagnostic {
    int line = 0;
    std::string key;
    std::string message;
    std::string format(const std::string& source) const;
};

class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string source, std::vector<Diagnostic> d);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }
    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::vector<Diagnostic> diags_;
};

// INI-style text: [section] headers, key = value lines, '#' or ';' comments.
ConfigMap parse_config_text(const std::string& text, const std::string& source = "<string>");
ConfigMap read_config_file(const std::string& path);

// Every key the parser knows about, with its default rendered as text.
ConfigMap default_config_map();

// Converts and checks a map. Collects every problem and throws ConfigError
// with all of them; never runs any physics.
ExperimentConfig resolve_config(const ConfigMap& m, const std::string& source = "<string>");

// Physics and consistency checks on a resolved config (empty when fine).
std::vector<Diagnostic> check_config(const ExperimentConfig& c, const ConfigMap& lines = {});

// Fully resolved map (every key present), used for write-back into summaries.
ConfigMap to_config_map(const ExperimentConfig& c);
std::string to_config_text(const ExperimentConfig& c);

// Round-trip exact decimal rendering of a double.
std::string format_double(double x);

}  // namespace lrq
