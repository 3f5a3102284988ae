// lrquench: batch driver for long-range Ising quench experiments.
//
//   lrquench run CONFIG [flags]        run one experiment, write CSV + summary.json + run.log
//   lrquench validate CONFIG [flags]   schema and physics checks only
//   lrquench oracle-check [flags]      compare the free-fermion pipeline with exact diagonalization

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>

#include "lrq/config.hpp"
#include "lrq/ed_oracle.hpp"
#include "lrq/runner.hpp"

namespace {

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Overrides {
    std::string kind, fit_window, output_dir;
    std::optional<int> N, workers, r_min;
    std::optional<double> h_initial, alpha_initial, h_final, alpha_final, h_final_cross;
    std::optional<double> dt, t_max, steady_state_time;
    std::vector<std::string> set;

    void add_to(CLI::App* app) {
        app->add_option("--kind", kind, "experiment kind");
        app->add_option("-N,--N", N, "system size");
        app->add_option("--h-initial", h_initial);
        app->add_option("--alpha-initial", alpha_initial);
        app->add_option("--h-final", h_final);
        app->add_option("--alpha-final", alpha_final);
        app->add_option("--h-final-cross", h_final_cross, "fgc: field of the cross-phase quench");
        app->add_option("--dt", dt);
        app->add_option("--t-max", t_max);
        app->add_option("--steady-state-time", steady_state_time);
        app->add_option("--r-min", r_min, "smallest R used in fits");
        app->add_option("--fit-window", fit_window, "explicit fit window 'R_min,R_max'");
        app->add_option("-j,--workers", workers);
        app->add_option("-o,--output-dir", output_dir);
        app->add_option("--set", set, "override any key: section.key=value")->take_all();
    }

    void apply(lrq::ConfigMap& m) const {
        auto put = [&](const std::string& k, const std::string& v) { m[k] = {v, 0}; };
        auto num = [&](const std::string& k, const std::optional<double>& v) {
            if (v) put(k, lrq::format_double(*v));
        };
        if (!kind.empty()) put("experiment.kind", kind);
        if (N) put("model.N", std::to_string(*N));
        num("model.h_initial", h_initial);
        num("model.alpha_initial", alpha_initial);
        num("model.h_final", h_final);
        num("model.alpha_final", alpha_final);
        num("model.h_final_cross", h_final_cross);
        num("time.dt", dt);
        num("time.t_max", t_max);
        num("time.steady_state_time", steady_state_time);
        if (r_min) put("fit.r_min", std::to_string(*r_min));
        if (!fit_window.empty()) put("fit.window", fit_window);
        if (workers) put("output.workers", std::to_string(*workers));
        if (!output_dir.empty()) put("output.dir", output_dir);
        for (const auto& s : set) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw lrq::ConfigError("--set", {{0, s, "expected section.key=value"}});
            put(s.substr(0, eq), s.substr(eq + 1));
        }
    }
};

lrq::ExperimentConfig load(const std::string& path, const Overrides& ov) {
    lrq::ConfigMap m = path.empty() ? lrq::ConfigMap{} : lrq::load_config_map(path);
    ov.apply(m);
    return lrq::resolve_config(m, path.empty() ? "<flags>" : path);
}

int report(const std::exception& e) {
    if (auto* ce = dynamic_cast<const lrq::ConfigError*>(&e)) {
        for (const auto& d : ce->diagnostics()) std::cerr << d.format(ce->source()) << '\n';
        return kConfig;
    }
    std::cerr << "error: " << e.what() << '\n';
    if (dynamic_cast<const lrq::IoError*>(&e)) return kIo;
    if (dynamic_cast<const lrq::NumericalError*>(&e)) return kNumerical;
    if (dynamic_cast<const lrq::InvalidArgument*>(&e)) return kConfig;
    return kFail;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto c = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, c == std::string::npos ? std::string::npos : c - pos)));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sudden quenches of the long-range extended Ising chain"};
    app.set_version_flag("--version", std::string(LRQ_VERSION));
    app.require_subcommand(1);

    std::string run_path, validate_path;
    Overrides run_ov, validate_ov;
    auto* run = app.add_subcommand("run", "run an experiment");
    run->add_option("config", run_path, "INI config or a previous summary.json");
    run_ov.add_to(run);

    auto* validate = app.add_subcommand("validate", "check a config without running it");
    validate->add_option("config", validate_path, "INI config")->required();
    validate_ov.add_to(validate);

    lrq::ed::SuiteOptions so;
    std::string sizes = "4,6,8,10";
    auto* oracle = app.add_subcommand("oracle-check", "compare the pipeline with exact diagonalization");
    oracle->add_option("--sizes", sizes, "comma-separated even N <= 12");
    oracle->add_option("--draws", so.draws, "random quenches per size");
    oracle->add_option("--seed", so.seed);
    oracle->add_option("--tolerance", so.tolerance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*run) {
            const auto cfg = load(run_path, run_ov);
            const auto s = lrq::run_experiment(cfg, std::cout);
            std::cout << "summary: " << cfg.output_dir << "/summary.json\n";
            return s.value("status", "ok") == "ok" ? kOk : kNumerical;
        }
        if (*validate) {
            const auto cfg = load(validate_path, validate_ov);
            std::cout << validate_path << ": ok (" << lrq::to_string(cfg.kind) << ")\n";
            return kOk;
        }
        if (*oracle) {
            so.sizes = parse_sizes(sizes);
            const auto rows = lrq::ed::run_suite(so);
            bool all = true;
            std::printf("%4s %6s %11s %11s %11s %11s %11s  %s\n", "N", "draws", "energy", "m_z", "corr", "I_R",
                        "rate", "result");
            for (const auto& r : rows) {
                const auto& w = r.worst;
                std::printf("%4d %6d %11.3e %11.3e %11.3e %11.3e %11.3e  %s\n", r.N, r.quenches, w.energy_err,
                            w.mz_err, w.corr_err, w.mi_err, w.rate_err, r.pass ? "PASS" : "FAIL");
                all = all && r.pass;
            }
            std::printf("tolerance %.1e: %s\n", so.tolerance, all ? "PASS" : "FAIL");
            return all ? kOk : kFail;
        }
    } catch (const std::exception& e) {
        return report(e);
    }
    return kOk;
}
