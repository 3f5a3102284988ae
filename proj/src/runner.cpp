#include "lrq/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lrq {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

json opt_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

// Tees log lines into the caller's stream and run.log.
class RunLog {
public:
    RunLog(std::ostream& out, const fs::path& file) : out_(out), file_(file) {}
    void operator()(const std::string& msg) {
        out_ << msg << '\n';
        if (file_) file_ << msg << '\n';
    }

private:
    std::ostream& out_;
    std::ofstream file_;
};

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const AllBelowFloor*>(&e)) return "AllBelowFloor";
    if (dynamic_cast<const InsufficientData*>(&e)) return "InsufficientData";
    if (dynamic_cast<const Inconclusive*>(&e)) return "Inconclusive";
    if (dynamic_cast<const MixedModels*>(&e)) return "MixedModels";
    if (dynamic_cast<const GaplessBlock*>(&e)) return "GaplessBlock";
    if (dynamic_cast<const DegenerateBlock*>(&e)) return "DegenerateBlock";
    if (dynamic_cast<const PositivityViolation*>(&e)) return "PositivityViolation";
    if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
    if (dynamic_cast<const IoError*>(&e)) return "IoError";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    return "Error";
}

void write_profile(const fs::path& p, const Profile& prof) {
    std::vector<double> r, i;
    for (const auto& [R, I] : prof) {
        r.push_back(R);
        i.push_back(I);
    }
    write_csv(p.string(), {"R", "I_R"}, {r, i});
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream f(p);
    if (!f) throw IoError("cannot write " + p.string());
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed for " + p.string());
}

std::vector<int> r_list_for(const ExperimentConfig& c, int N) {
    return c.r_list.empty() ? full_r_list(N) : c.r_list;
}

}  // namespace

json to_json(const ScalingVerdict& v) {
    return {{"model", to_string(v.model)},
            {"eta", opt_number(v.eta)},
            {"xi", opt_number(v.xi)},
            {"r2_alg", v.r2_alg},
            {"r2_exp", v.r2_exp},
            {"margin", v.margin},
            {"fit_window", {v.fit_window.first, v.fit_window.second}},
            {"points_used", v.points_used},
            {"algebraic_fit", {{"slope", v.alg.slope}, {"intercept", v.alg.intercept}, {"form", "ln I = intercept + slope ln R"}}},
            {"exponential_fit", {{"slope", v.exp.slope}, {"intercept", v.exp.intercept}, {"form", "ln I = intercept + slope R"}}}};
}

json config_to_json(const ExperimentConfig& c) {
    json j = json::object();
    for (const auto& [k, e] : to_config_map(c)) {
        const auto dot = k.find('.');
        j[k.substr(0, dot)][k.substr(dot + 1)] = e.value;
    }
    return j;
}

ConfigMap config_map_from_json(const json& j) {
    ConfigMap m;
    for (const auto& [sec, keys] : j.items())
        for (const auto& [k, v] : keys.items()) m[sec + "." + k] = {v.is_string() ? v.get<std::string>() : v.dump(), 0};
    return m;
}

ConfigMap load_config_map(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(path, {{0, "", std::string("invalid JSON: ") + e.what()}});
        }
        if (!j.contains("config")) throw ConfigError(path, {{0, "", "JSON file has no 'config' object"}});
        return config_map_from_json(j["config"]);
    }
    return parse_config_text(text, path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const double x = columns[c][r];
            f << (c ? "," : "");
            // integer-valued columns (R, N) print without exponent
            if (c == 0 && x == static_cast<double>(static_cast<long long>(x)) && header[c] != "t")
                f << static_cast<long long>(x);
            else
                f << format_double(x);
        }
        f << '\n';
    }
    if (!f) throw IoError("write failed for " + path);
}

json run_experiment(const ExperimentConfig& c, std::ostream& out) {
    const auto problems = check_config(c);
    if (!problems.empty()) throw ConfigError("<config>", problems);

    const fs::path dir(c.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + c.output_dir + "'");
    RunLog log(out, dir / "run.log");
    const auto t0 = std::chrono::steady_clock::now();

    json s;
    s["software"] = {{"name", "lrquench"}, {"version", LRQ_VERSION}};
    s["kind"] = to_string(c.kind);
    s["config"] = config_to_json(c);
    s["conventions"] = {{"mutual_information_units", "bits"},
                        {"log_base", 2},
                        {"sigma_z", "+1 for spin up; all-down state has m_z = -1"},
                        {"sector", "even fermion parity (anti-periodic momenta)"}};
    s["tolerances"] = {{"noise_floor", c.fit.noise_floor},
                       {"inconclusive_band", c.fit.inconclusive_band},
                       {"min_points", c.fit.min_points},
                       {"cusp_multiplier", c.cusp.multiplier},
                       {"cusp_half_window", c.cusp.half_window},
                       {"entropy_cutoff", 1e-15}};
    if (c.kind != ExperimentKind::RateFunction)
        s["steady_state"] = {{"mode", c.average_window > 0.0 ? "time_average" : "snapshot"},
                             {"time", c.steady_state_time},
                             {"average_window", c.average_window},
                             {"average_samples", c.average_window > 0.0 ? c.average_samples : 1}};
    s["files"] = json::object();
    s["status"] = "ok";

    const ModelParams pi(c.N, c.h_initial, c.alpha_initial);
    const ModelParams pf(c.N, c.h_final, c.alpha_final);
    log("lrquench " LRQ_VERSION ": " + to_string(c.kind) + " run into " + c.output_dir);

    auto profile_for = [&](const ModelParams& a, const ModelParams& b) {
        log("  N=" + std::to_string(a.N) + " h " + short_num(a.h) + " -> " + short_num(b.h) + ", alpha " +
            short_num(a.alpha) + " -> " + short_num(b.alpha) + ", t=" + short_num(c.steady_state_time));
        return quench_profile(a, b, c.steady_state_time, r_list_for(c, a.N), c.workers, c.average_window,
                              c.average_samples);
    };

    try {
        switch (c.kind) {
            case ExperimentKind::TcProfile: {
                const auto prof = profile_for(pi, pf);
                write_profile(dir / "profile.csv", prof);
                s["files"]["series"] = "profile.csv";
                json r;
                double imax = 0.0;
                for (const auto& p : prof) imax = std::max(imax, p.second);
                r["max_I"] = imax;
                try {
                    r["fit"] = to_json(fit_profile(prof, c.fit));
                    r["fit_status"] = "ok";
                } catch (const AllBelowFloor& e) {
                    r["fit_status"] = "AllBelowFloor";
                    r["fit_message"] = e.what();
                    log("  all I_R at or below the noise floor");
                } catch (const InsufficientData& e) {
                    r["fit_status"] = "InsufficientData";
                    r["fit_message"] = e.what();
                    log(std::string("  ") + e.what());
                }
                s["results"] = r;
                break;
            }
            case ExperimentKind::Cgc: {
                const auto prof = profile_for(pi, pf);
                write_profile(dir / "profile.csv", prof);
                s["files"]["series"] = "profile.csv";
                const auto v = fit_profile(prof, c.fit);
                s["results"]["verdict"] = to_json(v);
                log("  fit: " + to_string(v.model) + " (r2 alg " + short_num(v.r2_alg) + ", exp " +
                    short_num(v.r2_exp) + ")");
                s["results"]["cgc"] = to_string(cgc_verdict(v));
                break;
            }
            case ExperimentKind::Fgc: {
                const ModelParams px(c.N, c.h_final_cross, c.alpha_final);
                const auto same = profile_for(pi, pf);
                write_profile(dir / "profile_same.csv", same);
                const auto cross = profile_for(pi, px);
                write_profile(dir / "profile_cross.csv", cross);
                s["files"]["series"] = {"profile_same.csv", "profile_cross.csv"};
                const auto vs = fit_profile(same, c.fit);
                const auto vc = fit_profile(cross, c.fit);
                s["results"]["same_phase"] = to_json(vs);
                s["results"]["cross_phase"] = to_json(vc);
                const auto f = fgc_verdict(vs, vc);
                s["results"]["fgc"] = to_string(f.outcome);
                if (f.warning) {
                    s["results"]["warning"] = *f.warning;
                    log("  warning: " + *f.warning);
                }
                break;
            }
            case ExperimentKind::RateFunction: {
                QuenchProtocol q{pi, pf, uniform_time_grid(c.dt, c.t_max)};
                const auto scan = rate_scan(q, c.cusp, c.workers);
                write_csv((dir / "rate.csv").string(), {"t", "rate"}, {scan.series.t, scan.series.rate});
                s["files"]["series"] = "rate.csv";
                json cusps = json::array();
                for (const auto& cu : scan.cusps)
                    cusps.push_back({{"t", cu.t}, {"rate", cu.rate}, {"index", cu.index},
                                     {"prediction_error", std::isfinite(cu.prediction_error) ? json(cu.prediction_error) : json(nullptr)}});
                json modes = json::array();
                for (const auto& m : scan.critical)
                    modes.push_back({{"k_lo", m.k_lo}, {"k_hi", m.k_hi}, {"omega_lo", m.omega_lo}, {"omega_hi", m.omega_hi}});
                s["results"] = {{"cusps", cusps}, {"critical_modes", modes}, {"dt", c.dt}};
                log("  " + std::to_string(scan.cusps.size()) + " cusp(s), " + std::to_string(scan.critical.size()) +
                    " critical mode(s)");
                break;
            }
            case ExperimentKind::FiniteSizeSweep: {
                std::vector<std::pair<int, Profile>> runs;
                json per = json::array();
                std::vector<int> sizes;
                std::vector<double> etas;
                for (int N : c.sizes) {
                    const auto prof = profile_for(ModelParams(N, c.h_initial, c.alpha_initial),
                                                  ModelParams(N, c.h_final, c.alpha_final));
                    const std::string name = "profile_N" + std::to_string(N) + ".csv";
                    write_profile(dir / name, prof);
                    const auto v = fit_profile(prof, c.fit);
                    per.push_back({{"N", N}, {"file", name}, {"verdict", to_json(v)}});
                    if (v.model != DecayModel::Algebraic)
                        throw MixedModels("size N = " + std::to_string(N) + " classified " + to_string(v.model));
                    sizes.push_back(N);
                    etas.push_back(*v.eta);
                }
                s["results"]["runs"] = per;
                const auto fsf = finite_size_fit_etas(sizes, etas);
                std::vector<double> ns(sizes.begin(), sizes.end());
                write_csv((dir / "sweep.csv").string(), {"N", "eta_N"}, {ns, etas});
                s["files"]["series"] = "sweep.csv";
                s["results"]["finite_size_fit"] = {{"eta_inf", fsf.eta_inf},
                                                   {"beta_exponent", fsf.beta_exponent},
                                                   {"r2", fsf.r2},
                                                   {"eta_inf_proxy", "eta at the largest N"}};
                log("  convergence exponent " + short_num(fsf.beta_exponent));
                break;
            }
        }
    } catch (const std::exception& e) {
        s["status"] = "error";
        s["error"] = {{"type", error_type(e)}, {"message", e.what()}};
        log(std::string("error: ") + e.what());
        try {
            write_json(dir / "summary.json", s);
        } catch (...) {
        }
        throw;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log("  done in " + short_num(secs) + " s");
    s["files"]["log"] = "run.log";
    write_json(dir / "summary.json", s);
    return s;
}

}  // namespace lrq
