#include "lrq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrq/errors.hpp"

namespace lrq {

std::string to_string(DecayModel m) {
    switch (m) {
        case DecayModel::Algebraic: return "algebraic";
        case DecayModel::Exponential: return "exponential";
        case DecayModel::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(CgcOutcome c) {
    return c == CgcOutcome::NoGlobalTransitionCrossed ? "no_global_transition_crossed" : "crossed_alpha_c1";
}

std::string to_string(FgcOutcome f) { return f == FgcOutcome::QuasiLocal ? "quasi_local" : "local"; }

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    if (x.size() != y.size() || x.size() < 2) throw InsufficientData("linear fit needs at least two points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientData("linear fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
    }
    f.r2 = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 0.0;
    return f;
}

std::pair<int, int> default_fit_window(const Profile& profile, const FitOptions& opt) {
    if (opt.window) return *opt.window;
    if (profile.empty()) return {0, 0};
    Profile sorted = profile;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    auto keep = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - opt.tail_fraction) + 1e-9));
    keep = std::clamp<std::size_t>(keep, 1, n);
    return {opt.r_min, sorted[keep - 1].first};
}

ScalingVerdict fit_profile(const Profile& profile, const FitOptions& opt) {
    if (std::all_of(profile.begin(), profile.end(), [&](const auto& p) { return !(p.second > opt.noise_floor); }))
        throw AllBelowFloor("every I_R is at or below the noise floor " + std::to_string(opt.noise_floor));
    const auto win = default_fit_window(profile, opt);
    std::vector<double> logr, r, logi;
    for (const auto& [R, I] : profile) {
        if (R < win.first || R > win.second || !(I > opt.noise_floor)) continue;
        r.push_back(R);
        logr.push_back(std::log(static_cast<double>(R)));
        logi.push_back(std::log(I));
    }
    if (static_cast<int>(r.size()) < opt.min_points)
        throw InsufficientData("only " + std::to_string(r.size()) + " points above the noise floor in window [" +
                               std::to_string(win.first) + ", " + std::to_string(win.second) + "]");
    ScalingVerdict v;
    v.fit_window = win;
    v.points_used = static_cast<int>(r.size());
    v.alg = linear_fit(logr, logi);
    v.exp = linear_fit(r, logi);
    v.r2_alg = v.alg.r2;
    v.r2_exp = v.exp.r2;
    v.margin = std::fabs(v.r2_alg - v.r2_exp);
    if (v.margin < opt.inconclusive_band) {
        v.model = DecayModel::Inconclusive;
    } else if (v.r2_alg > v.r2_exp) {
        v.model = DecayModel::Algebraic;
        v.eta = -v.alg.slope;
    } else {
        v.model = DecayModel::Exponential;
        v.xi = v.exp.slope != 0.0 ? -1.0 / v.exp.slope : std::numeric_limits<double>::infinity();
    }
    return v;
}

CgcOutcome cgc_verdict(const ScalingVerdict& v) {
    switch (v.model) {
        case DecayModel::Algebraic: return CgcOutcome::NoGlobalTransitionCrossed;
        case DecayModel::Exponential: return CgcOutcome::CrossedAlphaC1;
        case DecayModel::Inconclusive: break;
    }
    throw Inconclusive("coarse-grained verdict needs a conclusive fit (margin " + std::to_string(v.margin) + ")");
}

FgcResult fgc_verdict(const ScalingVerdict& same, const ScalingVerdict& cross) {
    if (same.model == DecayModel::Inconclusive || cross.model == DecayModel::Inconclusive)
        throw Inconclusive("fine-grained verdict needs two conclusive fits");
    if (same.model != cross.model) return {FgcOutcome::Local, std::nullopt};
    if (same.model == DecayModel::Algebraic)
        return {FgcOutcome::QuasiLocal, std::string("both quenches algebraic; the same-scaling rule still gives quasi_local")};
    return {FgcOutcome::QuasiLocal, std::nullopt};
}

FiniteSizeFit finite_size_fit_etas(const std::vector<int>& sizes, const std::vector<double>& etas) {
    if (sizes.size() != etas.size()) throw SizeMismatch("sizes and etas differ in length");
    if (sizes.size() < 4) throw InsufficientData("finite-size fit needs at least 4 sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw InvalidArgument("sizes must be strictly increasing");
    FiniteSizeFit f;
    f.sizes = sizes;
    f.etas = etas;
    f.eta_inf = etas.back();
    std::vector<double> x, y;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        const double d = std::fabs(etas[i] - f.eta_inf);
        if (d <= 0.0) continue;
        x.push_back(std::log(static_cast<double>(sizes[i])));
        y.push_back(std::log(d));
    }
    const auto line = linear_fit(x, y);
    f.beta_exponent = line.slope;
    f.r2 = line.r2;
    return f;
}

FiniteSizeFit finite_size_fit(const std::vector<std::pair<int, Profile>>& runs, const FitOptions& opt) {
    std::vector<int> sizes;
    std::vector<double> etas;
    for (const auto& [N, prof] : runs) {
        const auto v = fit_profile(prof, opt);
        if (v.model != DecayModel::Algebraic)
            throw MixedModels("size N = " + std::to_string(N) + " classified " + to_string(v.model));
        sizes.push_back(N);
        etas.push_back(*v.eta);
    }
    return finite_size_fit_etas(sizes, etas);
}

}  // namespace lrq
