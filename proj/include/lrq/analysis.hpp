#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrq/observables.hpp"

namespace lrq {

enum class DecayModel { Algebraic, Exponential, Inconclusive };
std::string to_string(DecayModel m);

struct FitOptions {
    int r_min = 3;                // drop R below this
    double tail_fraction = 0.1;   // drop this fraction of the largest R
    std::optional<std::pair<int, int>> window;  // explicit [R_min, R_max], overrides the two above
    double noise_floor = 1e-12;
    double inconclusive_band = 0.02;
    int min_points = 6;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

struct ScalingVerdict {
    DecayModel model = DecayModel::Inconclusive;
    std::optional<double> eta;  // I_R ~ R^-eta
    std::optional<double> xi;   // I_R ~ e^{-R/xi}
    double r2_alg = 0.0;
    double r2_exp = 0.0;
    std::pair<int, int> fit_window{0, 0};
    double margin = 0.0;
    int points_used = 0;
    // Both fitted lines, so consumers can draw them without refitting:
    // log I = alg.intercept + alg.slope log R and log I = exp.intercept + exp.slope R.
    LineFit alg;
    LineFit exp;
};

// Ordinary least squares y = intercept + slope x.
LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// The window the default options would use for this profile.
std::pair<int, int> default_fit_window(const Profile& profile, const FitOptions& opt);

ScalingVerdict fit_profile(const Profile& profile, const FitOptions& opt = {});

enum class CgcOutcome { NoGlobalTransitionCrossed, CrossedAlphaC1 };
enum class FgcOutcome { QuasiLocal, Local };
std::string to_string(CgcOutcome c);
std::string to_string(FgcOutcome f);

CgcOutcome cgc_verdict(const ScalingVerdict& v);

struct FgcResult {
    FgcOutcome outcome;
    std::optional<std::string> warning;
};
FgcResult fgc_verdict(const ScalingVerdict& same_phase, const ScalingVerdict& cross_phase);

struct FiniteSizeFit {
    std::vector<int> sizes;
    std::vector<double> etas;
    double eta_inf = 0.0;
    double beta_exponent = 0.0;  // slope of log|eta_N - eta_inf| vs log N
    double r2 = 0.0;
};

// Fits eta_N on every profile; eta_inf is taken from the largest N.
FiniteSizeFit finite_size_fit(const std::vector<std::pair<int, Profile>>& runs, const FitOptions& opt = {});

// Same, for exponents that were already fitted.
FiniteSizeFit finite_size_fit_etas(const std::vector<int>& sizes, const std::vector<double>& etas);

}  // namespace lrq
