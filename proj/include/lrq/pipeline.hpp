#pragma once

#include <vector>

#include "lrq/analysis.hpp"
#include "lrq/evolution.hpp"
#include "lrq/observables.hpp"

namespace lrq {

// Ground state of `initial`, evolved with `final_params` to time T, then I_R.
// With average_window > 0 the profile is the mean over `samples` equally
// spaced times in [T - average_window, T].
Profile quench_profile(const ModelParams& initial, const ModelParams& final_params, double T,
                       const std::vector<int>& r_list, int workers = 1, double average_window = 0.0,
                       int samples = 11);

struct Cusp {
    std::size_t index = 0;
    double t = 0.0;
    double rate = 0.0;
    double prediction_error = 0.0;  // distance to nearest pi (n + 1/2) / omega
};

struct RateScan {
    RateSeries series;
    ModeOverlaps modes;
    std::vector<CriticalMode> critical;
    std::vector<Cusp> cusps;
};

RateScan rate_scan(const QuenchProtocol& q, const CuspOptions& opt = {}, int workers = 1);

}  // namespace lrq
