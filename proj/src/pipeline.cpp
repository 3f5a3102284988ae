#include "lrq/pipeline.hpp"

#include "lrq/errors.hpp"

namespace lrq {

Profile quench_profile(const ModelParams& initial, const ModelParams& final_params, double T,
                       const std::vector<int>& r_list, int workers, double average_window, int samples) {
    if (initial.N != final_params.N) throw SizeMismatch("initial and final N differ");
    const auto psi0 = ground_state(initial, workers);
    const Propagator prop(final_params, workers);
    if (average_window <= 0.0) return tc_profile(prop.apply(psi0, T), r_list, workers);
    if (samples < 2) throw InvalidArgument("time averaging needs at least 2 samples");
    Profile acc;
    for (int j = 0; j < samples; ++j) {
        const double t = T - average_window + average_window * j / (samples - 1);
        const auto p = tc_profile(prop.apply(psi0, t), r_list, workers);
        if (acc.empty()) acc.assign(p.size(), {0, 0.0});
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc[i].first = p[i].first;
            acc[i].second += p[i].second / samples;
        }
    }
    return acc;
}

RateScan rate_scan(const QuenchProtocol& q, const CuspOptions& opt, int workers) {
    RateScan s;
    s.series = loschmidt_rate(q, workers);
    s.modes = mode_overlaps(q.initial, q.final_);
    s.critical = critical_modes(s.modes);
    for (auto i : detect_cusps(s.series.rate, opt)) {
        const double t = s.series.t[i];
        s.cusps.push_back({i, t, s.series.rate[i], cusp_prediction_error(t, s.critical)});
    }
    return s;
}

}  // namespace lrq
