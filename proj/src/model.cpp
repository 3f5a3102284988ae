#include "lrq/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lrq/errors.hpp"

namespace lrq {

namespace {

// Neumaier-compensated accumulator on top of long double. Cheap enough to use
// for every N; the slowly converging alpha < 1 sums are the reason it exists.
struct CompensatedSum {
    long double s = 0.0L;
    long double c = 0.0L;
    void add(long double x) {
        long double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    long double value() const { return s + c; }
};

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("alpha must be a finite positive number, got " + std::to_string(alpha));
}

}  // namespace

ModelParams::ModelParams(int n, double field, double a) : N(n), h(field), alpha(a) {}

void ModelParams::validate() const {
    if (N < 4 || N % 2 != 0)
        throw InvalidArgument("N must be an even integer >= 4, got " + std::to_string(N));
    check_alpha(alpha);
    if (!std::isfinite(h)) throw InvalidArgument("h must be finite");
}

void QuenchProtocol::validate() const {
    initial.validate();
    final_.validate();
    if (initial.N != final_.N) throw SizeMismatch("initial and final N differ");
    if (time_grid.empty() || time_grid.front() != 0.0)
        throw InvalidArgument("time grid must start at 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i)
        if (!(time_grid[i] > time_grid[i - 1]))
            throw InvalidArgument("time grid must be strictly increasing");
}

std::vector<double> uniform_time_grid(double dt, double t_max) {
    if (!(dt > 0.0) || !(t_max >= 0.0)) throw InvalidArgument("need dt > 0 and t_max >= 0");
    const auto n = static_cast<long>(std::floor(t_max / dt + 1e-6));
    std::vector<double> ts(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) ts[static_cast<std::size_t>(i)] = static_cast<double>(i) * dt;
    return ts;
}

std::vector<double> momentum_grid(int N) {
    if (N < 2 || N % 2 != 0) throw InvalidArgument("momentum grid needs even N");
    std::vector<double> ks(static_cast<std::size_t>(N / 2));
    for (int m = 1; m <= N / 2; ++m) ks[m - 1] = (2.0 * m - 1.0) * std::numbers::pi / N;
    return ks;
}

double kac_normalization(int N, double alpha) {
    if (N < 2 || N % 2 != 0) throw InvalidArgument("N must be even and >= 2");
    check_alpha(alpha);
    CompensatedSum acc;
    // smallest terms first
    for (int R = N / 2; R >= 1; --R) acc.add(std::pow(static_cast<long double>(R), -static_cast<long double>(alpha)));
    return static_cast<double>(acc.value());
}

double coupling(int R, const ModelParams& p) {
    if (R < 1 || R > p.N / 2) throw InvalidArgument("coupling distance out of range: " + std::to_string(R));
    return std::pow(static_cast<double>(R), -p.alpha) / kac_normalization(p.N, p.alpha);
}

cplx jk_coupling(double k, const ModelParams& p, double kac) {
    CompensatedSum re, im;
    const long double kk = k;
    for (int n = p.N / 2; n >= 1; --n) {
        const long double w = std::pow(static_cast<long double>(n), -static_cast<long double>(p.alpha));
        re.add(w * std::cos(kk * n));
        im.add(w * std::sin(kk * n));
    }
    return {static_cast<double>(re.value() / kac), static_cast<double>(im.value() / kac)};
}

cplx jk_coupling(double k, const ModelParams& p) {
    return jk_coupling(k, p, kac_normalization(p.N, p.alpha));
}

double dispersion(double k, const ModelParams& p) {
    const cplx J = jk_coupling(k, p);
    return 2.0 * std::hypot(p.h / 2.0 - J.real(), J.imag());
}

double critical_field_lower(const ModelParams& p) {
    CompensatedSum plain, alt;
    for (int R = p.N / 2; R >= 1; --R) {
        long double t = std::pow(static_cast<long double>(R), -static_cast<long double>(p.alpha));
        plain.add(t);
        alt.add(R % 2 == 1 ? t : -t);
    }
    return static_cast<double>(-2.0L * alt.value() / plain.value());
}

}  // namespace lrq
