#pragma once

#include <random>

#include "lrq/evolution.hpp"
#include "lrq/pfaffian.hpp"

namespace testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(12345);
    return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline lrq::MatX random_skew(int n) {
    lrq::MatX a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = lrq::cplx(uniform(-1, 1), uniform(-1, 1));
    return a - a.transpose();
}

inline double max_abs(const lrq::Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
