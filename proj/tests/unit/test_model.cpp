#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lrq/errors.hpp"
#include "lrq/model.hpp"

using namespace lrq;

TEST_CASE("kac normalization small sums") {
    CHECK(kac_normalization(2, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kac_normalization(4, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("kac normalization against high-precision sum") {
    // sum_{R=1}^{512} R^-1/2, 40-digit reference
    CHECK(std::fabs(kac_normalization(1024, 0.5) - 43.81657297751131890787949) < 1e-13);
}

TEST_CASE("kac normalization decreases with alpha") {
    double prev = kac_normalization(64, 0.1);
    for (double a = 0.2; a < 6.0; a += 0.1) {
        const double cur = kac_normalization(64, a);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("invalid model inputs are rejected") {
    CHECK_THROWS_AS(kac_normalization(5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(kac_normalization(8, 0.0), InvalidArgument);
    CHECK_THROWS_AS(kac_normalization(8, -1.0), InvalidArgument);
    CHECK_THROWS_AS(ModelParams(7, 1.0, 1.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(ModelParams(2, 1.0, 1.0).validate(), InvalidArgument);
    CHECK_NOTHROW(ModelParams(4, 1.0, 1.0).validate());
}

TEST_CASE("coupling values") {
    CHECK(coupling(1, ModelParams(2, 0.0, 3.3)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coupling(2, ModelParams(4, 0.0, 1.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::fabs(coupling(5, ModelParams(64, 0.0, 2.5)) - 0.01337071742384745865668568) < 1e-16);
    CHECK_THROWS_AS(coupling(0, ModelParams(8, 0.0, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(coupling(5, ModelParams(8, 0.0, 1.0)), InvalidArgument);
}

TEST_CASE("couplings sum to one") {
    for (int N : {4, 16, 128, 1024, 4096})
        for (double a : {0.1, 0.5, 1.0, 2.5, 50.0}) {
            const ModelParams p(N, 0.0, a);
            const double A = kac_normalization(N, a);
            long double s = 0.0L;
            for (int R = 1; R <= N / 2; ++R) s += std::pow(static_cast<long double>(R), -static_cast<long double>(a)) / A;
            CHECK(std::fabs(static_cast<double>(s) - 1.0) < 1e-12);
            if (N <= 128) {
                double t = 0.0;
                for (int R = 1; R <= N / 2; ++R) t += coupling(R, p);
                CHECK(std::fabs(t - 1.0) < 1e-12);
            }
        }
}

TEST_CASE("momentum grid") {
    for (int N : {4, 10, 200}) {
        const auto ks = momentum_grid(N);
        REQUIRE(ks.size() == static_cast<std::size_t>(N / 2));
        for (std::size_t i = 0; i < ks.size(); ++i) {
            CHECK(ks[i] > 0.0);
            CHECK(ks[i] < std::numbers::pi);
            if (i) CHECK(ks[i] > ks[i - 1]);
        }
        CHECK(ks.front() == doctest::Approx(std::numbers::pi / N));
    }
}

TEST_CASE("jk coupling nearest-neighbour limit and symmetry") {
    const ModelParams p(64, 0.3, 50.0);
    for (double k : momentum_grid(64)) {
        const cplx J = jk_coupling(k, p);
        CHECK(std::abs(J - std::exp(cplx(0.0, k))) < 1e-14);
    }
    const ModelParams q(40, 1.0, 0.7);
    for (double k : {0.1, 0.9, 2.5}) CHECK(std::abs(jk_coupling(-k, q) - std::conj(jk_coupling(k, q))) < 1e-15);
}

TEST_CASE("jk coupling against high-precision sum") {
    const cplx J = jk_coupling(std::numbers::pi / 4, ModelParams(128, 0.0, 1.5));
    CHECK(std::fabs(J.real() - 0.1929829710564796630494834) < 1e-15);
    CHECK(std::fabs(J.imag() - 0.4545232788222288622617897) < 1e-15);
}

TEST_CASE("dispersion nearest-neighbour limit") {
    for (double h : {0.0, 0.5, 1.9, 3.0}) {
        const ModelParams p(64, h, 50.0);
        for (double k : momentum_grid(64)) {
            const double nn = 2.0 * std::sqrt(std::pow(h / 2.0 - std::cos(k), 2) + std::pow(std::sin(k), 2));
            CHECK(std::fabs(dispersion(k, p) - nn) < 1e-12);
        }
    }
}

TEST_CASE("gap closes at h = 2 for alpha > 1") {
    double prev = 1e300;
    for (int N : {64, 128, 256, 512}) {
        const double w = dispersion(momentum_grid(N).front(), ModelParams(N, 2.0, 3.0));
        CHECK(w < prev);
        prev = w;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("dispersion is non-negative") {
    for (int i = 0; i < 10000; ++i) {
        const ModelParams p(32, testing::uniform(-3, 3), testing::uniform(0.1, 6));
        CHECK(dispersion(testing::uniform(0.01, 3.13), p) >= 0.0);
    }
}

TEST_CASE("lower critical field") {
    CHECK(critical_field_lower(ModelParams(64, 0.0, 50.0)) == doctest::Approx(-2.0).epsilon(1e-12));
    // alternating / plain sums of four terms: (7/12) / (25/12)
    CHECK(critical_field_lower(ModelParams(8, 0.0, 1.0)) == doctest::Approx(-2.0 * 7.0 / 25.0).epsilon(1e-14));
    // eta(3) / zeta(3) = 3/4
    CHECK(std::fabs(critical_field_lower(ModelParams(4096, 0.0, 3.0)) + 1.5) < 1e-5);
}

TEST_CASE("time grid and protocol checks") {
    const auto ts = uniform_time_grid(0.05, 200.0);
    CHECK(ts.size() == 4001);
    CHECK(ts.back() == doctest::Approx(200.0));
    QuenchProtocol q{ModelParams(8, 0.5, 1.0), ModelParams(10, 0.5, 1.0), {0.0, 1.0}};
    CHECK_THROWS_AS(q.validate(), SizeMismatch);
    q.final_.N = 8;
    q.time_grid = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
}
