#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lrq/ed_oracle.hpp"
#include "lrq/errors.hpp"
#include "lrq/evolution.hpp"

using namespace lrq;
using testing::uniform;

namespace {

bool hermitian(const Mat4& m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol; }

}  // namespace

TEST_CASE("block hamiltonian entries") {
    const auto H = block_hamiltonian(std::numbers::pi / 2, ModelParams(64, 0.0, 50.0)).matrix;
    CHECK(std::abs(H(0, 0)) < 1e-14);
    CHECK(std::abs(H(0, 1) - 2.0) < 1e-14);
    CHECK(std::abs(H(1, 0) - 2.0) < 1e-14);
    CHECK(std::abs(H(1, 1)) < 1e-14);
    CHECK(std::abs(H(2, 2)) < 1e-14);
}

TEST_CASE("block hamiltonian is hermitian with a decoupled single-particle sector") {
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p(2 * static_cast<int>(uniform(2, 40)), uniform(-3, 3), uniform(0.1, 6));
        const double k = uniform(0.01, 3.13);
        const auto b = block_hamiltonian(k, p);
        CHECK(hermitian(b.matrix, 1e-12));
        const double reJ = jk_coupling(k, p).real();
        CHECK(std::abs(b.matrix(2, 2) - b.matrix(3, 3)) == 0.0);
        CHECK(std::abs(b.matrix(2, 2) + 2.0 * reJ) < 1e-14);
        CHECK(std::abs(b.matrix(2, 3)) == 0.0);
        CHECK(b.matrix.block<2, 2>(0, 2).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("even block eigenvalues are -2 Re J +- omega") {
    for (int i = 0; i < 200; ++i) {
        const ModelParams p(64, uniform(-3, 3), uniform(0.1, 6));
        const double k = momentum_grid(64)[static_cast<std::size_t>(uniform(0, 31.99))];
        const auto H = block_hamiltonian(k, p).matrix.block<2, 2>(0, 0);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(H);
        const double reJ = jk_coupling(k, p).real(), w = dispersion(k, p);
        CHECK(std::fabs(es.eigenvalues()(0) - (-2.0 * reJ - w)) < 1e-12);
        CHECK(std::fabs(es.eigenvalues()(1) - (-2.0 * reJ + w)) < 1e-12);
    }
}

TEST_CASE("ground state blocks are pure eigenprojectors") {
    const ModelParams p(40, 0.7, 1.3);
    const auto s = ground_state(p);
    REQUIRE(s.blocks.size() == 20);
    double emin = 0.0;
    for (const auto& b : s.blocks) {
        CHECK(std::fabs(block_purity(b) - 1.0) < 1e-12);
        CHECK(std::abs(b.rho.trace() - 1.0) < 1e-12);
        const auto H = block_hamiltonian(b.k, p).matrix;
        CHECK(testing::max_abs(b.rho * H - H * b.rho) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat4> es(H);
        emin += es.eigenvalues()(0);
    }
    CHECK(std::fabs(energy(s, p) - emin) < 1e-12);
}

TEST_CASE("ground energy matches exact diagonalization") {
    const ModelParams p(8, 0.5, 50.0);
    CHECK(std::fabs(energy(ground_state(p), p) - ed::ground_state(p).energy) < 1e-8);
}

TEST_CASE("evolution at t = 0 is the identity") {
    const auto s = ground_state(ModelParams(20, 0.5, 0.8));
    const auto e = evolve(s, ModelParams(20, 2.5, 3.0), 0.0);
    for (std::size_t m = 0; m < s.blocks.size(); ++m) CHECK(testing::max_abs(s.blocks[m].rho - e.blocks[m].rho) < 1e-15);
}

TEST_CASE("evolution is unitary block by block") {
    int checked = 0;
    while (checked < 10000) {
        const ModelParams pi(8, uniform(0.2, 3), uniform(0.3, 5)), pf(8, uniform(0.2, 3), uniform(0.3, 5));
        const auto s = evolve(ground_state(pi), pf, uniform(0, 50));
        for (const auto& b : s.blocks) {
            CHECK(hermitian(b.rho, 1e-10));
            CHECK(std::abs(b.rho.trace() - 1.0) < 1e-10);
            CHECK(std::fabs(block_purity(b) - 1.0) < 1e-10);
            Eigen::SelfAdjointEigenSolver<Mat4> es(b.rho, Eigen::EigenvaluesOnly);
            CHECK(es.eigenvalues()(0) > -1e-10);
            ++checked;
        }
    }
}

TEST_CASE("energy under the quench hamiltonian is conserved") {
    const ModelParams pi(100, 0.5, 0.5), pf(100, 2.5, 3.0);
    const auto s0 = ground_state(pi);
    const Propagator prop(pf);
    const double e0 = energy(s0, pf);
    for (double t : uniform_time_grid(2.5, 200.0)) CHECK(std::fabs(energy(prop.apply(s0, t), pf) - e0) < 1e-10);
}

TEST_CASE("evolution rejects mismatched sizes and negative times") {
    const auto s = ground_state(ModelParams(8, 0.5, 1.0));
    CHECK_THROWS_AS(evolve(s, ModelParams(10, 0.5, 1.0), 1.0), SizeMismatch);
    CHECK_THROWS_AS(evolve(s, ModelParams(8, 0.5, 1.0), -1.0), InvalidArgument);
}

TEST_CASE("magnetization follows exact diagonalization after a quench") {
    const ModelParams pi(8, 0.5, 3.0), pf(8, 2.5, 3.0);
    const auto s0 = ground_state(pi);
    const auto d0 = ed::ground_state(pi);
    const ed::Evolver dense(pf);
    for (double t : {0.5, 1.0, 5.0}) {
        const double ff = magnetization(evolve(s0, pf, t));
        const double ex = ed::dense_observables(dense.evolve(d0.state, t), 0, 1).correlators.m_z;
        CHECK(std::fabs(ff - ex) < 1e-7);
    }
}

TEST_CASE("expectation values of simple block operators") {
    const auto s = ground_state(ModelParams(12, 0.8, 1.1));
    CHECK(std::abs(expectation(s, std::vector<Mat4>(6, Mat4::Identity())) - 6.0) < 1e-12);
    CHECK(std::abs(expectation(s, std::vector<Mat4>(6, Mat4::Zero()))) == 0.0);
    CHECK_THROWS_AS(expectation(s, std::vector<Mat4>(5, Mat4::Identity())), SizeMismatch);
    // strong field: every spin along -z
    const auto big = ground_state(ModelParams(8, 1e6, 50.0));
    CHECK(std::fabs(magnetization(big) + 1.0) < 1e-10);
    const ModelParams p(8, 100.0, 50.0);
    CHECK(std::fabs(magnetization(ground_state(p)) -
                    ed::dense_observables(ed::ground_state(p).state, 0, 1).correlators.m_z) < 1e-10);
}

TEST_CASE("bogoliubov pair") {
    // Im J ~ 0 at k = pi in the nearest-neighbour limit, h/2 > Re J = -1
    const auto b = bogoliubov_pair(std::numbers::pi, ModelParams(64, 1.0, 50.0));
    CHECK(std::fabs(b.U - 1.0) < 1e-12);
    CHECK(std::fabs(b.V) < 1e-12);

    for (int i = 0; i < 1000; ++i) {
        const ModelParams p(2 * static_cast<int>(uniform(2, 100)), uniform(-3, 3), uniform(0.1, 6));
        const double k = uniform(0.01, 3.13);
        const auto bp = bogoliubov_pair(k, p);
        CHECK(std::fabs(bp.U * bp.U + bp.V * bp.V - 1.0) < 1e-12);
        const cplx J = jk_coupling(k, p);
        const double a = p.h / 2.0 - J.real(), c = J.imag();
        // 2 (sigma^z a + sigma^x c) (U, V) = omega (U, V)
        const double r0 = 2.0 * (a * bp.U + c * bp.V) - bp.omega * bp.U;
        const double r1 = 2.0 * (c * bp.U - a * bp.V) - bp.omega * bp.V;
        CHECK(std::hypot(r0, r1) < 1e-12 * std::max(1.0, bp.omega));
        CHECK(std::fabs(bp.omega - dispersion(k, p)) < 1e-12);
    }
    CHECK_THROWS_AS(bogoliubov_pair(0.0, ModelParams(64, 2.0, 50.0)), GaplessBlock);
}

TEST_CASE("rate function basics") {
    const ModelParams p(64, 0.7, 1.4);
    const auto flat = loschmidt_rate({p, p, uniform_time_grid(0.1, 20.0)});
    for (double r : flat.rate) CHECK(std::fabs(r) < 1e-12);

    const QuenchProtocol q{ModelParams(64, 0.5, 0.5), ModelParams(64, 2.5, 3.0), uniform_time_grid(0.05, 20.0)};
    const auto r = loschmidt_rate(q);
    CHECK(std::fabs(r.rate[0]) < 1e-12);
    for (double x : r.rate) CHECK(x >= 0.0);
}

TEST_CASE("analytic and block-overlap rate functions agree") {
    for (auto [hi, ai, hf, af] : {std::array{0.5, 0.5, 2.5, 3.0}, std::array{1.2, 0.5, 1.2, 1.5}, std::array{0.5, 1.0, 1.5, 1.0}}) {
        const QuenchProtocol q{ModelParams(128, hi, ai), ModelParams(128, hf, af), uniform_time_grid(0.1, 30.0)};
        const auto a = loschmidt_rate(q), b = loschmidt_rate_blocks(q);
        for (std::size_t i = 0; i < a.rate.size(); ++i) CHECK(std::fabs(a.rate[i] - b.rate[i]) < 1e-10);
    }
}

TEST_CASE("rate function matches the exact Loschmidt echo") {
    const ModelParams pi(8, 0.5, 0.5), pf(8, 1.5, 2.0);
    const auto d0 = ed::ground_state(pi);
    const ed::Evolver dense(pf);
    const auto r = loschmidt_rate({pi, pf, {0.0, 0.5, 1.0, 5.0}});
    for (std::size_t i = 0; i < r.t.size(); ++i)
        CHECK(std::fabs(r.rate[i] - ed::dense_rate(d0.state, dense.evolve(d0.state, r.t[i]))) < 1e-10);
}

TEST_CASE("cusp detector on synthetic series") {
    const auto ts = uniform_time_grid(0.05, 20.0);
    std::vector<double> smooth, kinked;
    for (double t : ts) {
        smooth.push_back(0.1 * std::sin(t) * std::sin(t) + 0.02 * t);
        kinked.push_back(0.3 - 0.2 * std::fabs(t - 7.0) + 0.01 * std::sin(2.0 * t));
    }
    CHECK(detect_cusps(smooth).empty());
    const auto c = detect_cusps(kinked);
    REQUIRE(c.size() == 1);
    CHECK(std::fabs(ts[c[0]] - 7.0) < 1e-9);
}

TEST_CASE("critical modes bracket the crossing and predict cusp times") {
    ModeOverlaps m{{0.1, 0.2, 0.3}, {0.9, 0.6, 0.4}, {1.0, 2.0, 4.0}};
    const auto c = critical_modes(m);
    REQUIRE(c.size() == 1);
    CHECK(c[0].k_lo == 0.2);
    CHECK(c[0].k_hi == 0.3);
    CHECK(cusp_prediction_error(std::numbers::pi * 1.5 / 2.0, c) < 1e-12);
    CHECK(cusp_prediction_error(std::numbers::pi * 0.5 / 4.0 + 0.01, c) == doctest::Approx(0.01));
    CHECK(std::isinf(cusp_prediction_error(1.0, {})));
}
