#include "lrq/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lrq/errors.hpp"
#include "lrq/parallel.hpp"

namespace lrq {

namespace {

constexpr cplx I1{0.0, 1.0};

std::vector<cplx> jk_grid(const ModelParams& p, const std::vector<double>& ks) {
    const double A = kac_normalization(p.N, p.alpha);
    std::vector<cplx> out(ks.size());
    for (std::size_t m = 0; m < ks.size(); ++m) out[m] = jk_coupling(ks[m], p, A);
    return out;
}

}  // namespace

BlockHamiltonian block_hamiltonian(double k, const ModelParams& p, cplx J) {
    BlockHamiltonian b;
    b.k = k;
    b.matrix(0, 0) = -p.h;
    b.matrix(0, 1) = b.matrix(1, 0) = 2.0 * J.imag();
    b.matrix(1, 1) = -4.0 * J.real() + p.h;
    b.matrix(2, 2) = b.matrix(3, 3) = -2.0 * J.real();
    return b;
}

BlockHamiltonian block_hamiltonian(double k, const ModelParams& p) {
    return block_hamiltonian(k, p, jk_coupling(k, p));
}

ManyBodyState ground_state(const ModelParams& p, int workers) {
    p.validate();
    const auto ks = momentum_grid(p.N);
    const auto J = jk_grid(p, ks);
    ManyBodyState s;
    s.params = p;
    s.t = 0.0;
    s.blocks.resize(ks.size());
    parallel_for(ks.size(), workers, [&](std::size_t m) {
        const auto H = block_hamiltonian(ks[m], p, J[m]);
        Eigen::SelfAdjointEigenSolver<Mat4> es(H.matrix);
        const auto& ev = es.eigenvalues();
        if (ev(1) - ev(0) < 1e-12)
            throw DegenerateBlock("ground state degenerate at k = " + std::to_string(ks[m]) +
                                  "; perturb h or alpha");
        Eigen::Vector4cd v = es.eigenvectors().col(0);
        s.blocks[m].k = ks[m];
        s.blocks[m].rho = v * v.adjoint();
    });
    return s;
}

Propagator::Propagator(const ModelParams& final_params, int workers)
    : params_(final_params), workers_(workers) {
    params_.validate();
    const auto ks = momentum_grid(params_.N);
    const auto J = jk_grid(params_, ks);
    ham_.resize(ks.size());
    evals_.resize(ks.size());
    evecs_.resize(ks.size());
    parallel_for(ks.size(), workers_, [&](std::size_t m) {
        ham_[m] = block_hamiltonian(ks[m], params_, J[m]);
        Eigen::SelfAdjointEigenSolver<Mat4> es(ham_[m].matrix);
        evals_[m] = es.eigenvalues();
        evecs_[m] = es.eigenvectors();
    });
}

Mat4 Propagator::unitary(std::size_t m, double t) const {
    Eigen::Vector4cd ph;
    for (int i = 0; i < 4; ++i) ph(i) = std::exp(-I1 * evals_[m](i) * t);
    return evecs_[m] * ph.asDiagonal() * evecs_[m].adjoint();
}

ManyBodyState Propagator::apply(const ManyBodyState& s, double dt) const {
    if (s.params.N != params_.N) throw SizeMismatch("state and Hamiltonian have different N");
    if (dt < 0.0) throw InvalidArgument("evolution time must be non-negative");
    ManyBodyState out;
    out.params = params_;
    out.t = s.t + dt;
    out.blocks.resize(s.blocks.size());
    parallel_for(s.blocks.size(), workers_, [&](std::size_t m) {
        const Mat4 U = unitary(m, dt);
        out.blocks[m].k = s.blocks[m].k;
        out.blocks[m].rho = U * s.blocks[m].rho * U.adjoint();
    });
    return out;
}

ManyBodyState evolve(const ManyBodyState& s, const ModelParams& final_params, double t, int workers) {
    if (final_params.N != s.params.N) throw SizeMismatch("final N differs from state N");
    return Propagator(final_params, workers).apply(s, t);
}

cplx expectation(const ManyBodyState& s, const std::vector<Mat4>& op_blocks) {
    if (op_blocks.size() != s.blocks.size())
        throw SizeMismatch("need one operator block per momentum");
    std::vector<cplx> terms(s.blocks.size());
    for (std::size_t m = 0; m < terms.size(); ++m) terms[m] = (s.blocks[m].rho * op_blocks[m]).trace();
    return pairwise_sum(terms);
}

double energy(const ManyBodyState& s, const ModelParams& p) {
    const auto ks = momentum_grid(p.N);
    const auto J = jk_grid(p, ks);
    std::vector<Mat4> ops(ks.size());
    for (std::size_t m = 0; m < ks.size(); ++m) ops[m] = block_hamiltonian(ks[m], p, J[m]).matrix;
    return expectation(s, ops).real();
}

double magnetization(const ManyBodyState& s) {
    Mat4 z = Mat4::Zero();
    z(0, 0) = -1.0;
    z(1, 1) = 1.0;
    std::vector<Mat4> ops(s.blocks.size(), z);
    return 2.0 / s.params.N * expectation(s, ops).real();
}

double block_purity(const BlockState& b) { return (b.rho * b.rho).trace().real(); }

BogoliubovPair bogoliubov_pair(double k, const ModelParams& p, cplx J) {
    const double a = p.h / 2.0 - J.real();
    const double b = J.imag();
    const double w = 2.0 * std::hypot(a, b);
    if (w < 1e-14) throw GaplessBlock("gapless mode at k = " + std::to_string(k));
    // (a + w/2, b) and (b, w/2 - a) are parallel; pick the one without cancellation
    double u, v;
    if (a >= 0.0) {
        u = a + w / 2.0;
        v = b;
    } else {
        u = b;
        v = w / 2.0 - a;
    }
    const double n = std::hypot(u, v);
    return {k, u / n, v / n, w};
}

BogoliubovPair bogoliubov_pair(double k, const ModelParams& p) {
    return bogoliubov_pair(k, p, jk_coupling(k, p));
}

ModeOverlaps mode_overlaps(const ModelParams& initial, const ModelParams& fin) {
    initial.validate();
    fin.validate();
    if (initial.N != fin.N) throw SizeMismatch("initial and final N differ");
    ModeOverlaps m;
    m.k = momentum_grid(initial.N);
    const auto Ji = jk_grid(initial, m.k);
    const auto Jf = jk_grid(fin, m.k);
    m.p.resize(m.k.size());
    m.omega.resize(m.k.size());
    for (std::size_t i = 0; i < m.k.size(); ++i) {
        const auto bi = bogoliubov_pair(m.k[i], initial, Ji[i]);
        const auto bf = bogoliubov_pair(m.k[i], fin, Jf[i]);
        const double ov = bi.U * bf.U + bi.V * bf.V;
        m.p[i] = ov * ov;
        m.omega[i] = bf.omega;
    }
    return m;
}

namespace {

double safe_log(double x) {
    return std::log(std::max(x, std::numeric_limits<double>::min()));
}

}  // namespace

RateSeries loschmidt_rate(const QuenchProtocol& q, int workers) {
    q.validate();
    const auto m = mode_overlaps(q.initial, q.final_);
    RateSeries out;
    out.t = q.time_grid;
    out.rate.resize(q.time_grid.size());
    const double N = q.initial.N;
    parallel_for(q.time_grid.size(), workers, [&](std::size_t j) {
        const double t = q.time_grid[j];
        std::vector<double> terms(m.k.size());
        for (std::size_t i = 0; i < m.k.size(); ++i) {
            const double s = std::sin(m.omega[i] * t);
            terms[i] = safe_log(1.0 - 4.0 * m.p[i] * (1.0 - m.p[i]) * s * s);
        }
        out.rate[j] = 0.0 - pairwise_sum(terms) / N;  // no -0 in the output
    });
    return out;
}

RateSeries loschmidt_rate_blocks(const QuenchProtocol& q, int workers) {
    q.validate();
    const auto psi0 = ground_state(q.initial, workers);
    const Propagator prop(q.final_, workers);
    RateSeries out;
    out.t = q.time_grid;
    out.rate.resize(q.time_grid.size());
    const double N = q.initial.N;
    parallel_for(q.time_grid.size(), workers, [&](std::size_t j) {
        std::vector<double> terms(psi0.blocks.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            // pure initial block: <psi|U|psi> = Tr(rho U)
            const cplx amp = (psi0.blocks[i].rho * prop.unitary(i, q.time_grid[j])).trace();
            terms[i] = safe_log(std::norm(amp));
        }
        out.rate[j] = 0.0 - pairwise_sum(terms) / N;  // no -0 in the output
    });
    return out;
}

std::vector<std::size_t> detect_cusps(const std::vector<double>& r, const CuspOptions& opt) {
    std::vector<std::size_t> out;
    if (r.size() < 5) return out;
    const std::size_t n = r.size() - 2;
    std::vector<double> d2(n), a(n);
    for (std::size_t j = 0; j < n; ++j) {
        d2[j] = r[j + 2] - 2.0 * r[j + 1] + r[j];
        a[j] = std::fabs(d2[j]);
    }
    auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        auto mid = v.begin() + static_cast<long>(v.size() / 2);
        std::nth_element(v.begin(), mid, v.end());
        double hi = *mid;
        if (v.size() % 2 == 1) return hi;
        double lo = *std::max_element(v.begin(), mid);
        return 0.5 * (lo + hi);
    };
    if (opt.half_window <= 0) {
        const double ref = median(a);
        for (std::size_t j = 0; j < n; ++j)
            if (a[j] > opt.multiplier * ref) out.push_back(j + 1);
        return out;
    }
    const auto hw = static_cast<std::size_t>(opt.half_window);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = j + 1;
        if (!(r[i] >= r[i - 1] && r[i] >= r[i + 1]) || !(d2[j] < 0.0)) continue;
        std::vector<double> nb;
        const std::size_t lo = j >= hw ? j - hw : 0;
        const std::size_t hi = std::min(n, j + hw + 1);
        for (std::size_t q = lo; q < hi; ++q)
            if (q + 1 < j || q > j + 1) nb.push_back(a[q]);
        if (nb.empty()) continue;
        if (a[j] > opt.multiplier * median(nb)) out.push_back(i);
    }
    return out;
}

std::vector<CriticalMode> critical_modes(const ModeOverlaps& m) {
    std::vector<CriticalMode> out;
    for (std::size_t i = 0; i < m.k.size(); ++i) {
        const double d = m.p[i] - 0.5;
        if (d == 0.0) out.push_back({m.k[i], m.k[i], m.omega[i], m.omega[i]});
        if (i + 1 < m.k.size()) {
            const double e = m.p[i + 1] - 0.5;
            if (d * e < 0.0) out.push_back({m.k[i], m.k[i + 1], m.omega[i], m.omega[i + 1]});
        }
    }
    return out;
}

double cusp_prediction_error(double t, const std::vector<CriticalMode>& modes) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : modes) {
        for (double w : {c.omega_lo, c.omega_hi}) {
            if (!(w > 0.0)) continue;
            const double n = std::max(0.0, std::round(t * w / std::numbers::pi - 0.5));
            best = std::min(best, std::fabs(t - std::numbers::pi * (n + 0.5) / w));
        }
    }
    return best;
}

}  // namespace lrq
