#include "lrq/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lrq/errors.hpp"

namespace lrq::ed {

namespace {

void check_size(int N) {
    if (N < 2 || N % 2 != 0) throw InvalidArgument("dense oracle needs even N >= 2");
    if (N > max_sites) throw TooLarge("dense oracle limited to N <= " + std::to_string(max_sites));
}

inline int bit(long s, int n) { return static_cast<int>((s >> n) & 1L); }

}  // namespace

Eigen::MatrixXd build_dense_hamiltonian(const ModelParams& p) {
    check_size(p.N);
    const int N = p.N;
    const long D = 1L << N;
    const double A = kac_normalization(N, p.alpha);
    std::vector<double> J(static_cast<std::size_t>(N / 2 + 1), 0.0);
    for (int R = 1; R <= N / 2; ++R) J[R] = std::pow(static_cast<double>(R), -p.alpha) / A;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
    for (long s = 0; s < D; ++s) {
        for (int n = 0; n < N; ++n) H(s, s) += 0.5 * p.h * (1 - 2 * bit(s, n));
        for (int n = 0; n < N; ++n) {
            int sign = 1;
            for (int R = 1; R <= N / 2; ++R) {
                const int m = (n + R) % N;
                const long s2 = s ^ (1L << n) ^ (1L << m);
                H(s2, s) += J[R] * sign;
                sign *= 1 - 2 * bit(s, m);  // string grows by site n+R for the next R
            }
        }
    }
    return H;
}

Eigen::VectorXd parity_diagonal(int N) {
    check_size(N);
    const long D = 1L << N;
    Eigen::VectorXd P(D);
    for (long s = 0; s < D; ++s) P(s) = (__builtin_popcountl(static_cast<unsigned long>(s)) % 2 == 0) ? 1.0 : -1.0;
    return P;
}

std::vector<int> even_sector(int N) {
    check_size(N);
    std::vector<int> out;
    for (int s = 0; s < (1 << N); ++s)
        if (__builtin_popcount(static_cast<unsigned>(s)) % 2 == 0) out.push_back(s);
    return out;
}

namespace {

Eigen::MatrixXd sector_block(const Eigen::MatrixXd& H, const std::vector<int>& sec) {
    const auto d = static_cast<Eigen::Index>(sec.size());
    Eigen::MatrixXd B(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) B(i, j) = H(sec[i], sec[j]);
    return B;
}

}  // namespace

DenseGroundState ground_state(const ModelParams& p) {
    const auto sec = even_sector(p.N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_block(build_dense_hamiltonian(p), sec));
    DenseGroundState g;
    g.energy = es.eigenvalues()(0);
    g.state.N = p.N;
    g.state.vector = Eigen::VectorXcd::Zero(1L << p.N);
    for (std::size_t i = 0; i < sec.size(); ++i) g.state.vector(sec[i]) = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    return g;
}

Evolver::Evolver(const ModelParams& p) : p_(p), sector_(even_sector(p.N)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_block(build_dense_hamiltonian(p), sector_));
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

DenseState Evolver::evolve(const DenseState& s, double t) const {
    if (s.N != p_.N) throw SizeMismatch("state and Hamiltonian sizes differ");
    const auto d = static_cast<Eigen::Index>(sector_.size());
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = s.vector(sector_[i]);
    Eigen::VectorXcd c = evecs_.transpose().cast<cplx>() * v;
    for (Eigen::Index i = 0; i < d; ++i) c(i) *= std::exp(cplx(0.0, -evals_(i) * t));
    v = evecs_.cast<cplx>() * c;
    DenseState out{s.N, Eigen::VectorXcd::Zero(s.vector.size())};
    for (Eigen::Index i = 0; i < d; ++i) out.vector(sector_[i]) = v(i);
    return out;
}

DenseObservables dense_observables(const DenseState& s, int i, int R, double t) {
    const int N = s.N;
    if (i < 0 || i >= N || R < 1 || R >= N) throw InvalidArgument("site index out of range");
    const int j = (i + R) % N;
    const long D = 1L << N;
    Mat4 rho = Mat4::Zero();
    const long mask = (1L << i) | (1L << j);
    for (long a = 0; a < D; ++a) {
        if (s.vector(a) == cplx(0.0, 0.0)) continue;
        const long rest = a & ~mask;
        const int ra = 2 * bit(a, i) + bit(a, j);
        for (int rb = 0; rb < 4; ++rb) {
            const long b = rest | (static_cast<long>(rb >> 1) << i) | (static_cast<long>(rb & 1) << j);
            rho(ra, rb) += s.vector(a) * std::conj(s.vector(b));
        }
    }
    Eigen::Matrix2cd X, Y, Z, I2 = Eigen::Matrix2cd::Identity();
    X << 0, 1, 1, 0;
    Y << 0, cplx(0, -1), cplx(0, 1), 0;
    Z << 1, 0, 0, -1;
    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        Mat4 o;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) o.block<2, 2>(2 * p, 2 * q) = a(p, q) * b;
        return o;
    };
    auto ev = [&](const Mat4& op) { return (rho * op).trace().real(); };
    DenseObservables out;
    auto& c = out.correlators;
    c.R = R;
    c.t = t;
    c.m_z = ev(kron(Z, I2));
    c.c_xx = ev(kron(X, X));
    c.c_yy = ev(kron(Y, Y));
    c.c_zz = ev(kron(Z, Z));
    c.c_xy = ev(kron(X, Y));
    c.c_yx = ev(kron(Y, X));
    out.two_site = two_site_from_matrix(R, t, rho);
    return out;
}

double dense_rate(const DenseState& a, const DenseState& b) {
    const double ov = std::norm(a.vector.dot(b.vector));
    return -std::log(std::max(ov, std::numeric_limits<double>::min())) / a.N;
}

double Comparison::max_err() const { return std::max({energy_err, mz_err, corr_err, mi_err, rate_err}); }

Comparison compare_quench(const ModelParams& pi, const ModelParams& pf, const std::vector<double>& times) {
    Comparison c;
    c.N = pi.N;
    c.h_i = pi.h;
    c.alpha_i = pi.alpha;
    c.h_f = pf.h;
    c.alpha_f = pf.alpha;

    const auto ff0 = lrq::ground_state(pi);
    const auto ed0 = ed::ground_state(pi);
    c.energy_err = std::fabs(energy(ff0, pi) - ed0.energy);

    const Propagator prop(pf);
    const Evolver dense(pf);
    QuenchProtocol q{pi, pf, {0.0}};
    for (double t : times)
        if (t > 0.0) q.time_grid.push_back(t);
    const auto rate = loschmidt_rate(q);

    for (double t : times) {
        const auto ff = prop.apply(ff0, t);
        const auto ed = dense.evolve(ed0.state, t);
        c.mz_err = std::max(c.mz_err, std::fabs(magnetization(ff) - dense_observables(ed, 0, 1, t).correlators.m_z));
        const int rmax = pi.N / 2 - 1;
        const auto table = contraction_table(ff, rmax);
        for (int R = 1; R <= rmax; ++R) {
            const auto a = correlator_set(table, R, t);
            const auto b = dense_observables(ed, 0, R, t);
            const auto& e = b.correlators;
            for (double d : {a.c_xx - e.c_xx, a.c_yy - e.c_yy, a.c_zz - e.c_zz, a.c_xy - e.c_xy, a.c_yx - e.c_yx})
                c.corr_err = std::max(c.corr_err, std::fabs(d));
            const double mi_ff = mutual_information(assemble_two_site(a));
            const double mi_ed = mutual_information(b.two_site);
            c.mi_err = std::max(c.mi_err, std::fabs(mi_ff - mi_ed));
        }
        const auto it = std::find(q.time_grid.begin(), q.time_grid.end(), t);
        const double r_ff = rate.rate[static_cast<std::size_t>(it - q.time_grid.begin())];
        c.rate_err = std::max(c.rate_err, std::fabs(r_ff - dense_rate(ed0.state, ed)));
    }
    return c;
}

std::vector<SuiteRow> run_suite(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uh(opt.h_lo, opt.h_hi), ua(opt.alpha_lo, opt.alpha_hi);
    std::vector<SuiteRow> rows;
    for (int N : opt.sizes) {
        SuiteRow row;
        row.N = N;
        double worst = -1.0;
        for (int d = 0; d < opt.draws; ++d) {
            const ModelParams pi(N, uh(rng), ua(rng));
            const ModelParams pf(N, uh(rng), ua(rng));
            const auto c = compare_quench(pi, pf, opt.times);
            ++row.quenches;
            if (c.max_err() > worst) {
                worst = c.max_err();
                row.worst = c;
            }
        }
        row.pass = worst <= opt.tolerance;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lrq::ed
