#include "lrq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrq/errors.hpp"
#include "lrq/parallel.hpp"

namespace lrq {

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

struct Paulis {
    Mat2 I, X, Y, Z;
    Paulis() {
        I = Mat2::Identity();
        X << 0, 1, 1, 0;
        Y << 0, cplx(0, -1), cplx(0, 1), 0;
        Z << 1, 0, 0, -1;
    }
};

const Paulis& paulis() {
    static const Paulis p;
    return p;
}

}  // namespace

TwoSiteState two_site_from_matrix(int R, double t, const Mat4& rho) {
    TwoSiteState ts;
    ts.R = R;
    ts.t = t;
    ts.rho = rho;
    Eigen::SelfAdjointEigenSolver<Mat4> es(ts.rho, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) {
        double e = es.eigenvalues()(i);
        if (e < -1e-6)
            throw PositivityViolation("two-site density matrix at R = " + std::to_string(R) +
                                      " has eigenvalue " + std::to_string(e));
        if (e < 0.0) {
            ts.clipped = std::max(ts.clipped, -e);
            e = 0.0;
        }
        ts.spectrum[static_cast<std::size_t>(i)] = e;
    }
    return ts;
}

TwoSiteState assemble_two_site(const CorrelatorSet& cs) {
    const auto& P = paulis();
    Mat4 rho = Mat4::Identity() + cs.m_z * (kron(P.Z, P.I) + kron(P.I, P.Z)) + cs.c_xx * kron(P.X, P.X) +
             cs.c_yy * kron(P.Y, P.Y) + cs.c_zz * kron(P.Z, P.Z) + cs.c_xy * kron(P.X, P.Y) +
             cs.c_yx * kron(P.Y, P.X);
    return two_site_from_matrix(cs.R, cs.t, rho / 4.0);
}

Eigen::Matrix2cd partial_trace(const TwoSiteState& ts, int keep) {
    if (keep != 0 && keep != 1) throw InvalidArgument("site index must be 0 or 1");
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s)
                out(a, b) += keep == 0 ? ts.rho(2 * a + s, 2 * b + s) : ts.rho(2 * s + a, 2 * s + b);
    return out;
}

double entropy_bits(const double* p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (p[i] >= 1e-15) s -= p[i] * std::log2(p[i]);
    return s;
}

double mutual_information(const TwoSiteState& ts) {
    double s1 = 0.0;
    for (int site = 0; site < 2; ++site) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(partial_trace(ts, site), Eigen::EigenvaluesOnly);
        double ev[2] = {std::max(0.0, es.eigenvalues()(0)), std::max(0.0, es.eigenvalues()(1))};
        s1 += entropy_bits(ev, 2);
    }
    const double I = s1 - entropy_bits(ts.spectrum.data(), 4);
    return std::max(0.0, I);
}

std::array<double, 4> two_site_spectrum_closed_form(const CorrelatorSet& c) {
    const double odd = std::hypot(c.c_xx + c.c_yy, c.c_xy - c.c_yx);
    const double even = std::sqrt(std::pow(c.c_xx - c.c_yy, 2) + std::pow(c.c_xy + c.c_yx, 2) + 4.0 * c.m_z * c.m_z);
    return {(1.0 - c.c_zz - odd) / 4.0, (1.0 - c.c_zz + odd) / 4.0, (1.0 + c.c_zz - even) / 4.0,
            (1.0 + c.c_zz + even) / 4.0};
}

double mutual_information_closed_form(const CorrelatorSet& c) {
    auto g = two_site_spectrum_closed_form(c);
    for (auto& x : g) x = std::max(0.0, x);
    const double mu[2] = {(1.0 + c.m_z) / 2.0, (1.0 - c.m_z) / 2.0};
    return std::max(0.0, 2.0 * entropy_bits(mu, 2) - entropy_bits(g.data(), 4));
}

std::vector<int> full_r_list(int N) {
    std::vector<int> r;
    for (int R = 1; R <= N / 2 - 1; ++R) r.push_back(R);
    return r;
}

Profile tc_profile(const ManyBodyState& s, const std::vector<int>& r_list, int workers) {
    int rmax = 0;
    for (int R : r_list) {
        if (R < 1 || R > s.params.N / 2 - 1)
            throw InvalidArgument("R = " + std::to_string(R) + " outside [1, N/2 - 1]");
        rmax = std::max(rmax, R);
    }
    Profile out(r_list.size());
    if (r_list.empty()) return out;
    const auto table = contraction_table(s, rmax);
    parallel_for(r_list.size(), workers, [&](std::size_t i) {
        const auto cs = correlator_set(table, r_list[i], s.t);
        out[i] = {r_list[i], mutual_information(assemble_two_site(cs))};
    });
    return out;
}

}  // namespace lrq
