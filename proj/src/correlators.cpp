#include "lrq/correlators.hpp"

#include <algorithm>
#include <cmath>

#include "lrq/errors.hpp"

namespace lrq {

namespace {
constexpr cplx I1{0.0, 1.0};
}

ContractionTable::ContractionTable(int r_max, std::vector<cplx> aa, std::vector<cplx> bb, std::vector<cplx> ab)
    : r_max_(r_max), aa_(std::move(aa)), bb_(std::move(bb)), ab_(std::move(ab)) {
    const auto n = static_cast<std::size_t>(2 * r_max + 1);
    if (aa_.size() != n || bb_.size() != n || ab_.size() != n)
        throw SizeMismatch("contraction table vectors must have 2 R_max + 1 entries");
}

std::size_t ContractionTable::index(int r) const {
    if (r < -r_max_ || r > r_max_)
        throw InvalidArgument("separation " + std::to_string(r) + " outside contraction table");
    return static_cast<std::size_t>(r + r_max_);
}

Mat4 contraction_operator(ContractionKind kind, double k, int r) {
    const double s = std::sin(k * r), c = std::cos(k * r);
    Mat4 o = Mat4::Zero();
    switch (kind) {
        case ContractionKind::AA:
            o(0, 1) = s;
            o(1, 0) = -s;
            o(2, 2) = I1 * s;
            o(3, 3) = -I1 * s;
            break;
        case ContractionKind::BB:
            o(0, 1) = s;
            o(1, 0) = -s;
            o(2, 2) = -I1 * s;
            o(3, 3) = I1 * s;
            break;
        case ContractionKind::AB:
            o(0, 0) = -c;
            o(0, 1) = s;
            o(1, 0) = s;
            o(1, 1) = c;
            break;
    }
    return o;
}

ContractionTable contraction_table(const ManyBodyState& s, int r_max) {
    const int N = s.params.N;
    if (r_max < 0 || r_max > N / 2) throw InvalidArgument("R_max must lie in [0, N/2]");
    const auto n = static_cast<std::size_t>(2 * r_max + 1);
    std::vector<cplx> aa(n), bb(n), ab(n);
    const double f = 2.0 / N;
    std::vector<Mat4> ops(s.blocks.size());
    for (int r = -r_max; r <= r_max; ++r) {
        const auto i = static_cast<std::size_t>(r + r_max);
        const double delta = r == 0 ? 1.0 : 0.0;
        for (std::size_t m = 0; m < ops.size(); ++m) ops[m] = contraction_operator(ContractionKind::AA, s.blocks[m].k, r);
        aa[i] = delta + f * expectation(s, ops);
        for (std::size_t m = 0; m < ops.size(); ++m) ops[m] = contraction_operator(ContractionKind::BB, s.blocks[m].k, r);
        bb[i] = -delta + f * expectation(s, ops);
        for (std::size_t m = 0; m < ops.size(); ++m) ops[m] = contraction_operator(ContractionKind::AB, s.blocks[m].k, r);
        ab[i] = f * expectation(s, ops);
    }
    return {r_max, std::move(aa), std::move(bb), std::move(ab)};
}

PauliPair pauli_pair_from_string(const std::string& s) {
    if (s == "xx") return PauliPair::XX;
    if (s == "yy") return PauliPair::YY;
    if (s == "xy") return PauliPair::XY;
    if (s == "yx") return PauliPair::YX;
    throw InvalidArgument("unknown correlator kind '" + s + "'");
}

std::string to_string(PauliPair k) {
    switch (k) {
        case PauliPair::XX: return "xx";
        case PauliPair::YY: return "yy";
        case PauliPair::XY: return "xy";
        case PauliPair::YX: return "yx";
    }
    return "?";
}

SkewMatrix build_pfaffian_matrix(PauliPair kind, int R, const ContractionTable& t) {
    if (R < 1 || R > t.r_max()) throw InvalidArgument("R must lie in [1, R_max]");
    // site ranges of the A and B operators
    int a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    switch (kind) {
        case PauliPair::XX: a0 = 1; a1 = R; b0 = 0; b1 = R - 1; break;
        case PauliPair::YY: a0 = 0; a1 = R - 1; b0 = 1; b1 = R; break;
        case PauliPair::XY: a0 = 1; a1 = R - 1; b0 = 0; b1 = R; break;
        case PauliPair::YX: a0 = 0; a1 = R; b0 = 1; b1 = R - 1; break;
    }
    const int na = a1 - a0 + 1, nb = b1 - b0 + 1;
    MatX M = MatX::Zero(na + nb, na + nb);
    for (int i = 0; i < na; ++i)
        for (int j = i + 1; j < na; ++j) {
            M(i, j) = t.aa(j - i);
            M(j, i) = -M(i, j);
        }
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            M(na + i, na + j) = t.bb(j - i);
            M(na + j, na + i) = -M(na + i, na + j);
        }
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            M(i, na + j) = t.ab((b0 + j) - (a0 + i));
            M(na + j, i) = -M(i, na + j);
        }
    return SkewMatrix(M, 1e-10);
}

cplx pfaffian_prefactor(PauliPair kind, int R) {
    switch (kind) {
        case PauliPair::XX:
        case PauliPair::YY:
            return ((R * (R + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        case PauliPair::XY:
        case PauliPair::YX:
            return ((R * (R - 1) / 2) % 2 == 0) ? I1 : -I1;
    }
    return 0.0;
}

CorrelatorSet correlator_set(const ContractionTable& t, int R, double time) {
    CorrelatorSet cs;
    cs.R = R;
    cs.t = time;
    double resid = 0.0;
    auto take = [&](cplx z) {
        resid = std::max(resid, std::fabs(z.imag()));
        return z.real();
    };
    cs.m_z = take(t.ab(0));
    auto pair = [&](PauliPair k) {
        return take(pfaffian_prefactor(k, R) * pfaffian(build_pfaffian_matrix(k, R, t)));
    };
    cs.c_xx = pair(PauliPair::XX);
    cs.c_yy = pair(PauliPair::YY);
    cs.c_xy = pair(PauliPair::XY);
    cs.c_yx = pair(PauliPair::YX);
    // Pf of (A_0, B_0, A_R, B_R), closed 4x4 form
    const cplx a = t.ab(0), b = t.aa(R), c = t.ab(R), d = t.ba(R), e = t.bb(R), f = t.ab(0);
    cs.c_zz = take(a * f - b * e + c * d);
    cs.imag_residue = resid;
    return cs;
}

CorrelatorSet correlator_set(const ManyBodyState& s, int R) {
    if (R < 1 || R > s.params.N / 2 - 1) throw InvalidArgument("R must lie in [1, N/2 - 1]");
    return correlator_set(contraction_table(s, R), R, s.t);
}

}  // namespace lrq
