#pragma once

#include <string>
#include <vector>

#include "lrq/evolution.hpp"
#include "lrq/pfaffian.hpp"

namespace lrq {

// Two-point Majorana contractions at fixed time, for separations -R_max..R_max.
// A = c^+ + c, B = c^+ - c.
class ContractionTable {
public:
    ContractionTable() = default;
    ContractionTable(int r_max, std::vector<cplx> aa, std::vector<cplx> bb, std::vector<cplx> ab);

    int r_max() const { return r_max_; }
    cplx aa(int r) const { return aa_.at(index(r)); }  // <A_l A_{l+r}>
    cplx bb(int r) const { return bb_.at(index(r)); }  // <B_l B_{l+r}>
    cplx ab(int r) const { return ab_.at(index(r)); }  // <A_l B_{l+r}>
    cplx ba(int r) const { return -ab(-r); }           // <B_l A_{l+r}>

private:
    std::size_t index(int r) const;
    int r_max_ = 0;
    std::vector<cplx> aa_, bb_, ab_;
};

enum class ContractionKind { AA, BB, AB };

// Momentum-space operator block whose trace against rho_k gives the k term of
// the contraction at separation r (before the 2/N factor and equal-site shift).
Mat4 contraction_operator(ContractionKind kind, double k, int r);

ContractionTable contraction_table(const ManyBodyState& s, int r_max);

enum class PauliPair { XX, YY, XY, YX };
PauliPair pauli_pair_from_string(const std::string& s);
std::string to_string(PauliPair k);

// Matrix in the layout (all A operators, then all B operators). Dimension 2R.
SkewMatrix build_pfaffian_matrix(PauliPair kind, int R, const ContractionTable& t);

// Scalar multiplying the Pfaffian of build_pfaffian_matrix to give C_R.
cplx pfaffian_prefactor(PauliPair kind, int R);

struct CorrelatorSet {
    int R = 0;
    double t = 0.0;
    double m_z = 0.0;
    double c_xx = 0.0, c_yy = 0.0, c_zz = 0.0, c_xy = 0.0, c_yx = 0.0;
    double imag_residue = 0.0;  // largest discarded imaginary part
};

CorrelatorSet correlator_set(const ContractionTable& t, int R, double time = 0.0);
CorrelatorSet correlator_set(const ManyBodyState& s, int R);

}  // namespace lrq
