#pragma once

#include <array>
#include <utility>
#include <vector>

#include "lrq/correlators.hpp"

namespace lrq {

// Two-site reduced density matrix in the product basis uu, ud, du, dd
// (u = sigma^z eigenvalue +1).
struct TwoSiteState {
    int R = 0;
    double t = 0.0;
    Mat4 rho = Mat4::Zero();
    std::array<double, 4> spectrum{};  // ascending, after clipping
    double clipped = 0.0;              // magnitude of the most negative eigenvalue removed
};

// Throws PositivityViolation if an eigenvalue is below -1e-6.
TwoSiteState assemble_two_site(const CorrelatorSet& cs);

// Wraps an explicit 4x4 matrix (same checks and clipping as above).
TwoSiteState two_site_from_matrix(int R, double t, const Mat4& rho);

// 2x2 reduced matrix of site 0 or site 1.
Eigen::Matrix2cd partial_trace(const TwoSiteState& ts, int keep);

// Shannon entropy in bits; p < 1e-15 contributes nothing.
double entropy_bits(const double* p, std::size_t n);

// S(rho_i) + S(rho_{i+R}) - S(rho_{i,i+R}) in bits, from eigen-decompositions.
double mutual_information(const TwoSiteState& ts);

// Closed-form spectrum of rho_R straight from the correlators.
std::array<double, 4> two_site_spectrum_closed_form(const CorrelatorSet& cs);
double mutual_information_closed_form(const CorrelatorSet& cs);

using Profile = std::vector<std::pair<int, double>>;

// I_R for every R in r_list (each in [1, N/2 - 1]).
Profile tc_profile(const ManyBodyState& s, const std::vector<int>& r_list, int workers = 1);

// 1..N/2-1
std::vector<int> full_r_list(int N);

}  // namespace lrq
