#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "lrq/model.hpp"

namespace lrq {

using Mat4 = Eigen::Matrix4cd;

// Basis order: |0>, pair state |k,-k>, |k>, |-k>. The pair state couples to |0>
// through the pairing term; the two singles are decoupled.
struct BlockHamiltonian {
    double k = 0.0;
    Mat4 matrix = Mat4::Zero();
};

struct BlockState {
    double k = 0.0;
    Mat4 rho = Mat4::Zero();
};

struct ManyBodyState {
    std::vector<BlockState> blocks;
    ModelParams params;  // Hamiltonian generating the dynamics
    double t = 0.0;
};

struct BogoliubovPair {
    double k = 0.0;
    double U = 1.0;
    double V = 0.0;
    double omega = 0.0;
};

BlockHamiltonian block_hamiltonian(double k, const ModelParams& p);
BlockHamiltonian block_hamiltonian(double k, const ModelParams& p, cplx Jk);

// Rank-1 projector onto the lowest eigenvector of every block.
ManyBodyState ground_state(const ModelParams& p, int workers = 1);

// Per-block spectral decomposition of a Hamiltonian, reusable across many times.
class Propagator {
public:
    explicit Propagator(const ModelParams& final_params, int workers = 1);

    // Evolves by a duration dt: rho_k -> e^{-i H_k dt} rho_k e^{i H_k dt}.
    ManyBodyState apply(const ManyBodyState& s, double dt) const;
    // e^{-i H_k t} for block m.
    Mat4 unitary(std::size_t m, double t) const;

    const ModelParams& params() const { return params_; }
    const std::vector<BlockHamiltonian>& hamiltonians() const { return ham_; }

private:
    ModelParams params_;
    int workers_;
    std::vector<BlockHamiltonian> ham_;
    std::vector<Eigen::Vector4d> evals_;
    std::vector<Mat4> evecs_;
};

ManyBodyState evolve(const ManyBodyState& s, const ModelParams& final_params, double t, int workers = 1);

// Sum over blocks of Tr(rho_k O_k).
cplx expectation(const ManyBodyState& s, const std::vector<Mat4>& op_blocks);

// Sum over blocks of Tr(rho_k H_k) for the Hamiltonian `p`.
double energy(const ManyBodyState& s, const ModelParams& p);

// Transverse magnetization per site, <sigma^z>.
double magnetization(const ManyBodyState& s);

double block_purity(const BlockState& b);

BogoliubovPair bogoliubov_pair(double k, const ModelParams& p);
BogoliubovPair bogoliubov_pair(double k, const ModelParams& p, cplx Jk);

// |alpha_k|^2 for every grid momentum: squared overlap of initial and final
// Bogoliubov vectors. Also returns the final dispersion on the grid.
struct ModeOverlaps {
    std::vector<double> k;
    std::vector<double> p;      // |alpha_k|^2
    std::vector<double> omega;  // final-Hamiltonian dispersion
};
ModeOverlaps mode_overlaps(const ModelParams& initial, const ModelParams& final_params);

struct RateSeries {
    std::vector<double> t;
    std::vector<double> rate;
};

// Analytic path: R(t) = -(1/N) sum_k log(1 - 4 p (1-p) sin^2(omega_k t)).
RateSeries loschmidt_rate(const QuenchProtocol& q, int workers = 1);

// Cross-check path: overlap of the evolved 4x4 blocks with the initial ones.
RateSeries loschmidt_rate_blocks(const QuenchProtocol& q, int workers = 1);

struct CuspOptions {
    double multiplier = 10.0;
    // Neighbourhood half-width (in samples) for the reference median. 0 selects
    // the global median over the whole series, with no peak requirement.
    int half_window = 10;
};

// Indices i of the time grid flagged as cusps (second-difference spikes at local maxima).
std::vector<std::size_t> detect_cusps(const std::vector<double>& rate, const CuspOptions& opt = {});

// Pair of neighbouring grid momenta between which |alpha_k|^2 crosses 1/2.
struct CriticalMode {
    double k_lo, k_hi;
    double omega_lo, omega_hi;
};
std::vector<CriticalMode> critical_modes(const ModeOverlaps& m);

// Distance from t to the nearest predicted cusp time pi (n + 1/2) / omega over
// all critical modes (using both bracketing frequencies). Infinity if none.
double cusp_prediction_error(double t, const std::vector<CriticalMode>& modes);

}  // namespace lrq
