#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lrq/observables.hpp"

namespace lrq::ed {

// Computational basis: bit n of the index is 1 when site n points down
// (sigma^z_n = 1 - 2 bit_n).
constexpr int max_sites = 12;

struct DenseState {
    int N = 0;
    Eigen::VectorXcd vector;
};

// Full 2^N x 2^N real Hamiltonian on the periodic ring. TooLarge for N > 12.
Eigen::MatrixXd build_dense_hamiltonian(const ModelParams& p);

// Diagonal of prod_n sigma^z_n.
Eigen::VectorXd parity_diagonal(int N);

// Basis indices with an even number of down spins.
std::vector<int> even_sector(int N);

struct DenseGroundState {
    double energy = 0.0;
    DenseState state;
};

// Lowest eigenvector within the even-parity sector.
DenseGroundState ground_state(const ModelParams& p);

// Exact evolution from the even-sector eigendecomposition.
class Evolver {
public:
    explicit Evolver(const ModelParams& p);
    DenseState evolve(const DenseState& s, double t) const;

private:
    ModelParams p_;
    std::vector<int> sector_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
};

struct DenseObservables {
    CorrelatorSet correlators;
    TwoSiteState two_site;
};

// Reduced density matrix of sites (i, i+R mod N) and its Pauli expectations.
DenseObservables dense_observables(const DenseState& s, int i, int R, double t = 0.0);

// -(1/N) log |<a|b>|^2
double dense_rate(const DenseState& a, const DenseState& b);

// Deviations between the free-fermion pipeline and ED for one quench.
struct Comparison {
    int N = 0;
    double h_i = 0, alpha_i = 0, h_f = 0, alpha_f = 0;
    double energy_err = 0.0;
    double mz_err = 0.0;
    double corr_err = 0.0;
    double mi_err = 0.0;
    double rate_err = 0.0;
    double max_err() const;
};

Comparison compare_quench(const ModelParams& initial, const ModelParams& final_params,
                          const std::vector<double>& times);

struct SuiteOptions {
    std::vector<int> sizes{4, 6, 8, 10};
    int draws = 20;
    std::vector<double> times{0.0, 0.5, 1.0, 5.0};
    double h_lo = 0.2, h_hi = 3.0;
    double alpha_lo = 0.3, alpha_hi = 5.0;
    unsigned seed = 20240607u;
    double tolerance = 1e-6;
};

struct SuiteRow {
    int N = 0;
    int quenches = 0;
    Comparison worst;  // entry with the largest max_err
    bool pass = false;
};

std::vector<SuiteRow> run_suite(const SuiteOptions& opt);

}  // namespace lrq::ed
