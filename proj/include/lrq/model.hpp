#pragma once

#include <complex>
#include <vector>

namespace lrq {

using cplx = std::complex<double>;

// One point of the Hamiltonian family: ring of N sites, field h, exponent alpha.
struct ModelParams {
    int N = 0;
    double h = 0.0;
    double alpha = 1.0;

    ModelParams() = default;
    ModelParams(int n, double field, double a);

    // Throws InvalidArgument unless N is even and >= 4 and alpha > 0.
    void validate() const;
    bool operator==(const ModelParams&) const = default;
};

struct QuenchProtocol {
    ModelParams initial;
    ModelParams final_;
    std::vector<double> time_grid;

    void validate() const;
};

// Uniform grid 0, dt, 2 dt, ... up to and including t_max (within dt/1e6).
std::vector<double> uniform_time_grid(double dt, double t_max);

// Half-integer momenta k_m = (2m-1) pi / N, m = 1..N/2.
std::vector<double> momentum_grid(int N);

// A = sum_{R=1}^{N/2} R^-alpha. Accepts N >= 2 (the N = 2 case is a useful check).
double kac_normalization(int N, double alpha);

// J_R = R^-alpha / A.
double coupling(int R, const ModelParams& p);

// Fourier transform (1/A) sum_{n=1}^{N/2} e^{ikn} n^-alpha.
cplx jk_coupling(double k, const ModelParams& p);

// Same, with the normalization supplied by the caller (grid loops reuse it).
cplx jk_coupling(double k, const ModelParams& p, double kac);

// omega_k = 2 sqrt((h/2 - Re J_k)^2 + (Im J_k)^2).
double dispersion(double k, const ModelParams& p);

// Finite-size second critical field -2 Htilde / H, Htilde the alternating sum.
double critical_field_lower(const ModelParams& p);

// The first critical field does not depend on N or alpha.
constexpr double critical_field_upper() { return 2.0; }

}  // namespace lrq
