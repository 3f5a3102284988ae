#pragma once

#include <Eigen/Dense>

#include "lrq/model.hpp"

namespace lrq {

using MatX = Eigen::MatrixXcd;

// Complex skew-symmetric matrix. Construction antisymmetrizes the input,
// A <- (A - A^T) / 2, and keeps the size of the removed symmetric part.
class SkewMatrix {
public:
    // Throws OddDimension for odd sizes and NotSkew if the symmetric part
    // exceeds `tol` relative to max(1, max |a_ij|).
    explicit SkewMatrix(const MatX& a, double tol = 1e-8);

    int dim() const { return static_cast<int>(m_.rows()); }
    const MatX& matrix() const { return m_; }
    double correction() const { return correction_; }

private:
    MatX m_;
    double correction_ = 0.0;
};

struct PfaffianResult {
    cplx value{1.0, 0.0};
    // smallest / largest pivot magnitude seen; tiny values flag near-singular input
    double pivot_ratio = 1.0;
};

// Parlett-Reid reduction with partial pivoting.
PfaffianResult pfaffian_detail(const SkewMatrix& m);
cplx pfaffian(const SkewMatrix& m);

}  // namespace lrq
