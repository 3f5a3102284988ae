#include "lrq/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrq/errors.hpp"

namespace lrq {

SkewMatrix::SkewMatrix(const MatX& a, double tol) {
    if (a.rows() != a.cols()) throw InvalidArgument("skew matrix must be square");
    if (a.rows() % 2 != 0) throw OddDimension("Pfaffian needs an even dimension, got " + std::to_string(a.rows()));
    m_ = 0.5 * (a - a.transpose());
    const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
    correction_ = a.size() ? (0.5 * (a + a.transpose())).cwiseAbs().maxCoeff() : 0.0;
    if (correction_ > tol * scale)
        throw NotSkew("input is not skew-symmetric (symmetric part " + std::to_string(correction_) + ")");
}

PfaffianResult pfaffian_detail(const SkewMatrix& sm) {
    PfaffianResult res;
    MatX A = sm.matrix();
    const Eigen::Index n = A.rows();
    if (n == 0) return res;

    cplx pf{1.0, 0.0};
    double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
    for (Eigen::Index k = 0; k < n - 1; k += 2) {
        // largest entry below the diagonal in column k
        Eigen::Index kp = k + 1;
        double best = std::abs(A(k + 1, k));
        for (Eigen::Index i = k + 2; i < n; ++i) {
            const double v = std::abs(A(i, k));
            if (v > best) {
                best = v;
                kp = i;
            }
        }
        if (kp != k + 1) {
            A.row(k + 1).swap(A.row(kp));
            A.col(k + 1).swap(A.col(kp));
            pf = -pf;
        }
        if (A(k + 1, k) == cplx(0.0, 0.0)) {
            res.value = 0.0;
            res.pivot_ratio = 0.0;
            return res;
        }
        const cplx piv = A(k, k + 1);
        pf *= piv;
        pmin = std::min(pmin, std::abs(piv));
        pmax = std::max(pmax, std::abs(piv));
        if (k + 2 < n) {
            const Eigen::Index r = n - k - 2;
            Eigen::VectorXcd tau = A.row(k).segment(k + 2, r).transpose() / piv;
            Eigen::VectorXcd col = A.col(k + 1).segment(k + 2, r);
            A.block(k + 2, k + 2, r, r).noalias() += tau * col.transpose() - col * tau.transpose();
        }
    }
    res.value = pf;
    res.pivot_ratio = pmax > 0.0 ? pmin / pmax : 0.0;
    return res;
}

cplx pfaffian(const SkewMatrix& m) { return pfaffian_detail(m).value; }

}  // namespace lrq
