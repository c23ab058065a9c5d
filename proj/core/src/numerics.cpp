#include "l0fusion/numerics.hpp"

#include <cmath>

namespace l0fusion {

VectorXd least_squares(const MatrixXd& A, const VectorXd& y) {
    if (A.cols() == 0) return VectorXd();
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    return cod.solve(y);
}

double least_squares_rss(const MatrixXd& A, const VectorXd& y) {
    if (A.cols() == 0) return y.squaredNorm();
    const VectorXd b = least_squares(A, y);
    return (y - A * b).squaredNorm();
}

double lipschitz_bound(const MatrixXd& W) {
    const Eigen::Index m = W.cols();
    if (m == 0 || W.isZero(0.0)) return 1e-12;

    const MatrixXd G = W.transpose() * W;

    // Deterministic start: all-ones with index-dependent offsets.
    VectorXd v(m);
    for (Eigen::Index i = 0; i < m; ++i)
        v[i] = 1.0 + 1e-3 * static_cast<double>(i + 1) / static_cast<double>(m);
    v.normalize();

    double lambda = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        VectorXd Gv = G * v;
        const double norm = Gv.norm();
        if (norm == 0.0) return 1e-12;
        const double rayleigh = v.dot(Gv);
        if (iter > 0 && std::abs(rayleigh - lambda) <= 1e-9 * std::abs(rayleigh)) {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
        v = Gv / norm;
    }
    return std::max(2.0 * lambda * (1.0 + 1e-4), 1e-12);
}

double lipschitz_bound(const Dataset& data) {
    MatrixXd W(data.n(), data.p() + data.q());
    W.leftCols(data.p()) = data.X;
    if (data.q() > 0) W.rightCols(data.q()) = data.Z;
    return lipschitz_bound(W);
}

}  // namespace l0fusion
