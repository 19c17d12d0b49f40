#include "kwidth/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace kwidth {

namespace {

// Removes the mass-weighted components along the (mass-orthonormal) deflation columns.
void deflate(Eigen::MatrixXd& x, const Eigen::VectorXd& mass, const Eigen::MatrixXd& deflation) {
    if (deflation.cols() == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        x -= deflation * (deflation.transpose() * (mass.asDiagonal() * x));
    }
}

// Mass-orthonormalise the columns of x via QR of M^{1/2} x.
Eigen::MatrixXd mass_orthonormalise(const Eigen::MatrixXd& x, const Eigen::VectorXd& sqrt_mass) {
    Eigen::MatrixXd scaled = sqrt_mass.asDiagonal() * x;
    Eigen::MatrixXd q = orthonormal_basis(scaled);
    return sqrt_mass.cwiseInverse().asDiagonal() * q;
}

}  // namespace

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& x) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
    return q;
}

EigenPairs dense_lowest_eigenpairs(const Eigen::MatrixXd& a, const Eigen::VectorXd& mass,
                                   const Eigen::MatrixXd& deflation, Eigen::Index count) {
    const Eigen::Index n = a.rows();
    const Eigen::Index k = deflation.cols();
    if (count > n - k) throw Error(ErrorKind::InvalidArgument, "more eigenpairs requested than the complement holds");
    const Eigen::VectorXd sqrt_mass = mass.cwiseSqrt();
    const Eigen::VectorXd inv_sqrt = sqrt_mass.cwiseInverse();

    // Work in Euclidean coordinates y = M^{1/2} x, C = M^{-1/2} A M^{-1/2}.
    Eigen::MatrixXd c = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
    Eigen::MatrixXd complement;
    if (k == 0) {
        complement = Eigen::MatrixXd::Identity(n, n);
    } else {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(sqrt_mass.asDiagonal() * deflation);
        Eigen::MatrixXd full = qr.householderQ();
        complement = full.rightCols(n - k);
    }
    Eigen::MatrixXd reduced = complement.transpose() * c * complement;
    reduced = 0.5 * (reduced + reduced.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "dense symmetric eigensolver failed");

    EigenPairs out;
    out.values = solver.eigenvalues().head(count);
    out.vectors = inv_sqrt.asDiagonal() * (complement * solver.eigenvectors().leftCols(count));
    return out;
}

EigenPairs subspace_lowest_eigenpairs(const SparseMatrix& g, const Eigen::VectorXd& mass,
                                      const Eigen::MatrixXd& deflation, Eigen::Index count, double shift,
                                      const ShiftedSolve& solve, ResidualNorm norm, double tol,
                                      int max_iterations) {
    const Eigen::Index n = g.cols();
    // sqrt(||G M^-1/2||_1 ||G M^-1/2||_inf) bounds the weighted norm of G.
    double g_norm = 0.0;
    if (norm == ResidualNorm::Backward) {
        const SparseMatrix gs = g * mass.cwiseSqrt().cwiseInverse().asDiagonal();
        Eigen::VectorXd rows = Eigen::VectorXd::Zero(gs.rows());
        double col_max = 0.0;
        for (Eigen::Index c = 0; c < gs.outerSize(); ++c) {
            double col = 0.0;
            for (SparseMatrix::InnerIterator it(gs, c); it; ++it) {
                col += std::abs(it.value());
                rows(it.row()) += std::abs(it.value());
            }
            col_max = std::max(col_max, col);
        }
        g_norm = std::sqrt(col_max * rows.maxCoeff());
    }
    const Eigen::Index available = n - deflation.cols();
    if (count > available) throw Error(ErrorKind::InvalidArgument, "more eigenpairs requested than the complement holds");
    const Eigen::Index guard = std::max<Eigen::Index>(8, count / 2);
    const Eigen::Index block = std::min(available, count + guard);

    const Eigen::VectorXd sqrt_mass = mass.cwiseSqrt();
    CounterRng rng(0x5eed5eedULL);
    Eigen::MatrixXd x(n, block);
    for (Eigen::Index j = 0; j < block; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.normal();
    }
    deflate(x, mass, deflation);
    x = mass_orthonormalise(x, sqrt_mass);

    Eigen::VectorXd theta;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::MatrixXd y = solve(mass.asDiagonal() * x);
        // Round-off in the solve leaks into the deflated directions; remove it first.
        deflate(y, mass, deflation);

        if (it > 0) {
            double worst = 0.0;
            if (norm == ResidualNorm::ShiftInvert) {
                for (Eigen::Index j = 0; j < count; ++j) {
                    const Eigen::VectorXd r = x.col(j) - (theta(j) + shift) * y.col(j);
                    worst = std::max(worst, (sqrt_mass.asDiagonal() * r).norm());
                }
            } else {
                const Eigen::MatrixXd gx = g * x.leftCols(count);
                const Eigen::MatrixXd r = Eigen::MatrixXd(g.transpose() * gx) -
                                          mass.asDiagonal() * x.leftCols(count) * theta.head(count).asDiagonal();
                for (Eigen::Index j = 0; j < count; ++j) {
                    const double rn = (sqrt_mass.cwiseInverse().asDiagonal() * r.col(j)).norm();
                    worst = std::max(worst, rn / (g_norm * gx.col(j).norm()));
                }
            }
            if (worst <= tol) {
                EigenPairs out;
                out.values = theta.head(count);
                out.vectors = x.leftCols(count);
                return out;
            }
        }

        y = mass_orthonormalise(y, sqrt_mass);
        // Gram form keeps the projected matrix accurate relative to its own size.
        const Eigen::MatrixXd gy = g * y;
        Eigen::MatrixXd projected = gy.transpose() * gy;
        projected = 0.5 * (projected + projected.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(projected);
        if (ritz.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "Rayleigh-Ritz step failed");
        theta = ritz.eigenvalues();
        x = y * ritz.eigenvectors();
    }
    throw Error(ErrorKind::EigenFailure, "subspace iteration did not reach the residual tolerance");
}

EigenPairs sparse_lowest_eigenpairs(const SparseMatrix& g, const Eigen::VectorXd& mass,
                                    const Eigen::MatrixXd& deflation, Eigen::Index count, double shift,
                                    ResidualNorm norm, double tol, int max_iterations) {
    SparseMatrix shifted = SparseMatrix(g.transpose()) * g;
    for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) += shift * mass(i);
    Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
    if (factor.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "factorisation of the shifted pencil failed");
    auto solve = [&](const Eigen::MatrixXd& rhs) -> Eigen::MatrixXd {
        Eigen::MatrixXd y = factor.solve(rhs);
        if (factor.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "shift-invert solve failed");
        return y;
    };
    return subspace_lowest_eigenpairs(g, mass, deflation, count, shift, solve, norm, tol, max_iterations);
}

EllipsoidDistanceOracle::EllipsoidDistanceOracle(const Eigen::MatrixXd& g) {
    const Eigen::Index r = g.rows();
    const Eigen::Index n = g.cols();
    if (r >= n) throw Error(ErrorKind::InvalidArgument, "ellipsoid map must have a nontrivial kernel");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.transpose());
    Eigen::MatrixXd q = qr.householderQ();
    range_ = q.leftCols(r);
    kernel_ = q.rightCols(n - r);
    Eigen::MatrixXd upper = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < r; ++i) {
        if (upper(i, i) == 0.0) throw Error(ErrorKind::SingularSystem, "ellipsoid map is rank deficient");
    }
    // lift = Q_range R^{-T}  <=>  lift^T = R^{-1} Q_range^T
    Eigen::MatrixXd lift_t = upper.triangularView<Eigen::Upper>().solve(range_.transpose());
    lift_ = lift_t.transpose();
}

SupDistance EllipsoidDistanceOracle::evaluate(const Eigen::MatrixXd& s, double kernel_tol) const {
    SupDistance out;
    auto project_out = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
        if (s.cols() == 0) return v;
        Eigen::MatrixXd w = v - s * (s.transpose() * v);
        return w - s * (s.transpose() * w);
    };

    if (kernel_.cols() > 0) {
        Eigen::MatrixXd miss = project_out(kernel_);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(miss.transpose() * miss);
        const Eigen::Index top = es.eigenvalues().size() - 1;
        const double worst = std::sqrt(std::max(0.0, es.eigenvalues()(top)));
        if (worst > kernel_tol) {
            out.distance = ExtendedReal::infinity();
            out.direction = kernel_ * es.eigenvectors().col(top);
            return out;
        }
    }

    Eigen::MatrixXd residual = project_out(lift_);
    Eigen::MatrixXd gram = residual.transpose() * residual;
    gram = 0.5 * (gram + gram.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "oracle eigensolver failed");
    const Eigen::Index top = es.eigenvalues().size() - 1;
    out.distance = ExtendedReal::finite(std::sqrt(std::max(0.0, es.eigenvalues()(top))));
    out.direction = lift_ * es.eigenvectors().col(top);
    return out;
}

}  // namespace kwidth
