#pragma once

#include "kwidth/core.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>

namespace kwidth {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, mass-orthonormal
};

/// Lowest `count` eigenpairs of A x = lambda diag(mass) x restricted to the
/// mass-orthogonal complement of span(deflation). A is symmetric positive
/// semidefinite and its kernel must lie inside span(deflation).
///
/// Dense path: reduce to the complement with a Householder basis and call the
/// symmetric tridiagonal QR solver.
EigenPairs dense_lowest_eigenpairs(const Eigen::MatrixXd& a, const Eigen::VectorXd& mass,
                                   const Eigen::MatrixXd& deflation, Eigen::Index count);

/// Convergence measure of the subspace iteration for a mass-unit Ritz pair (theta, x).
enum class ResidualNorm {
    /// ||x - (theta + shift) (A + shift M)^{-1} M x||_M, relative to theta by
    /// construction. Only reachable when the solve is accurate to cond(A)^0.
    ShiftInvert,
    /// Normwise backward error ||G^T G x - theta M x||_{M^-1} / (||G|| ||G x||).
    Backward,
};

/// (A + shift*M)^{-1} applied to the columns of its argument. Components along
/// the deflation space in the result are ignored.
using ShiftedSolve = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

/// Block subspace iteration on (A + shift M)^{-1} M for A = G^T G with
/// Rayleigh-Ritz in Gram form. Converged when every wanted pair has residual
/// <= tol in the chosen measure. Throws EigenFailure after max_iterations.
EigenPairs subspace_lowest_eigenpairs(const SparseMatrix& g, const Eigen::VectorXd& mass,
                                      const Eigen::MatrixXd& deflation, Eigen::Index count, double shift,
                                      const ShiftedSolve& solve, ResidualNorm norm = ResidualNorm::ShiftInvert,
                                      double tol = 1e-10, int max_iterations = 2000);

/// Iterative path for A = G^T G: block shift-invert subspace iteration with
/// the solve supplied by a sparse LDL^T factorisation of A + shift*M.
EigenPairs sparse_lowest_eigenpairs(const SparseMatrix& g, const Eigen::VectorXd& mass,
                                    const Eigen::MatrixXd& deflation, Eigen::Index count, double shift,
                                    ResidualNorm norm = ResidualNorm::ShiftInvert, double tol = 1e-10,
                                    int max_iterations = 2000);

/// Orthonormal columns spanning span(x) (Euclidean), via Householder QR.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& x);

/// Result of a supremum-distance query over an ellipsoid {u : ||G u|| <= 1}.
struct SupDistance {
    ExtendedReal distance = ExtendedReal::finite(0.0);
    /// Maximising ellipsoid member (finite case), or a kernel direction of G
    /// that the subspace misses (infinite case). Euclidean coordinates.
    Eigen::VectorXd direction;
};

/// Factorisation of a full-row-rank map G (r x n, r < n) used to evaluate
/// sup over {||G u|| <= 1} of dist(u, S) for many subspaces S.
///
/// With G^T = Q R (Q = [Q_range | Q_kernel]), every u orthogonal to ker G is
/// Q_range R^{-T} z and ||G u|| = ||z||, so the supremum is the largest
/// singular value of (I - P_S) Q_range R^{-T}. This is the Cholesky reduction
/// of the generalised eigenproblem max u^T (I - P_S) u s.t. u^T G^T G u = 1,
/// with the Cholesky factor taken from the QR factorisation.
class EllipsoidDistanceOracle {
public:
    explicit EllipsoidDistanceOracle(const Eigen::MatrixXd& g);

    /// s: Euclidean-orthonormal columns. Infinite when ker G is not inside span(s)
    /// (containment residual above kernel_tol).
    [[nodiscard]] SupDistance evaluate(const Eigen::MatrixXd& s, double kernel_tol = 1e-8) const;

    [[nodiscard]] const Eigen::MatrixXd& kernel_basis() const { return kernel_; }
    [[nodiscard]] const Eigen::MatrixXd& range_basis() const { return range_; }
    /// Q_range R^{-T}: G (lift z) = z for every z.
    [[nodiscard]] const Eigen::MatrixXd& lift() const { return lift_; }

private:
    Eigen::MatrixXd range_;   // n x r
    Eigen::MatrixXd kernel_;  // n x (n - r)
    Eigen::MatrixXd lift_;    // Q_range R^{-T}, n x r
};

}  // namespace kwidth
