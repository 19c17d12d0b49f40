#pragma once

// Discrete operator algebra on the unit square.
//
// Nodes (i, j), x = i*h, y = j*h, h = 1/(m-1), are stored row-major at
// j*m + i. A symbol of degree 2p maps xi^2 -> D_xx and eta^2 -> D_yy (second
// differences divided by h^2), so L maps all m^2 nodes to interior(p), the
// nodes at offset >= p from every edge. Both spaces carry the uniform weight
// h^2, which makes the transpose the adjoint.
//
// Positive spectra are indexed from 1 and exclude the kernel of L.

#include "kwidth/core.hpp"
#include "kwidth/kernels.hpp"
#include "kwidth/linalg.hpp"
#include "kwidth/symbols.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace kwidth::elliptic {

class RectGrid {
public:
    explicit RectGrid(int m);

    [[nodiscard]] int m() const { return m_; }
    [[nodiscard]] double h() const { return h_; }
    [[nodiscard]] int nodes() const { return m_ * m_; }
    [[nodiscard]] int index(int i, int j) const { return j * m_ + i; }
    [[nodiscard]] double coord(int i) const { return i * h_; }
    /// Nodes at offset >= p from every edge. Throws GridTooCoarse unless m >= 2p + 3.
    [[nodiscard]] NodeWindow interior(int p) const;
    /// Discrete L2 inner product with weight h^2.
    [[nodiscard]] double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    [[nodiscard]] double norm(const Eigen::VectorXd& u) const;
    /// Samples f(x, y) at every node.
    [[nodiscard]] Eigen::VectorXd sample(const std::function<double(double, double)>& f) const;

private:
    int m_;
    double h_;
};

/// Stencil of a constant-coefficient symbol with even exponents, unscaled
/// (multiply by h^-deg). Throws OddSymbol.
Stencil2D symbol_stencil(const Polynomial2& symbol);

struct EllipticOperator2D {
    int p;
    Polynomial2 symbol;
    RectGrid grid;
    Stencil2D stencil;  // unscaled
    double h_scale;     // h^{-2p}
    NodeWindow window;  // interior(p)
    SparseMatrix matrix;  // |interior| x m^2, equal to h_scale * stencil

    [[nodiscard]] int interior_count() const { return static_cast<int>(window.count()); }
    /// L u through the OpenMP stencil kernel.
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
    /// L^T w through the OpenMP stencil kernel.
    [[nodiscard]] Eigen::VectorXd apply_transpose(const Eigen::VectorXd& w) const;
    /// Full-grid indices of the interior nodes, in window order.
    [[nodiscard]] std::vector<int> interior_nodes() const;
};

/// Throws OddSymbol, NotHomogeneous (including deg != 2p), NotElliptic, GridTooCoarse.
EllipticOperator2D assemble(const Polynomial2& symbol, int p, const RectGrid& grid);

/// Values on the boundary band (the nodes outside interior(width)); the
/// entries at interior nodes are ignored.
struct BoundaryData {
    int width = 1;
    Eigen::VectorXd values;  // full grid

    static BoundaryData zero(const RectGrid& grid, int width);
    static BoundaryData sample(const RectGrid& grid, int width, const std::function<double(double, double)>& f);
};

/// u with L u = rhs on interior(p) and u = boundary on the band. Throws
/// SingularSystem if the interior block cannot be factorised and
/// ResidualTooLarge if the solve misses 1e-10 relative.
Eigen::VectorXd solve_dirichlet(const EllipticOperator2D& op, const Eigen::VectorXd& rhs, const BoundaryData& boundary);

struct ClampedSpectrum {
    Eigen::VectorXd mu;   // ascending, all positive
    Eigen::MatrixXd phi;  // |interior| x count, orthonormal with weight h^2
};

/// Lowest eigenpairs of L L^T on interior(p). Dense for small interiors,
/// shift-invert subspace iteration otherwise. Throws EigenFailure.
ClampedSpectrum clamped_spectrum(const EllipticOperator2D& op, int count);

struct Spectrum2D {
    int p = 0;
    int m = 0;
    double h = 0.0;
    Eigen::MatrixXd kernel_basis;  // m^2 x K, orthonormal; empty when not requested
    Eigen::VectorXd lambda;        // positive eigenvalues, ascending
    Eigen::MatrixXd psi;           // m^2 x count, orthonormal, orthogonal to ker L
    Eigen::MatrixXd phi;           // |interior| x count, phi_k = L psi_k

    [[nodiscard]] double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return h * h * u.dot(v); }
};

/// psi_k = L^T phihat_k / ||.|| with L L^T phihat_k = phi_k. Small grids go
/// through a Householder QR of L^T (which also yields the kernel basis),
/// larger ones through a sparse LDL^T of L L^T. Throws ResidualTooLarge when
/// ||L^T L psi - lambda psi|| > 1e-8 ||L|| ||L psi||.
Spectrum2D lift_eigenfunctions(const EllipticOperator2D& op, const ClampedSpectrum& clamped, bool with_kernel = true);

/// Orthonormal basis of ker L (dense QR, m^2 x (m^2 - |interior|)).
Eigen::MatrixXd kernel_basis(const EllipticOperator2D& op);

struct GreenCheck {
    double identity_deviation;  // max |<L psi, L v> - lambda <psi, v>| / (lambda ||psi|| ||v||)
    double orthogonality;       // max |<psi, v>| / (||psi|| ||v||)
    [[nodiscard]] double max_deviation() const { return std::max(identity_deviation, orthogonality); }
};

/// Random kernel elements v against random lifted psi_k, using op.matrix for L.
GreenCheck green_orthogonality_check(const EllipticOperator2D& op, const Spectrum2D& spectrum, int trials,
                                     CounterRng& rng);

}  // namespace kwidth::elliptic
