#pragma once

// Discrete Kolmogorov eigenproblem on [0, 1].
//
// With B the p-th divided difference (n - p rows, scaled by h^-p), W = h*I on
// the derivative samples and M the trapezoid mass, the weak form
//   A = B^T W B,   A x = lambda M x
// carries the natural boundary conditions and has a kernel of dimension
// exactly p (sampled polynomials of degree < p).
//
// Indexing: 1D spectra count the zero block, so values(0..p-1) = 0 and
// d_N = 1 / sqrt(values(N)) (zero-based), i.e. 1/sqrt(lambda_{N+1}).

#include "kwidth/core.hpp"
#include "kwidth/linalg.hpp"

#include <Eigen/Dense>

namespace kwidth::spectral {

struct DerivativeMap {
    int p;
    int n;
    double h;
    SparseMatrix matrix;  // (n - p) x n
};

DerivativeMap derivative_map(int p, int n);

/// Trapezoid weights: h/2 at both ends, h inside.
Eigen::VectorXd trapezoid_mass(int n);

/// A = B^T diag(h) B. Throws GridTooCoarse when n < 4p + 4.
SparseMatrix assemble_gram(int p, int n);

/// Orthonormal (mass inner product) basis of sampled polynomials of degree < p.
Eigen::MatrixXd polynomial_kernel(int p, int n);

struct Spectrum1D {
    int p = 0;
    int n = 0;
    double h = 0.0;
    Eigen::VectorXd values;   // ascending, zero block first
    Eigen::MatrixXd vectors;  // n x count, mass-orthonormal
    SparseMatrix gram;
    Eigen::VectorXd mass;

    [[nodiscard]] Eigen::Index count() const { return values.size(); }
    /// <x, y> with the trapezoid mass.
    [[nodiscard]] double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// Lowest `count` eigenpairs. Dense reduction for small grids, block
/// shift-invert subspace iteration otherwise. Throws EigenFailure when the
/// iteration misses the 1e-10 residual.
Spectrum1D solve_spectrum(int p, int n, int count);

struct WidthValue {
    ExtendedReal value = ExtendedReal::infinity();
    int N = 0;
    int p = 0;
};

/// +inf for N < p, else 1/sqrt(lambda_{N+1}). Throws InsufficientSpectrum.
WidthValue kolmogorov_width(const Spectrum1D& spectrum, int N);

struct JacksonResult {
    double residual;  // ||f - projection onto the first N modes||
    double bound;     // 1/sqrt(lambda_{N+1})
    double energy;    // ||B f||^2 = f^T A f
    bool member;      // energy <= 1 + 1e-12
};

/// Requires p <= N < count.
JacksonResult jackson_residual(const Spectrum1D& spectrum, const Eigen::VectorXd& f, int N);

}  // namespace kwidth::spectral
