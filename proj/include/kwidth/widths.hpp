#pragma once

// Ellipsoids {u : ||G u|| <= 1}, subspace distances and direct solutions.
//
// Fields live in a weighted L2 space; sqrt_weight maps them to Euclidean
// coordinates y = sqrt_weight .* u in which the oracle and all projections
// work. In 2D the weight is h^2 (so G = L); in 1D it is the trapezoid mass
// and G = (h B) M^{-1/2} on derivative samples weighted by h.

#include "kwidth/core.hpp"
#include "kwidth/elliptic2d.hpp"
#include "kwidth/linalg.hpp"
#include "kwidth/spectral1d.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

namespace kwidth::widths {

class Ellipsoid {
public:
    Ellipsoid(Eigen::MatrixXd g, Eigen::VectorXd sqrt_weight);
    static Ellipsoid from_operator(const elliptic::EllipticOperator2D& op);
    /// K_p on n uniform nodes of [0, 1].
    static Ellipsoid from_derivative(int p, int n);

    [[nodiscard]] const Eigen::MatrixXd& map() const { return g_; }
    [[nodiscard]] const Eigen::VectorXd& sqrt_weight() const { return sqrt_weight_; }
    [[nodiscard]] const EllipsoidDistanceOracle& oracle() const { return *oracle_; }
    [[nodiscard]] Eigen::VectorXd to_euclidean(const Eigen::VectorXd& u) const { return sqrt_weight_.cwiseProduct(u); }
    [[nodiscard]] Eigen::VectorXd to_field(const Eigen::VectorXd& y) const { return y.cwiseQuotient(sqrt_weight_); }

private:
    Eigen::MatrixXd g_;
    Eigen::VectorXd sqrt_weight_;
    std::shared_ptr<const EllipsoidDistanceOracle> oracle_;
};

struct Membership {
    double norm;
    bool member;  // norm <= 1 + 1e-12
};

Membership membership(const Ellipsoid& e, const Eigen::VectorXd& u);

/// Random member with ||G u||^2 = energy and a random kernel part of
/// Euclidean size kernel_scale. Covers every mode, not only computed ones.
Eigen::VectorXd sample_member(const Ellipsoid& e, CounterRng& rng, double energy, double kernel_scale = 1.0);

enum class SubspaceLabel { KernelSpan, LeadingModes, KernelPlusModes, FirstKind, Generic };
std::string to_string(SubspaceLabel label);

/// Columns orthonormal in the weighted inner product.
struct SubspaceBasis {
    Eigen::MatrixXd columns;
    Eigen::VectorXd sqrt_weight;
    SubspaceLabel label = SubspaceLabel::Generic;

    /// Householder QR in Euclidean coordinates; the span is kept, the basis is not.
    static SubspaceBasis orthonormalize(const Eigen::MatrixXd& fields, const Eigen::VectorXd& sqrt_weight,
                                        SubspaceLabel label);
    [[nodiscard]] Eigen::MatrixXd euclidean() const { return sqrt_weight.asDiagonal() * columns; }
    [[nodiscard]] Eigen::Index dim() const { return columns.cols(); }
    /// max |Gram - I|.
    [[nodiscard]] double gram_deviation() const;
};

/// Kernel basis of L followed by psi_1..psi_N.
SubspaceBasis harmonic_subspace(const elliptic::Spectrum2D& spectrum, int N);
/// First N eigenvectors of a 1D spectrum (the zero block included).
SubspaceBasis leading_modes(const spectral::Spectrum1D& spectrum, int N);

/// sup over the ellipsoid of dist(u, span S), exact via the oracle; the
/// direction is returned as a field. Infinite when ker G is not inside S.
SupDistance brute_force_distance(const SubspaceBasis& subspace, const Ellipsoid& e);

/// ||u - projection of u onto S|| in the weighted norm.
double point_distance(const SubspaceBasis& subspace, const Eigen::VectorXd& u);

/// sup over unit u in span B of dist(u, span A): the largest principal-angle
/// sine, from the eigenvalues of the Gram matrix of B - A A^T B.
double subspace_sup_distance(const SubspaceBasis& a, const SubspaceBasis& b);

struct AxesExpansion {
    Eigen::VectorXd kernel_coeffs;
    Eigen::VectorXd axis_coeffs;
    double energy;  // sum lambda_j f_j^2
    bool member;    // energy <= 1 + 1e-12
};

/// Coefficients of f in kernel_basis and psi. Exact expansion needs the full
/// positive spectrum (count = |interior|).
AxesExpansion principal_axes(const elliptic::Spectrum2D& spectrum, const Eigen::VectorXd& f);
Eigen::VectorXd reconstruct(const elliptic::Spectrum2D& spectrum, const AxesExpansion& expansion);

struct WidthReport2D {
    int p = 0;
    int N = 0;
    int m = 0;
    ExtendedReal value = ExtendedReal::infinity();
    double jackson_bound = 0.0;
    ExtendedReal oracle_value = ExtendedReal::infinity();
    double lambda_next = 0.0;
};

/// value = jackson_bound = 1/sqrt(lambda_{N+1}) (positive indexing),
/// oracle_value = brute_force_distance(kernel + psi_1..psi_N).
/// Throws InsufficientSpectrum.
WidthReport2D harmonic_width(const elliptic::Spectrum2D& spectrum, const Ellipsoid& e, int N);

struct TailError {
    double residual;
    double bound;
};

/// Distance of f to kernel + psi_1..psi_N against 1/sqrt(lambda_{N+1}).
TailError jackson_tail(const elliptic::Spectrum2D& spectrum, const Eigen::VectorXd& f, int N);

// ---- First-Kind spaces ------------------------------------------------------

/// P_2M = Q_M (1/rho_M) ... Q_1 (1/rho_1) with second-order factors Q_j.
struct FirstKindSpace {
    elliptic::RectGrid grid;
    std::vector<elliptic::EllipticOperator2D> factors;
    std::vector<Eigen::VectorXd> weights;  // full grid
    /// Subdomain label per node; -1 marks the interface set Z.
    std::vector<int> partition;
    /// Nodes left out of residual measurement; empty means none.
    std::vector<char> excluded;

    /// Throws WeightVanishes when some rho_j is zero or changes sign inside a
    /// subdomain (off Z).
    void validate() const;
};

/// Q_j = Laplacian, rho_j = 1, one subdomain.
FirstKindSpace polyharmonic_first_kind(const elliptic::RectGrid& grid, int M);

struct BallParams {
    double cx = 0.5;
    double cy = 0.5;
    double radius = 0.35;
    /// Nodes closer than this to the centre are not measured: 1 - |x - c| / r
    /// has a cone point there, so u is not smooth.
    double apex_radius = 0.1;
};

/// M = 2, Q_1 = Q_2 = Laplacian, rho_1 = 1, rho_2 = 1 - |x - c| / radius.
/// rho_2 vanishes on the circle (the interface) and is negative outside it.
FirstKindSpace ball_first_kind(const elliptic::RectGrid& grid, const BallParams& params = {});

struct ResidualProbe {
    double margin = 0.25;       // measure only at distance >= margin from the boundary
    double weight_floor = 0.1;  // skip nodes whose probe touches |rho_j| <= floor
};

struct DirectSolution {
    Eigen::VectorXd u;
    double residual;  // max |P_2M u| over the measured nodes
    int measured;     // number of measured nodes
};

/// u = rho_1 I_1(rho_2 I_2(... rho_M I_M(0; h_M) ...; h_2); h_1) where
/// I_j(f, h) = solve_dirichlet(Q_j, f, h); data = {h_1, ..., h_M}.
DirectSolution direct_solution(const FirstKindSpace& space, const std::vector<elliptic::BoundaryData>& data,
                               const ResidualProbe& probe = {});

/// P_2M u with every Q_j replaced by its fourth-order counterpart. The
/// second-order composition annihilates u exactly, so only a more accurate
/// probe sees the discretisation error.
double composed_residual(const FirstKindSpace& space, const Eigen::VectorXd& u, const ResidualProbe& probe,
                         int* measured = nullptr);

}  // namespace kwidth::widths
