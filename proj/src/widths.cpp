#include "kwidth/widths.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kwidth::widths {

namespace {

Eigen::VectorXd random_normal(CounterRng& rng, Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
    return v;
}

void require_compatible(const SubspaceBasis& s, Eigen::Index size) {
    if (s.columns.rows() != size || s.sqrt_weight.size() != size) {
        throw Error(ErrorKind::InvalidArgument, "subspace and field sizes differ");
    }
}

// Fourth-order probe for a second-order factor: xi^2 -> D_xx, eta^2 -> D_yy.
Stencil2D probe_stencil(const Polynomial2& symbol) {
    if (symbol.degree() != 2 || !symbol.is_homogeneous()) {
        throw Error(ErrorKind::InvalidArgument, "first-kind factors must be second order");
    }
    if (sign(symbol.coeff(1, 1)) != 0) throw Error(ErrorKind::OddSymbol, "mixed term in factor symbol");
    const double cx = symbol.coeff(2, 0).get_d();
    const double cy = symbol.coeff(0, 2).get_d();
    return cx * Stencil2D::second_difference_x4() + cy * Stencil2D::second_difference_y4();
}

}  // namespace

Ellipsoid::Ellipsoid(Eigen::MatrixXd g, Eigen::VectorXd sqrt_weight)
    : g_(std::move(g)), sqrt_weight_(std::move(sqrt_weight)) {
    if (g_.cols() != sqrt_weight_.size()) throw Error(ErrorKind::InvalidArgument, "weight size differs from map");
    if ((sqrt_weight_.array() <= 0.0).any()) throw Error(ErrorKind::NonPositiveWeight, "weights must be positive");
    oracle_ = std::make_shared<const EllipsoidDistanceOracle>(g_);
}

Ellipsoid Ellipsoid::from_operator(const elliptic::EllipticOperator2D& op) {
    const double h = op.grid.h();
    return Ellipsoid(Eigen::MatrixXd(op.matrix), Eigen::VectorXd::Constant(op.grid.nodes(), h));
}

Ellipsoid Ellipsoid::from_derivative(int p, int n) {
    const spectral::DerivativeMap b = spectral::derivative_map(p, n);
    const Eigen::VectorXd root = spectral::trapezoid_mass(n).cwiseSqrt();
    Eigen::MatrixXd g = std::sqrt(b.h) * Eigen::MatrixXd(b.matrix);
    g = g * root.cwiseInverse().asDiagonal();
    return Ellipsoid(std::move(g), root);
}

Membership membership(const Ellipsoid& e, const Eigen::VectorXd& u) {
    const double norm = (e.map() * e.to_euclidean(u)).norm();
    return {norm, norm <= 1.0 + 1e-12};
}

Eigen::VectorXd sample_member(const Ellipsoid& e, CounterRng& rng, double energy, double kernel_scale) {
    const auto& oracle = e.oracle();
    Eigen::VectorXd z = random_normal(rng, oracle.lift().cols());
    z *= std::sqrt(energy) / z.norm();
    Eigen::VectorXd y = oracle.lift() * z;
    if (oracle.kernel_basis().cols() > 0 && kernel_scale != 0.0) {
        Eigen::VectorXd c = random_normal(rng, oracle.kernel_basis().cols());
        y += oracle.kernel_basis() * (kernel_scale / c.norm() * c);
    }
    return e.to_field(y);
}

std::string to_string(SubspaceLabel label) {
    switch (label) {
        case SubspaceLabel::KernelSpan: return "kernel";
        case SubspaceLabel::LeadingModes: return "leading_modes";
        case SubspaceLabel::KernelPlusModes: return "kernel_plus_modes";
        case SubspaceLabel::FirstKind: return "first_kind";
        case SubspaceLabel::Generic: return "generic";
    }
    return "generic";
}

SubspaceBasis SubspaceBasis::orthonormalize(const Eigen::MatrixXd& fields, const Eigen::VectorXd& sqrt_weight,
                                            SubspaceLabel label) {
    if (fields.rows() != sqrt_weight.size()) throw Error(ErrorKind::InvalidArgument, "field size differs from weight");
    SubspaceBasis out;
    out.sqrt_weight = sqrt_weight;
    out.label = label;
    if (fields.cols() == 0) {
        out.columns.resize(fields.rows(), 0);
        return out;
    }
    const Eigen::MatrixXd q = orthonormal_basis(sqrt_weight.asDiagonal() * fields);
    out.columns = sqrt_weight.cwiseInverse().asDiagonal() * q;
    return out;
}

double SubspaceBasis::gram_deviation() const {
    const Eigen::MatrixXd e = euclidean();
    const Eigen::MatrixXd gram = e.transpose() * e;
    return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

SubspaceBasis harmonic_subspace(const elliptic::Spectrum2D& spectrum, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "N must be nonnegative");
    if (N > spectrum.psi.cols()) throw Error(ErrorKind::InsufficientSpectrum, "spectrum has fewer than N modes");
    if (spectrum.kernel_basis.cols() == 0) throw Error(ErrorKind::InvalidArgument, "spectrum carries no kernel basis");
    SubspaceBasis out;
    out.columns.resize(spectrum.kernel_basis.rows(), spectrum.kernel_basis.cols() + N);
    out.columns << spectrum.kernel_basis, spectrum.psi.leftCols(N);
    out.sqrt_weight = Eigen::VectorXd::Constant(out.columns.rows(), spectrum.h);
    out.label = N == 0 ? SubspaceLabel::KernelSpan : SubspaceLabel::KernelPlusModes;
    return out;
}

SubspaceBasis leading_modes(const spectral::Spectrum1D& spectrum, int N) {
    if (N < 0 || N > spectrum.count()) throw Error(ErrorKind::InsufficientSpectrum, "spectrum has fewer than N modes");
    SubspaceBasis out;
    out.columns = spectrum.vectors.leftCols(N);
    out.sqrt_weight = spectrum.mass.cwiseSqrt();
    out.label = SubspaceLabel::LeadingModes;
    return out;
}

SupDistance brute_force_distance(const SubspaceBasis& subspace, const Ellipsoid& e) {
    require_compatible(subspace, e.sqrt_weight().size());
    SupDistance d = e.oracle().evaluate(subspace.euclidean());
    d.direction = e.to_field(d.direction);
    return d;
}

double point_distance(const SubspaceBasis& subspace, const Eigen::VectorXd& u) {
    require_compatible(subspace, u.size());
    const Eigen::MatrixXd s = subspace.euclidean();
    const Eigen::VectorXd y = subspace.sqrt_weight.cwiseProduct(u);
    Eigen::VectorXd r = y - s * (s.transpose() * y);
    r -= s * (s.transpose() * r);
    return r.norm();
}

double subspace_sup_distance(const SubspaceBasis& a, const SubspaceBasis& b) {
    require_compatible(a, b.columns.rows());
    if (b.dim() == 0) return 0.0;
    const Eigen::MatrixXd ea = a.euclidean();
    const Eigen::MatrixXd eb = b.euclidean();
    Eigen::MatrixXd c = eb;
    if (a.dim() > 0) {
        c -= ea * (ea.transpose() * eb);
        c -= ea * (ea.transpose() * c);
    }
    Eigen::MatrixXd gram = c.transpose() * c;
    gram = 0.5 * (gram + gram.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "principal-angle eigensolver failed");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

AxesExpansion principal_axes(const elliptic::Spectrum2D& spectrum, const Eigen::VectorXd& f) {
    const double w = spectrum.h * spectrum.h;
    AxesExpansion out;
    out.kernel_coeffs = w * (spectrum.kernel_basis.transpose() * f);
    out.axis_coeffs = w * (spectrum.psi.transpose() * f);
    out.energy = spectrum.lambda.dot(out.axis_coeffs.cwiseAbs2());
    out.member = out.energy <= 1.0 + 1e-12;
    return out;
}

Eigen::VectorXd reconstruct(const elliptic::Spectrum2D& spectrum, const AxesExpansion& expansion) {
    return spectrum.kernel_basis * expansion.kernel_coeffs + spectrum.psi * expansion.axis_coeffs;
}

WidthReport2D harmonic_width(const elliptic::Spectrum2D& spectrum, const Ellipsoid& e, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "N must be nonnegative");
    if (N + 1 > spectrum.lambda.size()) {
        throw Error(ErrorKind::InsufficientSpectrum,
                    "harmonic width N=" + std::to_string(N) + " needs " + std::to_string(N + 1) + " modes");
    }
    WidthReport2D r;
    r.p = spectrum.p;
    r.N = N;
    r.m = spectrum.m;
    r.lambda_next = spectrum.lambda(N);
    r.jackson_bound = 1.0 / std::sqrt(r.lambda_next);
    r.value = ExtendedReal::finite(r.jackson_bound);
    r.oracle_value = brute_force_distance(harmonic_subspace(spectrum, N), e).distance;
    return r;
}

TailError jackson_tail(const elliptic::Spectrum2D& spectrum, const Eigen::VectorXd& f, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "N must be nonnegative");
    if (N + 1 > spectrum.lambda.size()) throw Error(ErrorKind::InsufficientSpectrum, "spectrum too short for N");
    return {point_distance(harmonic_subspace(spectrum, N), f), 1.0 / std::sqrt(spectrum.lambda(N))};
}

void FirstKindSpace::validate() const {
    const int n = grid.nodes();
    if (weights.size() != factors.size() || factors.empty()) {
        throw Error(ErrorKind::InvalidArgument, "need one weight per factor");
    }
    if (static_cast<int>(partition.size()) != n) throw Error(ErrorKind::InvalidArgument, "partition size differs from grid");
    if (!excluded.empty() && static_cast<int>(excluded.size()) != n) {
        throw Error(ErrorKind::InvalidArgument, "exclusion mask size differs from grid");
    }
    const int labels = *std::max_element(partition.begin(), partition.end()) + 1;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const Eigen::VectorXd& rho = weights[j];
        if (rho.size() != n) throw Error(ErrorKind::InvalidArgument, "weight size differs from grid");
        std::vector<int> seen(static_cast<std::size_t>(std::max(labels, 0)), 0);
        for (int i = 0; i < n; ++i) {
            const int label = partition[static_cast<std::size_t>(i)];
            if (label < 0) continue;
            const double v = rho(i);
            const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
            int& first = seen[static_cast<std::size_t>(label)];
            if (s == 0 || !std::isfinite(v) || (first != 0 && first != s)) {
                throw Error(ErrorKind::WeightVanishes, "weight " + std::to_string(j + 1) +
                                                           " vanishes or changes sign off the interface at node " +
                                                           std::to_string(i));
            }
            first = s;
        }
    }
}

FirstKindSpace polyharmonic_first_kind(const elliptic::RectGrid& grid, int M) {
    if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be positive");
    const Polynomial2 laplace = Polynomial2::parse("2,0:1 0,2:1");
    FirstKindSpace s{grid, {}, {}, std::vector<int>(static_cast<std::size_t>(grid.nodes()), 0), {}};
    for (int j = 0; j < M; ++j) {
        s.factors.push_back(elliptic::assemble(laplace, 1, grid));
        s.weights.push_back(Eigen::VectorXd::Ones(grid.nodes()));
    }
    return s;
}

FirstKindSpace ball_first_kind(const elliptic::RectGrid& grid, const BallParams& params) {
    if (params.radius <= 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    FirstKindSpace s = polyharmonic_first_kind(grid, 2);
    const double h = grid.h();
    s.excluded.assign(static_cast<std::size_t>(grid.nodes()), 0);
    for (int j = 0; j < grid.m(); ++j) {
        for (int i = 0; i < grid.m(); ++i) {
            const int k = grid.index(i, j);
            const double r = std::hypot(grid.coord(i) - params.cx, grid.coord(j) - params.cy);
            s.weights[1](k) = 1.0 - r / params.radius;
            const auto idx = static_cast<std::size_t>(k);
            if (std::abs(r - params.radius) <= h) {
                s.partition[idx] = -1;
            } else {
                s.partition[idx] = r < params.radius ? 0 : 1;
            }
            if (r < params.apex_radius) s.excluded[idx] = 1;
        }
    }
    return s;
}

DirectSolution direct_solution(const FirstKindSpace& space, const std::vector<elliptic::BoundaryData>& data,
                               const ResidualProbe& probe) {
    space.validate();
    if (data.size() != space.factors.size()) throw Error(ErrorKind::InvalidArgument, "need boundary data per factor");
    const auto M = space.factors.size();
    Eigen::VectorXd w;
    for (std::size_t j = M; j-- > 0;) {
        const elliptic::EllipticOperator2D& q = space.factors[j];
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q.interior_count());
        if (j + 1 < M) {
            const Eigen::VectorXd source = space.weights[j + 1].cwiseProduct(w);
            const std::vector<int> nodes = q.interior_nodes();
            for (std::size_t k = 0; k < nodes.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = source(nodes[k]);
        }
        w = elliptic::solve_dirichlet(q, rhs, data[j]);
    }
    DirectSolution out;
    out.u = space.weights[0].cwiseProduct(w);
    out.residual = composed_residual(space, out.u, probe, &out.measured);
    return out;
}

double composed_residual(const FirstKindSpace& space, const Eigen::VectorXd& u, const ResidualProbe& probe,
                         int* measured) {
    const elliptic::RectGrid& grid = space.grid;
    const int m = grid.m();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (u.size() != grid.nodes()) throw Error(ErrorKind::InvalidArgument, "field size differs from grid");
    Eigen::VectorXd g = u;
    for (std::size_t j = 0; j < space.factors.size(); ++j) {
        const Eigen::VectorXd& rho = space.weights[j];
        for (Eigen::Index k = 0; k < g.size(); ++k) {
            g(k) = std::abs(rho(k)) > probe.weight_floor ? g(k) / rho(k) : nan;
        }
        const Stencil2D s = probe_stencil(space.factors[j].symbol);
        const int reach = s.reach();
        if (m < 2 * reach + 1) throw Error(ErrorKind::GridTooCoarse, "grid too coarse for the residual probe");
        const NodeWindow win{m, reach, m - 1 - reach};
        std::vector<double> packed(win.count());
        kernels::parallel::apply(s, win, 1.0 / (grid.h() * grid.h()), std::span<const double>(g.data(), g.size()),
                                 packed);
        Eigen::VectorXd next = Eigen::VectorXd::Constant(g.size(), nan);
        for (int y = 0; y < win.side(); ++y) {
            for (int x = 0; x < win.side(); ++x) {
                next(grid.index(win.lo + x, win.lo + y)) = packed[static_cast<std::size_t>(y * win.side() + x)];
            }
        }
        g.swap(next);
    }
    double worst = 0.0;
    int count = 0;
    const double tol = 1e-12;
    for (int y = 0; y < m; ++y) {
        for (int x = 0; x < m; ++x) {
            const double gap = std::min({grid.coord(x), grid.coord(y), 1.0 - grid.coord(x), 1.0 - grid.coord(y)});
            if (gap < probe.margin - tol) continue;
            const int k = grid.index(x, y);
            if (!space.excluded.empty() && space.excluded[static_cast<std::size_t>(k)]) continue;
            if (!std::isfinite(g(k))) continue;
            worst = std::max(worst, std::abs(g(k)));
            ++count;
        }
    }
    if (count == 0) throw Error(ErrorKind::GridTooCoarse, "no nodes left to measure the composed residual");
    if (measured != nullptr) *measured = count;
    return worst;
}

}  // namespace kwidth::widths
