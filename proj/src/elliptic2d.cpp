#include "kwidth/elliptic2d.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>

namespace kwidth::elliptic {

namespace {

constexpr Eigen::Index dense_interior_limit = 1100;
constexpr int ellipticity_samples = 64;

Stencil2D power(const Stencil2D& s, int k) {
    Stencil2D out = Stencil2D::identity();
    for (int i = 0; i < k; ++i) out = compose(s, out);
    return out;
}

void normalise_signs(Eigen::MatrixXd& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Eigen::Index at = 0;
        v.col(j).cwiseAbs().maxCoeff(&at);
        if (v(at, j) < 0.0) v.col(j) *= -1.0;
    }
}

Eigen::MatrixXd dense_transpose(const EllipticOperator2D& op) {
    return Eigen::MatrixXd(SparseMatrix(op.matrix.transpose()));
}

}  // namespace

RectGrid::RectGrid(int m) : m_(m), h_(m >= 2 ? 1.0 / (m - 1) : 0.0) {
    if (m < 3) throw Error(ErrorKind::GridTooCoarse, "grid needs at least 3 nodes per side");
}

NodeWindow RectGrid::interior(int p) const {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "p must be positive");
    if (m_ < 2 * p + 3) {
        throw Error(ErrorKind::GridTooCoarse,
                    "grid m=" + std::to_string(m_) + " needs m >= 2p+3 = " + std::to_string(2 * p + 3));
    }
    return {m_, p, m_ - 1 - p};
}

double RectGrid::inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return h_ * h_ * u.dot(v); }

double RectGrid::norm(const Eigen::VectorXd& u) const { return h_ * u.norm(); }

Eigen::VectorXd RectGrid::sample(const std::function<double(double, double)>& f) const {
    Eigen::VectorXd v(nodes());
    for (int j = 0; j < m_; ++j) {
        for (int i = 0; i < m_; ++i) v(index(i, j)) = f(coord(i), coord(j));
    }
    return v;
}

Stencil2D symbol_stencil(const Polynomial2& symbol) {
    const Stencil2D dxx = Stencil2D::second_difference_x();
    const Stencil2D dyy = Stencil2D::second_difference_y();
    Stencil2D total;
    for (const auto& [e, c] : symbol.terms()) {
        if (e.a % 2 != 0 || e.b % 2 != 0) {
            throw Error(ErrorKind::OddSymbol, "symbol '" + symbol.to_string() + "' has an odd exponent");
        }
        total = total + c.get_d() * compose(power(dxx, e.a / 2), power(dyy, e.b / 2));
    }
    return total;
}

Eigen::VectorXd EllipticOperator2D::apply(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(window.count()));
    kernels::parallel::apply(stencil, window, h_scale, {u.data(), static_cast<std::size_t>(u.size())},
                             {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

Eigen::VectorXd EllipticOperator2D::apply_transpose(const Eigen::VectorXd& w) const {
    Eigen::VectorXd out(grid.nodes());
    kernels::parallel::apply_transpose(stencil, window, h_scale, {w.data(), static_cast<std::size_t>(w.size())},
                                       {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

std::vector<int> EllipticOperator2D::interior_nodes() const {
    std::vector<int> idx;
    idx.reserve(window.count());
    for (int j = window.lo; j <= window.hi; ++j) {
        for (int i = window.lo; i <= window.hi; ++i) idx.push_back(grid.index(i, j));
    }
    return idx;
}

EllipticOperator2D assemble(const Polynomial2& symbol, int p, const RectGrid& grid) {
    for (const auto& [e, c] : symbol.terms()) {
        if (e.a % 2 != 0 || e.b % 2 != 0) {
            throw Error(ErrorKind::OddSymbol, "symbol '" + symbol.to_string() + "' has an odd exponent");
        }
    }
    if (!symbol.is_homogeneous() || symbol.degree() != 2 * p) {
        throw Error(ErrorKind::NotHomogeneous,
                    "symbol '" + symbol.to_string() + "' is not homogeneous of degree " + std::to_string(2 * p));
    }
    if (!is_strongly_elliptic(symbol, ellipticity_samples).ok) {
        throw Error(ErrorKind::NotElliptic, "symbol '" + symbol.to_string() + "' vanishes on the unit circle");
    }
    const NodeWindow window = grid.interior(p);
    const Stencil2D stencil = symbol_stencil(symbol);
    const double scale = std::pow(grid.h(), -2 * p);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(window.count() * stencil.taps().size());
    int row = 0;
    for (int j = window.lo; j <= window.hi; ++j) {
        for (int i = window.lo; i <= window.hi; ++i, ++row) {
            for (const auto& t : stencil.taps()) {
                triplets.emplace_back(row, grid.index(i + t.dx, j + t.dy), scale * t.weight);
            }
        }
    }
    SparseMatrix matrix(static_cast<Eigen::Index>(window.count()), grid.nodes());
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return {p, symbol, grid, stencil, scale, window, std::move(matrix)};
}

BoundaryData BoundaryData::zero(const RectGrid& grid, int width) {
    return {width, Eigen::VectorXd::Zero(grid.nodes())};
}

BoundaryData BoundaryData::sample(const RectGrid& grid, int width, const std::function<double(double, double)>& f) {
    return {width, grid.sample(f)};
}

Eigen::VectorXd solve_dirichlet(const EllipticOperator2D& op, const Eigen::VectorXd& rhs, const BoundaryData& boundary) {
    const int n = op.grid.nodes();
    if (boundary.width != op.p) throw Error(ErrorKind::InvalidArgument, "boundary band width must equal p");
    if (rhs.size() != op.interior_count() || boundary.values.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "rhs or boundary data has the wrong size");
    }
    const std::vector<int> interior = op.interior_nodes();
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < interior.size(); ++k) slot[static_cast<std::size_t>(interior[k])] = static_cast<int>(k);

    Eigen::VectorXd u = boundary.values;
    for (int idx : interior) u(idx) = 0.0;

    // L_II u_I = rhs - L_IB u_B
    Eigen::VectorXd b = rhs - op.matrix * u;
    std::vector<Eigen::Triplet<double>> triplets;
    for (int col = 0; col < op.matrix.outerSize(); ++col) {
        const int s = slot[static_cast<std::size_t>(col)];
        if (s < 0) continue;
        for (SparseMatrix::InnerIterator it(op.matrix, col); it; ++it) {
            triplets.emplace_back(static_cast<int>(it.row()), s, it.value());
        }
    }
    SparseMatrix lii(op.interior_count(), op.interior_count());
    lii.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(lii);
    if (lu.info() != Eigen::Success) throw Error(ErrorKind::SingularSystem, "interior Dirichlet block is singular");
    const Eigen::VectorXd ui = lu.solve(b);
    if (lu.info() != Eigen::Success) throw Error(ErrorKind::SingularSystem, "Dirichlet solve failed");
    for (std::size_t k = 0; k < interior.size(); ++k) u(interior[k]) = ui(static_cast<Eigen::Index>(k));

    double tap_sum = 0.0;
    for (const auto& t : op.stencil.taps()) tap_sum += std::abs(t.weight);
    const double scale = rhs.cwiseAbs().maxCoeff() + op.h_scale * tap_sum * u.cwiseAbs().maxCoeff();
    const double residual = (op.apply(u) - rhs).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * scale) {
        throw Error(ErrorKind::ResidualTooLarge, "Dirichlet residual " + std::to_string(residual) + " too large");
    }
    return u;
}

ClampedSpectrum clamped_spectrum(const EllipticOperator2D& op, int count) {
    const Eigen::Index ni = op.interior_count();
    if (count < 1 || count > ni) throw Error(ErrorKind::InvalidArgument, "count must lie in [1, |interior|]");
    // Both sides carry the weight h^2, so the eigenproblem is the plain matrix
    // one; the weight only enters the normalisation.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ni);
    const SparseMatrix g = op.matrix.transpose();
    EigenPairs pairs;
    if (ni <= dense_interior_limit) {
        const Eigen::MatrixXd gd(g);
        pairs = dense_lowest_eigenpairs(gd.transpose() * gd, ones, Eigen::MatrixXd(ni, 0), count);
    } else {
        pairs = sparse_lowest_eigenpairs(g, ones, Eigen::MatrixXd(ni, 0), count, 0.0, ResidualNorm::Backward);
    }
    if (!(pairs.values(0) > 0.0)) throw Error(ErrorKind::EigenFailure, "clamped spectrum has a nonpositive eigenvalue");
    ClampedSpectrum out{std::move(pairs.values), pairs.vectors / op.grid.h()};
    normalise_signs(out.phi);
    return out;
}

Eigen::MatrixXd kernel_basis(const EllipticOperator2D& op) {
    const Eigen::MatrixXd lt = dense_transpose(op);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(lt);
    const Eigen::MatrixXd q = qr.householderQ();
    return q.rightCols(lt.rows() - lt.cols()) / op.grid.h();
}

Spectrum2D lift_eigenfunctions(const EllipticOperator2D& op, const ClampedSpectrum& clamped, bool with_kernel) {
    const double h = op.grid.h();
    const Eigen::Index ni = op.interior_count();
    const Eigen::Index count = clamped.mu.size();
    Spectrum2D out;
    out.p = op.p;
    out.m = op.grid.m();
    out.h = h;

    Eigen::MatrixXd raw(op.grid.nodes(), count);
    if (with_kernel || ni <= dense_interior_limit) {
        // L^T = Q R, so L L^T = R^T R and L^T (L L^T)^{-1} phi = Q_range R^{-T} phi.
        const Eigen::MatrixXd lt = dense_transpose(op);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(lt);
        const Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd r = qr.matrixQR().topRows(ni).triangularView<Eigen::Upper>();
        const Eigen::MatrixXd z = r.transpose().triangularView<Eigen::Lower>().solve(clamped.phi);
        raw = q.leftCols(ni) * z;
        // Eigenvector error from the clamped solve is amplified by lambda_j / lambda_k
        // in the residual. One inverse-iteration step (L^T L)^+ through the same
        // factor damps the high modes; ascending orthogonalisation removes the
        // low modes it amplifies.
        const Eigen::MatrixXd w = r.triangularView<Eigen::Upper>().solve(q.leftCols(ni).transpose() * raw);
        raw = q.leftCols(ni) * r.transpose().triangularView<Eigen::Lower>().solve(w);
        for (Eigen::Index k = 0; k < count; ++k) {
            for (int pass = 0; pass < 2; ++pass) {
                for (Eigen::Index j = 0; j < k; ++j) raw.col(k) -= raw.col(j).dot(raw.col(k)) * raw.col(j);
            }
            raw.col(k).normalize();
        }
        if (with_kernel) out.kernel_basis = q.rightCols(lt.rows() - ni) / h;
    } else {
        const SparseMatrix llt = op.matrix * SparseMatrix(op.matrix.transpose());
        Eigen::SimplicialLDLT<SparseMatrix> factor(llt);
        if (factor.info() != Eigen::Success) throw Error(ErrorKind::SingularSystem, "L L^T factorisation failed");
        const Eigen::MatrixXd phihat = factor.solve(clamped.phi);
        raw = op.matrix.transpose() * phihat;
    }

    double tap_sum = 0.0;
    for (const auto& t : op.stencil.taps()) tap_sum += std::abs(t.weight);
    const double l_norm = op.h_scale * tap_sum;  // bounds ||L||_2

    out.lambda.resize(count);
    out.psi.resize(op.grid.nodes(), count);
    out.phi.resize(ni, count);
    for (Eigen::Index k = 0; k < count; ++k) {
        Eigen::VectorXd psi = raw.col(k) / (h * raw.col(k).norm());
        const Eigen::VectorXd lpsi = op.matrix * psi;
        const double lambda = lpsi.squaredNorm() / psi.squaredNorm();
        const Eigen::VectorXd res = op.matrix.transpose() * lpsi - lambda * psi;
        // Backward error of the singular triplet (sqrt(lambda), psi, L psi / sqrt(lambda)).
        if (res.norm() > 1e-8 * l_norm * lpsi.norm()) {
            throw Error(ErrorKind::ResidualTooLarge,
                        "lifted eigenfunction " + std::to_string(k + 1) + " misses the 1e-8 residual");
        }
        out.lambda(k) = lambda;
        out.psi.col(k) = psi;
        out.phi.col(k) = lpsi;
    }
    return out;
}

GreenCheck green_orthogonality_check(const EllipticOperator2D& op, const Spectrum2D& spectrum, int trials,
                                     CounterRng& rng) {
    GreenCheck out{0.0, 0.0};
    const Eigen::Index k_dim = spectrum.kernel_basis.cols();
    const Eigen::Index modes = spectrum.lambda.size();
    if (k_dim == 0 || modes == 0) throw Error(ErrorKind::InvalidArgument, "spectrum lacks a kernel basis or modes");
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd c(k_dim);
        for (Eigen::Index i = 0; i < k_dim; ++i) c(i) = rng.normal();
        const Eigen::VectorXd v = spectrum.kernel_basis * c;
        const auto k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(modes));
        const Eigen::VectorXd psi = spectrum.psi.col(k);
        const double lambda = spectrum.lambda(k);
        const double norms = std::sqrt(spectrum.inner(psi, psi) * spectrum.inner(v, v));
        const double green = spectrum.inner(op.matrix * psi, op.matrix * v);
        const double pairing = spectrum.inner(psi, v);
        out.identity_deviation = std::max(out.identity_deviation, std::abs(green - lambda * pairing) / (lambda * norms));
        out.orthogonality = std::max(out.orthogonality, std::abs(pairing) / norms);
    }
    return out;
}

}  // namespace kwidth::elliptic
