#include "kwidth/spectral1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace kwidth::spectral {

namespace {

constexpr int dense_limit = 700;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Fixes the sign of each column so its largest-magnitude entry is positive.
void normalise_signs(Eigen::MatrixXd& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Eigen::Index at = 0;
        v.col(j).cwiseAbs().maxCoeff(&at);
        if (v(at, j) < 0.0) v.col(j) *= -1.0;
    }
}

// Applies A^+ to r (columns orthogonal to the polynomial kernel) using only
// cumulative sums: A = h B^T B with B = h^-p Delta^p, and each first
// difference Delta (or its transpose) is inverted by a running sum. This
// avoids factorising A, whose condition number grows like n^(2p).
Eigen::MatrixXd gram_pseudo_solve(int p, int n, const Eigen::MatrixXd& r) {
    const double h = 1.0 / (n - 1);
    Eigen::MatrixXd out(n, r.cols());
    std::vector<double> w;
    std::vector<double> next;
    for (Eigen::Index c = 0; c < r.cols(); ++c) {
        // h B^T z = r  <=>  (Delta^T)^p z = h^(p-1) r
        const double scale = std::pow(h, p - 1);
        w.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = scale * r(i, c);
        for (int level = 0; level < p; ++level) {
            // Delta^T v = w with v one shorter: v_i = -sum_{j <= i} w_j; the last
            // equation is the compatibility condition and is dropped.
            next.assign(w.size() - 1, 0.0);
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                acc -= w[i];
                next[i] = acc;
            }
            w.swap(next);
        }
        // B y = z  <=>  Delta^p y = h^p z, inverted by p running sums from zero.
        const double lift = std::pow(h, p);
        for (auto& v : w) v *= lift;
        for (int level = 0; level < p; ++level) {
            next.assign(w.size() + 1, 0.0);
            for (std::size_t i = 0; i < w.size(); ++i) next[i + 1] = next[i] + w[i];
            w.swap(next);
        }
        for (int i = 0; i < n; ++i) out(i, c) = w[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace

DerivativeMap derivative_map(int p, int n) {
    if (p < 1 || n < p + 1) throw Error(ErrorKind::InvalidArgument, "derivative map needs p >= 1 and n > p");
    const double h = 1.0 / (n - 1);
    const double scale = std::pow(h, -p);
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < n - p; ++i) {
        for (int k = 0; k <= p; ++k) {
            const double c = ((p - k) % 2 == 0 ? 1.0 : -1.0) * binomial(p, k) * scale;
            triplets.emplace_back(i, i + k, c);
        }
    }
    SparseMatrix b(n - p, n);
    b.setFromTriplets(triplets.begin(), triplets.end());
    return {p, n, h, std::move(b)};
}

Eigen::VectorXd trapezoid_mass(int n) {
    const double h = 1.0 / (n - 1);
    Eigen::VectorXd m = Eigen::VectorXd::Constant(n, h);
    m(0) = m(n - 1) = 0.5 * h;
    return m;
}

SparseMatrix assemble_gram(int p, int n) {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "p must be positive");
    if (n < 4 * p + 4) {
        throw Error(ErrorKind::GridTooCoarse, "assemble_gram needs n >= 4p+4, got n=" + std::to_string(n));
    }
    const DerivativeMap b = derivative_map(p, n);
    SparseMatrix a = SparseMatrix(b.matrix.transpose()) * b.matrix;
    a *= b.h;
    a.makeCompressed();
    return a;
}

Eigen::MatrixXd polynomial_kernel(int p, int n) {
    const Eigen::VectorXd mass = trapezoid_mass(n);
    Eigen::MatrixXd k(n, p);
    for (int i = 0; i < n; ++i) {
        const double s = 2.0 * i / (n - 1) - 1.0;
        for (int d = 0; d < p; ++d) k(i, d) = std::pow(s, d);
    }
    for (int d = 0; d < p; ++d) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int e = 0; e < d; ++e) {
                const double c = k.col(e).dot(mass.asDiagonal() * k.col(d));
                k.col(d) -= c * k.col(e);
            }
        }
        k.col(d) /= std::sqrt(k.col(d).dot(mass.asDiagonal() * k.col(d)));
    }
    return k;
}

double Spectrum1D::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(mass.asDiagonal() * y);
}

Spectrum1D solve_spectrum(int p, int n, int count) {
    if (count < 1 || count > n) throw Error(ErrorKind::InvalidArgument, "count must lie in [1, n]");
    Spectrum1D out;
    out.p = p;
    out.n = n;
    out.h = 1.0 / (n - 1);
    out.gram = assemble_gram(p, n);
    out.mass = trapezoid_mass(n);

    const Eigen::MatrixXd kernel = polynomial_kernel(p, n);
    const SparseMatrix g = std::sqrt(out.h) * derivative_map(p, n).matrix;
    const int kept = std::min(count, p);
    const int positive = count - kept;

    out.values.resize(count);
    out.vectors.resize(n, count);
    for (int j = 0; j < kept; ++j) {
        out.vectors.col(j) = kernel.col(j);
        out.values(j) = (g * kernel.col(j)).squaredNorm();
    }
    if (positive > 0) {
        EigenPairs pairs;
        if (n <= dense_limit) {
            pairs = dense_lowest_eigenpairs(Eigen::MatrixXd(out.gram), out.mass, kernel, positive);
        } else {
            auto solve = [p, n](const Eigen::MatrixXd& rhs) { return gram_pseudo_solve(p, n, rhs); };
            pairs = subspace_lowest_eigenpairs(g, out.mass, kernel, positive, 0.0, solve);
        }
        out.values.tail(positive) = pairs.values;
        out.vectors.rightCols(positive) = pairs.vectors;
    }
    normalise_signs(out.vectors);
    return out;
}

WidthValue kolmogorov_width(const Spectrum1D& spectrum, int N) {
    if (N < 0) throw Error(ErrorKind::InvalidArgument, "N must be nonnegative");
    WidthValue w{ExtendedReal::infinity(), N, spectrum.p};
    if (N < spectrum.p) return w;
    if (N + 1 > spectrum.count()) {
        throw Error(ErrorKind::InsufficientSpectrum,
                    "width d_" + std::to_string(N) + " needs " + std::to_string(N + 1) + " eigenvalues");
    }
    w.value = ExtendedReal::finite(1.0 / std::sqrt(spectrum.values(N)));
    return w;
}

JacksonResult jackson_residual(const Spectrum1D& spectrum, const Eigen::VectorXd& f, int N) {
    if (N < spectrum.p) throw Error(ErrorKind::InvalidArgument, "Jackson bound needs N >= p");
    if (N + 1 > spectrum.count()) throw Error(ErrorKind::InsufficientSpectrum, "spectrum too short for N");
    const Eigen::MatrixXd& psi = spectrum.vectors;
    const Eigen::VectorXd coeffs = psi.leftCols(N).transpose() * (spectrum.mass.asDiagonal() * f);
    const Eigen::VectorXd tail = f - psi.leftCols(N) * coeffs;
    JacksonResult r{};
    r.residual = std::sqrt(std::max(0.0, spectrum.inner(tail, tail)));
    r.bound = 1.0 / std::sqrt(spectrum.values(N));
    const SparseMatrix g = std::sqrt(spectrum.h) * derivative_map(spectrum.p, spectrum.n).matrix;
    r.energy = (g * f).squaredNorm();
    r.member = r.energy <= 1.0 + 1e-12;
    return r;
}

}  // namespace kwidth::spectral
