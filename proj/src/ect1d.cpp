#include "kwidth/ect1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace kwidth::ect {

namespace {

// Fornberg weights for the derivative of order `order` at 0 on integer offsets -r..r.
std::vector<double> central_weights(int order, int r) {
    const int npts = 2 * r + 1;
    std::vector<double> x(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>(i - r);
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(static_cast<std::size_t>(npts),
                                       std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0];
    c[0][0] = 1.0;
    for (int i = 1; i < npts; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) / c2;
                }
                c[static_cast<std::size_t>(i)][0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) / c3;
            }
            c[static_cast<std::size_t>(j)][0] = c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(order)];
    return w;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
}

}  // namespace

WeightSystem::WeightSystem(Interval interval, std::vector<std::vector<double>> weights)
    : interval_(interval), n_quad_(weights.empty() ? 0 : weights.front().size()), weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorKind::InvalidArgument, "weight system needs N >= 1");
    if (n_quad_ < 16) throw Error(ErrorKind::GridTooCoarse, "weight system needs n_quad >= 16");
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (weights_[j].size() != n_quad_) throw Error(ErrorKind::InvalidArgument, "weights sampled on different grids");
        for (std::size_t i = 0; i < n_quad_; ++i) {
            if (!(weights_[j][i] > 0.0)) {
                throw Error(ErrorKind::NonPositiveWeight,
                            "rho_" + std::to_string(j + 1) + " <= 0 at node " + std::to_string(i));
            }
        }
    }
}

WeightSystem WeightSystem::from_functions(Interval interval, std::size_t n_quad,
                                          const std::vector<std::function<double(double)>>& rho) {
    if (n_quad < 2) throw Error(ErrorKind::GridTooCoarse, "weight system needs n_quad >= 16");
    std::vector<std::vector<double>> w(rho.size(), std::vector<double>(n_quad));
    const double h = interval.length() / static_cast<double>(n_quad - 1);
    for (std::size_t j = 0; j < rho.size(); ++j) {
        for (std::size_t i = 0; i < n_quad; ++i) w[j][i] = rho[j](interval.a + static_cast<double>(i) * h);
    }
    return WeightSystem(interval, std::move(w));
}

double WeightSystem::node(std::size_t i) const { return interval_.a + static_cast<double>(i) * h(); }

SampledFunction WeightSystem::sampled(std::size_t j) const { return {interval_.a, h(), weights_[j]}; }

EctBasis build_ect(const WeightSystem& weights) {
    const std::size_t n = weights.n_quad();
    const std::size_t order = weights.order();
    const double h = weights.h();
    EctBasis out{weights, {}, {}};
    for (std::size_t k = 0; k < order; ++k) {
        std::vector<double> inner = weights.weight(k);
        for (std::size_t j = k; j-- > 0;) {
            std::vector<double> integral = cumulative_trapezoid(inner, h);
            for (std::size_t i = 0; i < n; ++i) integral[i] *= weights.weight(j)[i];
            inner = std::move(integral);
        }
        out.basis.push_back({weights.interval().a, h, std::move(inner)});

        std::vector<double> w(n, 1.0);
        for (std::size_t j = 0; j <= k; ++j) {
            const auto power = static_cast<int>(k + 1 - j);
            for (std::size_t i = 0; i < n; ++i) w[i] *= std::pow(weights.weight(j)[i], power);
        }
        out.wronskians.push_back({weights.interval().a, h, std::move(w)});
    }
    return out;
}

SampledFunction wronskian_numeric(std::span<const SampledFunction> basis, std::size_t k) {
    if (k == 0 || k > basis.size()) throw Error(ErrorKind::InvalidArgument, "Wronskian order out of range");
    const std::size_t n = basis.front().size();
    if (n < 2 * k + 1) throw Error(ErrorKind::GridTooCoarse, "Wronskian of order " + std::to_string(k) + " needs 2k+1 nodes");
    for (std::size_t j = 0; j < k; ++j) {
        if (basis[j].size() != n) throw Error(ErrorKind::InvalidArgument, "basis functions on different grids");
    }
    const double h = basis.front().h;
    const int reach = static_cast<int>((k - 1 + 1) / 2);
    std::vector<std::vector<double>> stencils;
    std::vector<int> radii;
    for (std::size_t d = 0; d < k; ++d) {
        const int r = static_cast<int>((d + 1) / 2);
        radii.push_back(r);
        std::vector<double> w = central_weights(static_cast<int>(d), r);
        const double scale = std::pow(h, -static_cast<double>(d));
        for (auto& x : w) x *= scale;
        stencils.push_back(std::move(w));
    }

    SampledFunction out{basis.front().t(static_cast<std::size_t>(reach)), h, {}};
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd m(kk, kk);
    for (std::size_t i = static_cast<std::size_t>(reach); i + static_cast<std::size_t>(reach) < n; ++i) {
        for (std::size_t d = 0; d < k; ++d) {
            const int r = radii[d];
            for (std::size_t j = 0; j < k; ++j) {
                double acc = 0.0;
                for (int o = -r; o <= r; ++o) {
                    acc += stencils[d][static_cast<std::size_t>(o + r)] *
                           basis[j].values[static_cast<std::size_t>(static_cast<long>(i) + o)];
                }
                m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j)) = acc;
            }
        }
        out.values.push_back(m.determinant());
    }
    return out;
}

WeightSystem recover_weights(const EctBasis& basis) {
    const auto& w = basis.wronskians;
    const std::size_t order = w.size();
    const std::size_t n = w.front().size();
    std::vector<std::vector<double>> rho(order, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < order; ++k) {
            if (w[k].values[i] == 0.0) {
                throw Error(ErrorKind::ZeroWronskian, "W_" + std::to_string(k + 1) + " vanishes at node " + std::to_string(i));
            }
        }
        rho[0][i] = w[0].values[i];
        if (order >= 2) rho[1][i] = w[1].values[i] / (w[0].values[i] * w[0].values[i]);
        for (std::size_t k = 2; k < order; ++k) {
            rho[k][i] = w[k].values[i] * w[k - 2].values[i] / (w[k - 1].values[i] * w[k - 1].values[i]);
        }
    }
    return WeightSystem(basis.weights.interval(), std::move(rho));
}

SampledFunction apply_ln(const WeightSystem& weights, const SampledFunction& u) {
    const std::size_t n = weights.n_quad();
    const std::size_t order = weights.order();
    if (u.size() != n) throw Error(ErrorKind::InvalidArgument, "u must be sampled on the weight grid");
    if (n < 2 * order + 1) throw Error(ErrorKind::GridTooCoarse, "L_N needs 2N+1 nodes");
    const double h = weights.h();
    std::vector<double> g = u.values;  // g[i] lives at node offset + i
    std::size_t offset = 0;
    for (std::size_t j = 0; j < order; ++j) {
        for (std::size_t i = 0; i < g.size(); ++i) g[i] /= weights.weight(j)[offset + i];
        std::vector<double> d(g.size() - 2);
        for (std::size_t i = 0; i + 2 < g.size(); ++i) d[i] = (g[i + 2] - g[i]) / (2.0 * h);
        g = std::move(d);
        ++offset;
    }
    return {weights.node(offset), h, std::move(g)};
}

std::vector<Polynomial1> wronskian_polynomials(std::span<const Polynomial1> basis) {
    const std::size_t order = basis.size();
    // derivs[d][j] = v_j^{(d)}
    std::vector<std::vector<Polynomial1>> derivs(order, std::vector<Polynomial1>(order));
    for (std::size_t j = 0; j < order; ++j) {
        derivs[0][j] = basis[j];
        for (std::size_t d = 1; d < order; ++d) derivs[d][j] = derivs[d - 1][j].derivative();
    }
    std::vector<Polynomial1> out;
    for (std::size_t k = 1; k <= order; ++k) {
        std::vector<std::vector<Polynomial1>> m(k, std::vector<Polynomial1>(k));
        for (std::size_t d = 0; d < k; ++d) {
            for (std::size_t j = 0; j < k; ++j) m[d][j] = derivs[d][j];
        }
        out.push_back(determinant(std::move(m)));
    }
    return out;
}

std::vector<RationalFunction> recover_weights_exact(std::span<const Polynomial1> basis) {
    const auto w = wronskian_polynomials(basis);
    std::vector<RationalFunction> rho;
    const Polynomial1 one = Polynomial1::constant(1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        Polynomial1 num = w[k];
        Polynomial1 den = one;
        if (k == 1) den = w[0] * w[0];
        if (k >= 2) {
            num = w[k] * w[k - 2];
            den = w[k - 1] * w[k - 1];
        }
        // left unreduced: common factors mark Wronskian zeros where rho_k is undefined
        if (den.is_zero()) throw Error(ErrorKind::ZeroWronskian, "W_" + std::to_string(k) + " is identically zero");
        rho.push_back({std::move(num), std::move(den)});
    }
    return rho;
}

bool EctSegment::is_ect() const {
    return std::all_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
}

EctPartition piecewise_partition(std::span<const Polynomial1> basis, const Interval& interval) {
    if (basis.empty()) throw Error(ErrorKind::InvalidArgument, "empty basis");
    const auto w = wronskian_polynomials(basis);
    Polynomial1 product = Polynomial1::constant(1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) {
            throw Error(ErrorKind::DependentBasis, "W_" + std::to_string(k + 1) + " is identically zero");
        }
        product = product * square_free_part(w[k]);
    }
    const Rational a = exact_rational(interval.a);
    const Rational b = exact_rational(interval.b);
    const Rational tol = (b - a) / Rational(mpz_class(1) << 60);

    EctPartition out{interval, {}, isolate_roots(product, a, b, tol), {}};
    for (const auto& r : out.isolating) out.breakpoints.push_back(r.approx());

    Rational left_exact = a;
    double left = interval.a;
    for (std::size_t s = 0; s <= out.isolating.size(); ++s) {
        const Rational right_exact = s < out.isolating.size() ? out.isolating[s].lo : b;
        const double right = s < out.isolating.size() ? out.breakpoints[s] : interval.b;
        const Rational probe = (left_exact + right_exact) / 2;
        EctSegment seg{left, right, {}};
        for (const auto& wk : w) seg.signs.push_back(sign(wk(probe)));
        out.segments.push_back(std::move(seg));
        if (s < out.isolating.size()) {
            left_exact = out.isolating[s].hi;
            left = right;
        }
    }
    return out;
}

HeavisideSurrogate heaviside_surrogate(const Rational& eps) {
    const Polynomial1 t2 = Polynomial1::monomial(1, 2);
    return {eps, {Polynomial1::constant(eps), t2}, {t2 + Polynomial1::constant(eps), t2}};
}

}  // namespace kwidth::ect
