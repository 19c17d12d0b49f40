#pragma once

// One-dimensional ECT (extended complete Chebyshev) systems.
//
// A positive weight system rho_1..rho_N on [a, b] generates the basis
//   v_1 = rho_1,  v_k(t) = rho_1(t) int_a^t rho_2 int_a^{t_2} rho_3 ... int_a^{t_{k-1}} rho_k
// whose leading Wronskians are W_k = rho_1^k rho_2^{k-1} ... rho_k > 0, and
// every v_j is annihilated by L_N = D (1/rho_N) ... D (1/rho_1).

#include "kwidth/core.hpp"
#include "kwidth/rational_poly.hpp"

#include <functional>
#include <span>
#include <vector>

namespace kwidth::ect {

/// Weights sampled on n_quad uniform nodes of [a, b] (endpoints included).
class WeightSystem {
public:
    WeightSystem(Interval interval, std::vector<std::vector<double>> weights);
    static WeightSystem from_functions(Interval interval, std::size_t n_quad,
                                       const std::vector<std::function<double(double)>>& rho);

    [[nodiscard]] const Interval& interval() const { return interval_; }
    [[nodiscard]] std::size_t n_quad() const { return n_quad_; }
    [[nodiscard]] std::size_t order() const { return weights_.size(); }
    [[nodiscard]] double h() const { return interval_.length() / static_cast<double>(n_quad_ - 1); }
    [[nodiscard]] double node(std::size_t i) const;
    [[nodiscard]] const std::vector<double>& weight(std::size_t j) const { return weights_[j]; }
    [[nodiscard]] SampledFunction sampled(std::size_t j) const;

private:
    Interval interval_;
    std::size_t n_quad_;
    std::vector<std::vector<double>> weights_;
};

struct EctBasis {
    WeightSystem weights;
    std::vector<SampledFunction> basis;       // v_1..v_N on the full grid
    std::vector<SampledFunction> wronskians;  // W_1..W_N from the product formula
};

/// Nested cumulative trapezoid integration from the left endpoint.
EctBasis build_ect(const WeightSystem& weights);

/// k x k Wronskian of basis[0..k-1] by centred finite differences, reported on
/// the nodes where every difference stencil fits. Throws GridTooCoarse when
/// fewer than 2k+1 nodes are available.
SampledFunction wronskian_numeric(std::span<const SampledFunction> basis, std::size_t k);

/// rho_1 = W_1, rho_2 = W_2 / W_1^2, rho_k = W_k W_{k-2} / W_{k-1}^2.
WeightSystem recover_weights(const EctBasis& basis);

/// D (1/rho_N) ... D (1/rho_1) u with centred first differences; each D trims
/// one node per side, so the result lives on nodes N .. n_quad-1-N.
SampledFunction apply_ln(const WeightSystem& weights, const SampledFunction& u);

// ---- exact polynomial bases -------------------------------------------------

/// W_1..W_N of a polynomial basis, computed exactly.
std::vector<Polynomial1> wronskian_polynomials(std::span<const Polynomial1> basis);

/// The rational weights rho_k of a polynomial basis (exact counterpart of recover_weights).
std::vector<RationalFunction> recover_weights_exact(std::span<const Polynomial1> basis);

struct EctSegment {
    double left;
    double right;
    std::vector<int> signs;  // sign of W_1..W_N inside the segment
    [[nodiscard]] bool is_ect() const;
};

struct EctPartition {
    Interval interval;
    /// Distinct real zeros of W_1..W_N strictly inside (a, b), ascending.
    std::vector<double> breakpoints;
    std::vector<RootInterval> isolating;
    std::vector<EctSegment> segments;
};

/// Splits [a, b] at the real zeros of the Wronskians (Sturm isolation) and
/// records each segment's sign vector. Throws DependentBasis when some W_k is
/// identically zero.
EctPartition piecewise_partition(std::span<const Polynomial1> basis, const Interval& interval);

/// Polynomial surrogate of the span {chi(t) t^2, t^2} on (-1, 1) after the
/// epsilon shift chi t^2 -> chi t^2 + eps: on t <= 0 the pair is {eps, t^2},
/// on t >= 0 it is {t^2 + eps, t^2}.
struct HeavisideSurrogate {
    Rational eps;
    std::vector<Polynomial1> left;
    std::vector<Polynomial1> right;
};
HeavisideSurrogate heaviside_surrogate(const Rational& eps);

}  // namespace kwidth::ect
