#include "kwidth/spectral1d.hpp"
#include "kwidth/widths.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kwidth;
using namespace kwidth::spectral;

namespace {

// Root of cos k cosh k = 1 near 4.73 by bisection.
double beam_root() {
    double lo = 4.5;
    double hi = 5.0;
    auto f = [](double k) { return std::cos(k) * std::cosh(k) - 1.0; };
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("derivative map and Gram matrix") {
    const DerivativeMap b = derivative_map(2, 9);
    CHECK(b.matrix.rows() == 7);
    CHECK(b.matrix.coeff(0, 0) == doctest::Approx(64.0));
    CHECK(b.matrix.coeff(0, 1) == doctest::Approx(-128.0));
    const Eigen::VectorXd mass = trapezoid_mass(9);
    CHECK(mass.sum() == doctest::Approx(1.0));
    const SparseMatrix a = assemble_gram(2, 33);
    const Eigen::MatrixXd k = polynomial_kernel(2, 33);
    CHECK((a * k).norm() < 1e-8);
    const Eigen::VectorXd m33 = trapezoid_mass(33);
    CHECK((k.transpose() * m33.asDiagonal() * k - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_THROWS_AS(assemble_gram(2, 11), Error);
}

TEST_CASE("Neumann spectrum for p = 1, dense and iterative paths") {
    for (int n : {513, 2049}) {
        const Spectrum1D s = solve_spectrum(1, n, 9);
        CHECK(std::abs(s.values(0)) < 1e-12);
        for (int j = 1; j <= 8; ++j) {
            const double exact = std::numbers::pi * std::numbers::pi * j * j;
            CHECK(std::abs(s.values(j) - exact) <= 1e-3 * exact);
        }
        // mass orthonormality
        const Eigen::MatrixXd g = s.vectors.transpose() * s.mass.asDiagonal() * s.vectors;
        CHECK((g - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("free beam spectrum for p = 2") {
    const double k1 = beam_root();
    CHECK(k1 == doctest::Approx(4.730041).epsilon(1e-6));
    const Spectrum1D s = solve_spectrum(2, 2049, 4);
    CHECK(std::abs(s.values(0)) < 1e-12);
    CHECK(std::abs(s.values(1)) < 1e-12);
    CHECK(s.values(2) > 100.0);
    CHECK(std::abs(s.values(2) - std::pow(k1, 4)) <= 5e-3 * std::pow(k1, 4));
}

TEST_CASE("dense and iterative paths agree") {
    const Spectrum1D dense = solve_spectrum(2, 700, 8);
    const Spectrum1D iter = solve_spectrum(2, 701, 8);
    for (int j = 2; j < 8; ++j) CHECK(iter.values(j) == doctest::Approx(dense.values(j)).epsilon(1e-2));
    const Spectrum1D a = solve_spectrum(1, 1025, 6);
    const Eigen::MatrixXd dense_a(a.gram);
    for (int j = 1; j < 6; ++j) {
        const Eigen::VectorXd r = dense_a * a.vectors.col(j) - a.values(j) * a.mass.cwiseProduct(a.vectors.col(j));
        CHECK(r.norm() <= 1e-8 * a.values(j));
    }
}

TEST_CASE("widths") {
    const Spectrum1D s = solve_spectrum(1, 2049, 6);
    CHECK(kolmogorov_width(s, 0).value.is_infinite());
    for (int N = 1; N <= 5; ++N) {
        const double exact = 1.0 / (N * std::numbers::pi);
        CHECK(std::abs(kolmogorov_width(s, N).value.value() - exact) <= 1e-3 * exact);
        CHECK(kolmogorov_width(s, N).value <= kolmogorov_width(s, N - 1).value);
    }
    CHECK_THROWS_AS(kolmogorov_width(s, 6), Error);
    const Spectrum1D s2 = solve_spectrum(2, 257, 4);
    CHECK(kolmogorov_width(s2, 1).value.is_infinite());
    CHECK(kolmogorov_width(s2, 2).value.is_finite());
}

TEST_CASE("Jackson residual and brute-force extremality in 1D") {
    const int n = 257;
    for (int p : {1, 2}) {
        const Spectrum1D s = solve_spectrum(p, n, 8);
        const widths::Ellipsoid e = widths::Ellipsoid::from_derivative(p, n);
        CounterRng rng(17);
        for (int t = 0; t < 50; ++t) {
            const Eigen::VectorXd f = widths::sample_member(e, rng, 0.99);
            for (int N = p; N < 7; ++N) {
                const JacksonResult j = jackson_residual(s, f, N);
                CHECK(j.member);
                CHECK(j.energy == doctest::Approx(0.99).epsilon(1e-9));
                CHECK(j.residual <= j.bound + 1e-12);
            }
        }
        for (int N = 0; N < 7; ++N) {
            const SupDistance d = widths::brute_force_distance(widths::leading_modes(s, N), e);
            const WidthValue w = kolmogorov_width(s, N);
            CHECK(d.distance.is_infinite() == w.value.is_infinite());
            if (w.value.is_finite()) {
                CHECK(std::abs(d.distance.value() - w.value.value()) <= 1e-8 * w.value.value());
            }
        }
        CHECK_THROWS_AS(jackson_residual(s, Eigen::VectorXd::Zero(n), p - 1), Error);
    }
}
