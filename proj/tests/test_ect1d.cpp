#include "kwidth/ect1d.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kwidth;
using namespace kwidth::ect;

namespace {

WeightSystem constants(std::vector<double> c, Interval iv, std::size_t n) {
    std::vector<std::function<double(double)>> f;
    for (double v : c) f.emplace_back([v](double) { return v; });
    return WeightSystem::from_functions(iv, n, f);
}

double max_abs_diff(const SampledFunction& s, const std::function<double(double)>& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(s.values[i] - f(s.t(i))));
    return worst;
}

SampledFunction sample(double a, double b, std::size_t n, const std::function<double(double)>& f) {
    SampledFunction s{a, (b - a) / static_cast<double>(n - 1), {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(f(s.t(i)));
    return s;
}

}  // namespace

TEST_CASE("unit weights give monomials") {
    const EctBasis b = build_ect(constants({1, 1}, Interval(0, 1), 65));
    CHECK(max_abs_diff(b.basis[0], [](double) { return 1.0; }) < 1e-15);
    CHECK(max_abs_diff(b.basis[1], [](double t) { return t; }) < 1e-14);
}

TEST_CASE("constant weights 2, 3, 5") {
    const EctBasis b = build_ect(constants({2, 3, 5}, Interval(0, 1), 129));
    // v3 = 2 * int_0^t 3 * int_0^s 5 = 15 t^2; the trapezoid rule is exact on linear integrands.
    CHECK(max_abs_diff(b.basis[2], [](double t) { return 15.0 * t * t; }) < 1e-12);
    CHECK(max_abs_diff(b.wronskians[2], [](double) { return 360.0; }) < 1e-12);
    const SampledFunction w3 = wronskian_numeric(b.basis, 3);
    CHECK(max_abs_diff(w3, [](double) { return 360.0; }) < 1e-6);
}

TEST_CASE("lower limit of the nested integrals is the left endpoint") {
    std::vector<std::function<double(double)>> rho{[](double) { return 1.0; }, [](double t) { return 2.0 * t; }};
    const EctBasis b = build_ect(WeightSystem::from_functions(Interval(0.5, 1.0), 257, rho));
    CHECK(max_abs_diff(b.basis[1], [](double t) { return t * t - 0.25; }) < 1e-13);
}

TEST_CASE("numeric Wronskian of monomials") {
    std::vector<SampledFunction> basis{sample(0, 1, 101, [](double) { return 1.0; }),
                                       sample(0, 1, 101, [](double t) { return t; }),
                                       sample(0, 1, 101, [](double t) { return t * t; })};
    const SampledFunction w = wronskian_numeric(basis, 3);
    CHECK(max_abs_diff(w, [](double) { return 2.0; }) < 1e-8);
}

TEST_CASE("Heaviside pair has Wronskian 2 t eps") {
    const double eps = 0.1;
    auto chi_t2 = [](double t) { return t > 0.0 ? t * t : 0.0; };
    std::vector<SampledFunction> basis{sample(-1, 1, 2001, [&](double t) { return chi_t2(t) + eps; }),
                                       sample(-1, 1, 2001, [](double t) { return t * t; })};
    const SampledFunction w = wronskian_numeric(basis, 2);
    CHECK(max_abs_diff(w, [&](double t) { return 2.0 * t * eps; }) < 1e-3);
}

TEST_CASE("recover weights") {
    SUBCASE("basis 1, t") {
        const EctBasis b = build_ect(constants({1, 1}, Interval(0, 1), 33));
        const WeightSystem r = recover_weights(b);
        for (std::size_t k = 0; k < 2; ++k) {
            for (double v : r.weight(k)) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    SUBCASE("round trip of smooth weights") {
        std::vector<std::function<double(double)>> rho{
            [](double t) { return 1.0 + 0.5 * std::sin(3.0 * t); },
            [](double t) { return std::exp(t); },
            [](double t) { return 2.0 + std::cos(t); },
        };
        const WeightSystem w = WeightSystem::from_functions(Interval(0, 1), 4096, rho);
        const WeightSystem r = recover_weights(build_ect(w));
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t i = 0; i < w.n_quad(); ++i) {
                CHECK(std::abs(r.weight(k)[i] - w.weight(k)[i]) <= 1e-10 * w.weight(k)[i]);
            }
        }
    }
}

TEST_CASE("Wronskian product formula against differentiation converges at second order") {
    std::vector<std::function<double(double)>> rho{
        [](double t) { return 1.0 + 0.3 * t * t; },
        [](double t) { return std::exp(0.5 * t); },
        [](double t) { return 1.5 + std::sin(2.0 * t); },
    };
    double previous = 0.0;
    for (std::size_t n : {257, 513, 1025}) {
        const EctBasis b = build_ect(WeightSystem::from_functions(Interval(0, 1), n, rho));
        const SampledFunction num = wronskian_numeric(b.basis, 3);
        const SampledFunction& exact = b.wronskians[2];
        const auto shift = static_cast<std::size_t>(std::lround((num.t0 - exact.t0) / exact.h));
        double err = 0.0;
        for (std::size_t i = 0; i < num.size(); ++i) {
            err = std::max(err, std::abs(num.values[i] - exact.values[shift + i]) / exact.values[shift + i]);
        }
        if (previous > 0.0) CHECK(std::log2(previous / err) > 1.8);
        previous = err;
    }
}

TEST_CASE("L_N annihilates the basis") {
    SUBCASE("unit weights") {
        const WeightSystem w = constants({1, 1}, Interval(0, 1), 65);
        const SampledFunction t = sample(0, 1, 65, [](double x) { return x; });
        for (double v : apply_ln(w, t).values) CHECK(std::abs(v) < 1e-12);
        const SampledFunction t2 = sample(0, 1, 65, [](double x) { return x * x; });
        for (double v : apply_ln(w, t2).values) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("weights 2, 3, 5 and refinement") {
        std::vector<std::function<double(double)>> rho{
            [](double t) { return 2.0 + t; }, [](double t) { return 3.0 - t * t; }, [](double t) { return 5.0 + std::sin(t); }};
        double previous = 0.0;
        for (std::size_t n : {129, 257, 513}) {
            const WeightSystem w = WeightSystem::from_functions(Interval(0, 1), n, rho);
            const EctBasis b = build_ect(w);
            double err = 0.0;
            for (const auto& v : b.basis) {
                for (double r : apply_ln(w, v).values) err = std::max(err, std::abs(r));
            }
            if (previous > 0.0) CHECK(previous / err > 3.5);
            previous = err;
        }
    }
}

TEST_CASE("exact weights of the Heaviside surrogate") {
    const Rational eps(1, 10);
    const HeavisideSurrogate s = heaviside_surrogate(eps);
    const auto left = recover_weights_exact(s.left);
    for (const Rational t : {Rational(-1), Rational(-1, 3), Rational(-7, 100)}) {
        CHECK(left[1](t) == 2 * t / eps);
    }
    const auto w = wronskian_polynomials(s.right);
    CHECK(w[1] == Polynomial1::monomial(2 * eps, 1));
}

TEST_CASE("piecewise partition") {
    const Polynomial1 one = Polynomial1::constant(1);
    const Polynomial1 t = Polynomial1::monomial(1, 1);
    const Polynomial1 t2 = Polynomial1::monomial(1, 2);
    SUBCASE("perturbed pair") {
        const std::vector<Polynomial1> basis{t2 + Polynomial1::constant(Rational(1, 10)), t2};
        const EctPartition part = piecewise_partition(basis, Interval(-1, 1));
        REQUIRE(part.breakpoints.size() == 1);
        CHECK(part.isolating[0].exact());
        CHECK(part.isolating[0].lo == 0);
        CHECK(part.segments.size() == 2);
    }
    SUBCASE("monomials") {
        const std::vector<Polynomial1> basis{one, t, t2};
        const EctPartition part = piecewise_partition(basis, Interval(-1, 1));
        CHECK(part.breakpoints.empty());
        REQUIRE(part.segments.size() == 1);
        CHECK(part.segments[0].is_ect());
    }
    SUBCASE("t, t^2") {
        const std::vector<Polynomial1> basis{t, t2};
        const EctPartition part = piecewise_partition(basis, Interval(-1, 1));
        REQUIRE(part.breakpoints.size() == 1);
        CHECK(part.breakpoints[0] == 0.0);
        REQUIRE(part.segments.size() == 2);
        CHECK(part.segments[0].signs == std::vector<int>{-1, 1});
        CHECK(part.segments[1].signs == std::vector<int>{1, 1});
    }
    SUBCASE("irrational breakpoint") {
        const std::vector<Polynomial1> basis{t2 - Polynomial1::constant(2), one};  // W_1 = t^2 - 2, W_2 = -2t
        const EctPartition part = piecewise_partition(basis, Interval(-2, 2));
        REQUIRE(part.breakpoints.size() == 3);
        CHECK(part.breakpoints[0] == doctest::Approx(-std::numbers::sqrt2).epsilon(1e-15));
        CHECK(part.breakpoints[1] == 0.0);
        CHECK(part.breakpoints[2] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
        CHECK(part.isolating[0].hi - part.isolating[0].lo <= Rational(4) / Rational(mpz_class(1) << 60));
    }
    SUBCASE("dependent basis") {
        const std::vector<Polynomial1> basis{t, Polynomial1::monomial(3, 1)};
        CHECK_THROWS_AS(piecewise_partition(basis, Interval(-1, 1)), Error);
    }
}

TEST_CASE("input validation") {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::IoFailure;
    };
    CHECK(kind([] { constants({1, -1}, Interval(0, 1), 32); }) == ErrorKind::NonPositiveWeight);
    CHECK(kind([] { constants({1}, Interval(0, 1), 8); }) == ErrorKind::GridTooCoarse);
    CHECK(kind([] { WeightSystem(Interval(0, 1), {}); }) == ErrorKind::InvalidArgument);
    std::vector<SampledFunction> tiny{sample(0, 1, 4, [](double) { return 1.0; }), sample(0, 1, 4, [](double x) { return x; })};
    CHECK(kind([&] { wronskian_numeric(tiny, 2); }) == ErrorKind::GridTooCoarse);
    EctBasis b = build_ect(constants({1, 1}, Interval(0, 1), 32));
    b.wronskians[1].values[5] = 0.0;
    CHECK(kind([&] { recover_weights(b); }) == ErrorKind::ZeroWronskian);
    const std::vector<Polynomial1> basis{Polynomial1::monomial(1, 1), Polynomial1::monomial(1, 2)};
    CHECK(kind([&] { static_cast<void>(recover_weights_exact(basis)[1](Rational(0))); }) == ErrorKind::ZeroWronskian);
}
