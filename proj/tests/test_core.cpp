#include "kwidth/core.hpp"
#include "kwidth/rational_poly.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace kwidth;

TEST_CASE("extended reals") {
    const ExtendedReal inf = ExtendedReal::infinity();
    const ExtendedReal one = ExtendedReal::finite(1.0);
    CHECK(inf.is_infinite());
    CHECK(one < inf);
    CHECK(inf == ExtendedReal::infinity());
    CHECK(inf.to_string() == "inf");
    CHECK(ExtendedReal::parse("inf") == inf);
    CHECK(ExtendedReal::parse(ExtendedReal::finite(0.1).to_string()) == ExtendedReal::finite(0.1));
    CHECK(std::isinf(inf.as_double()));
    CHECK_THROWS_AS((void)inf.value(), Error);
    CHECK_THROWS_AS(ExtendedReal::finite(std::nan("")), Error);
    CHECK_THROWS_AS(ExtendedReal::parse("1.0x"), Error);
}

TEST_CASE("counter generator is deterministic and addressable") {
    CounterRng a(99);
    CounterRng b(99);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    CounterRng c(99, 50);
    CounterRng d(99);
    for (int i = 0; i < 50; ++i) d();
    CHECK(c() == d());
    std::set<std::uint64_t> seen;
    CounterRng e(1);
    for (int i = 0; i < 1000; ++i) seen.insert(e());
    CHECK(seen.size() == 1000);
    double mean = 0.0;
    double var = 0.0;
    CounterRng f(3);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = f.normal();
        mean += x;
        var += x * x;
    }
    CHECK(std::abs(mean / n) < 0.03);
    CHECK(std::abs(var / n - 1.0) < 0.05);
}

TEST_CASE("error kinds map to exit classes") {
    CHECK(is_numerical_failure(ErrorKind::EigenFailure));
    CHECK(is_numerical_failure(ErrorKind::ResidualTooLarge));
    CHECK_FALSE(is_numerical_failure(ErrorKind::InvalidConfig));
    const Error e(ErrorKind::NotElliptic, "x");
    CHECK(std::string(e.what()).find("NotElliptic") == 0);
}

TEST_CASE("sampled functions interpolate linearly") {
    const SampledFunction s{0.0, 0.5, {0.0, 1.0, 4.0}};
    CHECK(s.at(0.25) == doctest::Approx(0.5));
    CHECK(s.at(0.75) == doctest::Approx(2.5));
    CHECK(s.at(-1.0) == 0.0);
    CHECK(s.at(5.0) == 4.0);
}

TEST_CASE("rational polynomials") {
    const Polynomial1 t = Polynomial1::monomial(1, 1);
    const Polynomial1 p = (t - Polynomial1::constant(1)) * (t - Polynomial1::constant(1)) * (t + Polynomial1::constant(2));
    CHECK(square_free_part(p).degree() == 2);
    const auto [q, r] = p.divmod(t - Polynomial1::constant(1));
    CHECK(r.is_zero());
    CHECK(q * (t - Polynomial1::constant(1)) == p);
    const auto roots = isolate_roots(p, Rational(-5), Rational(5), Rational(1, 1 << 20));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].approx() == doctest::Approx(-2.0));
    CHECK(roots[1].approx() == doctest::Approx(1.0));
    CHECK(exact_rational(0.1) != Rational(1, 10));
    CHECK(exact_rational(0.5) == Rational(1, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(format_rational(Rational(-3, 2)) == "-3/2");
    CHECK_THROWS_AS(static_cast<void>(p.divmod(Polynomial1())), Error);
    std::vector<std::vector<Polynomial1>> m{{t, Polynomial1::constant(1)}, {Polynomial1::constant(1), t}};
    CHECK(determinant(m) == t * t - Polynomial1::constant(1));
}
