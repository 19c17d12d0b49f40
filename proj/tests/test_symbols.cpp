#include "kwidth/core.hpp"
#include "kwidth/symbols.hpp"

#include <doctest.h>

using namespace kwidth;

namespace {
Polynomial2 P(const std::string& s) { return Polynomial2::parse(s); }
}  // namespace

TEST_CASE("text format round trip") {
    const Polynomial2 p = P("0,4:1 4,0:1 2,2:2");
    CHECK(p.to_string() == "4,0:1 2,2:2 0,4:1");
    CHECK(P(p.to_string()) == p);
    CHECK(P("1,1:3/6").to_string() == "1,1:1/2");
    CHECK(P("").is_zero());
    CHECK(P("2,0:1 2,0:-1").is_zero());
    CHECK_THROWS_AS(P("2,0"), Error);
    CHECK_THROWS_AS(P("-1,0:1"), Error);
    CHECK_THROWS_AS(P("2,0:1/0"), Error);
}

TEST_CASE("ellipticity samples") {
    const auto iso = is_strongly_elliptic(P("2,0:1 0,2:1"), 8);
    CHECK(iso.ok);
    CHECK(iso.c0 == 1);
    CHECK(iso.c1 == 1);
    CHECK_FALSE(is_strongly_elliptic(P("2,0:1 0,2:-1"), 8).ok);
    const auto quartic = is_strongly_elliptic(P("4,0:1 0,4:1"), 8);
    CHECK(quartic.ok);
    CHECK(quartic.c0 == Rational(1, 2));
    CHECK(quartic.c1 == 1);
    // min of a^4 + b^4 on the circle by calculus: cos^4 + sin^4 = 1 - sin^2(2x)/2.
    const auto dense = is_strongly_elliptic(P("4,0:1 0,4:1"), 256);
    CHECK(dense.c0 == Rational(1, 2));
    CHECK_THROWS_AS(is_strongly_elliptic(P("2,0:1 0,1:1"), 8), Error);
    CHECK_THROWS_AS(is_strongly_elliptic(P("3,0:1 0,3:1"), 8), Error);
}

TEST_CASE("division examples") {
    const Polynomial2 lap = P("2,0:1 0,2:1");
    SUBCASE("biharmonic") {
        const Division d = divide(lap * lap, lap);
        CHECK(d.quotient == lap);
        CHECK(d.remainder.is_zero());
    }
    SUBCASE("polyharmonic tower") {
        const Division d = divide(lap * lap * lap, lap * lap);
        CHECK(d.quotient == lap);
        CHECK(d.remainder.is_zero());
    }
    SUBCASE("xi^4 + eta^4 by xi^2 + 2 eta^2") {
        // Hand division: xi^4 = xi^2 (xi^2 + 2 eta^2) - 2 xi^2 eta^2 and
        // -2 xi^2 eta^2 = -2 eta^2 (xi^2 + 2 eta^2) + 4 eta^4, leaving 5 eta^4.
        const Division d = divide(P("4,0:1 0,4:1"), P("2,0:1 0,2:2"));
        CHECK(d.quotient == P("2,0:1 0,2:-2"));
        CHECK(d.remainder == P("0,4:5"));
    }
    SUBCASE("xi^4 + eta^4 by the Laplacian") {
        const Division d = divide(P("4,0:1 0,4:1"), lap);
        CHECK(d.quotient == P("2,0:1 0,2:-1"));
        CHECK(d.remainder == P("0,4:2"));
    }
    CHECK_THROWS_AS(divide(lap, Polynomial2()), Error);
}

TEST_CASE("certificates") {
    const Polynomial2 lap = P("2,0:1 0,2:1");
    const auto c1 = factorization_certificate(lap * lap, lap);
    CHECK(c1.divides);
    CHECK(c1.quotient_elliptic == std::optional<bool>(true));
    const Polynomial2 q = P("2,0:1 0,2:2");
    const auto c2 = factorization_certificate(q * lap, lap);
    CHECK(c2.divides);
    CHECK(c2.quotient == q);
    CHECK(c2.quotient_elliptic == std::optional<bool>(true));
    const auto c3 = factorization_certificate(P("4,0:1 0,4:1"), lap);
    CHECK_FALSE(c3.divides);
    CHECK_FALSE(c3.quotient_elliptic.has_value());
    const auto c4 = factorization_certificate(P("2,0:1 0,2:-1") * lap, lap);
    CHECK(c4.divides);
    CHECK(c4.quotient_elliptic == std::optional<bool>(false));
    CHECK_THROWS_AS(factorization_certificate(lap, lap * lap), Error);
}

TEST_CASE("randomised division identity and certificate idempotence") {
    CounterRng rng(2024);
    auto small = [&] { return Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 4) + 1); };
    const Polynomial2 lap = P("2,0:1 0,2:1");
    for (int trial = 0; trial < 50; ++trial) {
        const int deg = trial % 2 == 0 ? 2 : 4;
        Polynomial2 q;
        for (int a = 0; a <= deg; a += 2) q = q + Polynomial2::term(a, deg - a, small());
        if (q.is_zero()) q = Polynomial2::term(deg, 0, Rational(1));
        const Polynomial2 l = trial % 3 == 0 ? lap : P("2,0:2 0,2:3");
        const Polynomial2 prod = q * l;
        const Division d = divide(prod, l);
        CHECK(d.quotient * l + d.remainder == prod);
        CHECK(d.remainder.is_zero());
        CHECK(d.quotient == q);
        CHECK(d.quotient.is_homogeneous());
        CHECK(d.quotient.degree() == prod.degree() - l.degree());
        const auto cert = factorization_certificate(prod, l);
        CHECK(cert.divides);
        CHECK(cert.quotient_elliptic == std::optional<bool>(is_strongly_elliptic(q, 64).ok));
        // and a generic numerator: identity plus the remainder normal form
        Polynomial2 num = prod + Polynomial2::term(1, deg + 1, small());
        const Division g = divide(num, l);
        CHECK(g.quotient * l + g.remainder == num);
        const Exponent lead = l.leading().first;
        for (const auto& [e, c] : g.remainder.terms()) CHECK_FALSE((e.a >= lead.a && e.b >= lead.b));
    }
}
