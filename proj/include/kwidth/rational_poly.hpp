#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kwidth {

using Rational = mpq_class;

/// Exact rational from a double (every finite double is a dyadic rational).
Rational exact_rational(double x);
/// Parses "p/q" or an integer literal.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);
int sign(const Rational& r);

/// Dense univariate polynomial over Q, coefficients in increasing degree.
/// The zero polynomial has no coefficients.
class Polynomial1 {
public:
    Polynomial1() = default;
    explicit Polynomial1(std::vector<Rational> coeffs);
    static Polynomial1 constant(const Rational& c);
    /// c * t^k
    static Polynomial1 monomial(const Rational& c, int k);

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<Rational>& coeffs() const { return coeffs_; }
    [[nodiscard]] const Rational& leading() const { return coeffs_.back(); }
    [[nodiscard]] Rational coeff(int k) const;

    [[nodiscard]] Rational operator()(const Rational& t) const;
    [[nodiscard]] double evaluate(double t) const;
    [[nodiscard]] Polynomial1 derivative() const;

    friend Polynomial1 operator+(const Polynomial1& x, const Polynomial1& y);
    friend Polynomial1 operator-(const Polynomial1& x, const Polynomial1& y);
    friend Polynomial1 operator*(const Polynomial1& x, const Polynomial1& y);
    friend Polynomial1 operator*(const Rational& c, const Polynomial1& x);
    friend Polynomial1 operator-(const Polynomial1& x);
    friend bool operator==(const Polynomial1& x, const Polynomial1& y) { return x.coeffs_ == y.coeffs_; }

    /// Euclidean division; throws DivisionByZeroPolynomial for a zero divisor.
    [[nodiscard]] std::pair<Polynomial1, Polynomial1> divmod(const Polynomial1& divisor) const;
    /// Quotient of a division known to be exact; throws InvalidArgument otherwise.
    [[nodiscard]] Polynomial1 exact_div(const Polynomial1& divisor) const;
    [[nodiscard]] Polynomial1 monic() const;

    [[nodiscard]] std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

Polynomial1 gcd(const Polynomial1& x, const Polynomial1& y);
Polynomial1 square_free_part(const Polynomial1& p);

/// Sturm sequence of a square-free polynomial.
std::vector<Polynomial1> sturm_sequence(const Polynomial1& p);
/// Number of distinct real roots in (lo, hi]; lo and hi must not be roots.
int count_roots(const std::vector<Polynomial1>& sturm, const Rational& lo, const Rational& hi);

/// Isolating interval [lo, hi] of a single real root, degenerate (lo == hi)
/// when the root is rational and was hit exactly.
struct RootInterval {
    Rational lo;
    Rational hi;
    [[nodiscard]] bool exact() const { return lo == hi; }
    [[nodiscard]] double approx() const;
};

/// Distinct real roots of p strictly inside (a, b), ascending, each refined
/// to width <= tol. p must be nonzero.
std::vector<RootInterval> isolate_roots(const Polynomial1& p, const Rational& a, const Rational& b,
                                        const Rational& tol);

/// Determinant of a square matrix with polynomial entries (fraction-free Bareiss).
Polynomial1 determinant(std::vector<std::vector<Polynomial1>> m);

/// Exact quotient num/den of polynomials.
struct RationalFunction {
    Polynomial1 num;
    Polynomial1 den;
    /// Throws ZeroWronskian when the denominator vanishes at t.
    [[nodiscard]] Rational operator()(const Rational& t) const;
};

}  // namespace kwidth
