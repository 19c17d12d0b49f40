#pragma once

// Constant-coefficient bivariate symbols p(xi, eta) over Q.
//
// Text format: whitespace-separated terms "a,b:c" (exponents of xi and eta,
// rational coefficient), written in descending graded-lex order with xi > eta.
// The zero polynomial is the empty string.

#include "kwidth/rational_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace kwidth {

struct Exponent {
    int a;  // power of xi
    int b;  // power of eta
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order, xi > eta.
struct GrlexLess {
    bool operator()(const Exponent& x, const Exponent& y) const {
        if (x.a + x.b != y.a + y.b) return x.a + x.b < y.a + y.b;
        return x.a < y.a;
    }
};

class Polynomial2 {
public:
    using Terms = std::map<Exponent, Rational, GrlexLess>;

    Polynomial2() = default;
    explicit Polynomial2(Terms terms);
    static Polynomial2 term(int a, int b, const Rational& c);
    static Polynomial2 parse(const std::string& text);

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_homogeneous() const;
    /// Largest term in grlex order; the polynomial must be nonzero.
    [[nodiscard]] std::pair<Exponent, Rational> leading() const;
    [[nodiscard]] Rational coeff(int a, int b) const;

    [[nodiscard]] Rational operator()(const Rational& xi, const Rational& eta) const;
    [[nodiscard]] std::string to_string() const;

    friend Polynomial2 operator+(const Polynomial2& x, const Polynomial2& y);
    friend Polynomial2 operator-(const Polynomial2& x, const Polynomial2& y);
    friend Polynomial2 operator*(const Polynomial2& x, const Polynomial2& y);
    friend Polynomial2 operator*(const Rational& c, const Polynomial2& x);
    friend bool operator==(const Polynomial2& x, const Polynomial2& y) { return x.terms_ == y.terms_; }

private:
    void add_term(const Exponent& e, const Rational& c);
    Terms terms_;
};

struct EllipticityReport {
    bool ok;
    Rational c0;  // smallest |p(d)| / |d|^{2m} over the sampled directions
    Rational c1;  // largest
};

/// Samples |p| on directions of the half circle: the two axes, the two
/// diagonals and `samples` equally spaced angles in [0, pi), each as an
/// integer vector d so that |p(d)| / |d|^{2m} is evaluated exactly. The bounds
/// hold on the samples only; they are not a global certificate.
/// Throws NotHomogeneous unless p is homogeneous of even degree.
EllipticityReport is_strongly_elliptic(const Polynomial2& p, int samples);

struct Division {
    Polynomial2 quotient;
    Polynomial2 remainder;
};

/// Long division in grlex order; no remainder term is divisible by the
/// leading term of den. Throws DivisionByZeroPolynomial.
Division divide(const Polynomial2& num, const Polynomial2& den);

struct FactorizationCertificate {
    bool divides;
    /// Set only when divides is true.
    std::optional<bool> quotient_elliptic;
    Polynomial2 quotient;
    Polynomial2 remainder;
};

/// Throws NotHomogeneous for non-homogeneous input and InvalidArgument when
/// deg P < deg L.
FactorizationCertificate factorization_certificate(const Polynomial2& p, const Polynomial2& l,
                                                   int samples = 64);

}  // namespace kwidth
