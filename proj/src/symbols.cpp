#include "kwidth/symbols.hpp"

#include "kwidth/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace kwidth {

Polynomial2::Polynomial2(Terms terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
}

Polynomial2 Polynomial2::term(int a, int b, const Rational& c) {
    Polynomial2 p;
    p.add_term({a, b}, c);
    return p;
}

void Polynomial2::add_term(const Exponent& e, const Rational& coeff) {
    if (e.a < 0 || e.b < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    Rational c = coeff;
    c.canonicalize();  // callers may hand in mpq values built from unreduced pairs
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial2 Polynomial2::parse(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    Polynomial2 p;
    while (in >> token) {
        const auto comma = token.find(',');
        const auto colon = token.find(':');
        if (comma == std::string::npos || colon == std::string::npos || comma > colon) {
            throw Error(ErrorKind::InvalidArgument, "malformed term '" + token + "', expected a,b:c");
        }
        auto exponent = [&](const std::string& s) {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
                throw Error(ErrorKind::InvalidArgument, "bad exponent in term '" + token + "'");
            }
            return std::stoi(s);
        };
        const int a = exponent(token.substr(0, comma));
        const int b = exponent(token.substr(comma + 1, colon - comma - 1));
        p.add_term({a, b}, parse_rational(token.substr(colon + 1)));
    }
    return p;
}

int Polynomial2::degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;
    return e.a + e.b;
}

bool Polynomial2::is_homogeneous() const {
    if (terms_.empty()) return false;
    const int d = degree();
    for (const auto& [e, c] : terms_) {
        if (e.a + e.b != d) return false;
    }
    return true;
}

std::pair<Exponent, Rational> Polynomial2::leading() const {
    if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no leading term");
    return *terms_.rbegin();
}

Rational Polynomial2::coeff(int a, int b) const {
    const auto it = terms_.find({a, b});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial2::operator()(const Rational& xi, const Rational& eta) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < e.a; ++i) t *= xi;
        for (int i = 0; i < e.b; ++i) t *= eta;
        acc += t;
    }
    return acc;
}

std::string Polynomial2::to_string() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += ' ';
        out += std::to_string(it->first.a) + "," + std::to_string(it->first.b) + ":" + format_rational(it->second);
    }
    return out;
}

Polynomial2 operator+(const Polynomial2& x, const Polynomial2& y) {
    Polynomial2 r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, c);
    return r;
}

Polynomial2 operator-(const Polynomial2& x, const Polynomial2& y) {
    Polynomial2 r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
    return r;
}

Polynomial2 operator*(const Polynomial2& x, const Polynomial2& y) {
    Polynomial2 r;
    for (const auto& [ex, cx] : x.terms_) {
        for (const auto& [ey, cy] : y.terms_) r.add_term({ex.a + ey.a, ex.b + ey.b}, cx * cy);
    }
    return r;
}

Polynomial2 operator*(const Rational& c, const Polynomial2& x) {
    Polynomial2 r;
    for (const auto& [e, v] : x.terms_) r.add_term(e, c * v);
    return r;
}

namespace {

struct Direction {
    long long x;
    long long y;
};

std::vector<Direction> sample_directions(int samples) {
    std::vector<Direction> dirs = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
    constexpr double scale = 16777216.0;  // 2^24
    for (int i = 0; i < samples; ++i) {
        const double theta = std::numbers::pi * i / samples;
        Direction d{std::llround(std::cos(theta) * scale), std::llround(std::sin(theta) * scale)};
        if (d.x == 0 && d.y == 0) continue;
        dirs.push_back(d);
    }
    return dirs;
}

}  // namespace

EllipticityReport is_strongly_elliptic(const Polynomial2& p, int samples) {
    if (!p.is_homogeneous() || p.degree() % 2 != 0) {
        throw Error(ErrorKind::NotHomogeneous, "symbol '" + p.to_string() + "' is not homogeneous of even degree");
    }
    const int m = p.degree() / 2;
    EllipticityReport r{true, 0, 0};
    bool first = true;
    for (const auto& d : sample_directions(samples)) {
        const Rational x(mpz_class(std::to_string(d.x)));
        const Rational y(mpz_class(std::to_string(d.y)));
        Rational norm = 1;
        const Rational sq = x * x + y * y;
        for (int i = 0; i < m; ++i) norm *= sq;
        const Rational v = abs(p(x, y)) / norm;
        if (v == 0) r.ok = false;
        if (first || v < r.c0) r.c0 = v;
        if (first || v > r.c1) r.c1 = v;
        first = false;
    }
    return r;
}

Division divide(const Polynomial2& num, const Polynomial2& den) {
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZeroPolynomial, "division by the zero polynomial");
    const auto [lead_e, lead_c] = den.leading();
    Division out;
    Polynomial2 rest = num;
    while (!rest.is_zero()) {
        const auto [e, c] = rest.leading();
        const Polynomial2 t = Polynomial2::term(e.a, e.b, c);
        if (e.a >= lead_e.a && e.b >= lead_e.b) {
            const Polynomial2 q = Polynomial2::term(e.a - lead_e.a, e.b - lead_e.b, c / lead_c);
            out.quotient = out.quotient + q;
            rest = rest - q * den;
        } else {
            out.remainder = out.remainder + t;
            rest = rest - t;
        }
    }
    return out;
}

FactorizationCertificate factorization_certificate(const Polynomial2& p, const Polynomial2& l, int samples) {
    if (!p.is_homogeneous() || !l.is_homogeneous()) {
        throw Error(ErrorKind::NotHomogeneous, "factorization certificate needs homogeneous symbols");
    }
    if (p.degree() < l.degree()) throw Error(ErrorKind::InvalidArgument, "deg P must be at least deg L");
    Division d = divide(p, l);
    FactorizationCertificate c{d.remainder.is_zero(), std::nullopt, std::move(d.quotient), std::move(d.remainder)};
    if (c.divides) {
        c.quotient_elliptic = c.quotient.degree() % 2 == 0 && is_strongly_elliptic(c.quotient, samples).ok;
    }
    return c;
}

}  // namespace kwidth
