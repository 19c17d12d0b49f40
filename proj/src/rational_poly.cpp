#include "kwidth/rational_poly.hpp"

#include "kwidth/core.hpp"

#include <algorithm>
#include <sstream>

namespace kwidth {

Rational exact_rational(double x) {
    Rational r(x);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational");
    Rational r;
    if (r.set_str(text, 10) != 0) {
        throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
    }
    if (r.get_den() == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) { return r.get_str(10); }

int sign(const Rational& r) { return sgn(r); }

Polynomial1::Polynomial1(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

Polynomial1 Polynomial1::constant(const Rational& c) { return Polynomial1({c}); }

Polynomial1 Polynomial1::monomial(const Rational& c, int k) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
    v.back() = c;
    return Polynomial1(std::move(v));
}

void Polynomial1::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial1::coeff(int k) const {
    if (k < 0 || k > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial1::operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial1::evaluate(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
    return acc;
}

Polynomial1 Polynomial1::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Polynomial1(std::move(d));
}

Polynomial1 operator+(const Polynomial1& x, const Polynomial1& y) {
    std::vector<Rational> out(std::max(x.coeffs_.size(), y.coeffs_.size()), Rational(0));
    for (std::size_t k = 0; k < x.coeffs_.size(); ++k) out[k] += x.coeffs_[k];
    for (std::size_t k = 0; k < y.coeffs_.size(); ++k) out[k] += y.coeffs_[k];
    return Polynomial1(std::move(out));
}

Polynomial1 operator-(const Polynomial1& x) {
    std::vector<Rational> out = x.coeffs_;
    for (auto& c : out) c = -c;
    return Polynomial1(std::move(out));
}

Polynomial1 operator-(const Polynomial1& x, const Polynomial1& y) { return x + (-y); }

Polynomial1 operator*(const Polynomial1& x, const Polynomial1& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<Rational> out(x.coeffs_.size() + y.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) out[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    return Polynomial1(std::move(out));
}

Polynomial1 operator*(const Rational& c, const Polynomial1& x) {
    std::vector<Rational> out = x.coeffs_;
    for (auto& v : out) v *= c;
    return Polynomial1(std::move(out));
}

std::pair<Polynomial1, Polynomial1> Polynomial1::divmod(const Polynomial1& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZeroPolynomial, "univariate division by zero");
    if (degree() < divisor.degree()) return {Polynomial1{}, *this};
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
    for (int k = degree(); k >= dd; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] / divisor.leading();
        if (c == 0) continue;
        quot[static_cast<std::size_t>(k - dd)] = c;
        for (int j = 0; j <= dd; ++j) {
            rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial1(std::move(quot)), Polynomial1(std::move(rem))};
}

Polynomial1 Polynomial1::exact_div(const Polynomial1& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division is not exact");
    return q;
}

Polynomial1 Polynomial1::monic() const {
    if (is_zero()) return {};
    return Rational(1) / leading() * *this;
}

std::string Polynomial1::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        const Rational a = abs(c);
        if (k == 0 || a != 1) os << format_rational(a);
        if (k >= 1) os << (k == 0 || a != 1 ? "*t" : "t");
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

Polynomial1 gcd(const Polynomial1& x, const Polynomial1& y) {
    Polynomial1 a = x;
    Polynomial1 b = y;
    while (!b.is_zero()) {
        Polynomial1 r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Polynomial1 square_free_part(const Polynomial1& p) {
    if (p.degree() <= 0) return p;
    const Polynomial1 g = gcd(p, p.derivative());
    return p.exact_div(g).monic();
}

std::vector<Polynomial1> sturm_sequence(const Polynomial1& p) {
    std::vector<Polynomial1> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        const auto& a = seq[seq.size() - 2];
        const auto& b = seq.back();
        Polynomial1 r = -a.divmod(b).second;
        if (r.is_zero()) break;
        seq.push_back(std::move(r));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {

int sign_variations(const std::vector<Polynomial1>& seq, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& q : seq) {
        const int s = sign(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Roots strictly inside (lo, hi). Sign variations ignore zeros, so V(lo) - V(hi)
// counts roots in (lo, hi] even when lo or hi is itself a root.
int open_count(const std::vector<Polynomial1>& seq, const Rational& lo, const Rational& hi) {
    int c = sign_variations(seq, lo) - sign_variations(seq, hi);
    if (seq.front()(hi) == 0) --c;
    return c;
}

}  // namespace

int count_roots(const std::vector<Polynomial1>& sturm, const Rational& lo, const Rational& hi) {
    return sign_variations(sturm, lo) - sign_variations(sturm, hi);
}

double RootInterval::approx() const {
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
}

std::vector<RootInterval> isolate_roots(const Polynomial1& p, const Rational& a, const Rational& b,
                                        const Rational& tol) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "isolate_roots of the zero polynomial");
    std::vector<RootInterval> roots;
    if (p.degree() == 0) return roots;
    const Polynomial1 q = square_free_part(p);
    const auto seq = sturm_sequence(q);

    struct Pending {
        Rational lo, hi;
    };
    std::vector<Pending> stack{{a, b}};
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        const int n = open_count(seq, cur.lo, cur.hi);
        if (n <= 0) continue;
        if (n == 1) {
            Rational lo = cur.lo;
            Rational hi = cur.hi;
            // Simple root, one sign change between lo and hi.
            // q is square-free, so a root at lo is simple and q' gives the sign to its right.
            const int slo = sign(q(lo)) != 0 ? sign(q(lo)) : sign(q.derivative()(lo));
            bool hit = false;
            while (hi - lo > tol) {
                Rational mid = (lo + hi) / 2;
                const int sm = sign(q(mid));
                if (sm == 0) {
                    roots.push_back({mid, mid});
                    hit = true;
                    break;
                }
                if (sm == slo) lo = mid;
                else hi = mid;
            }
            if (!hit) roots.push_back({lo, hi});
            continue;
        }
        Rational mid = (cur.lo + cur.hi) / 2;
        if (q(mid) == 0) roots.push_back({mid, mid});
        stack.push_back({mid, cur.hi});
        stack.push_back({cur.lo, mid});
    }
    std::sort(roots.begin(), roots.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return roots;
}

Polynomial1 determinant(std::vector<std::vector<Polynomial1>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial1::constant(1);
    for (const auto& row : m) {
        if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    }
    int s = 1;
    Polynomial1 prev = Polynomial1::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return {};
            std::swap(m[k], m[piv]);
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
            }
        }
        prev = m[k][k];
    }
    return s > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

Rational RationalFunction::operator()(const Rational& t) const {
    const Rational d = den(t);
    if (d == 0) throw Error(ErrorKind::ZeroWronskian, "denominator vanishes at t = " + format_rational(t));
    return num(t) / d;
}

}  // namespace kwidth
