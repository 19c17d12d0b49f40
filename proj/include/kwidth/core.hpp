#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwidth {

enum class ErrorKind {
    NonPositiveWeight,
    GridTooCoarse,
    ZeroWronskian,
    DependentBasis,
    InsufficientSpectrum,
    EigenFailure,
    NotElliptic,
    OddSymbol,
    NotHomogeneous,
    DivisionByZeroPolynomial,
    SingularSystem,
    ResidualTooLarge,
    WeightVanishes,
    InvalidArgument,
    InvalidConfig,
    IoFailure,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// True for failures that come from the numerics rather than from bad input.
bool is_numerical_failure(ErrorKind kind);

struct Interval {
    double a;
    double b;

    Interval(double left, double right);
    [[nodiscard]] double length() const { return b - a; }
};

/// Finite nonnegative value or +infinity. Widths are compared in reports,
/// so infinity is an explicit tag and never a sentinel float.
class ExtendedReal {
public:
    static ExtendedReal finite(double v);
    static ExtendedReal infinity();

    [[nodiscard]] bool is_infinite() const { return infinite_; }
    [[nodiscard]] bool is_finite() const { return !infinite_; }
    /// Throws InvalidArgument when infinite.
    [[nodiscard]] double value() const;
    /// value() or +inf as a double, for arithmetic in tests and tables.
    [[nodiscard]] double as_double() const;
    [[nodiscard]] std::string to_string() const;
    static ExtendedReal parse(const std::string& text);

    friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
    friend std::partial_ordering operator<=>(const ExtendedReal& x, const ExtendedReal& y);

private:
    ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
    bool infinite_ = false;
    double value_ = 0.0;
};

/// Values on the uniform nodes t_i = t0 + i*h, i = 0..size()-1.
struct SampledFunction {
    double t0 = 0.0;
    double h = 1.0;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] double t(std::size_t i) const { return t0 + static_cast<double>(i) * h; }
    /// Piecewise-linear evaluation; clamps outside the sampled range.
    [[nodiscard]] double at(double t) const;
};

/// Counter-based generator (SplitMix64 finaliser over seed + counter).
/// Satisfies UniformRandomBitGenerator so the std distributions work with it.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform in [0, 1).
    double uniform();
    double normal();
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace kwidth
