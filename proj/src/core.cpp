#include "kwidth/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kwidth {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::ZeroWronskian: return "ZeroWronskian";
        case ErrorKind::DependentBasis: return "DependentBasis";
        case ErrorKind::InsufficientSpectrum: return "InsufficientSpectrum";
        case ErrorKind::EigenFailure: return "EigenFailure";
        case ErrorKind::NotElliptic: return "NotElliptic";
        case ErrorKind::OddSymbol: return "OddSymbol";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::WeightVanishes: return "WeightVanishes";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

bool is_numerical_failure(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EigenFailure:
        case ErrorKind::ResidualTooLarge:
        case ErrorKind::SingularSystem:
        case ErrorKind::ZeroWronskian:
        case ErrorKind::InsufficientSpectrum:
            return true;
        default:
            return false;
    }
}

Interval::Interval(double left, double right) : a(left), b(right) {
    if (!(left < right)) {
        throw Error(ErrorKind::InvalidArgument, "interval requires a < b");
    }
}

ExtendedReal ExtendedReal::finite(double v) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, "finite ExtendedReal from non-finite double");
    }
    return {false, v};
}

ExtendedReal ExtendedReal::infinity() { return {true, 0.0}; }

double ExtendedReal::value() const {
    if (infinite_) throw Error(ErrorKind::InvalidArgument, "value() of +infinity");
    return value_;
}

double ExtendedReal::as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

ExtendedReal ExtendedReal::parse(const std::string& text) {
    if (text == "inf") return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "not an extended real: '" + text + "'");
    }
    if (used != text.size()) {
        throw Error(ErrorKind::InvalidArgument, "not an extended real: '" + text + "'");
    }
    return finite(v);
}

std::partial_ordering operator<=>(const ExtendedReal& x, const ExtendedReal& y) {
    if (x.infinite_ && y.infinite_) return std::partial_ordering::equivalent;
    if (x.infinite_) return std::partial_ordering::greater;
    if (y.infinite_) return std::partial_ordering::less;
    return x.value_ <=> y.value_;
}

double SampledFunction::at(double t) const {
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "evaluate empty function");
    if (values.size() == 1) return values.front();
    double s = (t - t0) / h;
    if (s <= 0.0) return values.front();
    const auto last = static_cast<double>(values.size() - 1);
    if (s >= last) return values.back();
    const auto i = static_cast<std::size_t>(std::floor(s));
    const double frac = s - static_cast<double>(i);
    return (1.0 - frac) * values[i] + frac * values[i + 1];
}

CounterRng::result_type CounterRng::operator()() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    // Box-Muller on two counter draws; keeps the stream platform independent.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace kwidth
