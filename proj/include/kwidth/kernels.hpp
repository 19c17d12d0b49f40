#pragma once

// Stencil kernels on the m x m node lattice of the unit square.
//
// Every kernel exists twice: a plain serial loop (the reference the tests
// compare against) and an OpenMP version that splits the outer row loop.
// Each output entry is written by exactly one iteration and summed in tap
// order, so both versions produce bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

namespace kwidth {

struct StencilTap {
    int dx;
    int dy;
    double weight;
};

/// Linear combination of shifted node values. Taps are kept sorted by (dy, dx)
/// with duplicates merged and zero weights dropped.
class Stencil2D {
public:
    Stencil2D() = default;
    explicit Stencil2D(std::vector<StencilTap> taps);

    /// Central second difference along x or y, unscaled: [1, -2, 1].
    static Stencil2D second_difference_x();
    static Stencil2D second_difference_y();
    /// Fourth-order accurate second difference, unscaled: [-1, 16, -30, 16, -1] / 12.
    static Stencil2D second_difference_x4();
    static Stencil2D second_difference_y4();
    static Stencil2D identity();

    [[nodiscard]] const std::vector<StencilTap>& taps() const { return taps_; }
    /// Largest |dx| or |dy| over all taps.
    [[nodiscard]] int reach() const;
    [[nodiscard]] double weight(int dx, int dy) const;

    friend Stencil2D compose(const Stencil2D& outer, const Stencil2D& inner);
    friend Stencil2D operator+(const Stencil2D& x, const Stencil2D& y);
    friend Stencil2D operator*(double c, const Stencil2D& s);

private:
    void normalise();
    std::vector<StencilTap> taps_;
};

/// Window of lattice nodes [lo, hi] x [lo, hi] (inclusive) on which a stencil
/// is evaluated; the output is packed row-major over the window.
struct NodeWindow {
    int m;
    int lo;
    int hi;
    [[nodiscard]] int side() const { return hi - lo + 1; }
    [[nodiscard]] std::size_t count() const { return static_cast<std::size_t>(side()) * static_cast<std::size_t>(side()); }
};

namespace kernels {

namespace serial {
/// out[w] = scale * sum_taps weight * in[node(w) + tap], in is a full m*m field.
void apply(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
           std::span<double> out);
/// Adjoint of apply: out (full field) = scale * sum over window nodes of weight * in[w].
void apply_transpose(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                     std::span<double> out);
/// Pointwise out[i] = num[i] / den[i].
void divide(std::span<const double> num, std::span<const double> den, std::span<double> out);
}  // namespace serial

namespace parallel {
void apply(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
           std::span<double> out);
void apply_transpose(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                     std::span<double> out);
void divide(std::span<const double> num, std::span<const double> den, std::span<double> out);
}  // namespace parallel

}  // namespace kernels

}  // namespace kwidth
