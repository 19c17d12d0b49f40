#include "kwidth/kernels.hpp"

#include "kwidth/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace kwidth {

Stencil2D::Stencil2D(std::vector<StencilTap> taps) : taps_(std::move(taps)) { normalise(); }

void Stencil2D::normalise() {
    std::sort(taps_.begin(), taps_.end(), [](const StencilTap& a, const StencilTap& b) {
        return a.dy != b.dy ? a.dy < b.dy : a.dx < b.dx;
    });
    std::vector<StencilTap> merged;
    for (const auto& t : taps_) {
        if (!merged.empty() && merged.back().dx == t.dx && merged.back().dy == t.dy) {
            merged.back().weight += t.weight;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const StencilTap& t) { return t.weight == 0.0; });
    taps_ = std::move(merged);
}

Stencil2D Stencil2D::second_difference_x() { return Stencil2D({{-1, 0, 1.0}, {0, 0, -2.0}, {1, 0, 1.0}}); }
Stencil2D Stencil2D::second_difference_y() { return Stencil2D({{0, -1, 1.0}, {0, 0, -2.0}, {0, 1, 1.0}}); }

Stencil2D Stencil2D::second_difference_x4() {
    return Stencil2D({{-2, 0, -1.0 / 12}, {-1, 0, 16.0 / 12}, {0, 0, -30.0 / 12}, {1, 0, 16.0 / 12}, {2, 0, -1.0 / 12}});
}

Stencil2D Stencil2D::second_difference_y4() {
    return Stencil2D({{0, -2, -1.0 / 12}, {0, -1, 16.0 / 12}, {0, 0, -30.0 / 12}, {0, 1, 16.0 / 12}, {0, 2, -1.0 / 12}});
}

Stencil2D Stencil2D::identity() { return Stencil2D({{0, 0, 1.0}}); }

int Stencil2D::reach() const {
    int r = 0;
    for (const auto& t : taps_) r = std::max({r, std::abs(t.dx), std::abs(t.dy)});
    return r;
}

double Stencil2D::weight(int dx, int dy) const {
    for (const auto& t : taps_) {
        if (t.dx == dx && t.dy == dy) return t.weight;
    }
    return 0.0;
}

Stencil2D compose(const Stencil2D& outer, const Stencil2D& inner) {
    std::vector<StencilTap> taps;
    taps.reserve(outer.taps_.size() * inner.taps_.size());
    for (const auto& a : outer.taps_) {
        for (const auto& b : inner.taps_) taps.push_back({a.dx + b.dx, a.dy + b.dy, a.weight * b.weight});
    }
    return Stencil2D(std::move(taps));
}

Stencil2D operator+(const Stencil2D& x, const Stencil2D& y) {
    std::vector<StencilTap> taps = x.taps_;
    taps.insert(taps.end(), y.taps_.begin(), y.taps_.end());
    return Stencil2D(std::move(taps));
}

Stencil2D operator*(double c, const Stencil2D& s) {
    std::vector<StencilTap> taps = s.taps_;
    for (auto& t : taps) t.weight *= c;
    return Stencil2D(std::move(taps));
}

namespace kernels {

namespace {

void check_window(const Stencil2D& s, const NodeWindow& win) {
    if (win.lo - s.reach() < 0 || win.hi + s.reach() > win.m - 1 || win.lo > win.hi) {
        throw Error(ErrorKind::InvalidArgument, "stencil does not fit the node window");
    }
}

inline void apply_row(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                      std::span<double> out, int j) {
    const int side = win.side();
    for (int i = win.lo; i <= win.hi; ++i) {
        double acc = 0.0;
        for (const auto& t : s.taps()) {
            acc += t.weight * in[static_cast<std::size_t>((j + t.dy) * win.m + (i + t.dx))];
        }
        out[static_cast<std::size_t>((j - win.lo) * side + (i - win.lo))] = scale * acc;
    }
}

// Gather form of the transpose: node (i, j) collects weight * in[w] from every
// window node w = (i, j) - tap.
inline void transpose_row(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                          std::span<double> out, int j) {
    const int side = win.side();
    for (int i = 0; i < win.m; ++i) {
        double acc = 0.0;
        for (const auto& t : s.taps()) {
            const int wi = i - t.dx;
            const int wj = j - t.dy;
            if (wi < win.lo || wi > win.hi || wj < win.lo || wj > win.hi) continue;
            acc += t.weight * in[static_cast<std::size_t>((wj - win.lo) * side + (wi - win.lo))];
        }
        out[static_cast<std::size_t>(j * win.m + i)] = scale * acc;
    }
}

}  // namespace

namespace serial {

void apply(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
           std::span<double> out) {
    check_window(s, win);
    for (int j = win.lo; j <= win.hi; ++j) apply_row(s, win, scale, in, out, j);
}

void apply_transpose(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                     std::span<double> out) {
    check_window(s, win);
    for (int j = 0; j < win.m; ++j) transpose_row(s, win, scale, in, out, j);
}

void divide(std::span<const double> num, std::span<const double> den, std::span<double> out) {
    for (std::size_t i = 0; i < num.size(); ++i) out[i] = num[i] / den[i];
}

}  // namespace serial

namespace parallel {

void apply(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
           std::span<double> out) {
    check_window(s, win);
#pragma omp parallel for schedule(static)
    for (int j = win.lo; j <= win.hi; ++j) apply_row(s, win, scale, in, out, j);
}

void apply_transpose(const Stencil2D& s, const NodeWindow& win, double scale, std::span<const double> in,
                     std::span<double> out) {
    check_window(s, win);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < win.m; ++j) transpose_row(s, win, scale, in, out, j);
}

void divide(std::span<const double> num, std::span<const double> den, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(num.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = num[static_cast<std::size_t>(i)] / den[static_cast<std::size_t>(i)];
    }
}

}  // namespace parallel

}  // namespace kernels

}  // namespace kwidth
