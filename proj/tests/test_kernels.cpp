#include "kwidth/core.hpp"
#include "kwidth/kernels.hpp"

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

using namespace kwidth;

namespace {

std::vector<double> random_field(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

Stencil2D biharmonic() {
    const Stencil2D lap = Stencil2D::second_difference_x() + Stencil2D::second_difference_y();
    return compose(lap, lap);
}

}  // namespace

TEST_CASE("stencil algebra") {
    const Stencil2D bi = biharmonic();
    CHECK(bi.reach() == 2);
    CHECK(bi.weight(0, 0) == 20.0);
    CHECK(bi.weight(1, 0) == -8.0);
    CHECK(bi.weight(1, 1) == 2.0);
    CHECK(bi.weight(2, 0) == 1.0);
    CHECK(bi.taps().size() == 13);
    const Stencil2D x4 = Stencil2D::second_difference_x4();
    CHECK(x4.weight(0, 0) == doctest::Approx(-30.0 / 12.0));
    CHECK(x4.weight(2, 0) == doctest::Approx(-1.0 / 12.0));
    const Stencil2D zero = Stencil2D::identity() + (-1.0) * Stencil2D::identity();
    CHECK(zero.taps().empty());
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        for (int m : {9, 33, 70}) {
            const NodeWindow win{m, 2, m - 3};
            const Stencil2D s = biharmonic();
            const auto in = random_field(static_cast<std::size_t>(m) * m, 5);
            std::vector<double> a(win.count());
            std::vector<double> b(win.count());
            kernels::serial::apply(s, win, 0.5, in, a);
            kernels::parallel::apply(s, win, 0.5, in, b);
            CHECK(a == b);
            const auto w = random_field(win.count(), 6);
            std::vector<double> at(static_cast<std::size_t>(m) * m);
            std::vector<double> bt(at.size());
            kernels::serial::apply_transpose(s, win, 0.5, w, at);
            kernels::parallel::apply_transpose(s, win, 0.5, w, bt);
            CHECK(at == bt);
            auto den = random_field(in.size(), 7);
            for (auto& d : den) d = 1.0 + std::abs(d);
            std::vector<double> qa(in.size());
            std::vector<double> qb(in.size());
            kernels::serial::divide(in, den, qa);
            kernels::parallel::divide(in, den, qb);
            CHECK(qa == qb);
        }
    }
    omp_set_num_threads(saved);
}

TEST_CASE("apply_transpose is the adjoint of apply") {
    const int m = 21;
    const NodeWindow win{m, 2, m - 3};
    const Stencil2D s = biharmonic() + 3.0 * Stencil2D::second_difference_x4();
    const auto u = random_field(static_cast<std::size_t>(m) * m, 11);
    const auto w = random_field(win.count(), 12);
    std::vector<double> lu(win.count());
    std::vector<double> ltw(u.size());
    kernels::serial::apply(s, win, 2.0, u, lu);
    kernels::serial::apply_transpose(s, win, 2.0, w, ltw);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < lu.size(); ++i) lhs += lu[i] * w[i];
    for (std::size_t i = 0; i < u.size(); ++i) rhs += u[i] * ltw[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("second differences are exact on quadratics") {
    const int m = 11;
    const double h = 0.1;
    std::vector<double> u(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) u[static_cast<std::size_t>(j * m + i)] = std::pow(i * h, 2) - 3.0 * std::pow(j * h, 2);
    }
    const NodeWindow win{m, 2, m - 3};
    std::vector<double> out(win.count());
    const Stencil2D lap4 = Stencil2D::second_difference_x4() + Stencil2D::second_difference_y4();
    kernels::parallel::apply(lap4, win, 1.0 / (h * h), u, out);
    for (double v : out) CHECK(v == doctest::Approx(-4.0).epsilon(1e-10));
}
