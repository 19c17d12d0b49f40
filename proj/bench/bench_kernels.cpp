// Serial reference kernels against their OpenMP counterparts.

#include "kwidth/elliptic2d.hpp"
#include "kwidth/kernels.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace kwidth;

struct Fixture {
    elliptic::EllipticOperator2D op;
    std::vector<double> in;
    std::vector<double> out;
    std::vector<double> back;

    explicit Fixture(int m, int p)
        : op(elliptic::assemble(p == 1 ? Polynomial2::parse("2,0:1 0,2:1") : Polynomial2::parse("4,0:1 2,2:2 0,4:1"), p,
                                elliptic::RectGrid(m))),
          in(static_cast<std::size_t>(m) * m),
          out(op.window.count()),
          back(static_cast<std::size_t>(m) * m) {
        CounterRng rng(42);
        for (auto& v : in) v = rng.uniform();
    }
};

template <bool Parallel>
void apply_stencil(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::apply(f.op.stencil, f.op.window, f.op.h_scale, f.in, f.out);
        } else {
            kernels::serial::apply(f.op.stencil, f.op.window, f.op.h_scale, f.in, f.out);
        }
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.out.size()));
}

template <bool Parallel>
void apply_stencil_transpose(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::apply_transpose(f.op.stencil, f.op.window, f.op.h_scale, f.out, f.back);
        } else {
            kernels::serial::apply_transpose(f.op.stencil, f.op.window, f.op.h_scale, f.out, f.back);
        }
        benchmark::DoNotOptimize(f.back.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.back.size()));
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int m : {65, 257, 1025}) {
        for (int p : {1, 2}) b->Args({m, p});
    }
}

}  // namespace

BENCHMARK(apply_stencil<false>)->Apply(sizes);
BENCHMARK(apply_stencil<true>)->Apply(sizes);
BENCHMARK(apply_stencil_transpose<false>)->Apply(sizes);
BENCHMARK(apply_stencil_transpose<true>)->Apply(sizes);

BENCHMARK_MAIN();
