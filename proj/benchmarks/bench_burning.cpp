#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "burning/builder.hpp"
#include "burning/burn.hpp"
#include "burning/caterpillar.hpp"
#include "burning/cocoon.hpp"
#include "burning/lemmas.hpp"

using namespace burning;

namespace {

Tree path_tree(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Tree::from_edges(n, std::move(edges));
}

void BM_exact_path(benchmark::State& state) {
    Tree t = path_tree(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact_burning_number(t).b);
}
BENCHMARK(BM_exact_path)->Arg(16)->Arg(36)->Arg(64);

void BM_exact_caterpillar(benchmark::State& state) {
    PCaterpillar cat = random_caterpillar(1, static_cast<int>(state.range(0)), 3,
                                          SubtreeMode::mixed, 42);
    for (auto _ : state) benchmark::DoNotOptimize(exact_burning_number(cat.underlying).b);
}
BENCHMARK(BM_exact_caterpillar)->Arg(30)->Arg(45);

void BM_build_staged(benchmark::State& state) {
    PCaterpillar cat = random_caterpillar(2, static_cast<int>(state.range(0)), 8,
                                          SubtreeMode::bushy, 7);
    for (auto _ : state) benchmark::DoNotOptimize(build(cat).certificate.balls.size());
}
BENCHMARK(BM_build_staged)->Arg(400)->Arg(2000);

void BM_shift_sweep(benchmark::State& state) {
    auto cat = std::make_shared<PCaterpillar>(
        random_caterpillar(0, static_cast<int>(state.range(0)), 0, SubtreeMode::paths, 1));
    Arrangement arr = initial_special_cover(build_wrapper(cat));
    for (auto _ : state) benchmark::DoNotOptimize(shift(arr, 1, 1).covered_prefix());
}
BENCHMARK(BM_shift_sweep)->Arg(1024)->Arg(147456);

}  // namespace

BENCHMARK_MAIN();
