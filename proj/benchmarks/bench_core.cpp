#include <benchmark/benchmark.h>

#include "cubeknot/fixtures.hpp"
#include "cubeknot/search.hpp"

using namespace cubeknot;

namespace {

const KnotDiagram& sphere() {
    static const KnotDiagram d = make_sphere();
    return d;
}

KnotDiagram walked(int steps) {
    return random_walk(sphere(), steps, 99).final;
}

void BM_Cofaces(benchmark::State& state) {
    const LatticeContext ctx = make_context(4);
    const Cell v = Cell::vertex(std::array<std::int32_t, 4>{0, 0, 0, 0});
    for (auto _ : state) benchmark::DoNotOptimize(cofaces(v, 4, ctx));
}
BENCHMARK(BM_Cofaces);

void BM_Boundary(benchmark::State& state) {
    const Cell cube =
        Cell::make(std::array<std::int32_t, 4>{0, 0, 0, 0}, std::array<int, 3>{1, 2, 3});
    for (auto _ : state) benchmark::DoNotOptimize(boundary_cells(cube));
}
BENCHMARK(BM_Boundary);

void BM_ValidateKnot(benchmark::State& state) {
    const auto d = walked(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(validate_knot(d.complex()));
    state.SetLabel(std::to_string(d.cells().size()) + " cells");
}
BENCHMARK(BM_ValidateKnot)->Arg(0)->Arg(50)->Arg(200);

void BM_EnumerateMoves(benchmark::State& state) {
    const auto d = walked(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_face_moves(d));
    state.SetLabel(std::to_string(d.cells().size()) + " cells");
}
BENCHMARK(BM_EnumerateMoves)->Arg(0)->Arg(50)->Arg(200);

void BM_WalkStep(benchmark::State& state) {
    MoveTable table(walked(static_cast<int>(state.range(0))));
    std::uint64_t tick = 1;
    for (auto _ : state) {
        table.apply(tick++ % table.moves().size());
    }
    state.SetLabel(std::to_string(table.diagram().cells().size()) + " cells");
}
BENCHMARK(BM_WalkStep)->Arg(50)->Arg(200);

void BM_CanonicalKey(benchmark::State& state) {
    const auto d = walked(200);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_key(d, true));
}
BENCHMARK(BM_CanonicalKey);

void BM_SearchDepth2(benchmark::State& state) {
    const auto target = random_walk(sphere(), 2, 7).final;
    for (auto _ : state) {
        auto res = bfs_search(sphere(), target, 2, 100000);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_SearchDepth2);

}  // namespace

BENCHMARK_MAIN();
