#include <benchmark/benchmark.h>

#include "trilap/assemble.hpp"
#include "trilap/completeness.hpp"
#include "trilap/generators.hpp"
#include "trilap/operators.hpp"

using namespace trilap;

namespace {

void BM_GenerateRegularPatch(benchmark::State& state) {
    int radius = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Triangulation patch = regular_patch(6, radius);
        benchmark::DoNotOptimize(patch.face_count());
    }
}
BENCHMARK(BM_GenerateRegularPatch)->Arg(4)->Arg(8)->Arg(16);

void BM_GenerateTree(benchmark::State& state) {
    OffspringSpec off = OffspringSpec::poly(2.0);
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Triangulation tree = triangular_tree(off, depth);
        benchmark::DoNotOptimize(tree.vertex_count());
    }
}
BENCHMARK(BM_GenerateTree)->Arg(4)->Arg(5);

void BM_AssembleL1(benchmark::State& state) {
    Triangulation patch = regular_patch(6, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        OperatorMatrix m = assemble(patch, OpId::L1);
        benchmark::DoNotOptimize(m.matrix.nonZeros());
    }
    state.SetItemsProcessed(state.iterations() * patch.edge_count());
}
BENCHMARK(BM_AssembleL1)->Arg(8)->Arg(16);

void BM_ApplyL1(benchmark::State& state) {
    Triangulation patch = regular_patch(6, static_cast<int>(state.range(0)));
    Cochain1 phi = random_cochain1(patch, 42);
    for (auto _ : state) {
        Cochain1 image = laplacian1(phi);
        benchmark::DoNotOptimize(image.coeffs()[0]);
    }
    state.SetItemsProcessed(state.iterations() * patch.edge_count());
}
BENCHMARK(BM_ApplyL1)->Arg(8)->Arg(16)->Arg(32);

void BM_SpectrumL0(benchmark::State& state) {
    Triangulation patch = regular_patch(6, static_cast<int>(state.range(0)));
    OperatorMatrix l0 = assemble(patch, OpId::L0);
    for (auto _ : state) {
        SpectrumResult s = spectrum(l0);
        benchmark::DoNotOptimize(s.eigenvalues.back());
    }
}
BENCHMARK(BM_SpectrumL0)->Arg(4)->Arg(8);

void BM_CutoffConstants(benchmark::State& state) {
    Triangulation patch = regular_patch(6, static_cast<int>(state.range(0)));
    Cochain0 chi = bounded_degree_cutoff(patch, 0, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph_constant(chi));
        benchmark::DoNotOptimize(face_constant(chi));
    }
}
BENCHMARK(BM_CutoffConstants)->Arg(16)->Arg(32);

} // namespace

BENCHMARK_MAIN();
