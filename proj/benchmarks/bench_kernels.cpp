#include <benchmark/benchmark.h>

#include <linfix/encoding.hpp>
#include <linfix/generator.hpp>
#include <linfix/solvers.hpp>
#include <linfix/sparse_matrix.hpp>

namespace {

using namespace linfix;

DefiniteProgram program_for(const benchmark::State& state) {
  return generate_program({.n = static_cast<std::size_t>(state.range(0)),
                           .m = static_cast<std::size_t>(state.range(1)),
                           .seed = 42});
}

void BM_Matvec(benchmark::State& state) {
  const auto p = program_for(state);
  const SparseMatrix m = encode_sd(p, p.atom_count());
  const StateVector v = embed(initial_vector(p));
  for (auto _ : state) benchmark::DoNotOptimize(matvec(m, v));
}

void BM_Matmul(benchmark::State& state) {
  const auto p = program_for(state);
  const SparseMatrix m = encode_sd(p, p.atom_count());
  for (auto _ : state) benchmark::DoNotOptimize(matmul(m, m));
}

template <MethodKind Kind>
void BM_Solve(benchmark::State& state) {
  const auto p = program_for(state);
  const Method method{Kind, static_cast<std::size_t>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, method));
}

// Args: atoms, rules, k.
void grid(benchmark::internal::Benchmark* b) {
  for (long m : {100, 1250, 2500}) b->Args({50, m, 5});
}

}  // namespace

BENCHMARK(BM_Matvec)->Apply(grid);
BENCHMARK(BM_Matmul)->Apply(grid);
BENCHMARK(BM_Solve<MethodKind::tp>)->Apply(grid);
BENCHMARK(BM_Solve<MethodKind::matrix>)->Apply(grid);
BENCHMARK(BM_Solve<MethodKind::col_reduct>)->Apply(grid);
BENCHMARK(BM_Solve<MethodKind::peval>)->Apply(grid);
BENCHMARK(BM_Solve<MethodKind::peval_col_reduct>)->Apply(grid);
BENCHMARK_MAIN();
