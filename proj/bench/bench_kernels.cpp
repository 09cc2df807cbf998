// Serial reference vs OpenMP kernel on fixed seeded inputs. Thread count
// follows OMP_NUM_THREADS.

#include "gapforge/agreement.hpp"
#include "gapforge/generate.hpp"
#include "gapforge/serial.hpp"
#include "gapforge/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace gapforge;

namespace {

constexpr std::uint64_t kBudget = std::uint64_t{1} << 32;

const CnfFormula& formula() {
  static const CnfFormula f = gen::random_cnf(20, 60, 4, 1);
  return f;
}

const LabelCoverInstance& label_cover() {
  static const LabelCoverInstance L = gen::random_label_cover(7, 2, gen::Design::complete, 4, 3, false, 2);
  return L;
}

const CoverageInstance& coverage() {
  static const CoverageInstance I = gen::random_coverage(60, 28, 5, Fraction(1, 6), 3);
  return I;
}

const CodeInstance& code() {
  static const CodeInstance C = abss_ncp_reduction(gen::random_coverage(30, 20, 4, Fraction(1, 5), 4), 4, 5);
  return C;
}

const FunctionCollection& funcs() {
  static const FunctionCollection F = gen::noisy_collection(200, 30, Fraction(1, 2), Fraction(1, 4), Fraction(1, 5), 5);
  return F;
}

}  // namespace

static void BM_MaxVal_Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::brute_force_max_val(formula(), kBudget));
}
static void BM_MaxVal_Omp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(brute_force_max_val(formula(), kBudget));
}

static void BM_LcVal_Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::brute_force_val(label_cover(), kBudget));
}
static void BM_LcVal_Omp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(brute_force_val(label_cover(), kBudget));
}

static void BM_MaxCoverage_Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::exact_max_coverage(coverage(), kBudget));
}
static void BM_MaxCoverage_Omp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(exact_max_coverage(coverage(), kBudget));
}

static void BM_Ncp_Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::exact_ncp(code(), kBudget));
}
static void BM_Ncp_Omp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(exact_ncp(code(), kBudget));
}

static void BM_TWagr_Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serial::t_wagr(funcs(), 3, kBudget));
}
static void BM_TWagr_Omp(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(t_wagr(funcs(), 3, kBudget));
}

BENCHMARK(BM_MaxVal_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxVal_Omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LcVal_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LcVal_Omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MaxCoverage_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxCoverage_Omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Ncp_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ncp_Omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TWagr_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TWagr_Omp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
