#include <benchmark/benchmark.h>

#include "fincat/corpus.hpp"
#include "fincat/finset.hpp"
#include "fincat/oracle.hpp"
#include "fincat/qa.hpp"
#include "fincat/qc.hpp"
#include "fincat/qo.hpp"

using namespace fincat;

// --- kernel ------------------------------------------------------------

static void BM_YoungCosets(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Composition parts{{n / 2, n - n / 2}};
  for (auto _ : state) benchmark::DoNotOptimize(young_cosets(parts));
}
BENCHMARK(BM_YoungCosets)->Arg(4)->Arg(5)->Arg(6);

static void BM_InduceRegular(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<GSet> factors{regular_gset(n / 2), regular_gset(n - n / 2)};
  for (auto _ : state) benchmark::DoNotOptimize(induce(factors));
}
BENCHMARK(BM_InduceRegular)->Arg(4)->Arg(5);

// --- qo ----------------------------------------------------------------

static void BM_QoTensor(benchmark::State& state) {
  int top = static_cast<int>(state.range(0));
  SymSeq a = corpus_ass(top).seq;
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, a));
}
BENCHMARK(BM_QoTensor)->Arg(3)->Arg(4);

static void BM_QoCompose(benchmark::State& state) {
  int top = static_cast<int>(state.range(0));
  SymSeq a = corpus_com_pos(top).seq;
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, a));
}
BENCHMARK(BM_QoCompose)->Arg(3)->Arg(4);

static void BM_QoEval(benchmark::State& state) {
  SymSeq a = corpus_ass(3).seq;
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval_seq(a, k).class_count());
}
BENCHMARK(BM_QoEval)->Arg(2)->Arg(3);

static void BM_OperadCheck(benchmark::State& state) {
  Operad o = corpus_ass(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(operad_check(o).ok);
}
BENCHMARK(BM_OperadCheck)->Arg(3)->Arg(4);

static void BM_OperadOracle(benchmark::State& state) {
  Operad o = corpus_ass(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_law_check(o).ok);
}
BENCHMARK(BM_OperadOracle)->Arg(3)->Arg(4);

// --- qc ----------------------------------------------------------------

static void BM_QcCompose(benchmark::State& state) {
  FinFunctor f = powerset_functor(4);
  FinFunctor g = identity_functor(4);
  for (auto _ : state) benchmark::DoNotOptimize(compose_qc(f, g).sizes.back());
}
BENCHMARK(BM_QcCompose);

static void BM_QcNaiveEval(benchmark::State& state) {
  FinFunctor f = powerset_functor(4);
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(naive_eval_qc(f, k).classes);
}
BENCHMARK(BM_QcNaiveEval)->Arg(2)->Arg(3);

static void BM_MonadCheck(benchmark::State& state) {
  AlgebraicMonad m = powerset_monad(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monad_check(m).ok);
}
BENCHMARK(BM_MonadCheck)->Arg(2)->Arg(3);

// --- qa ----------------------------------------------------------------

static void BM_QaDayTensor(benchmark::State& state) {
  int top = static_cast<int>(state.range(0));
  FinPresheaf p = functions_algebrad(and_monoid(), top).algebra.presheaf;
  for (auto _ : state) benchmark::DoNotOptimize(day_tensor(p, p).sizes.back());
}
BENCHMARK(BM_QaDayTensor)->Arg(2)->Arg(3);

static void BM_QaCompose(benchmark::State& state) {
  QaAlgebrad s = functions_algebrad(and_monoid(), static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(compose_qa(s.algebra.presheaf, s.algebra).sizes.back());
}
BENCHMARK(BM_QaCompose)->Arg(2)->Arg(3);

static void BM_AlgebradCheck(benchmark::State& state) {
  QaAlgebrad s = functions_algebrad(and_monoid(), static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(comm_alg_check(s.algebra).ok && algebrad_check(s).ok);
}
BENCHMARK(BM_AlgebradCheck)->Arg(2)->Arg(3);

static void BM_QaNaiveEval(benchmark::State& state) {
  FinPresheaf p = functions_algebrad(and_monoid(), 3).algebra.presheaf;
  FiniteCommMonoid a = and_monoid();
  for (auto _ : state) benchmark::DoNotOptimize(naive_eval_qa(p, a).classes);
}
BENCHMARK(BM_QaNaiveEval);

BENCHMARK_MAIN();
