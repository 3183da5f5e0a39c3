#include <benchmark/benchmark.h>

#include <random>

#include "nijenhuis/fman.hpp"
#include "nijenhuis/forms.hpp"
#include "nijenhuis/tensor.hpp"
#include "nijenhuis/verify.hpp"

using namespace nijenhuis;

namespace {

RingElem random_poly(std::mt19937& rng, std::size_t n, int terms, int degree) {
  std::uniform_int_distribution<int> coeff(-9, 9), deg(0, degree);
  TermMap map;
  for (int t = 0; t < terms; ++t) {
    Exponent e(n, 0);
    for (auto& x : e) x = static_cast<std::uint32_t>(deg(rng));
    map[e] += Rational(coeff(rng), 1 + (t % 3));
  }
  return RingElem::from_terms(n, map);
}

void BM_PolyMultiply(benchmark::State& state) {
  std::mt19937 rng(11);
  const int terms = static_cast<int>(state.range(0));
  const RingElem a = random_poly(rng, 3, terms, 6), b = random_poly(rng, 3, terms, 6);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(terms);
}
BENCHMARK(BM_PolyMultiply)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SeriesExp(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const RingElem x = RingElem::variable(2, 0, order) + RingElem::variable(2, 1, order);
  for (auto _ : state) benchmark::DoNotOptimize(series_exp(x));
}
BENCHMARK(BM_SeriesExp)->DenseRange(4, 16, 4);

void BM_TorsionJordan(benchmark::State& state) {
  const Form form = jordan_unity_form(static_cast<std::size_t>(state.range(0)), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(check_nijenhuis(form.L));
}
BENCHMARK(BM_TorsionJordan)->DenseRange(2, 6);

void BM_TorsionCompanion(benchmark::State& state) {
  const Form form = companion_dnd_form(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_nijenhuis(form.L));
}
BENCHMARK(BM_TorsionCompanion)->DenseRange(2, 6);

void BM_CharCoefficients(benchmark::State& state) {
  const Form form = toeplitz_form(static_cast<std::size_t>(state.range(0)), Rational(2));
  for (auto _ : state) benchmark::DoNotOptimize(char_coefficients(form.L));
}
BENCHMARK(BM_CharCoefficients)->DenseRange(2, 6);

void BM_FManifoldAxioms(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const RingElem f = RingElem::constant(3, 2);
  const RingElem h = RingElem::variable(3, 1).pow(static_cast<unsigned>(k - 2));
  const FManifoldModel model{thm6_table(k, Sign::plus, h), coordinate_field(3, 0),
                             thm6_euler_field(Rational(0), k, f)};
  for (auto _ : state) benchmark::DoNotOptimize(check_fmanifold_axioms(model));
}
BENCHMARK(BM_FManifoldAxioms)->DenseRange(2, 4);

void BM_FrameProduct(benchmark::State& state) {
  const Form form = toeplitz_form(static_cast<std::size_t>(state.range(0)), Rational(0));
  for (auto _ : state) benchmark::DoNotOptimize(multiplication_on_frame(form.L, form.e));
}
BENCHMARK(BM_FrameProduct)->DenseRange(2, 4);

}  // namespace
BENCHMARK_MAIN();
