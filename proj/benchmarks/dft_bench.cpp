#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "cydft/transform.hpp"

namespace {

using cydft::FieldElement;
using cydft::TransformPlan;

std::uint32_t poly_for(unsigned m) {
  switch (m) {
    case 3: return 0xB;
    case 4: return 0x13;
    case 6: return 0x43;
    case 8: return 0x11D;
  }
  return 0;
}

const TransformPlan& plan_for(unsigned m) {
  static std::map<unsigned, TransformPlan> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache
             .emplace(m, TransformPlan::build(
                             cydft::FieldContext::make(m, poly_for(m)),
                             cydft::CosetOrdering::SizeDescending))
             .first;
  }
  return it->second;
}

const cydft::EvalSchedule& schedule_for(unsigned m) {
  static std::map<unsigned, cydft::EvalSchedule> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache.emplace(m, cydft::build_schedule(plan_for(m))).first;
  }
  return it->second;
}

std::vector<FieldElement> random_vector(const cydft::FieldContext& field,
                                        std::mt19937_64& rng) {
  std::vector<FieldElement> v(field.length());
  for (auto& e : v) e = FieldElement(std::uint32_t(rng()) & field.length());
  return v;
}

void BM_FieldMul(benchmark::State& state) {
  const auto& field = plan_for(8).field();
  std::mt19937_64 rng(1);
  std::vector<FieldElement> xs(1024), ys(1024);
  for (auto& e : xs) e = FieldElement(std::uint32_t(rng()) & 0xFF);
  for (auto& e : ys) e = FieldElement(std::uint32_t(rng()) & 0xFF);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(field.mul(xs[i & 1023], ys[i & 1023]));
    ++i;
  }
}
BENCHMARK(BM_FieldMul);

void BM_NaiveDft(benchmark::State& state) {
  unsigned m = unsigned(state.range(0));
  const auto& field = plan_for(m).field();
  std::mt19937_64 rng(2);
  auto v = random_vector(field, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cydft::naive_dft(field, v));
  }
}
BENCHMARK(BM_NaiveDft)->Arg(3)->Arg(4)->Arg(6)->Arg(8);

void BM_CyclotomicDft(benchmark::State& state) {
  unsigned m = unsigned(state.range(0));
  const auto& plan = plan_for(m);
  const auto& schedule = schedule_for(m);
  std::mt19937_64 rng(3);
  auto v = random_vector(plan.field(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cydft::cyclotomic_dft(plan, schedule, v));
  }
}
BENCHMARK(BM_CyclotomicDft)->Arg(3)->Arg(4)->Arg(6)->Arg(8);

void BM_CyclotomicIdft(benchmark::State& state) {
  unsigned m = unsigned(state.range(0));
  const auto& plan = plan_for(m);
  const auto& schedule = schedule_for(m);
  std::mt19937_64 rng(4);
  auto F = random_vector(plan.field(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cydft::cyclotomic_idft(plan, schedule, F));
  }
}
BENCHMARK(BM_CyclotomicIdft)->Arg(3)->Arg(8);

void BM_ForwardViaInverseFactors(benchmark::State& state) {
  unsigned m = unsigned(state.range(0));
  const auto& plan = plan_for(m);
  const auto& schedule = schedule_for(m);
  std::mt19937_64 rng(5);
  auto v = random_vector(plan.field(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cydft::forward_via_inverse_factors(plan, schedule, v));
  }
}
BENCHMARK(BM_ForwardViaInverseFactors)->Arg(3)->Arg(8);

void BM_PlanBuild(benchmark::State& state) {
  unsigned m = unsigned(state.range(0));
  std::uint32_t poly = poly_for(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        TransformPlan::build(cydft::FieldContext::make(m, poly),
                             cydft::CosetOrdering::SizeDescending));
  }
}
BENCHMARK(BM_PlanBuild)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
