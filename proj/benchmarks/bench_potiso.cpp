#include <benchmark/benchmark.h>

#include "potiso/ccc.hpp"
#include "potiso/density.hpp"
#include "potiso/oracle.hpp"
#include "potiso/structure.hpp"

namespace {

using namespace potiso;

SubstructureSpec ferH() {
  return SubstructureSpec(Mode::Fer, BranchFamily::rule(1, {Rat(0), Rat(1)}, {Rat(0)}));
}

Element deepElement(std::size_t shift) {
  std::map<std::size_t, Rat> support;
  support.emplace(shift, Rat(1));
  support.emplace(shift + 3, Rat(1));
  return Element(Mode::Fer, BranchSpec(), OddPattern::fromSupport(std::move(support)));
}

void BM_CompareElements(benchmark::State& state) {
  Element x = deepElement(4);
  Element y = deepElement(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compareElements(x, y));
  }
}
BENCHMARK(BM_CompareElements);

void BM_MeetLength(benchmark::State& state) {
  Element x = deepElement(4);
  Element y = deepElement(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(meetLength(x, y));
  }
}
BENCHMARK(BM_MeetLength);

void BM_ValidateCondition(benchmark::State& state) {
  SubstructureSpec spec = ferH();
  std::vector<ConditionPair> pairs;
  for (std::size_t i = 0; i < 8; ++i) {
    Element e = deepElement(2 * i);
    pairs.push_back(ConditionPair{e, e});
  }
  Condition p = Condition::make(spec, spec, std::move(pairs));
  for (auto _ : state) {
    benchmark::DoNotOptimize(validateCondition(p));
  }
}
BENCHMARK(BM_ValidateCondition);

void BM_Signature(benchmark::State& state) {
  SubstructureSpec spec = ferH();
  std::vector<ConditionPair> pairs;
  for (std::size_t i = 0; i < 8; ++i) {
    Element e = deepElement(2 * i);
    pairs.push_back(ConditionPair{e, e});
  }
  Condition p = Condition::make(spec, spec, std::move(pairs));
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditionSignature(p));
  }
}
BENCHMARK(BM_Signature);

void BM_FindWitness(benchmark::State& state) {
  SubstructureSpec spec = ferH();
  PrefixWord s = {Rat(0), Rat(1), Rat(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(findWitness(spec, BranchSpec(), s, Rat(1)));
  }
}
BENCHMARK(BM_FindWitness);

void BM_Extend(benchmark::State& state) {
  SubstructureSpec spec = ferH();
  Element a = deepElement(2);
  Element b = deepElement(7);
  Condition p = Condition::make(spec, spec, {{a, a}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(extendCondition(p, b));
  }
}
BENCHMARK(BM_Extend);

void BM_GenericBuild(benchmark::State& state) {
  SubstructureSpec spec = ferH();
  std::size_t steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(genericBuild(spec, spec, steps));
  }
}
BENCHMARK(BM_GenericBuild)->Arg(16)->Arg(64);

void BM_AmalgamationAuditTiny(benchmark::State& state) {
  BoundedUniverse u;
  u.mode = Mode::Fer;
  u.coords = {Rat(0), Rat(1)};
  u.maxPrefixLen = 1;
  u.tails = {Rat(0)};
  u.maxSupportSize = 1;
  u.maxOddIndex = 1;
  u.maxDomainSize = 2;
  u.includeDesignated = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustiveAmalgamationAudit(u));
  }
}
BENCHMARK(BM_AmalgamationAuditTiny);

}  // namespace

BENCHMARK_MAIN();
