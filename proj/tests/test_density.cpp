#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "potiso/density.hpp"
#include "potiso/errors.hpp"
#include "potiso/oracle.hpp"

using namespace potiso;
using namespace testutil;

namespace {

SubstructureSpec qtreeH() {
  return SubstructureSpec(Mode::Qtree, BranchFamily::rule(1, {Rat(0), Rat(1)}, {Rat(0)}));
}

SubstructureSpec ferH() {
  return SubstructureSpec(Mode::Fer, BranchFamily::rule(1, {Rat(0), Rat(1)}, {Rat(0)}));
}

Condition qcond(std::vector<ConditionPair> pairs) {
  return Condition::make(qtreeH(), qtreeH(), std::move(pairs));
}

// Source side of the acceptance generic runs: one designated element removed
// per branch (the all-zero odd pattern in qtree, the all-ones in fer).
SubstructureSpec qtreeHMinusDesignated() {
  RemovalRule removals;
  for (const BranchSpec& branch : qtreeH().family().enumerate()) {
    removals.explicitRemovals.push_back(qel(branch));
  }
  return SubstructureSpec(Mode::Qtree, qtreeH().family(), std::move(removals));
}

SubstructureSpec ferHMinusDesignated() {
  RemovalRule removals;
  for (const BranchSpec& branch : ferH().family().enumerate()) {
    removals.explicitRemovals.push_back(fones(branch));
  }
  return SubstructureSpec(Mode::Fer, ferH().family(), std::move(removals));
}

}  // namespace

TEST_CASE("extending the empty condition picks the canonical same-branch witness") {
  Condition empty = Condition::empty(qtreeH(), qtreeH());
  Element a = qel(br({1}, 0), {{0, 2}});
  ExtendResult result = extendCondition(empty, a);
  CHECK(result.trace.tag == CaseTag::EmptyDomain);
  CHECK(result.trace.constraintWord.empty());
  CHECK(*result.trace.image == qel(br({1}, 0)));
  CHECK(isValidCondition(result.condition));
}

TEST_CASE("interior extension at an odd meet takes the midpoint") {
  BranchSpec eta = br({}, 0);
  Condition p = qcond({{qel(eta), qel(eta)},
                       {qel(eta, {{0, 2}}), qel(eta, {{0, 1}})}});
  REQUIRE(isValidCondition(p));
  Element a = qel(eta, {{0, 1}});
  ExtendResult result = extendCondition(p, a);
  CHECK(result.trace.tag == CaseTag::Case1Odd);
  CHECK(result.trace.lowerNeighbor == 0);
  CHECK(result.trace.upperNeighbor == 1);
  REQUIRE(result.trace.constraintWord.size() == 2);
  CHECK(result.trace.constraintWord[1] == Rat(1, 2));
  CHECK(result.trace.image->value(1) == Rat(1, 2));
  CHECK(*result.trace.image ==
        Element(Mode::Qtree, eta, OddPattern::fromSupport({{0, Rat(1, 2)}})));
}

TEST_CASE("interior extension at an even meet copies the branch value") {
  SubstructureSpec wide(Mode::Qtree,
                        BranchFamily::rule(1, {Rat(0), Rat(1), Rat(2)}, {Rat(0)}));
  Condition p = Condition::make(
      wide, wide, {{qel(br({}, 0)), qel(br({}, 0))},
                   {qel(br({2}, 0)), qel(br({2}, 0))}});
  Element a = qel(br({1}, 0));
  ExtendResult result = extendCondition(p, a);
  CHECK(result.trace.tag == CaseTag::Case1Even);
  CHECK(result.trace.constraintWord == PrefixWord{Rat(1)});
  CHECK(*result.trace.image == qel(br({1}, 0)));
}

TEST_CASE("one-sided interior and endpoint extensions") {
  BranchSpec eta = br({}, 0);
  Condition p = qcond({{qel(eta), qel(eta)},
                       {qel(eta, {{0, 2}}), qel(eta, {{0, 2}})}});
  // meets the lower neighbor at 3, the upper at 1: lower binding, odd index
  Element interior = qel(eta, {{1, 1}});
  ExtendResult case2 = extendCondition(p, interior);
  CHECK(case2.trace.tag == CaseTag::Case2);
  CHECK(case2.trace.constraintWord == PrefixWord{Rat(0), Rat(0), Rat(0), Rat(1)});

  Element below = qel(eta, {{0, -1}});
  ExtendResult low = extendCondition(p, below);
  CHECK(low.trace.tag == CaseTag::EndpointLow);
  CHECK(low.trace.constraintWord == PrefixWord{Rat(0), Rat(-1)});
  CHECK(low.trace.image->value(1) == Rat(-1));

  Element above = qel(eta, {{0, 3}});
  ExtendResult high = extendCondition(p, above);
  CHECK(high.trace.tag == CaseTag::EndpointHigh);
  CHECK(high.trace.constraintWord == PrefixWord{Rat(0), Rat(3)});
}

TEST_CASE("fer extension copies the nearest image prefix and flips the bit") {
  BranchSpec eta = br({}, 0);
  Condition p = Condition::make(ferH(), ferH(),
                                {{fel(eta), fel(eta, {{0, 1}})}});
  Element a = fel(eta, {{1, 1}});  // meets the neighbor at 3
  ExtendResult result = extendCondition(p, a);
  CHECK(result.trace.tag == CaseTag::FerPrefixTarget);
  CHECK(result.trace.constraintWord ==
        PrefixWord{Rat(0), Rat(1), Rat(0), Rat(1)});
  CHECK(*result.trace.image == fel(eta, {{0, 1}, {1, 1}}));
  CHECK(isValidCondition(result.condition));
}

TEST_CASE("extension preconditions") {
  Condition p = qcond({{qel(br({}, 0)), qel(br({}, 0))}});
  CHECK_THROWS_AS(extendCondition(p, qel(br({}, 0))), DomainError);  // in dom
  CHECK_THROWS_AS(extendCondition(p, qel(br({0, 3}, 0))), DomainError);  // outside
}

TEST_CASE("extension propagates a missing witness as NoWitnessError") {
  SubstructureSpec holed(
      Mode::Qtree, BranchFamily::explicitSet({br({}, 0)}),
      RemovalRule{{}, {ConeRule{br({}, 0), {Rat(0)}, Rat(5)}}});
  Condition p = Condition::make(
      SubstructureSpec(Mode::Qtree, BranchFamily::explicitSet({br({}, 0)})), holed,
      {{qel(br({}, 0), {{0, 4}}), qel(br({}, 0), {{0, 4}})}});
  // the endpoint rule asks for prefix <0,5>, exactly the removed cone
  CHECK_THROWS_AS(extendCondition(p, qel(br({}, 0), {{0, 6}})), NoWitnessError);
}

TEST_CASE("traces replay to the recorded image") {
  Condition p = qcond({{qel(br({}, 0)), qel(br({}, 0))},
                       {qel(br({}, 0), {{0, 2}}), qel(br({}, 0), {{0, 2}})}});
  for (const Element& a : {qel(br({}, 0), {{0, 1}}), qel(br({}, 0), {{1, 1}}),
                           qel(br({}, 0), {{0, 3}})}) {
    ExtendResult result = extendCondition(p, a);
    CHECK(replayTrace(p.target(), result.trace) == *result.trace.image);
  }
}

TEST_CASE("extension soundness over a bounded universe") {
  BoundedUniverse u;
  u.mode = Mode::Fer;
  u.coords = {Rat(0), Rat(1)};
  u.maxPrefixLen = 1;
  u.tails = {Rat(0)};
  u.maxSupportSize = 1;
  u.maxOddIndex = 1;
  u.maxDomainSize = 2;
  u.includeDesignated = true;
  ExtensionAuditReport report = exhaustiveExtensionAudit(u);
  CHECK(report.failures.empty());
  CHECK(report.caseHistogram.at("empty-domain") > 0);
  CHECK(report.caseHistogram.at("fer-prefix-target") > 0);
}

TEST_CASE("generic build: empty run and the identity start") {
  GenericRun none = genericBuild(qtreeH(), qtreeH(), 0);
  CHECK(none.condition.size() == 0);
  CHECK(none.log.empty());

  GenericRun two = genericBuild(qtreeH(), qtreeH(), 2);
  REQUIRE(two.condition.size() == 2);
  auto elems = enumerateElements(qtreeH(), 2);
  CHECK(two.condition.imageOf(elems[0]) == elems[0]);
  CHECK(two.condition.imageOf(elems[1]) == elems[1]);
  CHECK(two.log[0].forward);
  CHECK_FALSE(two.log[1].forward);
}

TEST_CASE("generic build: monotone chain, coverage, and order reduct") {
  SubstructureSpec source = qtreeHMinusDesignated();
  SubstructureSpec target = qtreeH();
  GenericRun previous = genericBuild(source, target, 0);
  for (std::size_t steps = 1; steps <= 8; ++steps) {
    GenericRun run = genericBuild(source, target, steps);
    for (const ConditionPair& pair : previous.condition.pairs()) {
      CHECK(run.condition.imageOf(pair.a) == pair.b);
    }
    CHECK(isValidCondition(run.condition));
    previous = std::move(run);
  }

  GenericRun run = genericBuild(source, target, 40);
  CHECK(isValidCondition(run.condition));
  CHECK(bruteforceValidate(run.condition, bruteforceAutoDepth(run.condition)));
  // forward steps cover the least uncovered source elements in order
  auto firstTwenty = enumerateElements(source, 20);
  for (const Element& x : firstTwenty) CHECK(run.condition.hasDomain(x));
  // the reduct to < is an order isomorphism on its domain
  const auto& pairs = run.condition.pairs();
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    CHECK(elementLess(pairs[i].a, pairs[i + 1].a));
    CHECK(elementLess(pairs[i].b, pairs[i + 1].b));
  }
  // range side: the first backward targets are covered
  Condition inv = invertCondition(run.condition);
  for (const Element& y : enumerateElements(target, 20)) {
    CHECK(inv.hasDomain(y));
  }
}

TEST_CASE("generic build covers designated elements in fer mode") {
  GenericRun run = genericBuild(ferHMinusDesignated(), ferH(), 24);
  CHECK(isValidCondition(run.condition));
  Condition inv = invertCondition(run.condition);
  bool coveredDesignated = false;
  for (const ConditionPair& pair : run.condition.pairs()) {
    CHECK_FALSE(pair.a.odd().isAllOnes());  // removed from the source
    if (pair.b.odd().isAllOnes()) coveredDesignated = true;
  }
  CHECK(coveredDesignated);
  CHECK(inv.size() == run.condition.size());
}

TEST_CASE("trace replay across a generic run log") {
  SubstructureSpec source = ferHMinusDesignated();
  SubstructureSpec target = ferH();
  GenericRun run = genericBuild(source, target, 16);
  for (const GenericStep& step : run.log) {
    const SubstructureSpec& witnessSide = step.forward ? target : source;
    CHECK(replayTrace(witnessSide, step.trace) == *step.trace.image);
  }
}
