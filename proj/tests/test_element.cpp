#include "doctest.h"

#include "helpers.hpp"
#include "potiso/errors.hpp"

using namespace potiso;
using namespace testutil;

TEST_CASE("element values read off the representation") {
  // all-zero element
  CHECK(qel(br({}, 0)).value(5) == Rat(0));
  // even coordinates come from the branch, odd from the pattern
  Element x = qel(br({3}, 0), {{0, 7}});
  CHECK(x.value(0) == Rat(3));
  CHECK(x.value(1) == Rat(7));
  CHECK(x.value(2) == Rat(0));
  // canonical all-ones designated element
  CHECK(fones(br({}, 1)).value(7) == Rat(1));
}

TEST_CASE("canonical forms collapse equal denotations") {
  CHECK(br({0}, 0) == br({}, 0));
  CHECK(br({3, 0, 0}, 0) == br({3}, 0));
  CHECK(qel(br({0}, 0)) == qel(br({}, 0)));
  CHECK(odd({{2, 0}}) == odd({}));
}

TEST_CASE("mode constraints are enforced") {
  CHECK_THROWS_AS(Element(Mode::Qtree, br({}, 0), OddPattern::allOnes()),
                  DomainError);
  CHECK_THROWS_AS(fel(br({2}, 0)), DomainError);
  CHECK_THROWS_AS(fel(br({}, 0), {{0, 2}}), DomainError);
}

TEST_CASE("comparison matches the materialization oracle") {
  Element zero = qel(br({}, 0));
  CHECK(compareElements(zero, zero).order == Ordering::Equal);
  CHECK_FALSE(compareElements(zero, zero).firstDifference.has_value());

  Element bumped = qel(br({}, 0), {{0, 1}});
  CompareResult cmp = compareElements(zero, bumped);
  CHECK(cmp.order == Ordering::Less);
  CHECK(cmp.firstDifference == 1);

  Element left = qel(br({0, 2}, 0));
  Element right = qel(br({0, 1}, 0));
  cmp = compareElements(left, right);
  CHECK(cmp.order == Ordering::Greater);
  CHECK(cmp.firstDifference == 2);
  CHECK(firstDiffOracle(left, right) == 2);

  CHECK_THROWS_AS(compareElements(zero, fel(br({}, 0))), DomainError);
}

TEST_CASE("comparison decides differences in the periodic tails") {
  // branch tails split after the common prefix is exhausted
  Element laterOne = qel(br({0}, 1));  // 0,0,1,0,1,...
  Element zero = qel(br({}, 0));
  CompareResult cmp = compareElements(laterOne, zero);
  CHECK(cmp.order == Ordering::Greater);
  CHECK(cmp.firstDifference == 2);
  CHECK(firstDiffOracle(laterOne, zero) == 2);

  // eventual odd values split one step later
  Element ones = fones(br({}, 0));  // 0,1,0,1,...
  Element ferZero = fel(br({}, 0));
  cmp = compareElements(ones, ferZero);
  CHECK(cmp.order == Ordering::Greater);
  CHECK(cmp.firstDifference == 1);
  CHECK(meetLength(ones, ferZero) == 1);

  // designated elements on branches agreeing to a deep prefix
  Element deepOnes = fones(br({0, 0, 1}, 0));
  Element shallowOnes = fones(br({}, 0));
  cmp = compareElements(deepOnes, shallowOnes);
  CHECK(cmp.firstDifference == 4);
  CHECK(firstDiffOracle(deepOnes, shallowOnes) == 4);
}

TEST_CASE("comparison is a strict total order on the pool") {
  auto pool = qtreePool();
  for (const Element& x : pool) {
    for (const Element& y : pool) {
      CompareResult cmp = compareElements(x, y);
      CompareResult rev = compareElements(y, x);
      if (x == y) {
        CHECK(cmp.order == Ordering::Equal);
      } else {
        CHECK(cmp.order != Ordering::Equal);
        CHECK((cmp.order == Ordering::Less) == (rev.order == Ordering::Greater));
        CHECK(cmp.firstDifference == firstDiffOracle(x, y));
      }
      for (const Element& z : pool) {
        if (elementLess(x, y) && elementLess(y, z)) CHECK(elementLess(x, z));
      }
    }
  }
}

TEST_CASE("meet lengths") {
  Element zero = qel(br({}, 0));
  CHECK(meetLength(zero, qel(br({}, 0), {{0, 1}})) == 1);
  CHECK(meetLength(qel(br({}, 0), {{1, 4}}), zero) == 3);
  CHECK_THROWS_AS(meetLength(zero, qel(br({0}, 0))), DomainError);

  auto pool = qtreePool();
  for (const Element& x : pool) {
    for (const Element& y : pool) {
      if (x == y) continue;
      CHECK(meetLength(x, y) == meetLength(y, x));
      std::size_t m = meetLength(x, y);
      for (std::size_t i = 0; i < m; ++i) CHECK(x.value(i) == y.value(i));
      CHECK(x.value(m) != y.value(m));
      for (const Element& z : pool) {
        if (z == x || z == y) continue;
        // ultrametric: meet(x,z) >= min(meet(x,y), meet(y,z))
        CHECK(meetLength(x, z) >=
              std::min(meetLength(x, y), meetLength(y, z)));
      }
    }
  }
}

TEST_CASE("prefix words") {
  CHECK(qel(br({}, 0)).prefixWord(0).empty());
  Element x = qel(br({3}, 0), {{0, 7}});
  CHECK(x.prefixWord(3) == PrefixWord{Rat(3), Rat(7), Rat(0)});
  CHECK(fones(br({}, 1)).prefixWord(4) ==
        PrefixWord{Rat(1), Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("literals are bit-exact") {
  Element x = qel(br({3}, 0), {{0, 7}});
  CHECK(x.literal() == "eta=[3|0] odd={0:7}");
  CHECK(Element::parseLiteral(Mode::Qtree, "eta=[3|0] odd={0:7}") == x);
  CHECK(fones(br({}, 1)).literal() == "eta=[|1] odd=ALL1");
  CHECK(Element(Mode::Qtree, br({}, 0), OddPattern::fromSupport({{0, Rat(1, 2)}}))
            .literal() == "eta=[|0] odd={0:1/2}");

  for (const Element& e : qtreePool()) {
    CHECK(Element::parseLiteral(Mode::Qtree, e.literal()) == e);
  }
  for (const Element& e : ferPool()) {
    CHECK(Element::parseLiteral(Mode::Fer, e.literal()) == e);
  }
}

TEST_CASE("literal parse errors") {
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Qtree, "eta=[3|0]"), ParseError);
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Qtree, "eta=[3|0] odd={0:7} x"),
                  ParseError);
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Qtree, "eta=[3|] odd={}"), ParseError);
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Qtree, "eta=[3|0] odd={0:7,0:8}"),
                  ParseError);
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Qtree, "eta=[|0] odd=ALL1"),
                  DomainError);
  CHECK_THROWS_AS(Element::parseLiteral(Mode::Fer, "eta=[|0] odd={0:2}"),
                  DomainError);
  // degenerate zero entries denote the default and vanish
  CHECK(Element::parseLiteral(Mode::Qtree, "eta=[|0] odd={0:0}") == qel(br({}, 0)));
}

TEST_CASE("grades order the canonical enumeration") {
  CHECK(elementGrade(qel(br({}, 0))) == 0);
  CHECK(elementGrade(qel(br({}, 0), {{0, 1}})) == 2);
  CHECK(elementGrade(qel(br({}, 0), {{1, 1}})) == 3);
  CHECK(elementGrade(fones(br({}, 0))) == 4);
  CHECK(elementGrade(qel(br({1}, 0))) == 2);
  CHECK(canonicalElementOrder(qel(br({}, 0)), qel(br({}, 0), {{0, 1}})));
}
