#include "potiso/density.hpp"

#include <algorithm>

#include "potiso/errors.hpp"
#include "potiso/structure.hpp"

namespace potiso {

namespace {

// Image prefix of length m copied from a neighboring pair: equals the image
// of the common initial segment because conditions preserve meets.
PrefixWord copiedImagePrefix(const ConditionPair& neighbor, std::size_t m) {
  return neighbor.b.prefixWord(m);
}

Element materializeImage(const Condition& p, const BranchSpec& branch,
                         const PrefixWord& constraint) {
  auto witness = findMinimalWithPrefix(p.target(), branch, constraint);
  if (!witness) throw NoWitnessError(branch, constraint);
  return *witness;
}

ExtensionTrace qtreeTrace(const Condition& p, const Element& a) {
  const auto& pairs = p.pairs();
  const BranchSpec& sigma = a.branch();
  ExtensionTrace trace;
  trace.witnessBranch = sigma;

  if (pairs.empty()) {
    trace.tag = CaseTag::EmptyDomain;
    return trace;
  }

  // pairs are sorted by the domain order; find the flanking elements.
  std::size_t low = pairs.size();  // largest index with a_low < a
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (elementLess(pairs[i].a, a)) low = i;
  }

  if (low == pairs.size()) {  // a below the whole domain
    std::size_t m = meetLength(a, pairs.front().a);
    trace.tag = CaseTag::EndpointLow;
    trace.upperNeighbor = 0;
    trace.constraintWord = copiedImagePrefix(pairs.front(), m);
    if (m % 2 == 0) {
      trace.constraintWord.push_back(sigma.at(m / 2));
    } else {
      trace.constraintWord.push_back(pairs.front().b.value(m) - Rat(1));
    }
    return trace;
  }
  if (low == pairs.size() - 1) {  // a above the whole domain
    std::size_t m = meetLength(pairs.back().a, a);
    trace.tag = CaseTag::EndpointHigh;
    trace.lowerNeighbor = pairs.size() - 1;
    trace.constraintWord = copiedImagePrefix(pairs.back(), m);
    if (m % 2 == 0) {
      trace.constraintWord.push_back(sigma.at(m / 2));
    } else {
      trace.constraintWord.push_back(pairs.back().b.value(m) + Rat(1));
    }
    return trace;
  }

  // Interior: a_low < a < a_high.
  std::size_t high = low + 1;
  trace.lowerNeighbor = low;
  trace.upperNeighbor = high;
  std::size_t mLow = meetLength(pairs[low].a, a);
  std::size_t mHigh = meetLength(a, pairs[high].a);

  if (mLow == mHigh) {
    // All three diverge at the same index m.
    std::size_t m = mLow;
    trace.constraintWord = copiedImagePrefix(pairs[low], m);
    if (m % 2 == 0) {
      // The even coordinate is a's own branch value; order is automatic
      // because the images carry the same branches.
      trace.tag = CaseTag::Case1Even;
      trace.constraintWord.push_back(sigma.at(m / 2));
    } else {
      trace.tag = CaseTag::Case1Odd;
      trace.constraintWord.push_back(
          Rat::midpoint(pairs[low].b.value(m), pairs[high].b.value(m)));
    }
    return trace;
  }

  // One-sided: only the nearest neighbor constrains the new image at m.
  trace.tag = CaseTag::Case2;
  if (mLow > mHigh) {
    std::size_t m = mLow;
    trace.constraintWord = copiedImagePrefix(pairs[low], m);
    if (m % 2 == 0) {
      trace.constraintWord.push_back(sigma.at(m / 2));
    } else {
      trace.constraintWord.push_back(pairs[low].b.value(m) + Rat(1));
    }
  } else {
    std::size_t m = mHigh;
    trace.constraintWord = copiedImagePrefix(pairs[high], m);
    if (m % 2 == 0) {
      trace.constraintWord.push_back(sigma.at(m / 2));
    } else {
      trace.constraintWord.push_back(pairs[high].b.value(m) - Rat(1));
    }
  }
  return trace;
}

ExtensionTrace ferTrace(const Condition& p, const Element& a) {
  const auto& pairs = p.pairs();
  const BranchSpec& sigma = a.branch();
  ExtensionTrace trace;
  trace.witnessBranch = sigma;

  if (pairs.empty()) {
    trace.tag = CaseTag::EmptyDomain;
    return trace;
  }

  // Nearest-meet neighbor; a flip at an odd meet separates the image from
  // every tied neighbor at once (their images agree up to and at m).
  std::size_t nearest = 0;
  std::size_t m = meetLength(pairs[0].a, a);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    std::size_t mi = meetLength(pairs[i].a, a);
    if (mi > m) {
      m = mi;
      nearest = i;
    }
  }
  trace.tag = CaseTag::FerPrefixTarget;
  trace.lowerNeighbor = nearest;
  trace.constraintWord = copiedImagePrefix(pairs[nearest], m);
  if (m % 2 == 0) {
    trace.constraintWord.push_back(sigma.at(m / 2));
  } else {
    Rat neighborBit = pairs[nearest].b.value(m);
    trace.constraintWord.push_back(neighborBit == Rat(0) ? Rat(1) : Rat(0));
  }
  return trace;
}

}  // namespace

std::string_view caseTagName(CaseTag tag) {
  switch (tag) {
    case CaseTag::EmptyDomain: return "empty-domain";
    case CaseTag::EndpointLow: return "endpoint-low";
    case CaseTag::EndpointHigh: return "endpoint-high";
    case CaseTag::Case1Odd: return "case1-odd";
    case CaseTag::Case1Even: return "case1-even";
    case CaseTag::Case2: return "case2";
    case CaseTag::FerPrefixTarget: return "fer-prefix-target";
  }
  return "unknown";
}

ExtendResult extendCondition(const Condition& p, const Element& a) {
  if (a.mode() != p.mode())
    throw DomainError("new domain element mode does not match the condition");
  if (!p.source().contains(a))
    throw DomainError("new domain element " + a.literal() +
                      " is not in the source structure");
  if (p.hasDomain(a))
    throw DomainError("element " + a.literal() + " is already in the domain");

  ExtensionTrace trace =
      p.mode() == Mode::Qtree ? qtreeTrace(p, a) : ferTrace(p, a);
  trace.image = materializeImage(p, trace.witnessBranch, trace.constraintWord);

  // Incremental validity: p is valid, so only the new pair needs checking
  // against each old one (the clauses are pairwise).
  bool ok = a.branch() == trace.image->branch();
  for (const ConditionPair& pair : p.pairs()) {
    if (!ok) break;
    if (p.mode() == Mode::Qtree &&
        elementLess(pair.a, a) != elementLess(pair.b, *trace.image)) {
      ok = false;
    }
    if (ok && meetLength(pair.a, a) != meetLength(pair.b, *trace.image)) ok = false;
  }
  Condition q = p.withPair(ConditionPair{a, *trace.image});
  if (!ok) {
    throw ContractViolationError(
        "one-point extension failed to validate: p=" + p.dump() +
        " a=" + a.literal() + " q=" + q.dump() + " case=" +
        std::string(caseTagName(trace.tag)));
  }
  return ExtendResult{std::move(q), std::move(trace)};
}

Element replayTrace(const SubstructureSpec& target, const ExtensionTrace& trace) {
  auto witness = findMinimalWithPrefix(target, trace.witnessBranch, trace.constraintWord);
  if (!witness) throw NoWitnessError(trace.witnessBranch, trace.constraintWord);
  return *witness;
}

namespace {

// Lazily extended view of enumerateElements.
class ElementStream {
 public:
  explicit ElementStream(const SubstructureSpec& spec) : spec_(spec) {}

  const Element& at(std::size_t index) {
    while (produced_.size() <= index) {
      produced_ = enumerateElements(
          spec_, std::max<std::size_t>(2 * produced_.size(), 32));
    }
    return produced_[index];
  }

 private:
  const SubstructureSpec& spec_;
  std::vector<Element> produced_;
};

}  // namespace

GenericRun genericBuild(const SubstructureSpec& source,
                        const SubstructureSpec& target, std::size_t steps) {
  if (source.mode() != target.mode())
    throw DomainError("generic build between structures of different modes");
  GenericRun run{Condition::empty(source, target), {}};
  ElementStream sourceStream(source);
  ElementStream targetStream(target);

  for (std::size_t step = 1; step <= steps; ++step) {
    bool forward = step % 2 == 1;
    Condition view = forward ? run.condition : invertCondition(run.condition);
    ElementStream& stream = forward ? sourceStream : targetStream;
    std::size_t i = 0;
    while (view.hasDomain(stream.at(i))) ++i;
    Element next = stream.at(i);
    ExtendResult extended = extendCondition(view, next);
    run.condition = forward ? std::move(extended.condition)
                            : invertCondition(extended.condition);
    run.log.push_back(GenericStep{step, forward, std::move(next),
                                  std::move(extended.trace)});
  }
  return run;
}

}  // namespace potiso
