#pragma once

#include <optional>
#include <string>
#include <vector>

#include "potiso/condition.hpp"

namespace potiso {

// Which branch of the one-point extension analysis fired.
enum class CaseTag {
  EmptyDomain,
  EndpointLow,
  EndpointHigh,
  Case1Odd,
  Case1Even,
  Case2,
  FerPrefixTarget,
};

std::string_view caseTagName(CaseTag tag);

struct ExtensionTrace {
  CaseTag tag = CaseTag::EmptyDomain;
  BranchSpec witnessBranch;    // eta: the branch of the new domain element
  PrefixWord constraintWord;   // s^r handed to the witness search; empty for
                               // the unconstrained empty-domain case
  std::optional<std::size_t> lowerNeighbor;  // index into p's sorted pairs
  std::optional<std::size_t> upperNeighbor;
  std::optional<Element> image;  // always set on returned traces
};

struct ExtendResult {
  Condition condition;
  ExtensionTrace trace;
};

// One-point density: a valid q extending p with dom q = dom p + {a}.
// Qtree mode locates a among the sorted domain and applies the case split
// (free odd values: midpoint of the flanking image values in the interior
// case, neighbor value +-1 at the endpoints); fer mode builds the image
// prefix directly from the nearest-meet neighbor, flipping the bit at an odd
// meet.  Throws NoWitnessError when the target is not amenable at the needed
// constraint, ContractViolationError if the extension fails to validate.
ExtendResult extendCondition(const Condition& p, const Element& a);

// Re-runs the recorded constraint against the target structure; must
// reproduce the traced image exactly.
Element replayTrace(const SubstructureSpec& target, const ExtensionTrace& trace);

struct GenericStep {
  std::size_t step = 0;  // 1-based
  bool forward = true;
  Element added;  // the enumeration element covered by this step
  ExtensionTrace trace;
};

struct GenericRun {
  Condition condition;
  std::vector<GenericStep> log;
};

// Finite back-and-forth run: alternately extends by the least uncovered
// element of the source enumeration and (through the inverse condition) of
// the target enumeration, starting forward.  After N steps the condition is
// valid and covers the first ceil(N/2) source and floor(N/2) target
// enumeration elements.  Fully deterministic.
GenericRun genericBuild(const SubstructureSpec& source,
                        const SubstructureSpec& target, std::size_t steps);

}  // namespace potiso
