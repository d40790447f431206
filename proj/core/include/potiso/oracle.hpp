#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "potiso/ccc.hpp"
#include "potiso/condition.hpp"
#include "potiso/density.hpp"

namespace potiso {

// Desk-scale verification substrate: the induced element and condition sets
// are finite and enumerable in canonical order.
struct BoundedUniverse {
  Mode mode = Mode::Qtree;
  std::vector<Rat> coords;       // coordinate set for branch values and odd values
  std::size_t maxPrefixLen = 0;  // branch prefix length bound
  std::vector<Rat> tails;        // allowed tail values
  std::size_t maxSupportSize = 0;
  std::size_t maxOddIndex = 0;   // inclusive pattern index bound
  std::size_t maxDomainSize = 0;
  bool includeDesignated = false;  // fer only: include the all-ones elements

  std::vector<BranchSpec> branches() const;
  std::vector<Element> elements() const;  // canonical (grade, literal) order
  SubstructureSpec fullSpec() const;
  // Distinct universe elements always differ inside this window; also bounds
  // every meet length and classification depth over the universe.
  std::size_t materializationDepth() const;
};

// Standard acceptance universes.
BoundedUniverse standardQtreeUniverse();
BoundedUniverse standardFerUniverse();

struct AuditBudget {
  std::uint64_t maxConditions = 5'000'000;
  std::uint64_t maxChecks = 500'000'000;
};

// Every injective, membership-respecting pair assignment over the universe
// (domain size <= bound), valid or not.  Canonical order: domain size, then
// domain combination, then image tuple.
void enumerateCandidateConditions(const BoundedUniverse& u,
                                  const std::function<void(const Condition&)>& sink);

// The valid conditions only: the forcing poset restricted to the universe.
void enumerateConditions(const BoundedUniverse& u,
                         const std::function<void(const Condition&)>& sink);

std::vector<Condition> collectConditions(const BoundedUniverse& u);

struct AmalgamationAuditReport {
  std::uint64_t conditionCount = 0;
  std::uint64_t classCount = 0;
  std::uint64_t pairsChecked = 0;
  std::vector<std::string> violations;  // full instance dumps (expected empty)
  std::vector<std::pair<std::string, std::uint64_t>> signatureCensus;
};

// For every ordered pair of valid same-signature conditions, checks that the
// union merges and validates.  Zero violations is the ccc surrogate.
AmalgamationAuditReport exhaustiveAmalgamationAudit(const BoundedUniverse& u,
                                                    AuditBudget budget = {});

struct ExtensionAuditReport {
  std::uint64_t conditionCount = 0;
  std::uint64_t extensionsRun = 0;
  std::vector<std::string> failures;  // full instance dumps (expected empty)
  std::map<std::string, std::uint64_t> caseHistogram;
};

// For every valid condition and every eligible new domain element, runs the
// one-point extension and re-validates.
ExtensionAuditReport exhaustiveExtensionAudit(const BoundedUniverse& u,
                                              AuditBudget budget = {});

// Materializes every element to `depth` coordinates and re-derives branch
// equality, order, and meets from the raw words.  Fully independent of the
// element-level comparison path.  Throws DomainError when the depth fails to
// separate two distinct elements.
bool bruteforceValidate(const Condition& p, std::size_t depth);

// Smallest safe materialization depth for a condition.
std::size_t bruteforceAutoDepth(const Condition& p);

struct TreeSwapGenerator {
  std::string node;  // binary word labeling the internal node ("" = root)
  std::vector<std::size_t> permutation;  // images of the 2^d leaves
};

struct AutomorphismReport {
  std::size_t depth = 0;
  bool tagged = false;
  std::uint64_t count = 0;
  std::vector<TreeSwapGenerator> generators;
};

// Enumerates the permutations of the depth-d binary truncation preserving
// every E_i (i <= d); tagged additionally pins all even coordinates.
// The rigidity probe of the finite lab.
AutomorphismReport truncationAutomorphisms(std::size_t depth, bool tagged);

}  // namespace potiso
