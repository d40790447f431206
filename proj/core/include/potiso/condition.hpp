#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "potiso/element.hpp"
#include "potiso/structure.hpp"

namespace potiso {

struct ConditionPair {
  Element a;  // domain element, in the source
  Element b;  // image, in the target
  bool operator==(const ConditionPair&) const = default;
};

// A forcing condition: a finite partial map between two substructures,
// pairs kept sorted by lexicographic order of the domain element.  The type
// guarantees membership and injectivity; the preservation clauses (branch,
// order, meet) are checked by validateCondition, never assumed.
class Condition {
 public:
  static Condition empty(SubstructureSpec source, SubstructureSpec target);
  static Condition make(SubstructureSpec source, SubstructureSpec target,
                        std::vector<ConditionPair> pairs);
  static Condition make(std::shared_ptr<const SubstructureSpec> source,
                        std::shared_ptr<const SubstructureSpec> target,
                        std::vector<ConditionPair> pairs);

  const SubstructureSpec& source() const { return *source_; }
  const SubstructureSpec& target() const { return *target_; }
  const std::shared_ptr<const SubstructureSpec>& sourcePtr() const { return source_; }
  const std::shared_ptr<const SubstructureSpec>& targetPtr() const { return target_; }
  const std::vector<ConditionPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  Mode mode() const { return source_->mode(); }

  bool hasDomain(const Element& a) const;
  std::optional<Element> imageOf(const Element& a) const;
  Condition withPair(ConditionPair pair) const;

  std::string dump() const;  // one-line instance dump for findings

  bool operator==(const Condition& o) const;

 private:
  Condition() = default;
  std::shared_ptr<const SubstructureSpec> source_;
  std::shared_ptr<const SubstructureSpec> target_;
  std::vector<ConditionPair> pairs_;
};

enum class ViolationKind { Branch, Order, Meet };

std::string_view violationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t i = 0;  // pair index (Branch) or first pair index (Order/Meet)
  std::size_t j = 0;  // second pair index, unused for Branch
  std::size_t domainPosition = 0;  // witnessing sequence index, domain side
  std::size_t imagePosition = 0;   // witnessing sequence index, image side
};

struct ValidationReport {
  bool valid = true;
  std::optional<Violation> violation;
};

// Full atomic-diagram check: per-pair branch equality, order preservation
// (qtree mode only: the bit structure carries no order), and meet-length
// preservation for every pair of pairs.  Clause-major scan, first failure
// reported.
ValidationReport validateCondition(const Condition& p);

inline bool isValidCondition(const Condition& p) {
  return validateCondition(p).valid;
}

// Swaps source/target and every pair; validity-preserving (all three
// preservation clauses are symmetric).
Condition invertCondition(const Condition& p);

struct UnionClash {
  enum class Kind { DomainTwice, ImageTwice } kind;
  Element where;
};

struct UnionResult {
  std::optional<Condition> condition;
  std::optional<UnionClash> clash;
};

// Merges the pair lists, identifying coinciding pairs.  Reports a clash when
// some domain element is mapped two ways or some image is hit twice.  Does
// not validate.
UnionResult unionRaw(const Condition& p, const Condition& q);

}  // namespace potiso
