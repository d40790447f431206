#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "potiso/element.hpp"
#include "potiso/errors.hpp"

namespace potiso {

// Countable, decidable family of branches: an explicit finite set, or every
// eventually-constant branch with bounded prefix length over a finite
// coordinate set (tails drawn from a possibly smaller set).
class BranchFamily {
 public:
  static BranchFamily explicitSet(std::vector<BranchSpec> branches);
  static BranchFamily rule(std::size_t prefixMax, std::vector<Rat> coords,
                           std::vector<Rat> tails = {});

  bool isRule() const { return isRule_; }
  std::size_t rulePrefixMax() const { return rulePrefixMax_; }
  const std::vector<Rat>& ruleCoords() const { return ruleCoords_; }
  const std::vector<Rat>& ruleTails() const { return ruleTails_; }

  bool contains(const BranchSpec& branch) const;
  // Canonical order: prefix length, then prefix values, then tail.
  std::vector<BranchSpec> enumerate() const;

  bool operator==(const BranchFamily&) const = default;

 private:
  bool isRule_ = false;
  std::vector<BranchSpec> branches_;
  std::size_t rulePrefixMax_ = 0;
  std::vector<Rat> ruleCoords_;
  std::vector<Rat> ruleTails_;
};

// "Remove every element of S_eta extending word^value."
struct ConeRule {
  BranchSpec branch;
  PrefixWord word;
  Rat value;
  bool operator==(const ConeRule&) const = default;
};

struct RemovalRule {
  std::vector<Element> explicitRemovals;
  std::vector<ConeRule> cones;
  bool operator==(const RemovalRule&) const = default;
};

struct Counterexample {
  BranchSpec branch;
  PrefixWord word;  // s, odd length
  Rat value;        // r
};

struct AmenabilityReport {
  enum class Certificate { FiniteRemovals, SearchedToDepth, Counterexample };
  bool amenable = false;
  Certificate certificate = Certificate::FiniteRemovals;
  std::size_t searchDepth = 0;
  std::optional<Counterexample> counterexample;
};

std::string_view certificateName(AmenabilityReport::Certificate c);

// A countable substructure of the ambient tree: the union of the S_eta for
// eta in the family, minus the removals.  In fer mode every S_eta contains
// the designated all-ones element alongside the finitely-supported ones.
class SubstructureSpec {
 public:
  SubstructureSpec(Mode mode, BranchFamily family, RemovalRule removals = {});

  Mode mode() const { return mode_; }
  const BranchFamily& family() const { return family_; }
  const RemovalRule& removals() const { return removals_; }

  bool contains(const Element& x) const;

  bool operator==(const SubstructureSpec&) const = default;

 private:
  Mode mode_;
  BranchFamily family_;
  RemovalRule removals_;
};

// Amenability relative to the spec's branch family: every prefix constraint
// (eta, s, r) with |s| odd and s consistent with eta retains a witness.
// Explicit-finite removals are certified by rule (no prefix cone can be
// exhausted by finitely many points); cone rules trigger a search over all
// constraints derivable from the rules up to the given depth.
AmenabilityReport isAmenable(const SubstructureSpec& spec, std::size_t searchDepth);

struct NoWitnessError : Error {
  NoWitnessError(const BranchSpec& branch, const PrefixWord& word);
  BranchSpec branch;
  PrefixWord word;  // full constraint s^r
};

// Minimal odd support under the canonical element order: the least
// finitely-supported member of A intersect S_eta extending s^r.  (A nonempty
// prefix cone always retains finitely-supported points, so the designated
// all-ones elements never arise as witnesses.)  Preconditions: |s| odd,
// s(2i) = eta(i), r in the coordinate domain.  Throws NoWitnessError when
// the constraint has no witness (exactly what an amenability counterexample
// certifies).
Element findWitness(const SubstructureSpec& spec, const BranchSpec& branch,
                    const PrefixWord& s, const Rat& r);

// General engine behind findWitness: least finitely-supported member of
// A intersect S_eta with the given prefix (any length, possibly empty).
// nullopt when the constraint cone is empty.
std::optional<Element> findMinimalWithPrefix(const SubstructureSpec& spec,
                                             const BranchSpec& branch,
                                             const PrefixWord& word);

// First `count` members of A in canonical (grade, literal) order.
// Throws ExhaustedError when the structure runs out first.
std::vector<Element> enumerateElements(const SubstructureSpec& spec,
                                       std::size_t count);

}  // namespace potiso
