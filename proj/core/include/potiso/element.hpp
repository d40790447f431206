#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "potiso/rational.hpp"

namespace potiso {

// Coordinate domain of a session: exact rationals (the Q-tree structure) or
// bits (the refining-equivalence-relations structure on 2^omega).
enum class Mode { Qtree, Fer };

std::string_view modeName(Mode mode);
std::optional<Mode> modeFromName(std::string_view name);

using PrefixWord = std::vector<Rat>;

std::string wordLiteral(const PrefixWord& word);  // "[0,5]", "[]"

/*
 * An element sigma of the ambient structure is an infinite sequence whose
 * even coordinates spell out a branch eta (sigma(2n) = eta(n)) and whose odd
 * coordinates form a pattern that is 0 almost everywhere, or constantly 1
 * (the designated element of a branch in bit mode).  Both halves are finitely
 * represented: the branch as an eventually-constant sequence, the pattern as
 * a finite support map.  Every primitive relation (value, lexicographic
 * order, meet length) is decided exactly from these representations.
 */

// Eventually-constant sequence: prefix then a constant tail value.
// Canonical form: the prefix never ends with a value equal to the tail, so
// structural equality is equality of the denoted sequences.
class BranchSpec {
 public:
  BranchSpec() = default;  // constant 0
  BranchSpec(std::vector<Rat> prefix, Rat tail);

  const std::vector<Rat>& prefix() const { return prefix_; }
  const Rat& tail() const { return tail_; }
  Rat at(std::size_t n) const {
    return n < prefix_.size() ? prefix_[n] : tail_;
  }
  // Branch indices >= this all carry the tail value.
  std::size_t stableFrom() const { return prefix_.size(); }

  std::string literal() const;  // "[3|0]", "[|0]"
  static BranchSpec parseLiteral(std::string_view text);

  bool operator==(const BranchSpec&) const = default;

 private:
  std::vector<Rat> prefix_;
  Rat tail_ = 0;
};

// Arbitrary strict order on branches, used only to keep containers canonical.
bool branchSpecLess(const BranchSpec& a, const BranchSpec& b);

// Odd-coordinate pattern: a finite map from pattern index n (sequence index
// 2n+1) to a nonzero value, or the constant-1 pattern.
class OddPattern {
 public:
  OddPattern() = default;  // constant 0
  static OddPattern allOnes();
  // Zero values are dropped: the map denotes deviations from the default.
  static OddPattern fromSupport(std::map<std::size_t, Rat> support);

  const std::map<std::size_t, Rat>& support() const { return support_; }
  bool isAllOnes() const { return allOnes_; }
  Rat at(std::size_t n) const;
  Rat eventualValue() const { return allOnes_ ? Rat(1) : Rat(0); }
  // Pattern indices >= this all carry the eventual value.
  std::size_t constantFrom() const;

  bool operator==(const OddPattern&) const = default;

 private:
  std::map<std::size_t, Rat> support_;
  bool allOnes_ = false;
};

class Element {
 public:
  Element(Mode mode, BranchSpec branch, OddPattern odd);

  Mode mode() const { return mode_; }
  const BranchSpec& branch() const { return branch_; }
  const OddPattern& odd() const { return odd_; }

  // sigma(i): branch(i/2) for even i, pattern((i-1)/2) for odd i.
  Rat value(std::size_t i) const;
  PrefixWord prefixWord(std::size_t n) const;
  // Sequence indices >= this depend only on parity.
  std::size_t stableFrom() const;

  std::string literal() const;  // "eta=[3|0] odd={0:7}"
  static Element parseLiteral(Mode mode, std::string_view text);

  bool operator==(const Element&) const = default;

 private:
  Mode mode_;
  BranchSpec branch_;
  OddPattern odd_;
};

enum class Ordering { Less, Equal, Greater };

struct CompareResult {
  Ordering order = Ordering::Equal;
  // Least index where the denoted sequences differ; absent when equal.
  std::optional<std::size_t> firstDifference;
};

// Lexicographic comparison of the denoted sequences.  Throws DomainError on
// mode mismatch.
CompareResult compareElements(const Element& x, const Element& y);

bool elementLess(const Element& x, const Element& y);

// |x ^ y|: length of the largest common initial segment.  Throws DomainError
// on equal inputs (the meet would be the whole sequence) or mode mismatch.
std::size_t meetLength(const Element& x, const Element& y);

// Canonical enumeration grade: branch prefix length + odd support size +
// coordinate heights (+ support indices, + a fixed surcharge for the
// all-ones pattern).  Finite universes per grade; drives all deterministic
// enumeration and witness choice.
long long elementGrade(const Element& x);

// (grade, literal) order: the canonical element order of the lab.
bool canonicalElementOrder(const Element& x, const Element& y);

}  // namespace potiso
