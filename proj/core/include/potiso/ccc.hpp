#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "potiso/condition.hpp"

namespace potiso {

// The ~-class code of a condition: domain size n, classification depth k,
// the k-prefixes of domain and image in lexicographic domain order, and the
// eventual odd value of each side (0 for finitely-supported patterns, 1 for
// the designated all-ones elements).  Same-signature conditions amalgamate;
// this is the whole engine of the ccc argument.
struct Signature {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<PrefixWord> domPrefixes;
  std::vector<PrefixWord> imgPrefixes;
  std::vector<std::pair<Rat, Rat>> eventualOdd;

  bool operator==(const Signature&) const = default;
  std::string canonicalKey() const;
};

// k(p) is the least k such that (i) the k-prefixes of distinct domain
// elements differ, (ii) likewise for images, (iii) every domain element's
// odd pattern is constant at its eventual value from index k on, (iv) same
// for images.  Clauses (iii)/(iv) generalize the literal "= 0" so that
// designated all-ones elements admit a finite k; the eventual values are
// recorded in the signature to compensate.  Pre: p valid.
Signature conditionSignature(const Condition& p);

// signature(p) == signature(q), componentwise.  Pre: both valid, same specs.
bool sameClass(const Condition& p, const Condition& q);

// union_raw after identifying coinciding pairs; that the result validates is
// the theorem-backed contract driving the ccc argument in both modes.  Throws
// DomainError when the inputs are not same-class, ContractViolationError
// (with full instance dumps) if the union clashes or fails validation.
Condition amalgamate(const Condition& p, const Condition& q);

struct AntichainViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string dump;
};

struct AntichainReport {
  std::uint64_t conditionCount = 0;
  std::uint64_t pairsChecked = 0;
  std::uint64_t sameSignaturePairs = 0;
  std::uint64_t compatiblePairs = 0;
  std::size_t distinctSignatures = 0;
  std::vector<AntichainViolation> violations;  // incompatible yet same-signature
  std::vector<std::pair<std::string, std::uint64_t>> signatureCensus;
};

// For every unordered pair: compatibility (union merges and validates) vs
// signature equality.  Any incompatible same-signature pair is a violation
// (expected: none).
AntichainReport antichainAudit(const std::vector<Condition>& conditions);

}  // namespace potiso
