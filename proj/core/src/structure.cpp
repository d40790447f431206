#include "potiso/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace potiso {

namespace {

constexpr long long kAllOnesSurcharge = 4;

long long branchGradeBase(const BranchSpec& branch) {
  long long g = static_cast<long long>(branch.prefix().size());
  for (const Rat& v : branch.prefix()) g += v.heightWeight();
  g += branch.tail().heightWeight();
  return g;
}

// Reduced positive rationals with num + den - 1 == hw.
std::vector<Rat> positiveRationalsOfHeight(long long hw) {
  std::vector<Rat> out;
  if (hw <= 0) return out;
  for (long long den = 1; den <= hw; ++den) {
    long long num = hw - den + 1;
    if (std::gcd(num, den) != 1) continue;
    out.emplace_back(num, den);
  }
  return out;
}

// Nonzero values whose heightWeight is exactly hw (negatives weigh one more
// than their absolute value).
std::vector<Rat> valuesOfHeight(Mode mode, long long hw) {
  if (mode == Mode::Fer) {
    if (hw == 1) return {Rat(1)};
    return {};
  }
  std::vector<Rat> out = positiveRationalsOfHeight(hw);
  for (const Rat& v : positiveRationalsOfHeight(hw - 1)) out.push_back(-v);
  return out;
}

// All odd patterns (as support maps) whose grade contribution is exactly
// `rem`, using indices >= minIndex.  Entry cost: index + height + 1.
void emitSupports(Mode mode, std::size_t minIndex, long long rem,
                  std::map<std::size_t, Rat>& current,
                  const std::function<void(const std::map<std::size_t, Rat>&)>& sink) {
  if (rem == 0) {
    sink(current);
    return;
  }
  for (std::size_t n = minIndex; static_cast<long long>(n) + 2 <= rem; ++n) {
    long long maxH = rem - static_cast<long long>(n) - 1;
    for (long long h = 1; h <= maxH; ++h) {
      for (const Rat& v : valuesOfHeight(mode, h)) {
        current.emplace(n, v);
        emitSupports(mode, n + 1, rem - static_cast<long long>(n) - 1 - h, current, sink);
        current.erase(n);
      }
    }
  }
}

bool wordConsistentWithBranch(const PrefixWord& word, const BranchSpec& branch) {
  for (std::size_t t = 0; t < word.size(); t += 2) {
    if (word[t] != branch.at(t / 2)) return false;
  }
  return true;
}

bool isPrefixOf(const PrefixWord& shorter, const PrefixWord& longer) {
  if (shorter.size() > longer.size()) return false;
  return std::equal(shorter.begin(), shorter.end(), longer.begin());
}

}  // namespace

std::string_view certificateName(AmenabilityReport::Certificate c) {
  switch (c) {
    case AmenabilityReport::Certificate::FiniteRemovals:
      return "finite-removals";
    case AmenabilityReport::Certificate::SearchedToDepth:
      return "searched-to-depth";
    case AmenabilityReport::Certificate::Counterexample:
      return "counterexample";
  }
  return "unknown";
}

BranchFamily BranchFamily::explicitSet(std::vector<BranchSpec> branches) {
  BranchFamily f;
  std::sort(branches.begin(), branches.end(), branchSpecLess);
  branches.erase(std::unique(branches.begin(), branches.end()), branches.end());
  f.branches_ = std::move(branches);
  return f;
}

BranchFamily BranchFamily::rule(std::size_t prefixMax, std::vector<Rat> coords,
                                std::vector<Rat> tails) {
  if (coords.empty()) throw DomainError("rule family needs a nonempty coordinate set");
  if (tails.empty()) tails = coords;
  BranchFamily f;
  f.isRule_ = true;
  f.rulePrefixMax_ = prefixMax;
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  f.ruleCoords_ = std::move(coords);
  f.ruleTails_ = std::move(tails);
  return f;
}

bool BranchFamily::contains(const BranchSpec& branch) const {
  if (!isRule_)
    return std::binary_search(branches_.begin(), branches_.end(), branch,
                              branchSpecLess);
  if (branch.prefix().size() > rulePrefixMax_) return false;
  for (const Rat& v : branch.prefix()) {
    if (!std::binary_search(ruleCoords_.begin(), ruleCoords_.end(), v)) return false;
  }
  return std::binary_search(ruleTails_.begin(), ruleTails_.end(), branch.tail());
}

std::vector<BranchSpec> BranchFamily::enumerate() const {
  if (!isRule_) return branches_;
  std::vector<BranchSpec> out;
  std::vector<Rat> prefix;
  // Lengths ascending, values in coordinate order, tails in tail order.
  // Skips non-canonical spellings so each branch appears exactly once.
  auto emit = [&](auto&& self, std::size_t length) -> void {
    if (prefix.size() == length) {
      for (const Rat& tail : ruleTails_) {
        if (!prefix.empty() && prefix.back() == tail) continue;
        out.emplace_back(prefix, tail);
      }
      return;
    }
    for (const Rat& v : ruleCoords_) {
      prefix.push_back(v);
      self(self, length);
      prefix.pop_back();
    }
  };
  for (std::size_t length = 0; length <= rulePrefixMax_; ++length) emit(emit, length);
  return out;
}

SubstructureSpec::SubstructureSpec(Mode mode, BranchFamily family, RemovalRule removals)
    : mode_(mode), family_(std::move(family)), removals_(std::move(removals)) {
  for (const Element& x : removals_.explicitRemovals) {
    if (x.mode() != mode_)
      throw DomainError("removal element mode does not match the spec mode");
    if (!family_.contains(x.branch()))
      throw DomainError("removal element " + x.literal() +
                        " lies outside the denoted structure");
  }
  for (const ConeRule& cone : removals_.cones) {
    if (!family_.contains(cone.branch))
      throw DomainError("cone rule branch " + cone.branch.literal() +
                        " lies outside the family");
    if (!wordConsistentWithBranch(cone.word, cone.branch))
      throw DomainError("cone rule word " + wordLiteral(cone.word) +
                        " is inconsistent with branch " + cone.branch.literal());
    if (cone.word.size() % 2 == 0 && cone.value != cone.branch.at(cone.word.size() / 2))
      throw DomainError("cone rule value lands on an even index but differs from the branch");
    if (mode_ == Mode::Fer) {
      for (const Rat& v : cone.word)
        if (!(v == Rat(0) || v == Rat(1)))
          throw DomainError("cone rule word value outside the bit domain");
      if (!(cone.value == Rat(0) || cone.value == Rat(1)))
        throw DomainError("cone rule value outside the bit domain");
    }
  }
  auto& rem = removals_.explicitRemovals;
  std::sort(rem.begin(), rem.end(), canonicalElementOrder);
  rem.erase(std::unique(rem.begin(), rem.end()), rem.end());
  auto coneLess = [](const ConeRule& a, const ConeRule& b) {
    auto ka = a.branch.literal() + "#" + wordLiteral(a.word) + "#" + a.value.str();
    auto kb = b.branch.literal() + "#" + wordLiteral(b.word) + "#" + b.value.str();
    return ka < kb;
  };
  std::sort(removals_.cones.begin(), removals_.cones.end(), coneLess);
  removals_.cones.erase(
      std::unique(removals_.cones.begin(), removals_.cones.end()),
      removals_.cones.end());
}

bool SubstructureSpec::contains(const Element& x) const {
  if (x.mode() != mode_)
    throw DomainError("element mode does not match the spec mode");
  if (!family_.contains(x.branch())) return false;
  for (const Element& removed : removals_.explicitRemovals) {
    if (removed == x) return false;
  }
  for (const ConeRule& cone : removals_.cones) {
    if (cone.branch != x.branch()) continue;
    PrefixWord head = x.prefixWord(cone.word.size() + 1);
    if (std::equal(cone.word.begin(), cone.word.end(), head.begin()) &&
        head.back() == cone.value) {
      return false;
    }
  }
  return true;
}

namespace {

// Decides whether the set of S_eta elements extending `word` is entirely
// swallowed by the spec's cone rules.  Returns a surviving extension of
// `word` past every rule when it is not (explicit removals cannot empty a
// cone: any later odd coordinate varies freely).
std::optional<PrefixWord> coneSurvivor(const SubstructureSpec& spec,
                                       const BranchSpec& branch,
                                       const PrefixWord& word) {
  std::vector<PrefixWord> covers;
  for (const ConeRule& cone : spec.removals().cones) {
    if (cone.branch != branch) continue;
    PrefixWord c = cone.word;
    c.push_back(cone.value);
    covers.push_back(std::move(c));
  }

  auto descend = [&](auto&& self, const PrefixWord& u) -> std::optional<PrefixWord> {
    for (const PrefixWord& c : covers) {
      if (isPrefixOf(c, u)) return std::nullopt;  // fully removed
    }
    bool anyDeeper = false;
    for (const PrefixWord& c : covers) {
      if (c.size() > u.size() && isPrefixOf(u, c)) anyDeeper = true;
    }
    if (!anyDeeper) return u;
    std::size_t t = u.size();
    if (t % 2 == 0) {
      PrefixWord next = u;
      next.push_back(branch.at(t / 2));
      return self(self, next);
    }
    // Free odd index.  In qtree mode a fresh rational always escapes the
    // finitely many rules; in fer mode both bits must be checked.
    if (spec.mode() == Mode::Qtree) {
      std::set<Rat> used;
      for (const PrefixWord& c : covers) {
        if (c.size() > t && isPrefixOf(u, c)) used.insert(c[t]);
      }
      Rat fresh = 0;
      while (used.contains(fresh)) fresh = fresh + Rat(1);
      PrefixWord next = u;
      next.push_back(fresh);
      return self(self, next);
    }
    for (Rat bit : {Rat(0), Rat(1)}) {
      PrefixWord next = u;
      next.push_back(bit);
      if (auto survivor = self(self, next)) return survivor;
    }
    return std::nullopt;
  };
  return descend(descend, word);
}

struct OddConstraint {
  std::map<std::size_t, Rat> fixed;  // nonzero odd entries of the word
  std::size_t freeFrom = 0;          // first pattern index past the word
  bool allOnesCompatible = false;
};

OddConstraint oddConstraintOf(const PrefixWord& word) {
  OddConstraint c;
  c.allOnesCompatible = true;
  for (std::size_t t = 1; t < word.size(); t += 2) {
    std::size_t n = (t - 1) / 2;
    if (!word[t].isZero()) c.fixed.emplace(n, word[t]);
    if (word[t] != Rat(1)) c.allOnesCompatible = false;
  }
  std::size_t n = 0;
  while (2 * n + 1 < word.size()) ++n;
  c.freeFrom = n;
  return c;
}

}  // namespace

std::optional<Element> findMinimalWithPrefix(const SubstructureSpec& spec,
                                             const BranchSpec& branch,
                                             const PrefixWord& word) {
  if (!spec.family().contains(branch)) return std::nullopt;
  if (!wordConsistentWithBranch(word, branch)) return std::nullopt;
  if (spec.mode() == Mode::Fer) {
    for (const Rat& v : word)
      if (!(v == Rat(0) || v == Rat(1))) return std::nullopt;
  }

  auto survivor = coneSurvivor(spec, branch, word);
  if (!survivor) return std::nullopt;

  OddConstraint base = oddConstraintOf(word);
  OddConstraint wide = oddConstraintOf(*survivor);
  Element zeroFill(spec.mode(), branch, OddPattern::fromSupport(wide.fixed));
  std::size_t removals = spec.removals().explicitRemovals.size();
  long long budget = elementGrade(zeroFill) +
                     static_cast<long long>(wide.freeFrom + removals) + 12;

  long long gBase = branchGradeBase(branch);
  for (const auto& [n, v] : base.fixed)
    gBase += static_cast<long long>(n) + v.heightWeight() + 1;

  // Only finitely-supported candidates: a nonempty cone always retains one
  // (zero-fill a surviving word), so the designated all-ones element is never
  // needed as a witness.  This realizes the construction's zero fill.
  for (long long g = gBase; g <= budget; ++g) {
    std::vector<Element> bucket;
    std::map<std::size_t, Rat> current = base.fixed;
    emitSupports(spec.mode(), base.freeFrom, g - gBase, current,
                 [&](const std::map<std::size_t, Rat>& support) {
                   bucket.emplace_back(spec.mode(), branch,
                                       OddPattern::fromSupport(support));
                 });
    std::sort(bucket.begin(), bucket.end(), [](const Element& a, const Element& b) {
      return a.literal() < b.literal();
    });
    for (const Element& x : bucket) {
      if (spec.contains(x)) return x;
    }
  }
  throw Error("internal: witness search budget exhausted on a non-empty cone");
}

Element findWitness(const SubstructureSpec& spec, const BranchSpec& branch,
                    const PrefixWord& s, const Rat& r) {
  if (s.size() % 2 != 1)
    throw DomainError("constraint word must have odd length");
  if (!wordConsistentWithBranch(s, branch))
    throw DomainError("constraint word disagrees with the branch at an even index");
  if (spec.mode() == Mode::Fer) {
    for (const Rat& v : s)
      if (!(v == Rat(0) || v == Rat(1)))
        throw DomainError("constraint word value outside the bit domain");
    if (!(r == Rat(0) || r == Rat(1)))
      throw DomainError("constraint value outside the bit domain");
  }
  PrefixWord full = s;
  full.push_back(r);
  if (auto witness = findMinimalWithPrefix(spec, branch, full)) return *witness;
  throw NoWitnessError(branch, full);
}

NoWitnessError::NoWitnessError(const BranchSpec& branch_, const PrefixWord& word_)
    : Error("no witness in S_" + branch_.literal() + " extending " +
            wordLiteral(word_)),
      branch(branch_),
      word(word_) {}

AmenabilityReport isAmenable(const SubstructureSpec& spec, std::size_t searchDepth) {
  if (searchDepth < 1) throw DomainError("search depth must be at least 1");
  AmenabilityReport report;
  report.searchDepth = searchDepth;
  if (spec.removals().cones.empty()) {
    // Finitely many points removed per branch can never exhaust a prefix
    // cone: any later odd coordinate varies over infinitely many values.
    report.amenable = true;
    report.certificate = AmenabilityReport::Certificate::FiniteRemovals;
    return report;
  }

  for (const BranchSpec& branch : spec.family().enumerate()) {
    std::vector<PrefixWord> covers;
    for (const ConeRule& cone : spec.removals().cones) {
      if (cone.branch != branch) continue;
      PrefixWord c = cone.word;
      c.push_back(cone.value);
      covers.push_back(std::move(c));
    }
    if (covers.empty()) continue;

    // Candidate values at a free odd position: the rule values there, the
    // default 0, and one fresh representative.  A word using any other value
    // escapes every rule, so this set is complete for failure detection.
    auto candidatesAt = [&](std::size_t t) {
      std::set<Rat> values;
      values.insert(Rat(0));
      for (const PrefixWord& c : covers) {
        if (c.size() > t) values.insert(c[t]);
      }
      Rat fresh = 0;
      while (values.contains(fresh)) fresh = fresh + Rat(1);
      values.insert(fresh);
      if (spec.mode() == Mode::Fer) {
        std::erase_if(values, [](const Rat& v) { return v != Rat(0) && v != Rat(1); });
      }
      return std::vector<Rat>(values.begin(), values.end());
    };

    for (std::size_t len = 1; len <= searchDepth; len += 2) {
      std::vector<std::vector<Rat>> slots(len);
      for (std::size_t t = 0; t < len; ++t) {
        slots[t] = (t % 2 == 0) ? std::vector<Rat>{branch.at(t / 2)} : candidatesAt(t);
      }
      std::vector<Rat> rCandidates = candidatesAt(len);

      PrefixWord s(len, Rat(0));
      auto sweep = [&](auto&& self, std::size_t t) -> std::optional<Counterexample> {
        if (t == len) {
          for (const Rat& r : rCandidates) {
            PrefixWord full = s;
            full.push_back(r);
            if (!coneSurvivor(spec, branch, full)) {
              return Counterexample{branch, s, r};
            }
          }
          return std::nullopt;
        }
        for (const Rat& v : slots[t]) {
          s[t] = v;
          if (auto found = self(self, t + 1)) return found;
        }
        return std::nullopt;
      };
      if (auto found = sweep(sweep, 0)) {
        report.amenable = false;
        report.certificate = AmenabilityReport::Certificate::Counterexample;
        report.counterexample = std::move(found);
        return report;
      }
    }
  }
  report.amenable = true;
  report.certificate = AmenabilityReport::Certificate::SearchedToDepth;
  return report;
}

std::vector<Element> enumerateElements(const SubstructureSpec& spec,
                                       std::size_t count) {
  std::vector<Element> out;
  if (count == 0) return out;

  std::vector<BranchSpec> branches = spec.family().enumerate();
  bool anySurvivor = false;
  for (const BranchSpec& branch : branches) {
    if (coneSurvivor(spec, branch, {})) {
      anySurvivor = true;
      break;
    }
  }
  if (!anySurvivor)
    throw ExhaustedError("substructure is empty: every branch cone is removed");

  std::vector<long long> bases;
  bases.reserve(branches.size());
  for (const BranchSpec& branch : branches) bases.push_back(branchGradeBase(branch));

  for (long long g = 0;; ++g) {
    std::vector<Element> bucket;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (bases[i] > g) continue;
      long long rem = g - bases[i];
      std::map<std::size_t, Rat> current;
      emitSupports(spec.mode(), 0, rem, current,
                   [&](const std::map<std::size_t, Rat>& support) {
                     Element x(spec.mode(), branches[i],
                               OddPattern::fromSupport(support));
                     if (spec.contains(x)) bucket.push_back(std::move(x));
                   });
      if (spec.mode() == Mode::Fer && rem == kAllOnesSurcharge) {
        Element x(spec.mode(), branches[i], OddPattern::allOnes());
        if (spec.contains(x)) bucket.push_back(std::move(x));
      }
    }
    std::sort(bucket.begin(), bucket.end(), [](const Element& a, const Element& b) {
      return a.literal() < b.literal();
    });
    for (Element& x : bucket) {
      out.push_back(std::move(x));
      if (out.size() == count) return out;
    }
  }
}

}  // namespace potiso
