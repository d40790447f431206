#include "potiso/oracle.hpp"

#include <algorithm>

#include "potiso/errors.hpp"
#include "potiso/structure.hpp"

namespace potiso {

namespace {

void emitBoundedSupports(const BoundedUniverse& u, std::size_t fromIndex,
                         std::size_t sizeLeft, std::map<std::size_t, Rat>& current,
                         const std::function<void(const std::map<std::size_t, Rat>&)>& sink) {
  sink(current);
  if (sizeLeft == 0) return;
  for (std::size_t n = fromIndex; n <= u.maxOddIndex; ++n) {
    for (const Rat& v : u.coords) {
      if (v.isZero()) continue;
      current.emplace(n, v);
      emitBoundedSupports(u, n + 1, sizeLeft - 1, current, sink);
      current.erase(n);
    }
  }
}

}  // namespace

std::vector<BranchSpec> BoundedUniverse::branches() const {
  return BranchFamily::rule(maxPrefixLen, coords, tails).enumerate();
}

std::vector<Element> BoundedUniverse::elements() const {
  std::vector<Element> out;
  for (const BranchSpec& branch : branches()) {
    std::map<std::size_t, Rat> current;
    emitBoundedSupports(*this, 0, maxSupportSize, current,
                        [&](const std::map<std::size_t, Rat>& support) {
                          out.emplace_back(mode, branch,
                                           OddPattern::fromSupport(support));
                        });
    if (includeDesignated && mode == Mode::Fer) {
      out.emplace_back(mode, branch, OddPattern::allOnes());
    }
  }
  std::sort(out.begin(), out.end(), canonicalElementOrder);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SubstructureSpec BoundedUniverse::fullSpec() const {
  return SubstructureSpec(mode, BranchFamily::rule(maxPrefixLen, coords, tails));
}

std::size_t BoundedUniverse::materializationDepth() const {
  return 2 * std::max(maxPrefixLen, maxOddIndex + 1) + 2;
}

BoundedUniverse standardQtreeUniverse() {
  BoundedUniverse u;
  u.mode = Mode::Qtree;
  u.coords = {Rat(0), Rat(1), Rat(2)};
  u.maxPrefixLen = 2;
  u.tails = {Rat(0)};
  u.maxSupportSize = 2;
  u.maxOddIndex = 1;
  u.maxDomainSize = 2;
  u.includeDesignated = false;
  return u;
}

BoundedUniverse standardFerUniverse() {
  BoundedUniverse u;
  u.mode = Mode::Fer;
  u.coords = {Rat(0), Rat(1)};
  u.maxPrefixLen = 2;
  u.tails = {Rat(0)};
  u.maxSupportSize = 2;
  u.maxOddIndex = 1;
  u.maxDomainSize = 2;
  u.includeDesignated = true;
  return u;
}

void enumerateCandidateConditions(const BoundedUniverse& u,
                                  const std::function<void(const Condition&)>& sink) {
  std::vector<Element> pool = u.elements();
  auto spec = std::make_shared<const SubstructureSpec>(u.fullSpec());

  std::vector<std::size_t> domain;
  std::vector<std::size_t> image;
  std::vector<bool> imageUsed(pool.size(), false);

  auto emitImages = [&](auto&& self, std::size_t slot) -> void {
    if (slot == domain.size()) {
      std::vector<ConditionPair> pairs;
      pairs.reserve(domain.size());
      for (std::size_t t = 0; t < domain.size(); ++t) {
        pairs.push_back(ConditionPair{pool[domain[t]], pool[image[t]]});
      }
      sink(Condition::make(spec, spec, std::move(pairs)));
      return;
    }
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (imageUsed[j]) continue;
      imageUsed[j] = true;
      image[slot] = j;
      self(self, slot + 1);
      imageUsed[j] = false;
    }
  };

  auto emitDomains = [&](auto&& self, std::size_t from, std::size_t size) -> void {
    if (domain.size() == size) {
      image.assign(size, 0);
      emitImages(emitImages, 0);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      domain.push_back(i);
      self(self, i + 1, size);
      domain.pop_back();
    }
  };

  for (std::size_t size = 0; size <= u.maxDomainSize; ++size) {
    emitDomains(emitDomains, 0, size);
  }
}

void enumerateConditions(const BoundedUniverse& u,
                         const std::function<void(const Condition&)>& sink) {
  enumerateCandidateConditions(u, [&](const Condition& p) {
    if (isValidCondition(p)) sink(p);
  });
}

std::vector<Condition> collectConditions(const BoundedUniverse& u) {
  std::vector<Condition> out;
  enumerateConditions(u, [&](const Condition& p) { out.push_back(p); });
  return out;
}

AmalgamationAuditReport exhaustiveAmalgamationAudit(const BoundedUniverse& u,
                                                    AuditBudget budget) {
  AmalgamationAuditReport report;
  std::vector<Condition> conditions = collectConditions(u);
  if (conditions.size() > budget.maxConditions)
    throw BudgetExceededError("amalgamation audit: condition count " +
                              std::to_string(conditions.size()) +
                              " exceeds the budget");
  report.conditionCount = conditions.size();

  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    classes[conditionSignature(conditions[i]).canonicalKey()].push_back(i);
  }
  report.classCount = classes.size();
  for (const auto& [key, members] : classes) {
    report.signatureCensus.emplace_back(key, members.size());
  }

  for (const auto& [key, members] : classes) {
    for (std::size_t i : members) {
      for (std::size_t j : members) {
        if (++report.pairsChecked > budget.maxChecks)
          throw BudgetExceededError("amalgamation audit: pair checks exceed the budget");
        UnionResult merged = unionRaw(conditions[i], conditions[j]);
        bool ok = merged.condition.has_value() &&
                  isValidCondition(*merged.condition);
        if (!ok) {
          report.violations.push_back("signature=" + key +
                                      " p=" + conditions[i].dump() +
                                      " q=" + conditions[j].dump());
        }
      }
    }
  }
  return report;
}

ExtensionAuditReport exhaustiveExtensionAudit(const BoundedUniverse& u,
                                              AuditBudget budget) {
  ExtensionAuditReport report;
  std::vector<Condition> conditions = collectConditions(u);
  if (conditions.size() > budget.maxConditions)
    throw BudgetExceededError("extension audit: condition count exceeds the budget");
  report.conditionCount = conditions.size();
  std::vector<Element> pool = u.elements();

  for (const Condition& p : conditions) {
    for (const Element& a : pool) {
      if (p.hasDomain(a)) continue;
      if (++report.extensionsRun > budget.maxChecks)
        throw BudgetExceededError("extension audit: extension count exceeds the budget");
      try {
        ExtendResult extended = extendCondition(p, a);
        ++report.caseHistogram[std::string(caseTagName(extended.trace.tag))];
        bool grows = extended.condition.size() == p.size() + 1 &&
                     extended.condition.hasDomain(a);
        if (!grows) {
          report.failures.push_back("extension did not add exactly {a}: p=" +
                                    p.dump() + " a=" + a.literal());
        } else if (!isValidCondition(extended.condition)) {
          // independent full re-validation, not the extension's own check
          report.failures.push_back("extension fails re-validation: p=" +
                                    p.dump() + " a=" + a.literal() + " q=" +
                                    extended.condition.dump());
        }
      } catch (const Error& e) {
        report.failures.push_back("p=" + p.dump() + " a=" + a.literal() +
                                  " error=" + e.what());
      }
    }
  }
  return report;
}

namespace {

PrefixWord materialize(const Element& x, std::size_t depth) {
  return x.prefixWord(depth);
}

std::size_t wordFirstDiff(const PrefixWord& x, const PrefixWord& y) {
  std::size_t i = 0;
  while (i < x.size() && x[i] == y[i]) ++i;
  return i;  // == size when identical over the window
}

}  // namespace

bool bruteforceValidate(const Condition& p, std::size_t depth) {
  const auto& pairs = p.pairs();
  std::vector<PrefixWord> dom, img;
  dom.reserve(pairs.size());
  img.reserve(pairs.size());
  for (const ConditionPair& pair : pairs) {
    dom.push_back(materialize(pair.a, depth));
    img.push_back(materialize(pair.b, depth));
  }

  // The window must separate all distinct elements in play.
  auto checkSeparated = [&](const Element& x, const Element& y,
                            const PrefixWord& wx, const PrefixWord& wy) {
    if (!(x == y) && wordFirstDiff(wx, wy) == depth)
      throw DomainError("materialization depth too small: " + x.literal() +
                        " vs " + y.literal() + " agree to depth " +
                        std::to_string(depth));
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      checkSeparated(pairs[i].a, pairs[j].a, dom[i], dom[j]);
      checkSeparated(pairs[i].b, pairs[j].b, img[i], img[j]);
    }
  }

  // Branch equality: even coordinates agree within the window.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t t = 0; t < depth; t += 2) {
      if (dom[i][t] != img[i][t]) return false;
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      std::size_t dm = wordFirstDiff(dom[i], dom[j]);
      std::size_t im = wordFirstDiff(img[i], img[j]);
      if (dm != im) return false;
      if (p.mode() == Mode::Qtree) {
        bool domLess = dom[i][dm] < dom[j][dm];
        bool imgLess = img[i][im] < img[j][im];
        if (domLess != imgLess) return false;
      }
    }
  }
  return true;
}

std::size_t bruteforceAutoDepth(const Condition& p) {
  std::size_t depth = 2;
  for (const ConditionPair& pair : p.pairs()) {
    depth = std::max({depth, pair.a.stableFrom() + 2, pair.b.stableFrom() + 2});
  }
  return depth;
}

AutomorphismReport truncationAutomorphisms(std::size_t depth, bool tagged) {
  if (depth > 4)
    throw BudgetExceededError("truncation automorphism probe is desk scale: depth <= 4");
  AutomorphismReport report;
  report.depth = depth;
  report.tagged = tagged;

  // Internal nodes, level by level; a node at level l decides the image of
  // coordinate l below it, so tagging pins exactly the even levels.
  std::vector<std::string> freeNodes;
  std::vector<std::string> nodes;
  nodes.emplace_back("");
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<std::string> next;
    for (const std::string& node : nodes) {
      if (!tagged || level % 2 == 1) freeNodes.push_back(node);
      next.push_back(node + "0");
      next.push_back(node + "1");
    }
    nodes = std::move(next);
  }

  std::size_t leafCount = std::size_t{1} << depth;
  auto applySwaps = [&](const std::vector<std::string>& swapped) {
    std::vector<std::size_t> perm(leafCount);
    for (std::size_t leaf = 0; leaf < leafCount; ++leaf) {
      std::string word;
      for (std::size_t l = 0; l < depth; ++l) {
        word.push_back(((leaf >> (depth - 1 - l)) & 1) ? '1' : '0');
      }
      std::size_t image = 0;
      for (std::size_t l = 0; l < depth; ++l) {
        bool bit = word[l] == '1';
        bool swap = std::binary_search(swapped.begin(), swapped.end(),
                                       word.substr(0, l));
        bool imageBit = bit != swap;
        image = (image << 1) | (imageBit ? 1 : 0);
      }
      perm[leaf] = image;
    }
    return perm;
  };

  auto preservesLevels = [&](const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i <= depth; ++i) {
      std::size_t shift = depth - i;
      for (std::size_t u = 0; u < leafCount; ++u) {
        for (std::size_t v = 0; v < leafCount; ++v) {
          bool pre = (u >> shift) == (v >> shift);
          bool post = (perm[u] >> shift) == (perm[v] >> shift);
          if (pre != post) return false;
        }
      }
    }
    return true;
  };

  // Every E-preserving permutation is a unique swap assignment over the
  // internal nodes; enumerate the assignments over the free ones and check
  // each materialized permutation against the relations.
  if (freeNodes.size() >= 63)
    throw BudgetExceededError("truncation automorphism probe: too many free nodes");
  std::uint64_t assignments = std::uint64_t{1} << freeNodes.size();
  for (std::uint64_t mask = 0; mask < assignments; ++mask) {
    std::vector<std::string> swapped;
    for (std::size_t b = 0; b < freeNodes.size(); ++b) {
      if (mask & (std::uint64_t{1} << b)) swapped.push_back(freeNodes[b]);
    }
    std::sort(swapped.begin(), swapped.end());
    std::vector<std::size_t> perm = applySwaps(swapped);
    if (!preservesLevels(perm))
      throw Error("internal: swap assignment produced a non-automorphism");
    ++report.count;
  }

  for (const std::string& node : freeNodes) {
    TreeSwapGenerator gen;
    gen.node = node;
    gen.permutation = applySwaps({node});
    report.generators.push_back(std::move(gen));
  }
  return report;
}

}  // namespace potiso
