#include "potiso/condition.hpp"

#include <algorithm>

#include "potiso/errors.hpp"

namespace potiso {

std::string_view violationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Branch: return "branch";
    case ViolationKind::Order: return "order";
    case ViolationKind::Meet: return "meet";
  }
  return "unknown";
}

Condition Condition::empty(SubstructureSpec source, SubstructureSpec target) {
  return make(std::move(source), std::move(target), {});
}

Condition Condition::make(SubstructureSpec source, SubstructureSpec target,
                          std::vector<ConditionPair> pairs) {
  return make(std::make_shared<const SubstructureSpec>(std::move(source)),
              std::make_shared<const SubstructureSpec>(std::move(target)),
              std::move(pairs));
}

Condition Condition::make(std::shared_ptr<const SubstructureSpec> source,
                          std::shared_ptr<const SubstructureSpec> target,
                          std::vector<ConditionPair> pairs) {
  if (!source || !target) throw DomainError("condition needs both specs");
  if (source->mode() != target->mode())
    throw DomainError("condition between structures of different modes");
  for (const ConditionPair& pair : pairs) {
    if (!source->contains(pair.a))
      throw DomainError("domain element " + pair.a.literal() +
                        " is not in the source structure");
    if (!target->contains(pair.b))
      throw DomainError("image element " + pair.b.literal() +
                        " is not in the target structure");
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const ConditionPair& x, const ConditionPair& y) {
              return elementLess(x.a, y.a);
            });
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    if (pairs[i].a == pairs[i + 1].a)
      throw DomainError("domain element " + pairs[i].a.literal() + " listed twice");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (pairs[i].b == pairs[j].b)
        throw DomainError("image element " + pairs[i].b.literal() + " hit twice");
    }
  }
  Condition p;
  p.source_ = std::move(source);
  p.target_ = std::move(target);
  p.pairs_ = std::move(pairs);
  return p;
}

bool Condition::hasDomain(const Element& a) const {
  for (const ConditionPair& pair : pairs_) {
    if (pair.a == a) return true;
  }
  return false;
}

std::optional<Element> Condition::imageOf(const Element& a) const {
  for (const ConditionPair& pair : pairs_) {
    if (pair.a == a) return pair.b;
  }
  return std::nullopt;
}

Condition Condition::withPair(ConditionPair pair) const {
  std::vector<ConditionPair> next = pairs_;
  next.push_back(std::move(pair));
  return make(source_, target_, std::move(next));
}

std::string Condition::dump() const {
  std::string out = "{mode=" + std::string(modeName(mode()));
  for (const ConditionPair& pair : pairs_) {
    out += "; " + pair.a.literal() + " -> " + pair.b.literal();
  }
  out += "}";
  return out;
}

bool Condition::operator==(const Condition& o) const {
  return *source_ == *o.source_ && *target_ == *o.target_ && pairs_ == o.pairs_;
}

ValidationReport validateCondition(const Condition& p) {
  const auto& pairs = p.pairs();
  const bool ordered = p.mode() == Mode::Qtree;

  // Clause 1: each image carries the same branch as its preimage (this is
  // exactly preservation of every P_eta; levels are automatic).
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].a.branch() != pairs[i].b.branch()) {
      std::size_t n = 0;
      while (pairs[i].a.branch().at(n) == pairs[i].b.branch().at(n)) ++n;
      return {false, Violation{ViolationKind::Branch, i, i, 2 * n, 2 * n}};
    }
  }
  // Clause 2 (qtree): order preservation.  Pairs are sorted by the domain,
  // so the images must be strictly increasing.
  if (ordered) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        CompareResult cmp = compareElements(pairs[i].b, pairs[j].b);
        if (cmp.order != Ordering::Less) {
          return {false, Violation{ViolationKind::Order, i, j,
                                   meetLength(pairs[i].a, pairs[j].a),
                                   cmp.firstDifference.value_or(0)}};
        }
      }
    }
  }
  // Clause 3: meet lengths agree (in fer mode this is preservation of every
  // E_k, since E_k holds exactly when the first k coordinates agree).
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      std::size_t dm = meetLength(pairs[i].a, pairs[j].a);
      std::size_t im = meetLength(pairs[i].b, pairs[j].b);
      if (dm != im) {
        return {false, Violation{ViolationKind::Meet, i, j, dm, im}};
      }
    }
  }
  return {true, std::nullopt};
}

Condition invertCondition(const Condition& p) {
  std::vector<ConditionPair> swapped;
  swapped.reserve(p.size());
  for (const ConditionPair& pair : p.pairs()) {
    swapped.push_back(ConditionPair{pair.b, pair.a});
  }
  return Condition::make(p.targetPtr(), p.sourcePtr(), std::move(swapped));
}

UnionResult unionRaw(const Condition& p, const Condition& q) {
  if (!(p.source() == q.source()) || !(p.target() == q.target()))
    throw DomainError("union of conditions over different structures");
  std::vector<ConditionPair> merged = p.pairs();
  for (const ConditionPair& pair : q.pairs()) {
    bool present = false;
    for (const ConditionPair& existing : merged) {
      if (existing.a == pair.a) {
        if (existing.b == pair.b) {
          present = true;  // coinciding pair
          break;
        }
        return {std::nullopt, UnionClash{UnionClash::Kind::DomainTwice, pair.a}};
      }
      if (existing.b == pair.b) {
        return {std::nullopt, UnionClash{UnionClash::Kind::ImageTwice, pair.b}};
      }
    }
    if (!present) merged.push_back(pair);
  }
  return {Condition::make(p.sourcePtr(), p.targetPtr(), std::move(merged)),
          std::nullopt};
}

}  // namespace potiso
