#include "potiso/ccc.hpp"

#include <algorithm>
#include <map>

#include "potiso/errors.hpp"

namespace potiso {

namespace {

// Last sequence index at which the odd pattern deviates from its eventual
// value, as a lower bound for k: clauses (iii)/(iv) hold at k exactly when
// k exceeds every deviating odd index.
std::size_t oddSettleBound(const Element& x) {
  const auto& support = x.odd().support();
  if (x.odd().isAllOnes() || support.empty()) return 0;
  return 2 * support.rbegin()->first + 2;  // last deviating index + 1
}

}  // namespace

std::string Signature::canonicalKey() const {
  std::string key = "n=" + std::to_string(n) + ";k=" + std::to_string(k);
  auto appendWords = [&key](const char* label, const std::vector<PrefixWord>& words) {
    key += ";";
    key += label;
    key += "=";
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0) key += ' ';
      key += wordLiteral(words[i]);
    }
  };
  appendWords("dom", domPrefixes);
  appendWords("img", imgPrefixes);
  key += ";ev=";
  for (std::size_t i = 0; i < eventualOdd.size(); ++i) {
    if (i > 0) key += ' ';
    key += eventualOdd[i].first.str() + ":" + eventualOdd[i].second.str();
  }
  return key;
}

Signature conditionSignature(const Condition& p) {
  Signature sig;
  sig.n = p.size();
  std::size_t k = 0;
  for (const ConditionPair& pair : p.pairs()) {
    k = std::max(k, oddSettleBound(pair.a));
    k = std::max(k, oddSettleBound(pair.b));
  }
  const auto& pairs = p.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      k = std::max(k, meetLength(pairs[i].a, pairs[j].a) + 1);
      k = std::max(k, meetLength(pairs[i].b, pairs[j].b) + 1);
    }
  }
  sig.k = k;
  for (const ConditionPair& pair : pairs) {
    sig.domPrefixes.push_back(pair.a.prefixWord(k));
    sig.imgPrefixes.push_back(pair.b.prefixWord(k));
    sig.eventualOdd.emplace_back(pair.a.odd().eventualValue(),
                                 pair.b.odd().eventualValue());
  }
  return sig;
}

bool sameClass(const Condition& p, const Condition& q) {
  if (!(p.source() == q.source()) || !(p.target() == q.target()))
    throw DomainError("class comparison of conditions over different structures");
  return conditionSignature(p) == conditionSignature(q);
}

Condition amalgamate(const Condition& p, const Condition& q) {
  if (!sameClass(p, q))
    throw DomainError("amalgamation requires same-class conditions");
  UnionResult merged = unionRaw(p, q);
  if (!merged.condition) {
    throw ContractViolationError(
        "amalgamation clash on same-class conditions: p=" + p.dump() +
        " q=" + q.dump());
  }
  ValidationReport report = validateCondition(*merged.condition);
  if (!report.valid) {
    const Violation& v = *report.violation;
    throw ContractViolationError(
        "amalgamation produced an invalid condition (" +
        std::string(violationKindName(v.kind)) + " violation at pairs " +
        std::to_string(v.i) + "," + std::to_string(v.j) + "): p=" + p.dump() +
        " q=" + q.dump() + " union=" + merged.condition->dump());
  }
  return *merged.condition;
}

AntichainReport antichainAudit(const std::vector<Condition>& conditions) {
  AntichainReport report;
  report.conditionCount = conditions.size();

  std::vector<Signature> signatures;
  signatures.reserve(conditions.size());
  std::map<std::string, std::uint64_t> census;
  for (const Condition& p : conditions) {
    signatures.push_back(conditionSignature(p));
    ++census[signatures.back().canonicalKey()];
  }
  report.distinctSignatures = census.size();
  report.signatureCensus.assign(census.begin(), census.end());

  for (std::size_t i = 0; i < conditions.size(); ++i) {
    for (std::size_t j = i + 1; j < conditions.size(); ++j) {
      ++report.pairsChecked;
      bool sameSig = signatures[i] == signatures[j];
      UnionResult merged = unionRaw(conditions[i], conditions[j]);
      bool compatible =
          merged.condition.has_value() && isValidCondition(*merged.condition);
      if (sameSig) ++report.sameSignaturePairs;
      if (compatible) ++report.compatiblePairs;
      if (sameSig && !compatible) {
        report.violations.push_back(AntichainViolation{
            i, j,
            "p=" + conditions[i].dump() + " q=" + conditions[j].dump()});
      }
    }
  }
  return report;
}

}  // namespace potiso
