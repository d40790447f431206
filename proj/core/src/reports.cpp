#include "potiso/reports.hpp"

#include "json.hpp"

namespace potiso {

namespace {

using nlohmann::json;  // default object type keeps keys sorted

constexpr int kSchemaVersion = 1;

std::string render(json doc) { return doc.dump(2) + "\n"; }

json wordJson(const PrefixWord& word) {
  json arr = json::array();
  for (const Rat& v : word) arr.push_back(v.str());
  return arr;
}

json coordSetJson(const std::vector<Rat>& values) {
  json arr = json::array();
  for (const Rat& v : values) arr.push_back(v.str());
  return arr;
}

json pairsJson(const Condition& condition) {
  json arr = json::array();
  for (const ConditionPair& pair : condition.pairs()) {
    arr.push_back(json{{"a", pair.a.literal()}, {"b", pair.b.literal()}});
  }
  return arr;
}

json traceJson(const ExtensionTrace& trace) {
  json doc;
  doc["case"] = std::string(caseTagName(trace.tag));
  doc["branch"] = trace.witnessBranch.literal();
  if (trace.constraintWord.empty()) {
    doc["s"] = json::array();
    doc["r"] = nullptr;
  } else {
    PrefixWord s(trace.constraintWord.begin(), trace.constraintWord.end() - 1);
    doc["s"] = wordJson(s);
    doc["r"] = trace.constraintWord.back().str();
  }
  json neighbors;
  neighbors["lower"] =
      trace.lowerNeighbor ? json(*trace.lowerNeighbor) : json(nullptr);
  neighbors["upper"] =
      trace.upperNeighbor ? json(*trace.upperNeighbor) : json(nullptr);
  doc["neighbors"] = neighbors;
  doc["image"] = trace.image ? json(trace.image->literal()) : json(nullptr);
  return doc;
}

json universeJson(const BoundedUniverse& u) {
  json doc;
  doc["mode"] = std::string(modeName(u.mode));
  doc["coords"] = coordSetJson(u.coords);
  doc["prefix_max"] = u.maxPrefixLen;
  doc["tails"] = coordSetJson(u.tails);
  doc["support_max"] = u.maxSupportSize;
  doc["odd_index_max"] = u.maxOddIndex;
  doc["domain_max"] = u.maxDomainSize;
  doc["designated"] = u.includeDesignated;
  return doc;
}

json censusJson(const std::vector<std::pair<std::string, std::uint64_t>>& census) {
  json arr = json::array();
  for (const auto& [signature, count] : census) {
    arr.push_back(json{{"signature", signature}, {"count", count}});
  }
  return arr;
}

}  // namespace

std::string amenabilityReportJson(const AmenabilityReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["amenable"] = report.amenable;
  doc["certificate"] = std::string(certificateName(report.certificate));
  doc["search_depth"] = report.searchDepth;
  if (report.counterexample) {
    json cex;
    cex["branch"] = report.counterexample->branch.literal();
    cex["s"] = wordJson(report.counterexample->word);
    cex["r"] = report.counterexample->value.str();
    doc["counterexample"] = cex;
  }
  return render(doc);
}

std::string validationReportJson(const ValidationReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["valid"] = report.valid;
  if (report.violation) {
    const Violation& v = *report.violation;
    json violation;
    violation["kind"] = std::string(violationKindName(v.kind));
    violation["i"] = v.i;
    violation["j"] = v.j;
    violation["domain_position"] = v.domainPosition;
    violation["image_position"] = v.imagePosition;
    doc["violation"] = violation;
  }
  return render(doc);
}

namespace {

json signatureJson(const Signature& signature) {
  json sig;
  sig["n"] = signature.n;
  sig["k"] = signature.k;
  json dom = json::array();
  for (const PrefixWord& word : signature.domPrefixes) dom.push_back(wordJson(word));
  json img = json::array();
  for (const PrefixWord& word : signature.imgPrefixes) img.push_back(wordJson(word));
  sig["dom_prefixes"] = dom;
  sig["img_prefixes"] = img;
  json ev = json::array();
  for (const auto& [a, b] : signature.eventualOdd) {
    ev.push_back(json::array({a.str(), b.str()}));
  }
  sig["eventual_odd"] = ev;
  return sig;
}

}  // namespace

std::string signatureReportJson(const Signature& signature) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["signature"] = signatureJson(signature);
  return render(doc);
}

std::string amalgamateReportJson(const Condition& result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["status"] = "ok";
  doc["pairs"] = pairsJson(result);
  doc["signature"] = signatureJson(conditionSignature(result));
  return render(doc);
}

std::string antichainReportJson(const AntichainReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "antichain";
  doc["condition_count"] = report.conditionCount;
  doc["pairs_checked"] = report.pairsChecked;
  doc["same_signature_pairs"] = report.sameSignaturePairs;
  doc["compatible_pairs"] = report.compatiblePairs;
  doc["distinct_signatures"] = report.distinctSignatures;
  json violations = json::array();
  for (const AntichainViolation& v : report.violations) {
    violations.push_back(json{{"i", v.i}, {"j", v.j}, {"instance", v.dump}});
  }
  doc["violations"] = violations;
  doc["signature_census"] = censusJson(report.signatureCensus);
  return render(doc);
}

std::string amalgamationAuditJson(const AmalgamationAuditReport& report,
                                  const BoundedUniverse& universe) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "amalgamation";
  doc["universe"] = universeJson(universe);
  doc["condition_count"] = report.conditionCount;
  doc["class_count"] = report.classCount;
  doc["pairs_checked"] = report.pairsChecked;
  doc["violations"] = report.violations;
  doc["signature_census"] = censusJson(report.signatureCensus);
  return render(doc);
}

std::string extensionAuditJson(const ExtensionAuditReport& report,
                               const BoundedUniverse& universe) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "extension";
  doc["universe"] = universeJson(universe);
  doc["condition_count"] = report.conditionCount;
  doc["extensions"] = report.extensionsRun;
  doc["failures"] = report.failures;
  json histogram;
  for (const auto& [tag, count] : report.caseHistogram) histogram[tag] = count;
  doc["case_histogram"] = histogram;
  return render(doc);
}

std::string automorphismReportJson(const AutomorphismReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["depth"] = report.depth;
  doc["tagged"] = report.tagged;
  doc["count"] = report.count;
  json generators = json::array();
  for (const TreeSwapGenerator& gen : report.generators) {
    generators.push_back(json{{"node", gen.node},
                              {"level", gen.node.size()},
                              {"permutation", gen.permutation}});
  }
  doc["generators"] = generators;
  return render(doc);
}

std::string extendResultJson(const ExtendResult& result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["status"] = "ok";
  doc["trace"] = traceJson(result.trace);
  doc["pairs"] = pairsJson(result.condition);
  return render(doc);
}

std::string genericRunJson(const GenericRun& run) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["steps"] = run.log.size();
  doc["pairs"] = pairsJson(run.condition);
  json log = json::array();
  for (const GenericStep& step : run.log) {
    log.push_back(json{{"step", step.step},
                       {"direction", step.forward ? "forward" : "backward"},
                       {"element", step.added.literal()},
                       {"trace", traceJson(step.trace)}});
  }
  doc["log"] = log;
  return render(doc);
}

}  // namespace potiso
