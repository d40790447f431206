// potiso: lab CLI for the potential-isomorphism forcing combinatorics.
// Exit status: 0 clean, 1 findings/violations, 2 input errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "potiso/ccc.hpp"
#include "potiso/density.hpp"
#include "potiso/errors.hpp"
#include "potiso/io.hpp"
#include "potiso/oracle.hpp"
#include "potiso/reports.hpp"
#include "potiso/structure.hpp"

namespace {

namespace fs = std::filesystem;
using namespace potiso;

constexpr int kExitClean = 0;
constexpr int kExitFinding = 1;
constexpr int kExitInput = 2;

std::vector<Rat> parseCoordList(const std::string& csv) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string piece = comma == std::string::npos ? csv.substr(start)
                                                   : csv.substr(start, comma - start);
    auto value = Rat::fromString(piece);
    if (!value) throw DomainError("bad coordinate '" + piece + "' in list");
    out.push_back(*value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string statusJson(const std::string& status, const std::string& detail) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["status"] = status;
  doc["detail"] = detail;
  return doc.dump(2) + "\n";
}

// Spec reference for a condition file written at `out`: a path that resolves
// from the output file's directory.
std::string refFor(const fs::path& specPath, const fs::path& out) {
  std::error_code ec;
  fs::path rel = fs::relative(fs::absolute(specPath), fs::absolute(out).parent_path(), ec);
  if (ec || rel.empty()) return fs::absolute(specPath).string();
  return rel.string();
}

struct UniverseFlags {
  std::string mode = "qtree";
  std::string coords;
  std::string tails;
  long long prefixMax = -1;
  long long supportMax = -1;
  long long oddIndexMax = -1;
  long long domMax = -1;
  bool designated = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "qtree or fer")->check(CLI::IsMember({"qtree", "fer"}));
    cmd->add_option("--coords", coords, "coordinate set, e.g. 0,1,2");
    cmd->add_option("--tails", tails, "allowed tail values (default: standard universe)");
    cmd->add_option("--prefix-max", prefixMax, "branch prefix length bound");
    cmd->add_option("--support-max", supportMax, "odd support size bound");
    cmd->add_option("--odd-index-max", oddIndexMax, "largest odd support index");
    cmd->add_option("--dom-max", domMax, "condition domain size bound");
    cmd->add_flag("--designated", designated, "include the fer designated elements");
  }

  BoundedUniverse build() const {
    Mode m = *modeFromName(mode);
    BoundedUniverse u = m == Mode::Qtree ? standardQtreeUniverse() : standardFerUniverse();
    if (!coords.empty()) u.coords = parseCoordList(coords);
    if (!tails.empty()) u.tails = parseCoordList(tails);
    if (prefixMax >= 0) u.maxPrefixLen = static_cast<std::size_t>(prefixMax);
    if (supportMax >= 0) u.maxSupportSize = static_cast<std::size_t>(supportMax);
    if (oddIndexMax >= 0) u.maxOddIndex = static_cast<std::size_t>(oddIndexMax);
    if (domMax >= 0) u.maxDomainSize = static_cast<std::size_t>(domMax);
    if (designated) u.includeDesignated = true;
    if (m == Mode::Qtree) u.includeDesignated = false;
    return u;
  }
};

int runCheckAmenable(const std::string& specPath, long long depth) {
  SubstructureSpec spec = parseSpecFile(specPath);
  AmenabilityReport report = isAmenable(spec, static_cast<std::size_t>(depth));
  std::cout << amenabilityReportJson(report);
  return report.amenable ? kExitClean : kExitFinding;
}

int runValidate(const std::string& condPath) {
  ConditionFile cf = parseConditionFile(condPath);
  ValidationReport report = validateCondition(cf.condition);
  std::cout << validationReportJson(report);
  return report.valid ? kExitClean : kExitFinding;
}

int runClassify(const std::string& condPath) {
  ConditionFile cf = parseConditionFile(condPath);
  ValidationReport report = validateCondition(cf.condition);
  if (!report.valid) {
    std::cout << validationReportJson(report);
    return kExitFinding;
  }
  std::cout << signatureReportJson(conditionSignature(cf.condition));
  return kExitClean;
}

int runAmalgamate(const std::string& pPath, const std::string& qPath,
                  const std::string& outPath) {
  ConditionFile p = parseConditionFile(pPath);
  ConditionFile q = parseConditionFile(qPath);
  for (const Condition* cond : {&p.condition, &q.condition}) {
    ValidationReport report = validateCondition(*cond);
    if (!report.valid) {
      std::cout << validationReportJson(report);
      return kExitFinding;
    }
  }
  if (!sameClass(p.condition, q.condition)) {
    std::cout << statusJson("not-same-class",
                            "amalgamation requires same-class conditions");
    return kExitInput;
  }
  Condition merged = amalgamate(p.condition, q.condition);
  std::cout << amalgamateReportJson(merged);
  if (!outPath.empty()) {
    writeConditionFile(outPath, merged, refFor(fs::path(pPath).parent_path() / p.sourceRef, outPath),
                       refFor(fs::path(pPath).parent_path() / p.targetRef, outPath));
  }
  return kExitClean;
}

int runExtend(const std::string& condPath, const std::string& literal,
              const std::string& outPath) {
  ConditionFile cf = parseConditionFile(condPath);
  ValidationReport valid = validateCondition(cf.condition);
  if (!valid.valid) {
    std::cout << validationReportJson(valid);
    return kExitFinding;
  }
  Element a = Element::parseLiteral(cf.condition.mode(), literal);
  ExtendResult result = extendCondition(cf.condition, a);
  std::cout << extendResultJson(result);
  if (!outPath.empty()) {
    writeConditionFile(outPath, result.condition,
                       refFor(fs::path(condPath).parent_path() / cf.sourceRef, outPath),
                       refFor(fs::path(condPath).parent_path() / cf.targetRef, outPath));
  }
  return kExitClean;
}

int runGeneric(const std::string& srcPath, const std::string& tgtPath,
               long long steps, const std::string& modeFlag,
               const std::string& outPath, const std::string& traceOut) {
  SubstructureSpec source = parseSpecFile(srcPath);
  SubstructureSpec target = parseSpecFile(tgtPath);
  if (!modeFlag.empty()) {
    auto m = modeFromName(modeFlag);
    if (!m || *m != source.mode())
      throw DomainError("--mode disagrees with the spec files");
  }
  GenericRun run = genericBuild(source, target, static_cast<std::size_t>(steps));
  if (!outPath.empty()) {
    writeConditionFile(outPath, run.condition, refFor(srcPath, outPath),
                       refFor(tgtPath, outPath));
  }
  std::string trace = genericRunJson(run);
  if (!traceOut.empty()) {
    std::ofstream out(traceOut);
    if (!out) throw Error("cannot write trace file " + traceOut);
    out << trace;
  } else {
    std::cout << trace;
  }
  return kExitClean;
}

int runAuditAmalgamation(const UniverseFlags& flags) {
  BoundedUniverse u = flags.build();
  AmalgamationAuditReport report = exhaustiveAmalgamationAudit(u);
  std::cout << amalgamationAuditJson(report, u);
  return report.violations.empty() ? kExitClean : kExitFinding;
}

int runAuditExtension(const UniverseFlags& flags) {
  BoundedUniverse u = flags.build();
  ExtensionAuditReport report = exhaustiveExtensionAudit(u);
  std::cout << extensionAuditJson(report, u);
  return report.failures.empty() ? kExitClean : kExitFinding;
}

int runAuditAntichain(const std::string& dirPath) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dirPath)) {
    if (entry.path().extension() == ".cond") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .cond files in " + dirPath);
  std::vector<Condition> conditions;
  for (const fs::path& file : files) {
    Condition cond = parseConditionFile(file).condition;
    if (!isValidCondition(cond))
      throw DomainError("antichain audit needs valid conditions: " +
                        file.string() + " fails validation");
    conditions.push_back(std::move(cond));
  }
  AntichainReport report = antichainAudit(conditions);
  std::cout << antichainReportJson(report);
  return report.violations.empty() ? kExitClean : kExitFinding;
}

int runAutomorphisms(long long depth, bool tagged) {
  AutomorphismReport report =
      truncationAutomorphisms(static_cast<std::size_t>(depth), tagged);
  std::cout << automorphismReportJson(report);
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"potential-isomorphism forcing lab"};
  app.require_subcommand(1);

  std::string specPath, condPath, pPath, qPath, literal, srcPath, tgtPath;
  std::string outPath, traceOut, dirPath, modeFlag;
  long long depth = 4, steps = 0;
  bool tagged = false;

  auto* checkAmenable = app.add_subcommand("check-amenable", "amenability with certificate");
  checkAmenable->add_option("spec", specPath)->required();
  checkAmenable->add_option("--depth", depth)->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "condition validity with first violation");
  validate->add_option("cond", condPath)->required();

  auto* classify = app.add_subcommand("classify", "~-class signature of a condition");
  classify->add_option("cond", condPath)->required();

  auto* amalg = app.add_subcommand("amalgamate", "union of two same-class conditions");
  amalg->add_option("p", pPath)->required();
  amalg->add_option("q", qPath)->required();
  amalg->add_option("--out", outPath);

  auto* extend = app.add_subcommand("extend", "one-point extension of a condition");
  extend->add_option("cond", condPath)->required();
  extend->add_option("element", literal)->required();
  extend->add_option("--out", outPath);

  auto* generic = app.add_subcommand("generic", "back-and-forth generic run");
  generic->add_option("source", srcPath)->required();
  generic->add_option("target", tgtPath)->required();
  generic->add_option("--steps", steps)->required()->check(CLI::NonNegativeNumber);
  generic->add_option("--mode", modeFlag)->check(CLI::IsMember({"qtree", "fer"}));
  generic->add_option("--out", outPath);
  generic->add_option("--trace-out", traceOut);

  auto* audit = app.add_subcommand("audit", "exhaustive bounded-universe audits");
  audit->require_subcommand(1);
  UniverseFlags amalgFlags, extFlags;
  auto* auditAmalg = audit->add_subcommand("amalgamation", "same-signature union audit");
  amalgFlags.attach(auditAmalg);
  auto* auditExt = audit->add_subcommand("extension", "one-point extension audit");
  extFlags.attach(auditExt);
  auto* auditAnti = audit->add_subcommand("antichain", "pairwise compatibility audit");
  auditAnti->add_option("dir", dirPath)->required();

  auto* autos = app.add_subcommand("automorphisms", "truncation rigidity probe");
  autos->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  autos->add_flag("--tagged", tagged);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? kExitClean : kExitInput;
  }

  try {
    if (checkAmenable->parsed()) return runCheckAmenable(specPath, depth);
    if (validate->parsed()) return runValidate(condPath);
    if (classify->parsed()) return runClassify(condPath);
    if (amalg->parsed()) return runAmalgamate(pPath, qPath, outPath);
    if (extend->parsed()) return runExtend(condPath, literal, outPath);
    if (generic->parsed())
      return runGeneric(srcPath, tgtPath, steps, modeFlag, outPath, traceOut);
    if (audit->parsed()) {
      if (auditAmalg->parsed()) return runAuditAmalgamation(amalgFlags);
      if (auditExt->parsed()) return runAuditExtension(extFlags);
      if (auditAnti->parsed()) return runAuditAntichain(dirPath);
    }
    if (autos->parsed()) return runAutomorphisms(depth, tagged);
  } catch (const NoWitnessError& e) {
    std::cout << statusJson("no-witness", e.what());
    return kExitFinding;
  } catch (const ContractViolationError& e) {
    std::cout << statusJson("contract-violation", e.what());
    return kExitFinding;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
