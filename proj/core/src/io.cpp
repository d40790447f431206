#include "potiso/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "potiso/errors.hpp"

namespace potiso {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> splitOnSpaces(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) parts.push_back(s.substr(start, i - start));
  }
  return parts;
}

PrefixWord parseWordLiteral(std::string_view text, std::size_t line) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected word literal like [0,5]", line, 1);
  std::string_view inner = text.substr(1, text.size() - 2);
  PrefixWord word;
  if (inner.empty()) return word;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = inner.find(',', start);
    std::string_view piece =
        comma == std::string_view::npos ? inner.substr(start) : inner.substr(start, comma - start);
    auto value = Rat::fromString(piece);
    if (!value) throw ParseError("bad coordinate in word literal", line, start + 2);
    word.push_back(*value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return word;
}

std::vector<Rat> parseCoordSet(std::string_view text, std::size_t line) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("expected coordinate set like {0,1,2}", line, 1);
  std::string braced(text);
  braced.front() = '[';
  braced.back() = ']';
  return parseWordLiteral(braced, line);
}

struct RuleLine {
  std::size_t prefixMax = 0;
  std::vector<Rat> coords;
  std::vector<Rat> tails;
};

RuleLine parseRuleLine(std::string_view rest, std::size_t line) {
  RuleLine rule;
  bool sawPrefix = false, sawCoords = false;
  for (std::string_view part : splitOnSpaces(rest)) {
    if (part.starts_with("prefix<=")) {
      auto n = Rat::fromString(part.substr(8));
      if (!n || !n->isInteger() || n->num() < 0)
        throw ParseError("bad prefix bound in rule", line, 1);
      rule.prefixMax = static_cast<std::size_t>(n->num());
      sawPrefix = true;
    } else if (part.starts_with("coords=")) {
      rule.coords = parseCoordSet(part.substr(7), line);
      sawCoords = true;
    } else if (part.starts_with("tails=")) {
      rule.tails = parseCoordSet(part.substr(6), line);
    } else {
      throw ParseError("unknown rule component '" + std::string(part) + "'", line, 1);
    }
  }
  if (!sawPrefix || !sawCoords)
    throw ParseError("rule needs prefix<=L and coords={...}", line, 1);
  return rule;
}

}  // namespace

SubstructureSpec parseSpecText(std::string_view text) {
  std::optional<Mode> mode;
  std::vector<BranchSpec> branches;
  std::optional<RuleLine> rule;
  RemovalRule removals;

  enum class Section { None, Family, Remove, RemoveCone };
  Section section = Section::None;

  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = end == std::string_view::npos
                               ? text.substr(start)
                               : text.substr(start, end - start);
    ++lineNo;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    std::string_view line = trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (line.starts_with("mode:")) {
      auto parsed = modeFromName(trim(line.substr(5)));
      if (!parsed) throw ParseError("unknown mode", lineNo, 6);
      if (mode) throw ParseError("duplicate mode line", lineNo, 1);
      mode = parsed;
      continue;
    }
    if (line == "family:") {
      section = Section::Family;
      continue;
    }
    if (line == "remove:") {
      section = Section::Remove;
      continue;
    }
    if (line == "removecone:") {
      section = Section::RemoveCone;
      continue;
    }
    if (!mode) throw ParseError("mode must come before entries", lineNo, 1);

    switch (section) {
      case Section::None:
        throw ParseError("entry outside any section", lineNo, 1);
      case Section::Family:
        if (line.starts_with("rule:")) {
          if (rule) throw ParseError("family allows a single rule line", lineNo, 1);
          rule = parseRuleLine(trim(line.substr(5)), lineNo);
        } else {
          branches.push_back(BranchSpec::parseLiteral(line));
        }
        break;
      case Section::Remove:
        removals.explicitRemovals.push_back(Element::parseLiteral(*mode, line));
        break;
      case Section::RemoveCone: {
        auto parts = splitOnSpaces(line);
        if (parts.size() != 3)
          throw ParseError("removecone entry needs '<branch> <word> <value>'", lineNo, 1);
        ConeRule cone;
        cone.branch = BranchSpec::parseLiteral(parts[0]);
        cone.word = parseWordLiteral(parts[1], lineNo);
        auto value = Rat::fromString(parts[2]);
        if (!value) throw ParseError("bad removecone value", lineNo, 1);
        cone.value = *value;
        removals.cones.push_back(std::move(cone));
        break;
      }
    }
  }

  if (!mode) throw ParseError("spec file has no mode line", lineNo, 1);
  if (rule && !branches.empty())
    throw ParseError("family is either explicit branches or a single rule", lineNo, 1);
  if (!rule && branches.empty())
    throw ParseError("spec file has an empty family", lineNo, 1);

  BranchFamily family = rule ? BranchFamily::rule(rule->prefixMax, rule->coords, rule->tails)
                             : BranchFamily::explicitSet(std::move(branches));
  return SubstructureSpec(*mode, std::move(family), std::move(removals));
}

SubstructureSpec parseSpecFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseSpecText(buffer.str());
}

std::string specToText(const SubstructureSpec& spec) {
  std::string out = "mode: " + std::string(modeName(spec.mode())) + "\n";
  out += "family:\n";
  const BranchFamily& family = spec.family();
  if (family.isRule()) {
    out += "rule: prefix<=" + std::to_string(family.rulePrefixMax()) + " coords={";
    for (std::size_t i = 0; i < family.ruleCoords().size(); ++i) {
      if (i > 0) out += ',';
      out += family.ruleCoords()[i].str();
    }
    out += "} tails={";
    for (std::size_t i = 0; i < family.ruleTails().size(); ++i) {
      if (i > 0) out += ',';
      out += family.ruleTails()[i].str();
    }
    out += "}\n";
  } else {
    for (const BranchSpec& branch : family.enumerate()) {
      out += branch.literal() + "\n";
    }
  }
  if (!spec.removals().explicitRemovals.empty()) {
    out += "remove:\n";
    for (const Element& x : spec.removals().explicitRemovals) {
      out += x.literal() + "\n";
    }
  }
  if (!spec.removals().cones.empty()) {
    out += "removecone:\n";
    for (const ConeRule& cone : spec.removals().cones) {
      out += cone.branch.literal() + " " + wordLiteral(cone.word) + " " +
             cone.value.str() + "\n";
    }
  }
  return out;
}

void writeSpecFile(const std::filesystem::path& path, const SubstructureSpec& spec) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write spec file " + path.string());
  out << specToText(spec);
}

ConditionFile parseConditionFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open condition file " + path.string());
  std::filesystem::path dir = path.parent_path();

  std::optional<SubstructureSpec> source, target;
  std::string sourceRef, targetRef;
  std::vector<std::pair<std::string, std::string>> rawPairs;

  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string_view line = trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (line.starts_with("source:")) {
      sourceRef = std::string(trim(line.substr(7)));
      source = parseSpecFile(dir / sourceRef);
    } else if (line.starts_with("target:")) {
      targetRef = std::string(trim(line.substr(7)));
      target = parseSpecFile(dir / targetRef);
    } else if (line.starts_with("pair:")) {
      std::string_view body = trim(line.substr(5));
      std::size_t arrow = body.find(" -> ");
      if (arrow == std::string_view::npos)
        throw ParseError("pair entry needs '<element> -> <element>'", lineNo, 1);
      rawPairs.emplace_back(std::string(trim(body.substr(0, arrow))),
                            std::string(trim(body.substr(arrow + 4))));
    } else {
      throw ParseError("unknown condition file entry", lineNo, 1);
    }
  }
  if (!source || !target)
    throw ParseError("condition file needs source: and target: references", lineNo, 1);

  std::vector<ConditionPair> pairs;
  pairs.reserve(rawPairs.size());
  for (const auto& [a, b] : rawPairs) {
    pairs.push_back(ConditionPair{Element::parseLiteral(source->mode(), a),
                                  Element::parseLiteral(target->mode(), b)});
  }
  return ConditionFile{
      Condition::make(std::move(*source), std::move(*target), std::move(pairs)),
      std::move(sourceRef), std::move(targetRef)};
}

std::string conditionToText(const Condition& condition, std::string_view sourceRef,
                            std::string_view targetRef) {
  std::string out;
  out += "source: " + std::string(sourceRef) + "\n";
  out += "target: " + std::string(targetRef) + "\n";
  for (const ConditionPair& pair : condition.pairs()) {
    out += "pair: " + pair.a.literal() + " -> " + pair.b.literal() + "\n";
  }
  return out;
}

void writeConditionFile(const std::filesystem::path& path, const Condition& condition,
                        std::string_view sourceRef, std::string_view targetRef) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write condition file " + path.string());
  out << conditionToText(condition, sourceRef, targetRef);
}

}  // namespace potiso
