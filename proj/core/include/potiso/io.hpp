#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "potiso/condition.hpp"
#include "potiso/structure.hpp"

namespace potiso {

/*
 * Spec files: line-oriented plain text.  '#' starts a comment, blanks are
 * skipped.  The first entry is "mode: qtree|fer"; the sections "family:",
 * "remove:" and "removecone:" follow in any order.  Family entries are
 * branch literals ("[3|0]") or one rule line
 * "rule: prefix<=L coords={...} [tails={...}]"; remove entries are element
 * literals; removecone entries are "<branch> <word> <value>" triples, e.g.
 * "[|0] [0] 5".
 *
 * Condition files: "source:"/"target:" spec-file references (resolved
 * relative to the condition file), then one
 * "pair: <element-literal> -> <element-literal>" per line.
 */

SubstructureSpec parseSpecText(std::string_view text);
SubstructureSpec parseSpecFile(const std::filesystem::path& path);
std::string specToText(const SubstructureSpec& spec);
void writeSpecFile(const std::filesystem::path& path, const SubstructureSpec& spec);

struct ConditionFile {
  Condition condition;
  std::string sourceRef;
  std::string targetRef;
};

ConditionFile parseConditionFile(const std::filesystem::path& path);
std::string conditionToText(const Condition& condition, std::string_view sourceRef,
                            std::string_view targetRef);
void writeConditionFile(const std::filesystem::path& path, const Condition& condition,
                        std::string_view sourceRef, std::string_view targetRef);

}  // namespace potiso
