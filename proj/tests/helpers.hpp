#pragma once

#include <map>
#include <optional>
#include <vector>

#include "potiso/condition.hpp"
#include "potiso/element.hpp"
#include "potiso/structure.hpp"

// Shared builders and the independent materialization oracle.  Everything
// here goes through Element::value only, so the oracle side never leans on
// the comparison machinery it is checking.
namespace testutil {

using namespace potiso;

inline BranchSpec br(std::vector<long long> prefix, long long tail) {
  std::vector<Rat> coords(prefix.begin(), prefix.end());
  return BranchSpec(std::move(coords), Rat(tail));
}

inline OddPattern odd(std::map<std::size_t, long long> support) {
  std::map<std::size_t, Rat> coords;
  for (auto [n, v] : support) coords.emplace(n, Rat(v));
  return OddPattern::fromSupport(std::move(coords));
}

inline Element qel(const BranchSpec& branch, std::map<std::size_t, long long> support = {}) {
  return Element(Mode::Qtree, branch, odd(std::move(support)));
}

inline Element fel(const BranchSpec& branch, std::map<std::size_t, long long> support = {}) {
  return Element(Mode::Fer, branch, odd(std::move(support)));
}

inline Element fones(const BranchSpec& branch) {
  return Element(Mode::Fer, branch, OddPattern::allOnes());
}

inline std::vector<Rat> materialize(const Element& x, std::size_t n) {
  std::vector<Rat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(x.value(i));
  return out;
}

// Materialize-and-scan comparison over a window that provably separates the
// inputs (both sequences are 2-periodic past their stable points).
inline std::optional<std::size_t> firstDiffOracle(const Element& x, const Element& y) {
  std::size_t window = std::max(x.stableFrom(), y.stableFrom()) + 4;
  auto wx = materialize(x, window);
  auto wy = materialize(y, window);
  for (std::size_t i = 0; i < window; ++i) {
    if (wx[i] != wy[i]) return i;
  }
  return std::nullopt;
}

// A small pool of qtree elements over two branches, rich enough for the
// order/meet/round-trip properties.
inline std::vector<Element> qtreePool() {
  std::vector<Element> pool;
  BranchSpec zero = br({}, 0);
  BranchSpec one = br({1}, 0);
  BranchSpec mixed = br({0, 2}, 0);
  for (const BranchSpec& branch : {zero, one, mixed}) {
    pool.push_back(qel(branch));
    pool.push_back(qel(branch, {{0, 1}}));
    pool.push_back(qel(branch, {{0, 2}}));
    pool.push_back(qel(branch, {{1, 1}}));
    pool.push_back(qel(branch, {{0, 1}, {1, 2}}));
    pool.push_back(Element(Mode::Qtree, branch,
                           OddPattern::fromSupport({{0, Rat(1, 2)}})));
    pool.push_back(qel(branch, {{2, -1}}));
  }
  return pool;
}

inline std::vector<Element> ferPool() {
  std::vector<Element> pool;
  BranchSpec zero = br({}, 0);
  BranchSpec one = br({1}, 0);
  for (const BranchSpec& branch : {zero, one}) {
    pool.push_back(fel(branch));
    pool.push_back(fel(branch, {{0, 1}}));
    pool.push_back(fel(branch, {{1, 1}}));
    pool.push_back(fel(branch, {{0, 1}, {2, 1}}));
    pool.push_back(fones(branch));
  }
  return pool;
}

}  // namespace testutil
