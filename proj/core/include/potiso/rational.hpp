#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace potiso {

// Exact rational with int64 numerator/denominator, always normalized
// (den > 0, gcd(|num|, den) == 1).  All coordinate arithmetic in the lab is
// desk scale, but products go through __int128 so comparisons cannot wrap.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(long long n) : num_(n) {}  // integers are coordinates
  Rat(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool isInteger() const { return den_ == 1; }
  bool isZero() const { return num_ == 0; }

  friend bool operator==(const Rat&, const Rat&) = default;
  std::strong_ordering operator<=>(const Rat& o) const;

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator-() const;

  static Rat midpoint(const Rat& a, const Rat& b);

  // |num| + den - 1, plus 1 for negatives: zero for 0, grows with syntactic
  // size.  Feeds the canonical element grading.
  long long heightWeight() const;

  std::string str() const;

  // Strict "[-]digits" or "[-]digits/digits" with positive denominator.
  static std::optional<Rat> fromString(std::string_view text);

 private:
  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace potiso
