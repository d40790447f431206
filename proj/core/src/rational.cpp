#include "potiso/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "potiso/errors.hpp"

namespace potiso {

namespace {

using Wide = __int128;

long long narrow(Wide v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw Error("rational overflow past desk scale");
  }
  return static_cast<long long>(v);
}

}  // namespace

Rat::Rat(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  num_ /= g;
  den_ /= g;
}

std::strong_ordering Rat::operator<=>(const Rat& o) const {
  Wide lhs = static_cast<Wide>(num_) * o.den_;
  Wide rhs = static_cast<Wide>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rat Rat::operator+(const Rat& o) const {
  Wide n = static_cast<Wide>(num_) * o.den_ + static_cast<Wide>(o.num_) * den_;
  Wide d = static_cast<Wide>(den_) * o.den_;
  return Rat(narrow(n), narrow(d));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator-() const {
  Rat r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rat Rat::midpoint(const Rat& a, const Rat& b) {
  Wide n = static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_;
  Wide d = static_cast<Wide>(a.den_) * b.den_ * 2;
  return Rat(narrow(n), narrow(d));
}

long long Rat::heightWeight() const {
  return (num_ < 0 ? -num_ + 1 : num_) + den_ - 1;
}

std::string Rat::str() const {
  std::string out = std::to_string(num_);
  if (den_ != 1) {
    out += '/';
    out += std::to_string(den_);
  }
  return out;
}

std::optional<Rat> Rat::fromString(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '-') {
    neg = true;
    ++pos;
  }
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    return std::nullopt;
  long long num = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    if (num > (std::numeric_limits<long long>::max() - 9) / 10) return std::nullopt;
    num = num * 10 + (text[pos] - '0');
    ++pos;
  }
  long long den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      return std::nullopt;
    den = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (den > (std::numeric_limits<long long>::max() - 9) / 10) return std::nullopt;
      den = den * 10 + (text[pos] - '0');
      ++pos;
    }
    if (den == 0) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  return Rat(neg ? -num : num, den);
}

}  // namespace potiso
