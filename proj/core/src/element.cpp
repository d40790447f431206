#include "potiso/element.hpp"

#include <algorithm>
#include <cctype>

#include "potiso/errors.hpp"

namespace potiso {

namespace {

constexpr long long kAllOnesSurcharge = 4;

// Single-line scanner for the literal grammars.  Column numbers are 1-based.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t column() const { return pos_ + 1; }

  void expect(char c) {
    if (done() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", 1, column());
    ++pos_;
  }

  void expect(std::string_view word) {
    for (char c : word) expect(c);
  }

  bool tryConsume(char c) {
    if (!done() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool tryConsume(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  char peek() const { return done() ? '\0' : text_[pos_]; }

  Rat coord() {
    std::size_t start = pos_;
    if (!done() && text_[pos_] == '-') ++pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (!done() && text_[pos_] == '/') {
      ++pos_;
      while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    auto parsed = Rat::fromString(text_.substr(start, pos_ - start));
    if (!parsed) throw ParseError("expected coordinate value", 1, start + 1);
    return *parsed;
  }

  std::size_t index() {
    std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected index", 1, start + 1);
    std::size_t value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      if (value > (SIZE_MAX - 9) / 10) throw ParseError("index too large", 1, start + 1);
      value = value * 10 + static_cast<std::size_t>(text_[i] - '0');
    }
    return value;
  }

  void finish() {
    if (!done()) throw ParseError("trailing characters", 1, column());
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void checkCoordInMode(Mode mode, const Rat& v, const char* what) {
  if (mode == Mode::Fer && !(v == Rat(0) || v == Rat(1)))
    throw DomainError(std::string(what) + " value " + v.str() +
                      " outside the bit domain");
}

}  // namespace

std::string_view modeName(Mode mode) {
  return mode == Mode::Qtree ? "qtree" : "fer";
}

std::optional<Mode> modeFromName(std::string_view name) {
  if (name == "qtree") return Mode::Qtree;
  if (name == "fer") return Mode::Fer;
  return std::nullopt;
}

std::string wordLiteral(const PrefixWord& word) {
  std::string out = "[";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ',';
    out += word[i].str();
  }
  out += ']';
  return out;
}

BranchSpec::BranchSpec(std::vector<Rat> prefix, Rat tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
}

std::string BranchSpec::literal() const {
  std::string out = "[";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i > 0) out += ',';
    out += prefix_[i].str();
  }
  out += '|';
  out += tail_.str();
  out += ']';
  return out;
}

BranchSpec BranchSpec::parseLiteral(std::string_view text) {
  Cursor cur(text);
  cur.expect('[');
  std::vector<Rat> prefix;
  if (cur.peek() != '|') {
    prefix.push_back(cur.coord());
    while (cur.tryConsume(',')) prefix.push_back(cur.coord());
  }
  cur.expect('|');
  Rat tail = cur.coord();
  cur.expect(']');
  cur.finish();
  return BranchSpec(std::move(prefix), tail);
}

bool branchSpecLess(const BranchSpec& a, const BranchSpec& b) {
  if (a.prefix().size() != b.prefix().size())
    return a.prefix().size() < b.prefix().size();
  for (std::size_t i = 0; i < a.prefix().size(); ++i) {
    if (a.prefix()[i] != b.prefix()[i]) return a.prefix()[i] < b.prefix()[i];
  }
  return a.tail() < b.tail();
}

OddPattern OddPattern::allOnes() {
  OddPattern p;
  p.allOnes_ = true;
  return p;
}

OddPattern OddPattern::fromSupport(std::map<std::size_t, Rat> support) {
  OddPattern p;
  std::erase_if(support, [](const auto& kv) { return kv.second.isZero(); });
  p.support_ = std::move(support);
  return p;
}

Rat OddPattern::at(std::size_t n) const {
  if (allOnes_) return 1;
  auto it = support_.find(n);
  return it == support_.end() ? Rat(0) : it->second;
}

std::size_t OddPattern::constantFrom() const {
  if (allOnes_ || support_.empty()) return 0;
  return support_.rbegin()->first + 1;
}

Element::Element(Mode mode, BranchSpec branch, OddPattern odd)
    : mode_(mode), branch_(std::move(branch)), odd_(std::move(odd)) {
  if (odd_.isAllOnes() && mode_ != Mode::Fer)
    throw DomainError("constant-1 odd pattern is only available in fer mode");
  if (mode_ == Mode::Fer) {
    for (const Rat& v : branch_.prefix()) checkCoordInMode(mode_, v, "branch");
    checkCoordInMode(mode_, branch_.tail(), "branch tail");
    for (const auto& [n, v] : odd_.support()) checkCoordInMode(mode_, v, "odd");
  }
}

Rat Element::value(std::size_t i) const {
  return i % 2 == 0 ? branch_.at(i / 2) : odd_.at((i - 1) / 2);
}

PrefixWord Element::prefixWord(std::size_t n) const {
  PrefixWord out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(value(i));
  return out;
}

std::size_t Element::stableFrom() const {
  std::size_t evenStable = 2 * branch_.stableFrom();
  std::size_t oddStable = odd_.constantFrom() == 0 ? 0 : 2 * odd_.constantFrom() + 1;
  return std::max(evenStable, oddStable);
}

std::string Element::literal() const {
  std::string out = "eta=";
  out += branch_.literal();
  out += " odd=";
  if (odd_.isAllOnes()) {
    out += "ALL1";
  } else {
    out += '{';
    bool first = true;
    for (const auto& [n, v] : odd_.support()) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(n);
      out += ':';
      out += v.str();
    }
    out += '}';
  }
  return out;
}

Element Element::parseLiteral(Mode mode, std::string_view text) {
  Cursor cur(text);
  cur.expect("eta=[");
  std::vector<Rat> prefix;
  if (cur.peek() != '|') {
    prefix.push_back(cur.coord());
    while (cur.tryConsume(',')) prefix.push_back(cur.coord());
  }
  cur.expect('|');
  Rat tail = cur.coord();
  cur.expect("] odd=");
  OddPattern odd;
  if (cur.tryConsume("ALL1")) {
    odd = OddPattern::allOnes();
  } else {
    cur.expect('{');
    std::map<std::size_t, Rat> support;
    if (cur.peek() != '}') {
      do {
        std::size_t n = cur.index();
        cur.expect(':');
        Rat v = cur.coord();
        if (support.contains(n))
          throw ParseError("duplicate odd index " + std::to_string(n), 1, cur.column());
        support.emplace(n, v);
      } while (cur.tryConsume(','));
    }
    cur.expect('}');
    odd = OddPattern::fromSupport(std::move(support));
  }
  cur.finish();
  return Element(mode, BranchSpec(std::move(prefix), tail), std::move(odd));
}

CompareResult compareElements(const Element& x, const Element& y) {
  if (x.mode() != y.mode())
    throw DomainError("cannot compare elements of different modes");
  std::size_t limit = std::max(x.stableFrom(), y.stableFrom());
  if (limit % 2 != 0) ++limit;  // keep the window aligned to full periods
  for (std::size_t i = 0; i < limit; ++i) {
    Rat vx = x.value(i);
    Rat vy = y.value(i);
    if (vx != vy)
      return {vx < vy ? Ordering::Less : Ordering::Greater, i};
  }
  // Beyond the window both sequences are 2-periodic.
  Rat ex = x.branch().tail(), ey = y.branch().tail();
  Rat ox = x.odd().eventualValue(), oy = y.odd().eventualValue();
  if (ex != ey)
    return {ex < ey ? Ordering::Less : Ordering::Greater, limit};
  if (ox != oy)
    return {ox < oy ? Ordering::Less : Ordering::Greater, limit + 1};
  return {Ordering::Equal, std::nullopt};
}

bool elementLess(const Element& x, const Element& y) {
  return compareElements(x, y).order == Ordering::Less;
}

std::size_t meetLength(const Element& x, const Element& y) {
  CompareResult cmp = compareElements(x, y);
  if (cmp.order == Ordering::Equal)
    throw DomainError("meet of equal elements is not a finite word");
  return *cmp.firstDifference;
}

long long elementGrade(const Element& x) {
  long long grade = static_cast<long long>(x.branch().prefix().size());
  for (const Rat& v : x.branch().prefix()) grade += v.heightWeight();
  grade += x.branch().tail().heightWeight();
  if (x.odd().isAllOnes()) {
    grade += kAllOnesSurcharge;
  } else {
    grade += static_cast<long long>(x.odd().support().size());
    for (const auto& [n, v] : x.odd().support())
      grade += static_cast<long long>(n) + v.heightWeight();
  }
  return grade;
}

bool canonicalElementOrder(const Element& x, const Element& y) {
  long long gx = elementGrade(x);
  long long gy = elementGrade(y);
  if (gx != gy) return gx < gy;
  return x.literal() < y.literal();
}

}  // namespace potiso
