#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "nv/errors.hpp"

namespace nv {

using Integer = boost::multiprecision::cpp_int;

inline constexpr unsigned kDefaultMaxExponent = 64;

// Cap on the per-axis exponent of any cell an operation may create.
struct Limits {
  unsigned max_exponent = kDefaultMaxExponent;
};

inline void check_exponent(unsigned exponent, const Limits& limits) {
  if (exponent > limits.max_exponent) {
    throw GuardExceeded("exponent " + std::to_string(exponent) + " exceeds guard " +
                        std::to_string(limits.max_exponent));
  }
}

inline Integer pow2(unsigned e) { return Integer(1) << e; }

// Exact rational with a power-of-two denominator, kept in lowest terms.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Integer numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
    normalize();
  }
  static Dyadic from_int(long long v) { return Dyadic(Integer(v), 0); }

  const Integer& numerator() const noexcept { return num_; }
  unsigned exponent() const noexcept { return exp_; }

  // Multiplies by 2^shift (shift may be negative).
  Dyadic scaled(long long shift) const {
    if (shift >= 0) return Dyadic(num_ << static_cast<unsigned>(shift), exp_);
    return Dyadic(num_, exp_ + static_cast<unsigned>(-shift));
  }

  // floor(value * 2^e); only meaningful for value >= 0.
  Integer floor_scaled(unsigned e) const {
    if (e >= exp_) return num_ << (e - exp_);
    return num_ >> (exp_ - e);
  }

  bool is_negative() const { return num_ < 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << (e - a.exp_)) - (b.num_ << (e - b.exp_)), e);
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    const Integer lhs = a.num_ << (e - a.exp_);
    const Integer rhs = b.num_ << (e - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "k/2^e", or a bare integer when the exponent is zero.
  std::string to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/2^" + std::to_string(exp_);
  }

  // Exact finite decimal expansion.
  std::string to_decimal() const {
    if (exp_ == 0) return num_.str();
    const bool neg = num_ < 0;
    const Integer mag = neg ? Integer(-num_) : num_;
    // k/2^e = k*5^e / 10^e
    Integer five = 1;
    for (unsigned i = 0; i < exp_; ++i) five *= 5;
    std::string digits = Integer(mag * five).str();
    if (digits.size() <= exp_) digits.insert(0, exp_ - digits.size() + 1, '0');
    std::string out = digits.substr(0, digits.size() - exp_) + "." + digits.substr(digits.size() - exp_);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return neg ? "-" + out : out;
  }

  // Accepts "k", "k/2^e" and "k/m" with m a power of two.
  static Dyadic parse(std::string_view text) {
    auto fail = [&] { throw InvalidArgument("not a dyadic rational: '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view s) {
      if (s.empty()) fail();
      std::size_t i = (s[0] == '-') ? 1 : 0;
      if (i == s.size()) fail();
      for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') fail();
      return Integer(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Dyadic(parse_int(text), 0);
    const Integer num = parse_int(text.substr(0, slash));
    std::string_view den = text.substr(slash + 1);
    if (den.size() > 2 && den.substr(0, 2) == "2^") {
      const Integer e = parse_int(den.substr(2));
      if (e < 0 || e > 1000000) fail();
      return Dyadic(num, e.convert_to<unsigned>());
    }
    Integer d = parse_int(den);
    if (d <= 0) fail();
    unsigned e = 0;
    while (d > 1) {
      if ((d & 1) != 0) fail();
      d >>= 1;
      ++e;
    }
    return Dyadic(num, e);
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    const Integer mag = num_ < 0 ? Integer(-num_) : num_;
    const unsigned tz = std::min<unsigned>(static_cast<unsigned>(boost::multiprecision::lsb(mag)), exp_);
    if (tz > 0) {
      num_ >>= tz;  // exact: tz trailing zeros
      exp_ -= tz;
    }
  }

  Integer num_ = 0;
  unsigned exp_ = 0;
};

enum class CellRelation { disjoint, equal, a_inside_b, b_inside_a };

// The standard dyadic interval [k/2^e, (k+1)/2^e).
class DyadicCell {
 public:
  DyadicCell() = default;
  DyadicCell(unsigned exponent, Integer numerator) : exp_(exponent), num_(std::move(numerator)) {
    if (num_ < 0 || num_ >= pow2(exp_)) {
      throw InvalidArgument("cell numerator " + num_.str() + " outside [0, 2^" + std::to_string(exp_) + ")");
    }
  }

  unsigned exponent() const noexcept { return exp_; }
  const Integer& numerator() const noexcept { return num_; }

  Dyadic lower() const { return Dyadic(num_, exp_); }
  Dyadic upper() const { return Dyadic(num_ + 1, exp_); }
  Dyadic length() const { return Dyadic(1, exp_); }

  bool contains(const Dyadic& x) const { return !x.is_negative() && x.floor_scaled(exp_) == num_; }

  DyadicCell lower_half() const { return DyadicCell(exp_ + 1, num_ << 1, Unchecked{}); }
  DyadicCell upper_half() const { return DyadicCell(exp_ + 1, (num_ << 1) + 1, Unchecked{}); }
  bool is_upper_half() const { return exp_ > 0 && boost::multiprecision::bit_test(num_, 0); }

  DyadicCell parent() const {
    if (exp_ == 0) throw InvalidArgument("the unit interval has no parent");
    return DyadicCell(exp_ - 1, num_ >> 1, Unchecked{});
  }
  DyadicCell sibling() const {
    if (exp_ == 0) throw InvalidArgument("the unit interval has no sibling");
    return DyadicCell(exp_, num_ ^ 1, Unchecked{});
  }

  friend bool operator==(const DyadicCell&, const DyadicCell&) = default;

  // Geometric order: by lower endpoint, coarser cell first on ties.
  friend std::strong_ordering operator<=>(const DyadicCell& a, const DyadicCell& b) {
    if (auto c = a.lower() <=> b.lower(); c != 0) return c;
    return a.exp_ <=> b.exp_;
  }

  std::string to_string() const { return num_.str() + "/2^" + std::to_string(exp_); }

 private:
  friend DyadicCell transport(const DyadicCell&, const DyadicCell&, const DyadicCell&);

  struct Unchecked {};
  DyadicCell(unsigned exponent, Integer numerator, Unchecked) : exp_(exponent), num_(std::move(numerator)) {}

  unsigned exp_ = 0;
  Integer num_ = 0;
};

inline CellRelation cell_relation(const DyadicCell& a, const DyadicCell& b) {
  if (a.exponent() >= b.exponent()) {
    if ((a.numerator() >> (a.exponent() - b.exponent())) != b.numerator()) return CellRelation::disjoint;
    return a.exponent() == b.exponent() ? CellRelation::equal : CellRelation::a_inside_b;
  }
  if ((b.numerator() >> (b.exponent() - a.exponent())) != a.numerator()) return CellRelation::disjoint;
  return CellRelation::b_inside_a;
}

inline std::optional<DyadicCell> intersect(const DyadicCell& a, const DyadicCell& b) {
  switch (cell_relation(a, b)) {
    case CellRelation::disjoint:
      return std::nullopt;
    case CellRelation::equal:
    case CellRelation::a_inside_b:
      return a;
    case CellRelation::b_inside_a:
      return b;
  }
  return std::nullopt;
}

// Image of `c` (a subcell of `from`) under the increasing affine map from -> to.
inline DyadicCell transport(const DyadicCell& c, const DyadicCell& from, const DyadicCell& to) {
  const unsigned depth = c.exponent() - from.exponent();
  const Integer offset = c.numerator() - (from.numerator() << depth);
  return DyadicCell(to.exponent() + depth, (to.numerator() << depth) + offset, DyadicCell::Unchecked{});
}

// Image of the point x of `from` under the increasing affine map from -> to.
inline Dyadic transport(const Dyadic& x, const DyadicCell& from, const DyadicCell& to) {
  const long long shift = static_cast<long long>(from.exponent()) - static_cast<long long>(to.exponent());
  return to.lower() + (x - from.lower()).scaled(shift);
}

}  // namespace nv
