#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nv/dyadic.hpp"

namespace nv {

// A point of the unit cube with exact coordinates.
using Point = std::vector<Dyadic>;

inline std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].to_string();
  }
  return out + ")";
}

// Product of one standard dyadic cell per axis.
class Brick {
 public:
  Brick() = default;
  explicit Brick(std::vector<DyadicCell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw InvalidArgument("a brick needs at least one axis");
  }

  static Brick unit(std::size_t n) {
    if (n == 0) throw InvalidArgument("dimension must be at least 1");
    return Brick(std::vector<DyadicCell>(n));
  }

  std::size_t dimension() const noexcept { return cells_.size(); }
  const std::vector<DyadicCell>& cells() const noexcept { return cells_; }
  const DyadicCell& cell(std::size_t axis) const { return cells_.at(axis); }

  Brick with_cell(std::size_t axis, DyadicCell c) const {
    Brick out = *this;
    out.cells_.at(axis) = std::move(c);
    return out;
  }

  unsigned max_exponent() const {
    unsigned m = 0;
    for (const auto& c : cells_) m = std::max(m, c.exponent());
    return m;
  }
  unsigned min_exponent() const {
    unsigned m = cells_.front().exponent();
    for (const auto& c : cells_) m = std::min(m, c.exponent());
    return m;
  }
  // Measure is 2^-total_exponent().
  unsigned total_exponent() const {
    unsigned s = 0;
    for (const auto& c : cells_) s += c.exponent();
    return s;
  }
  Dyadic measure() const { return Dyadic(1, total_exponent()); }
  Dyadic side(std::size_t axis) const { return cell(axis).length(); }
  // l-infinity diameter: the longest side.
  Dyadic diameter() const { return Dyadic(1, min_exponent()); }

  bool is_unit() const {
    for (const auto& c : cells_)
      if (c.exponent() != 0) return false;
    return true;
  }

  bool contains(const Point& x) const {
    if (x.size() != dimension()) throw DimensionMismatch(dimension(), x.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (!cells_[i].contains(x[i])) return false;
    return true;
  }

  // True when `inner` is a subset of this brick.
  bool contains(const Brick& inner) const {
    if (inner.dimension() != dimension()) throw DimensionMismatch(dimension(), inner.dimension());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto r = cell_relation(inner.cells_[i], cells_[i]);
      if (r != CellRelation::equal && r != CellRelation::a_inside_b) return false;
    }
    return true;
  }

  Point lower_corner() const {
    Point p;
    p.reserve(cells_.size());
    for (const auto& c : cells_) p.push_back(c.lower());
    return p;
  }
  Point center() const {
    Point p;
    p.reserve(cells_.size());
    for (const auto& c : cells_) p.push_back(Dyadic((c.numerator() << 1) + 1, c.exponent() + 1));
    return p;
  }

  friend bool operator==(const Brick&, const Brick&) = default;
  friend std::strong_ordering operator<=>(const Brick& a, const Brick& b) {
    const std::size_t n = std::min(a.cells_.size(), b.cells_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = a.cells_[i] <=> b.cells_[i]; c != 0) return c;
    return a.cells_.size() <=> b.cells_.size();
  }

  // Comma-joined "k/2^e" cells, axis 0 first.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i) out += ',';
      out += cells_[i].to_string();
    }
    return out;
  }

 private:
  std::vector<DyadicCell> cells_;
};

inline bool disjoint(const Brick& a, const Brick& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (cell_relation(a.cell(i), b.cell(i)) == CellRelation::disjoint) return true;
  return false;
}

inline std::optional<Brick> brick_intersect(const Brick& a, const Brick& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
  std::vector<DyadicCell> cells;
  cells.reserve(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    auto c = intersect(a.cell(i), b.cell(i));
    if (!c) return std::nullopt;
    cells.push_back(std::move(*c));
  }
  return Brick(std::move(cells));
}

inline void check_axis(const Brick& b, std::size_t axis) {
  if (axis >= b.dimension()) {
    throw InvalidArgument("axis " + std::to_string(axis) + " out of range for dimension " +
                          std::to_string(b.dimension()));
  }
}

// Lower and upper halves along `axis`.
inline std::pair<Brick, Brick> brick_split(const Brick& b, std::size_t axis, const Limits& limits = {}) {
  check_axis(b, axis);
  check_exponent(b.cell(axis).exponent() + 1, limits);
  return {b.with_cell(axis, b.cell(axis).lower_half()), b.with_cell(axis, b.cell(axis).upper_half())};
}

// The brick whose split along `axis` has `b` as one half.
inline Brick brick_double(const Brick& b, std::size_t axis) {
  check_axis(b, axis);
  if (b.cell(axis).exponent() == 0) {
    throw InvalidArgument("cannot double along axis " + std::to_string(axis) + ": cell is already [0,1)");
  }
  return b.with_cell(axis, b.cell(axis).parent());
}

// The other half of brick_double(b, axis).
inline Brick brick_sibling(const Brick& b, std::size_t axis) {
  check_axis(b, axis);
  if (b.cell(axis).exponent() == 0) {
    throw InvalidArgument("no sibling along axis " + std::to_string(axis) + ": cell is already [0,1)");
  }
  return b.with_cell(axis, b.cell(axis).sibling());
}

// Image of `c` (a sub-brick of `from`) under the canonical affine map from -> to.
inline Brick transport(const Brick& c, const Brick& from, const Brick& to) {
  std::vector<DyadicCell> cells;
  cells.reserve(c.dimension());
  for (std::size_t i = 0; i < c.dimension(); ++i) cells.push_back(transport(c.cell(i), from.cell(i), to.cell(i)));
  return Brick(std::move(cells));
}

inline Point transport(const Point& x, const Brick& from, const Brick& to) {
  Point y;
  y.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(transport(x[i], from.cell(i), to.cell(i)));
  return y;
}

}  // namespace nv
