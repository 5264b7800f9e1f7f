#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nv/brick.hpp"

namespace nv {

struct Validation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

// A family of bricks is a partition of the unit cube iff it is pairwise disjoint
// and its measures sum to exactly 1.
inline Validation partition_validate(std::span<const Brick> bricks) {
  if (bricks.empty()) return {false, "empty partition"};
  const std::size_t n = bricks.front().dimension();
  unsigned top = 0;
  for (std::size_t i = 0; i < bricks.size(); ++i) {
    if (bricks[i].dimension() != n) {
      return {false, "brick " + std::to_string(i) + " has dimension " + std::to_string(bricks[i].dimension()) +
                         ", expected " + std::to_string(n)};
    }
    top = std::max(top, bricks[i].total_exponent());
  }
  for (std::size_t i = 0; i < bricks.size(); ++i) {
    for (std::size_t j = i + 1; j < bricks.size(); ++j) {
      if (auto overlap = brick_intersect(bricks[i], bricks[j])) {
        return {false, "bricks " + std::to_string(i) + " [" + bricks[i].to_string() + "] and " + std::to_string(j) +
                           " [" + bricks[j].to_string() + "] overlap in [" + overlap->to_string() + "]"};
      }
    }
  }
  Integer total = 0;
  for (const auto& b : bricks) total += pow2(top - b.total_exponent());
  if (total != pow2(top)) {
    return {false, "total measure " + Dyadic(total, top).to_string() + " differs from 1"};
  }
  return {};
}

// Unordered set of bricks tiling the unit cube, stored in lexicographic brick order.
class Partition {
 public:
  Partition() = default;

  static Partition make(std::vector<Brick> bricks) {
    if (auto v = partition_validate(bricks); !v) throw InvalidArgument("invalid partition: " + v.diagnostic);
    return trusted(std::move(bricks));
  }

  // Skips validation; callers guarantee the bricks tile the cube.
  static Partition trusted(std::vector<Brick> bricks) {
    Partition p;
    std::sort(bricks.begin(), bricks.end());
    p.bricks_ = std::move(bricks);
    return p;
  }

  static Partition unit(std::size_t n) { return trusted({Brick::unit(n)}); }

  std::size_t dimension() const { return bricks_.empty() ? 0 : bricks_.front().dimension(); }
  std::size_t size() const noexcept { return bricks_.size(); }
  const std::vector<Brick>& bricks() const noexcept { return bricks_; }
  auto begin() const { return bricks_.begin(); }
  auto end() const { return bricks_.end(); }

  bool contains(const Brick& b) const { return std::binary_search(bricks_.begin(), bricks_.end(), b); }

  std::optional<std::size_t> index_of(const Brick& b) const {
    auto it = std::lower_bound(bricks_.begin(), bricks_.end(), b);
    if (it == bricks_.end() || *it != b) return std::nullopt;
    return static_cast<std::size_t>(it - bricks_.begin());
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Brick> bricks_;
};

inline Partition common_refinement(const Partition& p, const Partition& q) {
  if (p.dimension() != q.dimension()) throw DimensionMismatch(p.dimension(), q.dimension());
  std::vector<Brick> out;
  for (const auto& a : p)
    for (const auto& b : q)
      if (auto c = brick_intersect(a, b)) out.push_back(std::move(*c));
  return Partition::trusted(std::move(out));
}

// Tiles the complement of one brick by walking its dyadic ancestry up to the
// unit cube and emitting the sibling at every step. The axis doubled first is
// the one with the largest exponent (lowest index on ties).
inline std::vector<Brick> ancestry_complement(const Brick& b) {
  std::vector<Brick> out;
  Brick cur = b;
  while (!cur.is_unit()) {
    std::size_t axis = 0;
    for (std::size_t i = 1; i < cur.dimension(); ++i)
      if (cur.cell(i).exponent() > cur.cell(axis).exponent()) axis = i;
    out.push_back(brick_sibling(cur, axis));
    cur = brick_double(cur, axis);
  }
  return out;
}

namespace detail {

inline void tile_complement(const Brick& region, std::vector<Brick> holes, std::vector<Brick>& out) {
  if (holes.empty()) {
    out.push_back(region);
    return;
  }
  for (const auto& h : holes)
    if (h == region) return;
  std::size_t axis = region.dimension();
  for (std::size_t a = 0; a < region.dimension() && axis == region.dimension(); ++a)
    for (const auto& h : holes)
      if (h.cell(a).exponent() > region.cell(a).exponent()) {
        axis = a;
        break;
      }
  auto [lo, hi] = brick_split(region, axis, Limits{~0u});
  std::vector<Brick> lo_holes;
  std::vector<Brick> hi_holes;
  for (const auto& h : holes) {
    if (auto c = brick_intersect(h, lo)) lo_holes.push_back(std::move(*c));
    if (auto c = brick_intersect(h, hi)) hi_holes.push_back(std::move(*c));
  }
  tile_complement(lo, std::move(lo_holes), out);
  tile_complement(hi, std::move(hi_holes), out);
}

}  // namespace detail

// Dyadic bricks covering exactly the part of the unit cube outside the given
// pairwise disjoint bricks. Splits happen on the lowest axis that separates.
inline std::vector<Brick> complement_tiling(std::size_t n, std::span<const Brick> holes) {
  for (const auto& h : holes)
    if (h.dimension() != n) throw DimensionMismatch(n, h.dimension());
  std::vector<Brick> out;
  detail::tile_complement(Brick::unit(n), std::vector<Brick>(holes.begin(), holes.end()), out);
  return out;
}

}  // namespace nv
