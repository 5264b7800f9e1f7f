#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nv/element.hpp"

namespace nv {

// Swap of two bricks of an ambient partition; every other brick is fixed.
struct TranspositionSpec {
  Partition ambient;
  Brick a;
  Brick b;

  // A transposition is proper when its pattern has more than two bricks.
  bool proper() const { return ambient.size() > 2; }
};

// Identity off `support`; on it, the lower half along `split_axis` maps onto the
// lower half along `merge_axis` and upper onto upper, by canonical affine maps.
struct BakerSpec {
  Brick support;
  std::size_t split_axis = 0;
  std::size_t merge_axis = 1;

  friend bool operator==(const BakerSpec&, const BakerSpec&) = default;
};

inline std::string to_string(const BakerSpec& b) {
  return "support=" + b.support.to_string() + " axes=" + std::to_string(b.split_axis) + "," +
         std::to_string(b.merge_axis);
}

inline Element make_transposition(const TranspositionSpec& spec) {
  if (spec.a == spec.b) throw InvalidArgument("transposition needs two distinct bricks");
  if (!spec.ambient.contains(spec.a)) throw InvalidArgument("brick " + spec.a.to_string() + " not in ambient");
  if (!spec.ambient.contains(spec.b)) throw InvalidArgument("brick " + spec.b.to_string() + " not in ambient");
  std::vector<Piece> pieces;
  pieces.reserve(spec.ambient.size());
  for (const auto& c : spec.ambient) {
    if (c == spec.a) {
      pieces.push_back({spec.a, spec.b});
    } else if (c == spec.b) {
      pieces.push_back({spec.b, spec.a});
    } else {
      pieces.push_back({c, c});
    }
  }
  return Element::trusted(spec.ambient.dimension(), std::move(pieces));
}

inline void check_baker_spec(const BakerSpec& spec, std::size_t n) {
  if (n < 2) throw InvalidArgument("baker's maps need at least two axes");
  if (spec.support.dimension() != n) throw DimensionMismatch(n, spec.support.dimension());
  if (spec.split_axis >= n || spec.merge_axis >= n) throw InvalidArgument("baker axis out of range");
  if (spec.split_axis == spec.merge_axis) throw InvalidArgument("baker axes must differ");
}

inline Element make_baker(const BakerSpec& spec, std::size_t n, const Limits& limits = {}) {
  check_baker_spec(spec, n);
  auto [d0, d1] = brick_split(spec.support, spec.split_axis, limits);
  auto [r0, r1] = brick_split(spec.support, spec.merge_axis, limits);
  std::vector<Piece> pieces;
  for (auto& c : ancestry_complement(spec.support)) pieces.push_back({c, c});
  pieces.push_back({std::move(d0), std::move(r0)});
  pieces.push_back({std::move(d1), std::move(r1)});
  return Element::trusted(n, std::move(pieces));
}

inline Element make_baker(const BakerSpec& spec, const Limits& limits = {}) {
  return make_baker(spec, spec.support.dimension(), limits);
}

namespace detail {

inline std::vector<Piece> moved_pieces(const Element& e) {
  std::vector<Piece> out;
  for (const auto& p : e)
    if (!p.is_fixed()) out.push_back(p);
  return out;
}

// Axis along which two distinct bricks are siblings, if they are.
inline std::optional<std::size_t> sibling_axis(const Brick& a, const Brick& b) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a.cell(i) == b.cell(i)) continue;
    if (axis || a.cell(i).exponent() == 0 || a.cell(i).sibling() != b.cell(i)) return std::nullopt;
    axis = i;
  }
  return axis;
}

}  // namespace detail

inline std::optional<TranspositionSpec> is_transposition_form(const Element& e) {
  const Element c = coarsen(e);
  const auto moved = detail::moved_pieces(c);
  if (moved.size() != 2) return std::nullopt;
  const Piece& p = moved[0];
  const Piece& q = moved[1];
  if (p.domain != q.range || q.domain != p.range) return std::nullopt;
  return TranspositionSpec{c.domain_partition(), p.domain, q.domain};
}

inline std::optional<BakerSpec> is_baker_form(const Element& e) {
  if (e.dimension() < 2) return std::nullopt;
  const Element c = coarsen(e);
  const auto moved = detail::moved_pieces(c);
  if (moved.size() != 2) return std::nullopt;
  const auto split = detail::sibling_axis(moved[0].domain, moved[1].domain);
  const auto merge = detail::sibling_axis(moved[0].range, moved[1].range);
  if (!split || !merge || *split == *merge) return std::nullopt;
  BakerSpec spec{brick_double(moved[0].domain, *split), *split, *merge};
  if (brick_double(moved[0].range, *merge) != spec.support) return std::nullopt;
  // Pieces are sorted by domain, so moved[0] holds the lower half along the split axis.
  const auto [r0, r1] = brick_split(spec.support, *merge, Limits{~0u});
  if (moved[0].range != r0 || moved[1].range != r1) return std::nullopt;
  return spec;
}

}  // namespace nv
