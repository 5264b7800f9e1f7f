#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nv/element.hpp"

namespace nv {

// Grid points k/2^resolution per axis, 0 <= k < 2^resolution.
struct GridSpec {
  unsigned resolution = 0;
};

struct RandomElementSpec {
  std::size_t dimension = 2;
  unsigned max_depth = 0;
  std::uint64_t seed = 0;
};

class InsufficientResolution : public Error {
 public:
  using Error::Error;
};

struct GridVerdict {
  bool equal = true;
  std::optional<Point> witness;

  explicit operator bool() const noexcept { return equal; }
};

// Knuth's MMIX linear congruential generator: x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64).
using Lcg = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

// Uniform-ish draw in [0, bound): high 32 bits of the next state, reduced mod bound.
inline std::uint32_t draw(Lcg& rng, std::uint32_t bound) { return static_cast<std::uint32_t>(rng() >> 32) % bound; }

inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

namespace detail {

inline unsigned max_domain_exponent(const Element& f) {
  unsigned m = 0;
  for (const auto& p : f) m = std::max(m, p.domain.max_exponent());
  return m;
}

// Piece index owning each grid point, grid points in row-major order (axis 0 fastest).
inline std::vector<std::uint32_t> locate_grid(const Element& f, unsigned m) {
  const std::size_t n = f.dimension();
  const std::size_t side = std::size_t{1} << m;
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= side;
  std::vector<std::uint32_t> owner(total, ~0u);
  for (std::uint32_t idx = 0; idx < f.size(); ++idx) {
    const Brick& d = f.pieces()[idx].domain;
    std::vector<std::size_t> lo(n), hi(n);
    for (std::size_t a = 0; a < n; ++a) {
      const unsigned shift = m - d.cell(a).exponent();
      lo[a] = d.cell(a).numerator().convert_to<std::size_t>() << shift;
      hi[a] = lo[a] + (std::size_t{1} << shift);
    }
    std::vector<std::size_t> at = lo;
    while (true) {
      std::size_t flat = 0;
      for (std::size_t a = n; a-- > 0;) flat = flat * side + at[a];
      owner[flat] = idx;
      std::size_t a = 0;
      while (a < n && ++at[a] == hi[a]) {
        at[a] = lo[a];
        ++a;
      }
      if (a == n) break;
    }
  }
  return owner;
}

}  // namespace detail

// Pointwise comparison on the grid. With resolution above every domain
// exponent, each cell of the common refinement holds at least two grid points
// per axis, which pins down both canonical affine maps there; the verdict is
// then exact equality of the elements.
inline GridVerdict grid_equals(const Element& f, const Element& g, const GridSpec& grid) {
  if (f.dimension() != g.dimension()) throw DimensionMismatch(f.dimension(), g.dimension());
  const unsigned needed = std::max(detail::max_domain_exponent(f), detail::max_domain_exponent(g)) + 1;
  if (grid.resolution < needed) {
    throw InsufficientResolution("grid resolution " + std::to_string(grid.resolution) + " below required " +
                                 std::to_string(needed));
  }
  const std::size_t n = f.dimension();
  if (grid.resolution * n > 24) throw InvalidArgument("grid too large: more than 2^24 points");
  const unsigned m = grid.resolution;
  const std::size_t side = std::size_t{1} << m;
  const auto f_owner = detail::locate_grid(f, m);
  const auto g_owner = detail::locate_grid(g, m);
  Point x(n);
  for (std::size_t flat = 0; flat < f_owner.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = 0; a < n; ++a) {
      x[a] = Dyadic(Integer(rest % side), m);
      rest /= side;
    }
    const Piece& p = f.pieces()[f_owner[flat]];
    const Piece& q = g.pieces()[g_owner[flat]];
    if (transport(x, p.domain, p.range) != transport(x, q.domain, q.range)) return {false, x};
  }
  return {};
}

// Random domain partition by repeated splits of leaves shallower than
// max_depth, an independent range partition with the same number of splits,
// and a Fisher-Yates shuffle pairing them. Deterministic per seed.
inline Element random_element(const RandomElementSpec& spec) {
  if (spec.dimension == 0) throw InvalidArgument("dimension must be at least 1");
  Lcg rng(spec.seed);
  const std::uint32_t max_splits =
      spec.max_depth >= 6 ? 63u : (std::uint32_t{1} << spec.max_depth) - 1u;
  const std::uint32_t splits = draw(rng, max_splits + 1);

  auto grow = [&](std::uint32_t count) {
    std::vector<std::pair<Brick, unsigned>> leaves{{Brick::unit(spec.dimension), 0u}};
    for (std::uint32_t s = 0; s < count; ++s) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i].second < spec.max_depth) open.push_back(i);
      const std::size_t pick = open[draw(rng, static_cast<std::uint32_t>(open.size()))];
      const std::size_t axis = draw(rng, static_cast<std::uint32_t>(spec.dimension));
      auto [lo, hi] = brick_split(leaves[pick].first, axis, Limits{~0u});
      const unsigned depth = leaves[pick].second + 1;
      leaves[pick] = {std::move(lo), depth};
      leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(pick) + 1, {std::move(hi), depth});
    }
    std::vector<Brick> out;
    out.reserve(leaves.size());
    for (auto& l : leaves) out.push_back(std::move(l.first));
    return out;
  };

  std::vector<Brick> domain = grow(splits);
  std::vector<Brick> range = grow(splits);
  for (std::size_t i = range.size(); i-- > 1;) {
    const std::size_t j = draw(rng, static_cast<std::uint32_t>(i + 1));
    std::swap(range[i], range[j]);
  }
  std::vector<Piece> pieces;
  pieces.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) pieces.push_back({std::move(domain[i]), std::move(range[i])});
  return Element::trusted(spec.dimension, std::move(pieces));
}

}  // namespace nv
