#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nv/partition.hpp"

namespace nv {

// One (domain brick -> range brick) pair acting by the canonical affine map.
struct Piece {
  Brick domain;
  Brick range;

  bool is_fixed() const { return domain == range; }

  friend bool operator==(const Piece&, const Piece&) = default;
  friend auto operator<=>(const Piece&, const Piece&) = default;
};

// An element of nV: a bijection between two dyadic partitions of the unit cube.
// Pieces are kept sorted by domain brick so that field-level equality is
// meaningful; semantic equality is `equals`.
class Element {
 public:
  Element() = default;

  static Element identity(std::size_t n) {
    const Brick u = Brick::unit(n);
    return trusted(n, {{u, u}});
  }

  static Element from_pairs(std::vector<Piece> pieces) {
    if (pieces.empty()) throw InvalidElement("an element needs at least one pair");
    const std::size_t n = pieces.front().domain.dimension();
    std::vector<Brick> dom;
    std::vector<Brick> ran;
    dom.reserve(pieces.size());
    ran.reserve(pieces.size());
    for (const auto& p : pieces) {
      if (p.domain.dimension() != n || p.range.dimension() != n) {
        throw InvalidElement("pair has dimension " + std::to_string(p.domain.dimension()) + " -> " +
                             std::to_string(p.range.dimension()) + ", expected " + std::to_string(n));
      }
      dom.push_back(p.domain);
      ran.push_back(p.range);
    }
    if (auto v = partition_validate(dom); !v) throw InvalidElement("domain is not a partition: " + v.diagnostic);
    if (auto v = partition_validate(ran); !v) throw InvalidElement("range is not a partition: " + v.diagnostic);
    return trusted(n, std::move(pieces));
  }

  // Skips validation; callers guarantee the pieces form a bijection.
  static Element trusted(std::size_t n, std::vector<Piece> pieces) {
    Element e;
    e.dim_ = n;
    std::sort(pieces.begin(), pieces.end());
    e.pieces_ = std::move(pieces);
    return e;
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  auto begin() const { return pieces_.begin(); }
  auto end() const { return pieces_.end(); }

  Partition domain_partition() const {
    std::vector<Brick> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.domain);
    return Partition::trusted(std::move(out));
  }
  Partition range_partition() const {
    std::vector<Brick> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.range);
    return Partition::trusted(std::move(out));
  }

  unsigned max_exponent() const {
    unsigned m = 0;
    for (const auto& p : pieces_) m = std::max({m, p.domain.max_exponent(), p.range.max_exponent()});
    return m;
  }

  // Field-level equality of the stored representation.
  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Piece> pieces_;
};

// Ordered factors; the value of a word is the product with the first factor applied first.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t n) : dim_(n) {}
  Word(std::size_t n, std::vector<Element> factors) : dim_(n) {
    for (auto& f : factors) push_back(std::move(f));
  }

  void push_back(Element e) {
    if (dim_ == 0) dim_ = e.dimension();
    if (e.dimension() != dim_) throw DimensionMismatch(dim_, e.dimension());
    factors_.push_back(std::move(e));
  }
  void append(const Word& w) {
    for (const auto& f : w.factors_) push_back(f);
  }

  // Zero for an empty word that was never given a dimension.
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  const std::vector<Element>& factors() const noexcept { return factors_; }
  const Element& operator[](std::size_t i) const { return factors_.at(i); }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Element> factors_;
};

// The element x -> g(f(x)). Every nonempty intersection of a range brick of f
// with a domain brick of g yields one piece: pulled back through f, pushed
// forward through g.
inline Element then(const Element& f, const Element& g, const Limits& limits = {}) {
  if (f.dimension() != g.dimension()) throw DimensionMismatch(f.dimension(), g.dimension());
  std::vector<Piece> out;
  for (const auto& p : f) {
    for (const auto& q : g) {
      auto mid = brick_intersect(p.range, q.domain);
      if (!mid) continue;
      Brick dom = transport(*mid, p.range, p.domain);
      Brick ran = transport(*mid, q.domain, q.range);
      check_exponent(dom.max_exponent(), limits);
      check_exponent(ran.max_exponent(), limits);
      out.push_back({std::move(dom), std::move(ran)});
    }
  }
  return Element::trusted(f.dimension(), std::move(out));
}

inline Element inverse(const Element& f) {
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& p : f) out.push_back({p.range, p.domain});
  return Element::trusted(f.dimension(), std::move(out));
}

inline Element product(const Word& w, std::size_t n, const Limits& limits = {}) {
  if (w.dimension() != 0 && w.dimension() != n) throw DimensionMismatch(n, w.dimension());
  Element acc = Element::identity(n);
  for (const auto& f : w) acc = then(acc, f, limits);
  return acc;
}

inline Element product(const Word& w, const Limits& limits = {}) {
  if (w.dimension() == 0) throw InvalidArgument("product of an empty word needs an explicit dimension");
  return product(w, w.dimension(), limits);
}

// A point of the domain moved differently by f and g, if any. Compares images
// of every cell of the common refinement of the two domain partitions.
inline std::optional<Point> find_difference(const Element& f, const Element& g) {
  if (f.dimension() != g.dimension()) throw DimensionMismatch(f.dimension(), g.dimension());
  for (const auto& p : f) {
    for (const auto& q : g) {
      auto cell = brick_intersect(p.domain, q.domain);
      if (!cell) continue;
      const Brick a = transport(*cell, p.domain, p.range);
      const Brick b = transport(*cell, q.domain, q.range);
      if (a == b) continue;
      // Canonical maps send lower corners to lower corners; if those agree the
      // scales differ and the centers separate them.
      if (a.lower_corner() != b.lower_corner()) return cell->lower_corner();
      return cell->center();
    }
  }
  return std::nullopt;
}

inline bool equals(const Element& f, const Element& g) { return !find_difference(f, g).has_value(); }

inline bool is_identity(const Element& f) {
  return std::all_of(f.begin(), f.end(), [](const Piece& p) { return p.is_fixed(); });
}

inline Point apply_point(const Element& f, const Point& x) {
  if (x.size() != f.dimension()) throw DimensionMismatch(f.dimension(), x.size());
  const Dyadic one = Dyadic::from_int(1);
  for (const auto& c : x) {
    if (c.is_negative() || c >= one) throw InvalidArgument("coordinate " + c.to_string() + " outside [0,1)");
  }
  for (const auto& p : f)
    if (p.domain.contains(x)) return transport(x, p.domain, p.range);
  throw InvalidElement("no domain brick contains " + to_string(x));
}

namespace detail {

// Repeatedly replaces two sibling bricks by their parent, scanning in brick
// order and trying the lowest axis first, until nothing merges.
inline std::vector<Brick> merge_siblings(std::vector<Brick> bricks) {
  std::set<Brick> set(bricks.begin(), bricks.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = set.begin(); it != set.end() && !changed; ++it) {
      for (std::size_t axis = 0; axis < it->dimension(); ++axis) {
        if (it->cell(axis).exponent() == 0) continue;
        auto sib = set.find(brick_sibling(*it, axis));
        if (sib == set.end()) continue;
        Brick parent = brick_double(*it, axis);
        set.erase(sib);
        set.erase(it);
        set.insert(std::move(parent));
        changed = true;
        break;
      }
    }
  }
  return {set.begin(), set.end()};
}

}  // namespace detail

// Greedy merge of piece pairs (d0 -> r0), (d1 -> r1) whose domains are the two
// halves of a brick D and whose ranges are the matching halves of a brick R,
// so that D -> R restricts to both. Best effort; no canonical form is implied.
inline Element coarsen(const Element& f) {
  std::map<Brick, Brick> pieces;
  for (const auto& p : f) pieces.emplace(p.domain, p.range);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = pieces.begin(); it != pieces.end() && !changed; ++it) {
      const Brick& d = it->first;
      for (std::size_t axis = 0; axis < d.dimension(); ++axis) {
        if (d.cell(axis).exponent() == 0) continue;
        auto sib = pieces.find(brick_sibling(d, axis));
        if (sib == pieces.end()) continue;
        const bool upper = d.cell(axis).is_upper_half();
        const Brick& r0 = upper ? sib->second : it->second;
        const Brick& r1 = upper ? it->second : sib->second;
        if (r0.cell(axis).exponent() == 0 || r0.cell(axis).is_upper_half()) continue;
        if (brick_sibling(r0, axis) != r1) continue;
        Brick merged_dom = brick_double(d, axis);
        Brick merged_ran = brick_double(r0, axis);
        pieces.erase(sib);
        pieces.erase(it);
        pieces.emplace(std::move(merged_dom), std::move(merged_ran));
        changed = true;
        break;
      }
    }
  }
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (auto& [d, r] : pieces) out.push_back({d, r});
  return Element::trusted(f.dimension(), std::move(out));
}

// Bricks outside of which f is the identity, merged as far as siblings allow.
inline std::vector<Brick> support(const Element& f) {
  std::vector<Brick> moved;
  for (const auto& p : coarsen(f))
    if (!p.is_fixed()) moved.push_back(p.domain);
  return detail::merge_siblings(std::move(moved));
}

}  // namespace nv
