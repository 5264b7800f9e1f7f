#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "nv/generators.hpp"

namespace nv {

// Which side of the baker the split follows: halves of the support along the
// split axis (the domain division) or along the merge axis (the range division).
enum class SplitAlong { domain_axis, range_axis };

struct SplitResult {
  Element transposition;
  BakerSpec lower;
  BakerSpec upper;
};

// A product interleaving bakers and transpositions, first entry applied first.
using Step = std::variant<BakerSpec, Element>;

struct ShrinkResult {
  std::vector<Step> sequence;

  Word transpositions() const {
    Word w;
    for (const auto& s : sequence)
      if (const auto* t = std::get_if<Element>(&s)) w.push_back(*t);
    return w;
  }
  // The sequence with every transposition erased.
  std::vector<BakerSpec> bakers() const {
    std::vector<BakerSpec> out;
    for (const auto& s : sequence)
      if (const auto* b = std::get_if<BakerSpec>(&s)) out.push_back(*b);
    return out;
  }
};

inline Element recompose(const std::vector<Step>& sequence, std::size_t n, const Limits& limits = {}) {
  Element acc = Element::identity(n);
  for (const auto& s : sequence) {
    if (const auto* b = std::get_if<BakerSpec>(&s)) {
      acc = then(acc, make_baker(*b, n, limits), limits);
    } else {
      acc = then(acc, std::get<Element>(s), limits);
    }
  }
  return acc;
}

struct FactorizationReport {
  BakerSpec input;
  Word word;
  // Bakers visited at each depth of the splitting recursion, input at depth 0.
  std::vector<std::vector<BakerSpec>> intermediate_bakers;
  // Split transpositions and small bakers in product order, before the small
  // bakers are expanded.
  std::vector<Step> sequence;
  std::size_t split_transpositions = 0;
  std::size_t small_bakers = 0;
  std::size_t proper_factors = 0;
  bool verified = false;
};

namespace detail {

inline Brick half(const Brick& b, std::size_t axis, bool upper, const Limits& limits) {
  auto [lo, hi] = brick_split(b, axis, limits);
  return upper ? hi : lo;
}

inline Element swap_within(std::vector<Brick> pieces, const Brick& support, const Brick& a, const Brick& b) {
  for (auto& c : ancestry_complement(support)) pieces.push_back(std::move(c));
  return make_transposition({Partition::trusted(std::move(pieces)), a, b});
}

}  // namespace detail

// make_baker(b) = then(then(make_baker(lower), make_baker(upper)), transposition).
inline SplitResult split_baker(const BakerSpec& b, SplitAlong along, const Limits& limits = {}) {
  const std::size_t n = b.support.dimension();
  check_baker_spec(b, n);
  const std::size_t i = b.split_axis;
  const std::size_t j = b.merge_axis;
  const Brick& s = b.support;
  if (along == SplitAlong::domain_axis) {
    check_exponent(s.cell(i).exponent() + 2, limits);
    check_exponent(s.cell(j).exponent() + 1, limits);
    auto [lo, hi] = brick_split(s, i, limits);
    // The quarter strips of the split halves land crosswise: swap the two
    // off-diagonal quadrants of the (i, j) plane.
    std::vector<Brick> quads;
    for (const auto& h : {lo, hi}) {
      auto [q0, q1] = brick_split(h, j, limits);
      quads.push_back(q0);
      quads.push_back(q1);
    }
    Brick off_ij = detail::half(hi, j, false, limits);
    Brick off_ji = detail::half(lo, j, true, limits);
    return {detail::swap_within(std::move(quads), s, off_ij, off_ji), {lo, i, j}, {hi, i, j}};
  }
  check_exponent(s.cell(j).exponent() + 2, limits);
  check_exponent(s.cell(i).exponent() + 1, limits);
  auto [lo, hi] = brick_split(s, j, limits);
  auto [b0, b1] = brick_split(lo, j, limits);
  auto [b2, b3] = brick_split(hi, j, limits);
  // Middle bands along the merge axis trade places.
  return {detail::swap_within({b0, b1, b2, b3}, s, b1, b2), {lo, i, j}, {hi, i, j}};
}

// Product of three transpositions equal to then(make_baker(a), inverse(make_baker(b))):
// swap A0 with B0, then A1 with B1, then A with B.
inline Word cancel_disjoint_pair(const BakerSpec& a, const BakerSpec& b, const Limits& limits = {}) {
  const std::size_t n = a.support.dimension();
  check_baker_spec(a, n);
  check_baker_spec(b, n);
  if (a.split_axis != b.split_axis || a.merge_axis != b.merge_axis) {
    throw InvalidArgument("cancel_disjoint_pair: bakers use different axis pairs");
  }
  if (!disjoint(a.support, b.support)) throw InvalidArgument("cancel_disjoint_pair: supports overlap");
  auto [a0, a1] = brick_split(a.support, a.split_axis, limits);
  auto [b0, b1] = brick_split(b.support, b.merge_axis, limits);
  const std::vector<Brick> both{a.support, b.support};
  const std::vector<Brick> rest = complement_tiling(n, both);

  std::vector<Brick> fine{a0, a1, b0, b1};
  fine.insert(fine.end(), rest.begin(), rest.end());
  const Partition fine_ambient = Partition::trusted(fine);
  std::vector<Brick> coarse = both;
  coarse.insert(coarse.end(), rest.begin(), rest.end());
  const Partition coarse_ambient = Partition::trusted(coarse);

  Word w(n);
  w.push_back(make_transposition({fine_ambient, a0, b0}));
  w.push_back(make_transposition({fine_ambient, a1, b1}));
  w.push_back(make_transposition({coarse_ambient, a.support, b.support}));
  return w;
}

// Both sides of the support in the baker's plane are at most 1/2.
inline bool is_small(const BakerSpec& r) {
  return r.support.cell(r.split_axis).exponent() >= 1 && r.support.cell(r.merge_axis).exponent() >= 1;
}

struct SmallBakerPlan {
  Brick a;  // parent of the support
  Brick s;  // the other half of a
  Brick b;  // disjoint from a
  SplitAlong along;
};

// Construction data for factor_small_baker: A doubles R along the split axis
// (the merge axis if that would give the whole cube), S is R's sibling, and B
// is A's sibling along the other plane axis, halved once more along the
// doubling axis when A and that sibling would fill the cube.
inline SmallBakerPlan plan_small_baker(const BakerSpec& r) {
  const std::size_t n = r.support.dimension();
  check_baker_spec(r, n);
  if (!is_small(r)) throw InvalidArgument("factor_small_baker: a support side exceeds 1/2");
  std::size_t axis = r.split_axis;
  std::size_t other = r.merge_axis;
  if (brick_double(r.support, axis).is_unit()) std::swap(axis, other);
  SmallBakerPlan plan{brick_double(r.support, axis), brick_sibling(r.support, axis), Brick{},
                      axis == r.split_axis ? SplitAlong::domain_axis : SplitAlong::range_axis};
  plan.b = brick_sibling(plan.a, other);
  if (brick_double(plan.a, other).is_unit()) plan.b = brick_split(plan.b, axis, Limits{~0u}).first;
  return plan;
}

// Seven proper transpositions whose product is make_baker(r).
inline Word factor_small_baker(const BakerSpec& r, const Limits& limits = {}) {
  const SmallBakerPlan plan = plan_small_baker(r);
  check_exponent(plan.b.max_exponent() + 1, limits);
  const BakerSpec on_a{plan.a, r.split_axis, r.merge_axis};
  const BakerSpec on_b{plan.b, r.split_axis, r.merge_axis};
  const BakerSpec on_s{plan.s, r.split_axis, r.merge_axis};
  // baker(A) * T = baker(R) * baker(S), so
  // baker(R) = [baker(A) baker(B)^-1] * T * [baker(B) baker(S)^-1].
  Word w = cancel_disjoint_pair(on_a, on_b, limits);
  w.push_back(split_baker(on_a, plan.along, limits).transposition);
  w.append(cancel_disjoint_pair(on_b, on_s, limits));
  return w;
}

namespace detail {

// Longest side of the support first; ties prefer the split axis, then the
// merge axis, then the remaining axes in order.
inline std::optional<std::size_t> shrink_axis(const BakerSpec& b, const Dyadic& epsilon) {
  if (b.support.diameter() < epsilon) return std::nullopt;
  std::vector<std::size_t> order{b.split_axis, b.merge_axis};
  for (std::size_t k = 0; k < b.support.dimension(); ++k)
    if (k != b.split_axis && k != b.merge_axis) order.push_back(k);
  std::size_t best = order.front();
  for (auto k : order)
    if (b.support.cell(k).exponent() < b.support.cell(best).exponent()) best = k;
  return best;
}

inline void shrink_into(const BakerSpec& b, const Dyadic& epsilon, const Limits& limits, std::vector<Step>& out) {
  const auto axis = shrink_axis(b, epsilon);
  if (!axis) {
    out.emplace_back(b);
    return;
  }
  if (*axis == b.split_axis || *axis == b.merge_axis) {
    auto split = split_baker(b, *axis == b.split_axis ? SplitAlong::domain_axis : SplitAlong::range_axis, limits);
    shrink_into(split.lower, epsilon, limits, out);
    shrink_into(split.upper, epsilon, limits, out);
    out.emplace_back(std::move(split.transposition));
    return;
  }
  // Off the baker's plane the map is a product over the two halves, no transposition needed.
  auto [lo, hi] = brick_split(b.support, *axis, limits);
  shrink_into({lo, b.split_axis, b.merge_axis}, epsilon, limits, out);
  shrink_into({hi, b.split_axis, b.merge_axis}, epsilon, limits, out);
}

}  // namespace detail

// Rewrites make_baker(b) as bakers of l-infinity support diameter < epsilon
// interleaved with transpositions.
inline ShrinkResult shrink(const BakerSpec& b, const Dyadic& epsilon, const Limits& limits = {}) {
  check_baker_spec(b, b.support.dimension());
  if (epsilon <= Dyadic()) throw InvalidArgument("epsilon must be positive");
  ShrinkResult r;
  detail::shrink_into(b, epsilon, limits, r.sequence);
  return r;
}

inline bool verify_word(const Word& w, const Element& target, const Limits& limits = {}) {
  if (w.dimension() != 0 && w.dimension() != target.dimension()) {
    throw DimensionMismatch(target.dimension(), w.dimension());
  }
  return equals(product(w, target.dimension(), limits), target);
}

struct FactorOptions {
  // When set, first shrink below this diameter, then split minimally.
  std::optional<Dyadic> epsilon;
  Limits limits;
};

namespace detail {

// Splits along the split axis while its side exceeds 1/2, then along the merge axis.
inline void split_minimally(const BakerSpec& b, std::size_t level, FactorizationReport& report,
                            std::vector<Step>& sequence, const Limits& limits) {
  if (report.intermediate_bakers.size() <= level) report.intermediate_bakers.resize(level + 1);
  report.intermediate_bakers[level].push_back(b);
  std::optional<SplitAlong> along;
  if (b.support.cell(b.split_axis).exponent() == 0) {
    along = SplitAlong::domain_axis;
  } else if (b.support.cell(b.merge_axis).exponent() == 0) {
    along = SplitAlong::range_axis;
  }
  if (!along) {
    sequence.emplace_back(b);
    return;
  }
  auto split = split_baker(b, *along, limits);
  split_minimally(split.lower, level + 1, report, sequence, limits);
  split_minimally(split.upper, level + 1, report, sequence, limits);
  sequence.emplace_back(std::move(split.transposition));
}

}  // namespace detail

inline FactorizationReport factor_baker(const BakerSpec& b, const FactorOptions& options = {}) {
  const std::size_t n = b.support.dimension();
  check_baker_spec(b, n);
  FactorizationReport report;
  report.input = b;

  std::vector<Step> coarse;
  if (options.epsilon) {
    coarse = shrink(b, *options.epsilon, options.limits).sequence;
  } else {
    coarse.emplace_back(b);
  }
  for (auto& s : coarse) {
    if (const auto* sub = std::get_if<BakerSpec>(&s)) {
      detail::split_minimally(*sub, 0, report, report.sequence, options.limits);
    } else {
      report.sequence.push_back(std::move(s));
    }
  }

  report.word = Word(n);
  for (const auto& s : report.sequence) {
    if (const auto* sub = std::get_if<BakerSpec>(&s)) {
      report.word.append(factor_small_baker(*sub, options.limits));
      ++report.small_bakers;
    } else {
      report.word.push_back(std::get<Element>(s));
      ++report.split_transpositions;
    }
  }
  for (const auto& t : report.word) {
    const auto spec = is_transposition_form(t);
    if (spec && spec->proper()) ++report.proper_factors;
  }
  report.verified = verify_word(report.word, make_baker(b, n, options.limits), options.limits);
  return report;
}

}  // namespace nv
