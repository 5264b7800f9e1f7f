#pragma once

// Shared test inputs: the standard example elements, small brick builders, and an
// exact-rational reference model independent of the library's cell algebra.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nv/nv.hpp"

namespace fixtures {

using Rational = boost::multiprecision::cpp_rational;

inline nv::Brick brick(const std::string& text) {
  const auto n = static_cast<std::size_t>(std::count(text.begin(), text.end(), ',') + 1);
  return nv::io::parse_brick(text, n);
}

inline nv::Piece piece(const std::string& dom, const std::string& ran) { return {brick(dom), brick(ran)}; }

inline nv::Point point(std::initializer_list<const char*> coords) {
  nv::Point p;
  for (const char* c : coords) p.push_back(nv::Dyadic::parse(c));
  return p;
}

// Unit square halves and quadrants.
inline const char* kLeft = "0/2^1,0/2^0";
inline const char* kRight = "1/2^1,0/2^0";
inline const char* kBottom = "0/2^0,0/2^1";
inline const char* kTop = "0/2^0,1/2^1";
inline const char* kBL = "0/2^1,0/2^1";
inline const char* kBR = "1/2^1,0/2^1";
inline const char* kTL = "0/2^1,1/2^1";
inline const char* kTR = "1/2^1,1/2^1";

// Left half onto bottom half, right half onto top half.
inline nv::Element primary_baker() { return nv::Element::from_pairs({piece(kLeft, kBottom), piece(kRight, kTop)}); }

// The same map on four vertical strips landing in the quadrants.
inline nv::Element strip_baker() {
  return nv::Element::from_pairs({piece("0/2^2,0/2^0", kBL), piece("1/2^2,0/2^0", kBR),
                                  piece("2/2^2,0/2^0", kTL), piece("3/2^2,0/2^0", kTR)});
}

// The same map on quadrants landing in four horizontal bands.
inline nv::Element band_baker() {
  return nv::Element::from_pairs({piece(kBL, "0/2^0,0/2^2"), piece(kTL, "0/2^0,1/2^2"),
                                  piece(kBR, "0/2^0,2/2^2"), piece(kTR, "0/2^0,3/2^2")});
}

// Five-brick secondary baker: bottom half (0), top-left quadrant (1), the two
// halves of the lower half of the top-right quadrant (2, 3), its upper half (4).
inline nv::Element secondary_baker() {
  return nv::Element::from_pairs({piece(kBottom, kBottom), piece(kTL, kTL), piece("2/2^2,2/2^2", "1/2^1,4/2^3"),
                                  piece("3/2^2,2/2^2", "1/2^1,5/2^3"), piece("1/2^1,3/2^2", "1/2^1,3/2^2")});
}

inline nv::Brick secondary_support() { return brick("1/2^1,2/2^2"); }

inline nv::Element quadrant_swap(const char* a, const char* b) {
  return nv::make_transposition(
      {nv::Partition::make({brick(kBL), brick(kBR), brick(kTL), brick(kTR)}), brick(a), brick(b)});
}

// Reference model: a brick as a box of rational intervals [lo, hi).
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

inline Box to_box(const nv::Brick& b) {
  Box box;
  for (const auto& c : b.cells()) {
    const Rational den = Rational(nv::pow2(c.exponent()));
    box.lo.push_back(Rational(c.numerator()) / den);
    box.hi.push_back(Rational(c.numerator() + 1) / den);
  }
  return box;
}

inline Rational to_rational(const nv::Dyadic& d) { return Rational(d.numerator()) / Rational(nv::pow2(d.exponent())); }

// Per-axis affine image of x under the piece dom -> ran, in rationals.
inline std::vector<Rational> reference_map(const nv::Piece& p, const std::vector<Rational>& x) {
  const Box d = to_box(p.domain);
  const Box r = to_box(p.range);
  std::vector<Rational> y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y.push_back(r.lo[i] + (x[i] - d.lo[i]) * (r.hi[i] - r.lo[i]) / (d.hi[i] - d.lo[i]));
  }
  return y;
}

inline std::vector<Rational> reference_apply(const nv::Element& f, const std::vector<Rational>& x) {
  for (const auto& p : f) {
    const Box d = to_box(p.domain);
    bool inside = true;
    for (std::size_t i = 0; i < x.size(); ++i) inside = inside && d.lo[i] <= x[i] && x[i] < d.hi[i];
    if (inside) return reference_map(p, x);
  }
  throw std::logic_error("point not covered");
}

}  // namespace fixtures
