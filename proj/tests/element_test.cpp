#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace nv;
using fixtures::brick;
using fixtures::piece;
using fixtures::point;
using fixtures::Rational;

namespace {

Element random_of(std::size_t n, unsigned depth, std::uint64_t seed) { return random_element({n, depth, seed}); }

// Splits one piece of f along an axis on both sides, keeping the same map.
Element refine_once(const Element& f, Lcg& rng) {
  std::vector<Piece> pieces = f.pieces();
  const std::size_t at = draw(rng, static_cast<std::uint32_t>(pieces.size()));
  const std::size_t axis = draw(rng, static_cast<std::uint32_t>(f.dimension()));
  const Piece p = pieces[at];
  auto [d0, d1] = brick_split(p.domain, axis);
  pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(at));
  pieces.push_back({d0, transport(d0, p.domain, p.range)});
  pieces.push_back({d1, transport(d1, p.domain, p.range)});
  return Element::from_pairs(pieces);
}

std::vector<Rational> as_rationals(const Point& p) {
  std::vector<Rational> out;
  for (const auto& c : p) out.push_back(fixtures::to_rational(c));
  return out;
}

}  // namespace

TEST(Identity, Examples) {
  const Element id = Element::identity(2);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id.pieces()[0], (Piece{Brick::unit(2), Brick::unit(2)}));
  const Element f = fixtures::secondary_baker();
  EXPECT_EQ(then(id, f), f);
  EXPECT_EQ(apply_point(id, point({"1/4", "3/8"})), point({"1/4", "3/8"}));
}

TEST(FromPairs, Examples) {
  const Element baker = fixtures::primary_baker();
  EXPECT_EQ(baker.size(), 2u);
  EXPECT_THROW(Element::from_pairs({piece(fixtures::kLeft, fixtures::kTop), piece(fixtures::kLeft, fixtures::kBottom)}),
               InvalidElement);
  EXPECT_THROW(Element::from_pairs({piece(fixtures::kLeft, fixtures::kTop), piece(fixtures::kRight, fixtures::kTR)}),
               InvalidElement);
  EXPECT_EQ(fixtures::secondary_baker().size(), 5u);
  EXPECT_THROW(Element::from_pairs({}), InvalidElement);
}

TEST(Then, StripBakerThenQuadrantSwapIsTwoHalfBakers) {
  const Element lhs = then(fixtures::strip_baker(), fixtures::quadrant_swap(fixtures::kBR, fixtures::kTL));
  const Element rhs = then(make_baker({brick(fixtures::kLeft), 0, 1}), make_baker({brick(fixtures::kRight), 0, 1}));
  EXPECT_TRUE(equals(lhs, rhs));
}

TEST(Then, BakerSquaredOnLeftQuarterStrip) {
  const Element b = fixtures::primary_baker();
  const Element bb = then(b, b);
  // Oracle: left piece twice is (x, y) -> (4x, y/4).
  for (unsigned i = 0; i < 8; ++i) {
    for (unsigned j = 0; j < 8; ++j) {
      const std::vector<Rational> x{Rational(i, 32), Rational(j, 8)};
      const auto twice = fixtures::reference_apply(b, fixtures::reference_apply(b, x));
      EXPECT_EQ(twice, (std::vector<Rational>{4 * x[0], x[1] / 4}));
      const Point px{Dyadic(i, 5), Dyadic(j, 3)};
      EXPECT_EQ(as_rationals(apply_point(bb, px)), twice);
    }
  }
  const Element c = coarsen(bb);
  const auto it = std::find_if(c.begin(), c.end(), [](const Piece& p) { return p.domain == brick("0/2^2,0/2^0"); });
  ASSERT_NE(it, c.end());
  EXPECT_EQ(it->range, brick("0/2^0,0/2^2"));
}

TEST(Then, RejectsDimensionMismatchAndGuard) {
  EXPECT_THROW(then(Element::identity(2), Element::identity(3)), DimensionMismatch);
  const Element b = fixtures::primary_baker();
  EXPECT_THROW(then(then(b, b), b, Limits{2}), GuardExceeded);
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(Element::identity(2)), Element::identity(2));
  EXPECT_EQ(inverse(fixtures::primary_baker()),
            Element::from_pairs({piece(fixtures::kBottom, fixtures::kLeft), piece(fixtures::kTop, fixtures::kRight)}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Element f = random_of(2, 4, seed);
    EXPECT_EQ(inverse(inverse(f)), f);
    EXPECT_TRUE(equals(then(f, inverse(f)), Element::identity(2)));
  }
}

TEST(Equals, Examples) {
  EXPECT_TRUE(equals(fixtures::primary_baker(), fixtures::strip_baker()));
  EXPECT_TRUE(equals(fixtures::primary_baker(), fixtures::band_baker()));
  EXPECT_FALSE(equals(fixtures::primary_baker(), Element::identity(2)));
  EXPECT_THROW(equals(Element::identity(1), Element::identity(2)), DimensionMismatch);
}

TEST(Equals, WitnessSeparatesMapsWithSameCorners) {
  // Both fix the origin of the bottom-left quadrant but scale it differently.
  const Element f = Element::identity(2);
  const Element g = then(fixtures::primary_baker(), fixtures::quadrant_swap(fixtures::kBR, fixtures::kTL));
  const auto w = find_difference(f, g);
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(apply_point(f, *w), apply_point(g, *w));
}

TEST(Equals, AgreesWithReferencePointEvaluation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Element f = random_of(2, 3, seed);
    Lcg rng(seed);
    // Half the pairs are equal by construction.
    const Element g = seed % 2 ? refine_once(f, rng) : random_of(2, 3, seed + 500);
    bool same = true;
    for (unsigned i = 0; i < 16 && same; ++i)
      for (unsigned j = 0; j < 16 && same; ++j) {
        const std::vector<Rational> x{Rational(i, 16), Rational(j, 16)};
        same = fixtures::reference_apply(f, x) == fixtures::reference_apply(g, x);
      }
    EXPECT_EQ(equals(f, g), same) << seed;
  }
}

TEST(Equals, IsAnEquivalenceRelation) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Element f = random_of(2, 3, seed);
    Lcg rng(seed);
    const Element g = refine_once(f, rng);
    const Element h = refine_once(g, rng);
    EXPECT_TRUE(equals(f, f));
    EXPECT_EQ(equals(f, g), equals(g, f));
    EXPECT_TRUE(equals(f, g) && equals(g, h) && equals(f, h));
    const Element other = random_of(2, 3, seed + 77);
    EXPECT_EQ(equals(f, other), equals(other, f));
  }
}

TEST(ApplyPoint, Examples) {
  const Element b = fixtures::primary_baker();
  // Oracle: left piece (x, y) -> (2x, y/2), right piece (x, y) -> (2x - 1, y/2 + 1/2).
  const std::vector<Rational> left{Rational(1, 4), Rational(1, 2)};
  EXPECT_EQ(fixtures::reference_apply(b, left), (std::vector<Rational>{Rational(1, 2), Rational(1, 4)}));
  EXPECT_EQ(apply_point(b, point({"1/4", "1/2"})), point({"1/2", "1/4"}));
  const std::vector<Rational> right{Rational(3, 4), 0};
  EXPECT_EQ(fixtures::reference_apply(b, right), (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(apply_point(b, point({"3/4", "0"})), point({"1/2", "1/2"}));
  EXPECT_EQ(apply_point(Element::identity(2), point({"5/8", "1/8"})), point({"5/8", "1/8"}));
}

TEST(ApplyPoint, RejectsPointsOutsideTheCube) {
  const Element b = fixtures::primary_baker();
  EXPECT_THROW(apply_point(b, point({"1", "0"})), InvalidArgument);
  EXPECT_THROW(apply_point(b, point({"-1/2", "0"})), InvalidArgument);
  EXPECT_THROW(apply_point(b, point({"0"})), DimensionMismatch);
}

TEST(ApplyPoint, CentersLandInTheirRangeBricks) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Element f = random_of(1 + seed % 3, 5, seed);
    for (const auto& p : f) EXPECT_TRUE(p.range.contains(apply_point(f, p.domain.center())));
  }
}

TEST(Support, Examples) {
  EXPECT_TRUE(support(Element::identity(2)).empty());
  EXPECT_EQ(support(fixtures::primary_baker()), std::vector<Brick>{Brick::unit(2)});
  EXPECT_EQ(support(fixtures::strip_baker()), std::vector<Brick>{Brick::unit(2)});
  EXPECT_EQ(support(fixtures::secondary_baker()), std::vector<Brick>{fixtures::secondary_support()});
}

TEST(Coarsen, Examples) {
  EXPECT_EQ(coarsen(fixtures::strip_baker()), fixtures::primary_baker());
  EXPECT_EQ(coarsen(fixtures::band_baker()), fixtures::primary_baker());
  const Element quads = Element::from_pairs({piece(fixtures::kBL, fixtures::kBL), piece(fixtures::kBR, fixtures::kBR),
                                             piece(fixtures::kTL, fixtures::kTL), piece(fixtures::kTR, fixtures::kTR)});
  EXPECT_EQ(coarsen(quads), Element::identity(2));
}

TEST(Coarsen, IdempotentAndEquivalent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Element f = random_of(1 + seed % 3, 5, seed);
    const Element c = coarsen(f);
    EXPECT_TRUE(equals(c, f));
    EXPECT_EQ(coarsen(c), c);
    EXPECT_LE(c.size(), f.size());
  }
}

TEST(GroupLaws, RandomElements) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const Element f = random_of(n, 4, seed);
    const Element g = random_of(n, 4, seed + 101);
    const Element h = random_of(n, 4, seed + 202);
    const Element id = Element::identity(n);
    EXPECT_TRUE(equals(then(then(f, g), h), then(f, then(g, h))));
    EXPECT_TRUE(equals(then(id, f), f));
    EXPECT_TRUE(equals(then(f, id), f));
    EXPECT_TRUE(equals(then(inverse(f), f), id));
  }
}

TEST(GroupLaws, RefinementsAreEqual) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Element f = random_of(1 + seed % 3, 4, seed);
    Lcg rng(seed);
    Element g = f;
    for (int k = 0; k < 3; ++k) g = refine_once(g, rng);
    EXPECT_NE(f, g);
    EXPECT_TRUE(equals(f, g));
  }
}

TEST(Then, ConservesMeasure) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Element h = then(random_of(2, 5, seed), random_of(2, 5, seed + 9));
    EXPECT_TRUE(partition_validate(h.domain_partition().bricks()));
    EXPECT_TRUE(partition_validate(h.range_partition().bricks()));
  }
}

TEST(Word, ProductIsLeftToRight) {
  const Element b = fixtures::primary_baker();
  const Element t = fixtures::quadrant_swap(fixtures::kBR, fixtures::kTL);
  const Word w(2, {b, t});
  EXPECT_EQ(product(w), then(b, t));
  EXPECT_TRUE(equals(product(Word(), 2), Element::identity(2)));
  Word mixed(2);
  EXPECT_THROW(mixed.push_back(Element::identity(3)), DimensionMismatch);
}
