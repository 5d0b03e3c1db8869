#include "capbound/region.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace capbound;

namespace {

HalfspaceSet make(std::initializer_list<Halfspace> hs) { return HalfspaceSet{hs}; }

HalfspaceSet unit_square() { return make({{1, 0, 1, "r1"}, {0, 1, 1, "r2"}}); }

HalfspaceSet five() {
  return make({{1, 0, 1, "r1"},
               {0, 1, 1, "r2"},
               {1, 1, 1.5, "sum"},
               {2, 1, 2.2, "2r1"},
               {1, 2, 2.2, "2r2"}});
}

std::vector<oracle::Line> lines_of(const HalfspaceSet &hs) {
  std::vector<oracle::Line> out;
  for (const auto &h : hs.constraints)
    out.push_back({h.a1, h.a2, h.b});
  return out;
}

std::vector<oracle::Pt> pts_of(const std::vector<Point2> &v) {
  std::vector<oracle::Pt> out;
  for (const auto &p : v)
    out.emplace_back(p.r1, p.r2);
  return out;
}

HalfspaceSet random_set(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> b(0.2, 3.0);
  std::uniform_int_distribution<int> w(0, 2), extra(0, 5);
  HalfspaceSet hs;
  hs.constraints.push_back({1, 0, b(rng), ""});
  hs.constraints.push_back({0, 1, b(rng), ""});
  for (int i = extra(rng); i > 0; --i) {
    int a1 = w(rng), a2 = w(rng);
    if (a1 == 0 && a2 == 0)
      a1 = 1;
    hs.constraints.push_back({double(a1), double(a2), b(rng), ""});
  }
  return hs;
}

} // namespace

TEST(Vertices, UnitSquare) {
  auto v = vertices(unit_square()).vertices;
  std::vector<Point2> expect{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  ASSERT_EQ(v.size(), expect.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    EXPECT_TRUE(near(v[i], expect[i])) << i;
}

TEST(Vertices, FiveConstraintHexagon) {
  auto poly = vertices(five());
  std::vector<Point2> expect{{0, 0}, {1, 0}, {1, 0.2}, {11.0 / 15, 11.0 / 15}, {0.2, 1}, {0, 1}};
  ASSERT_EQ(poly.vertices.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    EXPECT_TRUE(near(poly.vertices[i], expect[i])) << i;
  EXPECT_EQ(poly.active_ids, (std::vector<std::size_t>{0, 1, 3, 4}));
}

TEST(Vertices, MissingCapIsUnboundedError) {
  try {
    vertices(make({{1, 0, 1, "r1"}}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::unbounded);
    EXPECT_NE(std::string(e.what()).find("R2"), std::string::npos);
  }
}

TEST(Vertices, NegativeRightHandSideIsInfeasible) {
  try {
    vertices(make({{1, 0, -1, "r1"}, {0, 1, 1, "r2"}}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible);
  }
}

TEST(Redundancy, Examples) {
  auto slack = unit_square();
  slack.constraints.push_back({1, 1, 3, "sum"});
  auto r = redundant_constraints(slack);
  EXPECT_EQ(r.redundant, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(r.touching.empty());

  EXPECT_EQ(redundant_constraints(five()).redundant, (std::vector<std::size_t>{2}));

  auto touch = unit_square();
  touch.constraints.push_back({1, 1, 2, "sum"});
  auto t = redundant_constraints(touch);
  EXPECT_EQ(t.redundant, (std::vector<std::size_t>{2}));
  ASSERT_EQ(t.touching.size(), 1u);
  EXPECT_EQ(t.touching[0].index, 2u);
  EXPECT_TRUE(near(t.touching[0].at, {1, 1}));
  EXPECT_EQ(t.active, (std::vector<std::size_t>{0, 1}));
}

TEST(Redundancy, DuplicateKeepsLowestIndex) {
  auto hs = unit_square();
  hs.constraints.push_back({1, 0, 1, "r1 again"});
  auto r = redundant_constraints(hs);
  EXPECT_EQ(r.active, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.redundant, (std::vector<std::size_t>{2}));
}

TEST(Contains, Examples) {
  auto half = make({{1, 0, 0.5, ""}, {0, 1, 0.5, ""}});
  EXPECT_TRUE(contains(five(), five()).contained);
  EXPECT_TRUE(contains(unit_square(), half).contained);
  auto c = contains(half, unit_square());
  EXPECT_FALSE(c.contained);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_TRUE(near(*c.witness, {1, 0}));
}

TEST(Area, Examples) {
  EXPECT_NEAR(area(unit_square()), 1.0, 1e-15);
  EXPECT_NEAR(area(five()), 1.0 - 0.32 / 1.5, 1e-12);
  EXPECT_NEAR(area(five()), oracle::brute_area(oracle::brute_vertices(lines_of(five()))), 1e-12);
  EXPECT_DOUBLE_EQ(area(make({{1, 0, 0, ""}, {0, 1, 0, ""}})), 0.0);
}

TEST(RegionProperties, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    auto hs = random_set(rng);
    auto lines = lines_of(hs);
    EXPECT_TRUE(oracle::same_point_set(pts_of(vertex_polygon(hs).vertices),
                                       oracle::brute_vertices(lines), 1e-9));
    EXPECT_EQ(redundant_constraints(hs).redundant, oracle::brute_redundant(lines));
  }
}

TEST(RegionProperties, VerticesFeasibleAndCounterclockwise) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    auto hs = random_set(rng);
    auto v = vertex_polygon(hs).vertices;
    ASSERT_FALSE(v.empty());
    EXPECT_TRUE(near(v.front(), {0, 0}));
    for (const auto &p : v)
      for (const auto &h : hs.constraints)
        EXPECT_GE(h.slack(p.r1, p.r2), -kGeometryTol);
    if (v.size() < 3)
      continue;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto &a = v[k], &b = v[(k + 1) % v.size()], &c = v[(k + 2) % v.size()];
      EXPECT_GT((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1), 0.0);
    }
  }
}

TEST(RegionProperties, RoundTripFromTightConstraints) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    auto hs = random_set(rng);
    auto v = vertex_polygon(hs).vertices;
    HalfspaceSet tight;
    for (const auto &h : hs.constraints)
      if (std::any_of(v.begin(), v.end(),
                      [&](const Point2 &p) { return std::abs(h.slack(p.r1, p.r2)) <= kGeometryTol; }))
        tight.constraints.push_back(h);
    EXPECT_TRUE(same_vertices(vertex_polygon(tight).vertices, v));
  }
}

TEST(RegionProperties, EqualityIsAnEquivalence) {
  std::mt19937_64 rng(44);
  std::vector<HalfspaceSet> corpus;
  for (int i = 0; i < 12; ++i) {
    auto hs = random_set(rng);
    corpus.push_back(hs);
    auto extra = hs;
    extra.constraints.push_back({1, 1, 100, ""});
    corpus.push_back(extra);
  }
  for (const auto &a : corpus) {
    EXPECT_TRUE(region_equal(a, a));
    for (const auto &b : corpus) {
      EXPECT_EQ(region_equal(a, b), region_equal(b, a));
      for (const auto &c : corpus)
        if (region_equal(a, b) && region_equal(b, c)) {
          EXPECT_TRUE(region_equal(a, c));
        }
    }
  }
}

TEST(RegionProperties, AreaMonotoneUnderRemoval) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    auto hs = random_set(rng);
    double a = area(hs);
    for (std::size_t k = 2; k < hs.size(); ++k)
      EXPECT_GE(area(hs.without(k)), a - 1e-12);
  }
}
