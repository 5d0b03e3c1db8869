#pragma once

// Two-dimensional rate regions {R1, R2 >= 0 : a1 R1 + a2 R2 <= b for all
// constraints}. Vertex enumeration is exact pairwise intersection followed by
// a feasibility filter; with at most a dozen constraints this is cheap.

#include "capbound/common.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capbound {

inline constexpr double kGeometryTol = 1e-9;

struct Halfspace {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  std::string label;

  double slack(double r1, double r2) const { return b - (a1 * r1 + a2 * r2); }
};

struct HalfspaceSet {
  std::vector<Halfspace> constraints;

  HalfspaceSet() = default;
  HalfspaceSet(std::vector<Halfspace> c) : constraints(std::move(c)) {} // NOLINT

  std::size_t size() const { return constraints.size(); }

  HalfspaceSet without(std::size_t i) const {
    HalfspaceSet out = *this;
    out.constraints.erase(out.constraints.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }
};

struct Point2 {
  double r1 = 0.0;
  double r2 = 0.0;
};

inline bool near(const Point2 &a, const Point2 &b, double tol = kGeometryTol) {
  return std::abs(a.r1 - b.r1) <= tol && std::abs(a.r2 - b.r2) <= tol;
}

struct RatePolytope {
  /// Counterclockwise, starting at the origin.
  std::vector<Point2> vertices;
  /// Indices of non-redundant constraints.
  std::vector<std::size_t> active_ids;
};

namespace detail {

inline void check_constraints(const HalfspaceSet &hs) {
  bool caps_r1 = false, caps_r2 = false;
  for (const auto &h : hs.constraints) {
    if (!std::isfinite(h.a1) || !std::isfinite(h.a2) || !std::isfinite(h.b))
      throw Error(ErrorCode::domain, "constraint '" + h.label + "' has a non-finite coefficient");
    if (h.a1 < 0.0 || h.a2 < 0.0)
      throw Error(ErrorCode::domain,
                  "constraint '" + h.label + "' has a negative rate coefficient");
    if (h.b < -kGeometryTol)
      throw Error(ErrorCode::infeasible, "constraint '" + h.label +
                                             "' excludes the origin; the region is empty");
    caps_r1 |= h.a1 > 0.0;
    caps_r2 |= h.a2 > 0.0;
  }
  if (!caps_r1)
    throw Error(ErrorCode::unbounded, "region is unbounded in the R1 direction");
  if (!caps_r2)
    throw Error(ErrorCode::unbounded, "region is unbounded in the R2 direction");
}

inline double cross(const Point2 &o, const Point2 &a, const Point2 &b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

// Andrew's monotone chain, dropping collinear points; counterclockwise from
// the lexicographically smallest point.
inline std::vector<Point2> hull_ccw(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2 &a, const Point2 &b) {
    return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
  });
  if (pts.size() <= 2)
    return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto &p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 1e-15)
      --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-15)
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

} // namespace detail

/// Vertex representation. Throws unbounded/infeasible/domain errors.
inline RatePolytope vertex_polygon(const HalfspaceSet &hs) {
  detail::check_constraints(hs);
  std::vector<Halfspace> all = hs.constraints;
  all.push_back({-1.0, 0.0, 0.0, "R1>=0"});
  all.push_back({0.0, -1.0, 0.0, "R2>=0"});

  std::vector<Point2> cand;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto &p = all[i], &q = all[j];
      const double det = p.a1 * q.a2 - p.a2 * q.a1;
      if (std::abs(det) < 1e-14)
        continue;
      Point2 x{(p.b * q.a2 - p.a2 * q.b) / det, (p.a1 * q.b - p.b * q.a1) / det};
      bool feasible = std::all_of(all.begin(), all.end(), [&](const Halfspace &h) {
        return h.slack(x.r1, x.r2) >= -kGeometryTol;
      });
      if (!feasible)
        continue;
      if (std::none_of(cand.begin(), cand.end(), [&](const Point2 &c) { return near(c, x); }))
        cand.push_back(x);
    }
  // Snap round-off so the origin and axis points print exactly.
  for (auto &c : cand) {
    if (std::abs(c.r1) <= kGeometryTol)
      c.r1 = 0.0;
    if (std::abs(c.r2) <= kGeometryTol)
      c.r2 = 0.0;
  }
  RatePolytope out;
  out.vertices = detail::hull_ccw(std::move(cand));
  return out;
}

inline bool same_vertices(const std::vector<Point2> &a, const std::vector<Point2> &b,
                          double tol = kGeometryTol) {
  if (a.size() != b.size())
    return false;
  for (const auto &p : a)
    if (std::none_of(b.begin(), b.end(), [&](const Point2 &q) { return near(p, q, tol); }))
      return false;
  return true;
}

struct TouchingConstraint {
  std::size_t index;
  Point2 at;
};

struct RedundancyReport {
  /// Constraints whose removal leaves the region unchanged (includes the
  /// touching ones).
  std::vector<std::size_t> redundant;
  /// Redundant constraints that are tight at exactly one vertex.
  std::vector<TouchingConstraint> touching;
  /// Complement of `redundant`.
  std::vector<std::size_t> active;
};

/// A constraint is redundant iff dropping it keeps the vertex set. Exact
/// duplicates are resolved by scanning from the last index down and dropping
/// redundant constraints as they are found, so the lowest-indexed copy stays
/// active.
inline RedundancyReport redundant_constraints(const HalfspaceSet &hs) {
  const auto full = vertex_polygon(hs).vertices;
  RedundancyReport rep;
  std::vector<bool> dropped(hs.size(), false);
  for (std::size_t i = hs.size(); i-- > 0;) {
    HalfspaceSet rest;
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i && !dropped[j])
        rest.constraints.push_back(hs.constraints[j]);
    bool same = false;
    try {
      same = same_vertices(vertex_polygon(rest).vertices, full);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::unbounded)
        throw;
    }
    dropped[i] = same;
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!dropped[i]) {
      rep.active.push_back(i);
      continue;
    }
    rep.redundant.push_back(i);
    std::vector<Point2> tight;
    for (const auto &v : full)
      if (std::abs(hs.constraints[i].slack(v.r1, v.r2)) <= kGeometryTol)
        tight.push_back(v);
    if (tight.size() == 1)
      rep.touching.push_back({i, tight.front()});
  }
  return rep;
}

/// Vertices plus the non-redundant constraint indices.
inline RatePolytope vertices(const HalfspaceSet &hs) {
  RatePolytope out = vertex_polygon(hs);
  out.active_ids = redundant_constraints(hs).active;
  return out;
}

struct Containment {
  bool contained = true;
  std::optional<Point2> witness;
};

/// Whether every vertex of `inner` satisfies every constraint of `outer`.
inline Containment contains(const HalfspaceSet &outer, const HalfspaceSet &inner) {
  detail::check_constraints(outer);
  for (const auto &v : vertex_polygon(inner).vertices)
    for (const auto &h : outer.constraints)
      if (h.slack(v.r1, v.r2) < -kGeometryTol)
        return {false, v};
  return {};
}

inline bool region_equal(const HalfspaceSet &a, const HalfspaceSet &b) {
  return contains(a, b).contained && contains(b, a).contained;
}

/// Shoelace area of a vertex polygon.
inline double polygon_area(const std::vector<Point2> &v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto &p = v[i], &q = v[(i + 1) % v.size()];
    twice += p.r1 * q.r2 - q.r1 * p.r2;
  }
  return std::abs(twice) / 2.0;
}

inline double area(const HalfspaceSet &hs) { return polygon_area(vertex_polygon(hs).vertices); }

} // namespace capbound
