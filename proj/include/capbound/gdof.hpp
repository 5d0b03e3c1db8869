#pragma once

// Symmetric generalized degrees of freedom: S1 = S2 = S, I1 = I2 = S^alpha,
// C = S^beta, d_i = lim R_i / log(1 + S). The analysed sub-regime is
// alpha < 1, beta <= 1.

#include "capbound/bounds.hpp"
#include "capbound/common.hpp"
#include "capbound/gaussian.hpp"
#include "capbound/region.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace capbound {

struct GdofParams {
  double alpha = 0.0; // interference exponent
  double beta = 0.0;  // cooperation exponent

  bool in_guard() const {
    return std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0 &&
           alpha < 1.0 && beta <= 1.0;
  }
  void require_guard() const {
    if (!in_guard())
      throw Error(ErrorCode::regime_not_covered,
                  "gDoF analysis covers 0 <= alpha < 1 and 0 <= beta <= 1 (got alpha=" +
                      std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
};

enum class RegimeLabel {
  both_active,
  only_r1_plus_2r2_active,
  classical_ic_equivalent,
  out_of_scope,
  // Not expected inside the guard; kept so a geometric disagreement has a name.
  only_2r1_plus_r2_active,
  neither_active,
};

inline std::string_view to_string(RegimeLabel l) {
  switch (l) {
  case RegimeLabel::both_active: return "both_active";
  case RegimeLabel::only_r1_plus_2r2_active: return "only_r1_plus_2r2_active";
  case RegimeLabel::classical_ic_equivalent: return "classical_ic_equivalent";
  case RegimeLabel::out_of_scope: return "out_of_scope";
  case RegimeLabel::only_2r1_plus_r2_active: return "only_2r1_plus_r2_active";
  case RegimeLabel::neither_active: return "neither_active";
  }
  return "?";
}

/// Constraint positions inside gdof_region / classical_ic_gdof.
namespace gdof_index {
inline constexpr std::size_t cut_d1 = 0;
inline constexpr std::size_t cut_d2 = 1;
inline constexpr std::size_t sum_tuni = 2;
inline constexpr std::size_t sum_pv = 3;
inline constexpr std::size_t two_d1_plus_d2 = 4;
inline constexpr std::size_t d1_plus_two_d2 = 5;
} // namespace gdof_index

inline HalfspaceSet gdof_region(const GdofParams &p) {
  p.require_guard();
  const double a = p.alpha, b = p.beta;
  return HalfspaceSet({
      {1, 0, 1.0, "d1"},
      {0, 1, 1.0, "d2"},
      {1, 1, 2.0 - a, "d1+d2 (sum_tuni)"},
      {1, 1, std::max(a, 1.0 - a) + std::max(a, 1.0 + b - a), "d1+d2 (sum_pv)"},
      {2, 1, 1.0 + positive_part(1.0 - std::max(a, b)) + std::max(a, 1.0 - a + b), "2d1+d2"},
      {1, 2, 2.0 - a + std::max({a, b, 1.0 - a}), "d1+2d2"},
  });
}

/// Symmetric gDoF region of the interference channel without cooperation.
inline HalfspaceSet classical_ic_gdof(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw Error(ErrorCode::regime_not_covered, "classical IC gDoF oracle covers 0 <= alpha < 1");
  const double a = alpha, w = std::max(a, 1.0 - a);
  return HalfspaceSet({
      {1, 0, 1.0, "d1"},
      {0, 1, 1.0, "d2"},
      {1, 1, 2.0 - a, "d1+d2"},
      {1, 1, 2.0 * w, "d1+d2 (W)"},
      {2, 1, 2.0 - a + w, "2d1+d2"},
      {1, 2, 2.0 - a + w, "d1+2d2"},
  });
}

/// Closed-form activity rule: both new bounds are active iff
/// alpha >= max(1/2, beta); otherwise only d1 + 2 d2 is.
inline RegimeLabel predicted_label(const GdofParams &p) {
  if (!p.in_guard())
    return RegimeLabel::out_of_scope;
  return p.alpha >= std::max(0.5, p.beta) ? RegimeLabel::both_active
                                          : RegimeLabel::only_r1_plus_2r2_active;
}

/// beta <= [2 alpha - 1]^+, up to rounding in 2 alpha - 1.
inline bool classical_flag(const GdofParams &p) {
  return p.beta <= positive_part(2.0 * p.alpha - 1.0) + 1e-12;
}

struct ActivityReport {
  RegimeLabel label;     // from the geometry
  RegimeLabel predicted; // from the closed-form rule
  std::vector<std::size_t> active_ids;
  std::vector<TouchingConstraint> touching;
  RatePolytope polytope;
};

inline ActivityReport active_constraints(const GdofParams &p) {
  auto hs = gdof_region(p);
  auto red = redundant_constraints(hs);
  ActivityReport rep;
  rep.active_ids = red.active;
  rep.touching = red.touching;
  rep.polytope.vertices = vertex_polygon(hs).vertices;
  rep.polytope.active_ids = red.active;
  auto is_active = [&](std::size_t i) {
    return std::find(red.active.begin(), red.active.end(), i) != red.active.end();
  };
  const bool two_d1 = is_active(gdof_index::two_d1_plus_d2);
  const bool two_d2 = is_active(gdof_index::d1_plus_two_d2);
  rep.label = two_d1 && two_d2   ? RegimeLabel::both_active
              : two_d2           ? RegimeLabel::only_r1_plus_2r2_active
              : two_d1           ? RegimeLabel::only_2r1_plus_r2_active
                                 : RegimeLabel::neither_active;
  rep.predicted = predicted_label(p);
  return rep;
}

struct RegimeRow {
  double alpha;
  double beta;
  RegimeLabel label;
  RegimeLabel predicted;
  bool classical;               // beta <= [2 alpha - 1]^+
  std::optional<bool> classical_region_equal; // polytope equality with the oracle
  std::vector<std::size_t> active_ids;
};

/// One row per (alpha, beta), ordered by alpha then beta. Points outside the
/// guard are labelled out_of_scope.
inline std::vector<RegimeRow> regime_map(const std::vector<double> &alphas,
                                         const std::vector<double> &betas) {
  std::vector<std::pair<double, double>> pts;
  for (double a : alphas)
    for (double b : betas)
      pts.emplace_back(a, b);
  std::sort(pts.begin(), pts.end());
  return parallel_map(pts.size(), [&](std::size_t i) {
    GdofParams p{pts[i].first, pts[i].second};
    RegimeRow row{p.alpha, p.beta, RegimeLabel::out_of_scope, RegimeLabel::out_of_scope,
                  false,   std::nullopt, {}};
    if (!p.in_guard())
      return row;
    auto rep = active_constraints(p);
    row.label = rep.label;
    row.predicted = rep.predicted;
    row.active_ids = rep.active_ids;
    row.classical = classical_flag(p);
    row.classical_region_equal = region_equal(gdof_region(p), classical_ic_gdof(p.alpha));
    return row;
  });
}

/// Counts per label; classical_ic_equivalent counts rows with the classical flag.
inline std::map<std::string, std::size_t> label_counts(const std::vector<RegimeRow> &rows) {
  std::map<std::string, std::size_t> counts;
  for (RegimeLabel l : {RegimeLabel::both_active, RegimeLabel::only_r1_plus_2r2_active,
                        RegimeLabel::classical_ic_equivalent, RegimeLabel::out_of_scope})
    counts[std::string(to_string(l))] = 0;
  for (const auto &r : rows) {
    ++counts[std::string(to_string(r.label))];
    if (r.classical && r.label != RegimeLabel::out_of_scope)
      ++counts[std::string(to_string(RegimeLabel::classical_ic_equivalent))];
  }
  return counts;
}

/// Symmetric gains at SNR S.
inline GaussianParams symmetric_params(double snr, const GdofParams &p) {
  GaussianParams g;
  g.s1 = g.s2 = snr;
  g.i1 = g.i2 = std::pow(snr, p.alpha);
  g.c = std::pow(snr, p.beta);
  return g;
}

/// gDoF coefficient each closed-form bound converges to (right-hand side of
/// the matching constraint of gdof_region).
inline double gdof_coefficient(BoundId id, const GdofParams &p) {
  auto hs = gdof_region(p);
  switch (id) {
  case BoundId::cutset_r1_coop:
  case BoundId::cutset_r1: return hs.constraints[gdof_index::cut_d1].b;
  case BoundId::cutset_r2: return hs.constraints[gdof_index::cut_d2].b;
  case BoundId::sum_tuni1:
  case BoundId::sum_tuni2: return hs.constraints[gdof_index::sum_tuni].b;
  case BoundId::sum_pv: return hs.constraints[gdof_index::sum_pv].b;
  case BoundId::two_r1_plus_r2: return hs.constraints[gdof_index::two_d1_plus_d2].b;
  case BoundId::r1_plus_two_r2: return hs.constraints[gdof_index::d1_plus_two_d2].b;
  case BoundId::fb_r1_plus_two_r2: break;
  }
  throw Error(ErrorCode::domain, "bound has no closed form");
}

struct SlopeResult {
  double slope = 0.0;
  double expected = 0.0;
  bool pass = false;
};

inline constexpr double kSlopeTolerance = 0.02;

/// Empirical pre-log (B(S_high) - B(S_low)) / (log2 S_high - log2 S_low) of a
/// closed-form bound, compared with its gDoF coefficient.
inline SlopeResult slope_check(const GdofParams &p, BoundId id, double s_low, double s_high,
                               double tol = kSlopeTolerance) {
  p.require_guard();
  if (!(s_low >= 1e6 && s_high > s_low && std::isfinite(s_high)))
    throw Error(ErrorCode::domain, "slope check needs S_high > S_low >= 1e6");
  auto lo = closed_form_bounds(symmetric_params(s_low, p));
  auto hi = closed_form_bounds(symmetric_params(s_high, p));
  if (!lo.has(id) || !hi.has(id))
    throw Error(ErrorCode::not_applicable,
                std::string(to_string(id)) + ": " + (lo.has(id) ? hi : lo)[id].reason);
  SlopeResult r;
  r.slope = (hi.value(id) - lo.value(id)) / (std::log2(s_high) - std::log2(s_low));
  r.expected = gdof_coefficient(id, p);
  r.pass = std::abs(r.slope - r.expected) <= tol;
  return r;
}

} // namespace capbound
