#pragma once

// Finite-alphabet injective semi-deterministic (ISD) interference channels
// with unilateral source cooperation.
//
//   (Yf, T1) ~ P(yf, t1 | x1)      noisy front end of pair 1 (may be correlated)
//   T2       ~ P(t2 | x2)          noisy front end of pair 2, independent of pair 1
//   Y1  = f1(X1, T2),  Y2 = f2(X2, T1),  YF2 = f3(X2, Yf)
//
// with f1 injective in T2 for each X1, f2 injective in T1 for each X2 and f3
// injective in Yf for each X2. Because YF2 always appears conditioned on X2 in
// the bounds, it is replaced by Yf during evaluation.

#include "capbound/bounds.hpp"
#include "capbound/common.hpp"
#include "capbound/prob_table.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace capbound {

enum class FeedbackMode { generalized, output_feedback };

inline std::string_view to_string(FeedbackMode m) {
  return m == FeedbackMode::generalized ? "generalized" : "output_feedback";
}

struct IsdAlphabets {
  std::size_t x1 = 1, x2 = 1, yf = 1, t1 = 1, t2 = 1;
  std::size_t y1 = 1, y2 = 1, yf2 = 1;
};

struct IsdChannelSpec {
  IsdAlphabets alphabets;
  /// frontend1[x1][yf * |T1| + t1] = P(yf, t1 | x1)
  std::vector<std::vector<double>> frontend1;
  /// frontend2[x2][t2] = P(t2 | x2)
  std::vector<std::vector<double>> frontend2;
  /// f1[x1][t2] = y1, f2[x2][t1] = y2, f3[x2][yf] = yf2
  std::vector<std::vector<std::size_t>> f1, f2, f3;
  FeedbackMode feedback_mode = FeedbackMode::generalized;

  double frontend1_prob(std::size_t x1, std::size_t yf, std::size_t t1) const {
    return frontend1[x1][yf * alphabets.t1 + t1];
  }
};

enum class ViolationKind {
  shape,
  negative_probability,
  normalization,
  function_range,
  injectivity,
  feedback_structure,
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::shape: return "shape";
  case ViolationKind::negative_probability: return "negative_probability";
  case ViolationKind::normalization: return "normalization";
  case ViolationKind::function_range: return "function_range";
  case ViolationKind::injectivity: return "injectivity";
  case ViolationKind::feedback_structure: return "feedback_structure";
  }
  return "?";
}

/// First violated invariant. For injectivity, `fixed_input` is the own-input
/// symbol and (`first`, `second`) the colliding pair of noisy symbols; for
/// row-level problems `fixed_input` names the row.
struct Violation {
  ViolationKind kind;
  std::string table;
  std::size_t fixed_input = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  std::string message;
};

struct ValidationReport {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
};

namespace detail {

inline std::optional<Violation> check_rows(const std::string &table,
                                           const std::vector<std::vector<double>> &rows,
                                           std::size_t n_rows, std::size_t row_len) {
  if (rows.size() != n_rows)
    return Violation{ViolationKind::shape, table, 0, 0, 0,
                     table + " has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(n_rows)};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != row_len)
      return Violation{ViolationKind::shape, table, r, 0, 0,
                       table + " row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(row_len)};
    double s = 0.0;
    for (std::size_t c = 0; c < row_len; ++c) {
      if (!std::isfinite(rows[r][c]) || rows[r][c] < 0.0)
        return Violation{ViolationKind::negative_probability, table, r, c, 0,
                         table + " row " + std::to_string(r) + " entry " + std::to_string(c) +
                             " is not a non-negative probability"};
      s += rows[r][c];
    }
    if (std::abs(s - 1.0) > 1e-12)
      return Violation{ViolationKind::normalization, table, r, 0, 0,
                       table + " row " + std::to_string(r) + " sums to " +
                           std::to_string(s) + ", not 1"};
  }
  return std::nullopt;
}

inline std::optional<Violation> check_injective(const std::string &table,
                                                const std::vector<std::vector<std::size_t>> &f,
                                                std::size_t n_fixed, std::size_t n_noisy,
                                                std::size_t out_card) {
  if (f.size() != n_fixed)
    return Violation{ViolationKind::shape, table, 0, 0, 0,
                     table + " has " + std::to_string(f.size()) + " rows, expected " +
                         std::to_string(n_fixed)};
  for (std::size_t u = 0; u < n_fixed; ++u) {
    if (f[u].size() != n_noisy)
      return Violation{ViolationKind::shape, table, u, 0, 0,
                       table + " row " + std::to_string(u) + " has " +
                           std::to_string(f[u].size()) + " entries, expected " +
                           std::to_string(n_noisy)};
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t v = 0; v < n_noisy; ++v) {
      if (f[u][v] >= out_card)
        return Violation{ViolationKind::function_range, table, u, v, 0,
                         table + "(" + std::to_string(u) + ", " + std::to_string(v) + ") = " +
                             std::to_string(f[u][v]) + " is outside the output alphabet of size " +
                             std::to_string(out_card)};
      auto [it, fresh] = seen.emplace(f[u][v], v);
      if (!fresh)
        return Violation{ViolationKind::injectivity, table, u, it->second, v,
                         table + " is not injective for fixed input " + std::to_string(u) +
                             ": symbols " + std::to_string(it->second) + " and " +
                             std::to_string(v) + " collide"};
    }
  }
  return std::nullopt;
}

} // namespace detail

inline ValidationReport validate(const IsdChannelSpec &spec) {
  const auto &a = spec.alphabets;
  for (std::size_t c : {a.x1, a.x2, a.yf, a.t1, a.t2, a.y1, a.y2, a.yf2})
    if (c == 0)
      return {Violation{ViolationKind::shape, "alphabets", 0, 0, 0, "empty alphabet"}};
  if (auto v = detail::check_rows("frontend1", spec.frontend1, a.x1, a.yf * a.t1))
    return {v};
  if (auto v = detail::check_rows("frontend2", spec.frontend2, a.x2, a.t2))
    return {v};
  if (auto v = detail::check_injective("f1", spec.f1, a.x1, a.t2, a.y1))
    return {v};
  if (auto v = detail::check_injective("f2", spec.f2, a.x2, a.t1, a.y2))
    return {v};
  if (auto v = detail::check_injective("f3", spec.f3, a.x2, a.yf, a.yf2))
    return {v};

  // Output feedback: YF2 must coincide with Y2, i.e. Yf = T1 almost surely and
  // f3 = f2 as tables.
  if (spec.feedback_mode == FeedbackMode::output_feedback) {
    auto fail = [](std::string msg, std::size_t row = 0) {
      return ValidationReport{
          Violation{ViolationKind::feedback_structure, "feedback_mode", row, 0, 0, std::move(msg)}};
    };
    if (a.yf != a.t1)
      return fail("output feedback requires |Yf| = |T1|");
    if (a.yf2 != a.y2)
      return fail("output feedback requires |YF2| = |Y2|");
    for (std::size_t x1 = 0; x1 < a.x1; ++x1)
      for (std::size_t yf = 0; yf < a.yf; ++yf)
        for (std::size_t t1 = 0; t1 < a.t1; ++t1)
          if (yf != t1 && spec.frontend1_prob(x1, yf, t1) > 0.0)
            return fail("output feedback requires Yf = T1, but P(yf=" + std::to_string(yf) +
                            ", t1=" + std::to_string(t1) + " | x1=" + std::to_string(x1) + ") > 0",
                        x1);
    if (spec.f3 != spec.f2)
      return fail("output feedback requires f3 = f2 so that YF2 = Y2");
  }
  return {};
}

inline void require_valid(const IsdChannelSpec &spec) {
  auto r = validate(spec);
  if (!r.ok())
    throw Error(ErrorCode::domain, "invalid channel spec: " + r.violation->message);
}

/// True when (Yf, T1) are dependent given X1 for some input symbol.
inline bool frontend1_correlated(const IsdChannelSpec &spec, double tol = 1e-12) {
  const auto &a = spec.alphabets;
  for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
    std::vector<double> pyf(a.yf, 0.0), pt1(a.t1, 0.0);
    for (std::size_t yf = 0; yf < a.yf; ++yf)
      for (std::size_t t1 = 0; t1 < a.t1; ++t1) {
        pyf[yf] += spec.frontend1_prob(x1, yf, t1);
        pt1[t1] += spec.frontend1_prob(x1, yf, t1);
      }
    for (std::size_t yf = 0; yf < a.yf; ++yf)
      for (std::size_t t1 = 0; t1 < a.t1; ++t1)
        if (std::abs(spec.frontend1_prob(x1, yf, t1) - pyf[yf] * pt1[t1]) > tol)
          return true;
  }
  return false;
}

/// Joint law of the two channel inputs.
class InputDist {
public:
  explicit InputDist(ProbTable table) : table_(std::move(table)) {
    if (table_.arity() != 2 || table_.variables()[0] != "X1" || table_.variables()[1] != "X2")
      throw Error(ErrorCode::domain, "an input distribution is a table over exactly (X1, X2)");
  }

  /// mass[x1][x2]
  static InputDist from_matrix(const std::vector<std::vector<double>> &mass) {
    if (mass.empty() || mass[0].empty())
      throw Error(ErrorCode::domain, "empty input distribution");
    std::vector<double> dense;
    for (const auto &row : mass) {
      if (row.size() != mass[0].size())
        throw Error(ErrorCode::domain, "ragged input distribution matrix");
      dense.insert(dense.end(), row.begin(), row.end());
    }
    return InputDist(ProbTable::from_dense({"X1", "X2"}, {mass.size(), mass[0].size()}, dense));
  }

  static InputDist uniform(std::size_t n1, std::size_t n2) {
    std::vector<double> dense(n1 * n2, 1.0 / static_cast<double>(n1 * n2));
    return InputDist(ProbTable::from_dense({"X1", "X2"}, {n1, n2}, dense));
  }

  static InputDist point_mass(std::size_t n1, std::size_t n2, std::size_t x1, std::size_t x2) {
    return InputDist(ProbTable({"X1", "X2"}, {n1, n2}, {{{x1, x2}, 1.0}}));
  }

  std::size_t x1_size() const { return table_.cardinalities()[0]; }
  std::size_t x2_size() const { return table_.cardinalities()[1]; }
  const ProbTable &table() const { return table_; }

  double mass(std::size_t x1, std::size_t x2) const {
    std::array<std::size_t, 2> t{x1, x2};
    return table_.mass(t);
  }

  std::vector<std::vector<double>> matrix() const {
    std::vector<std::vector<double>> m(x1_size(), std::vector<double>(x2_size(), 0.0));
    for (const auto &[key, p] : table_.atoms())
      m[key / x2_size()][key % x2_size()] = p;
    return m;
  }

private:
  ProbTable table_;
};

inline const std::vector<std::string> &isd_variables() {
  static const std::vector<std::string> v{"X1", "X2", "Yf", "T1", "T2", "Y1", "Y2"};
  return v;
}

/// Joint pmf over (X1, X2, Yf, T1, T2, Y1, Y2).
inline ProbTable joint_distribution(const IsdChannelSpec &spec, const InputDist &p) {
  require_valid(spec);
  const auto &a = spec.alphabets;
  if (p.x1_size() != a.x1 || p.x2_size() != a.x2)
    throw Error(ErrorCode::domain, "input distribution alphabets (" + std::to_string(p.x1_size()) +
                                       ", " + std::to_string(p.x2_size()) +
                                       ") do not match the channel (" + std::to_string(a.x1) +
                                       ", " + std::to_string(a.x2) + ")");
  std::vector<std::pair<ProbTable::Tuple, double>> entries;
  for (const auto &[key, pin] : p.table().atoms()) {
    std::size_t x1 = key / a.x2, x2 = key % a.x2;
    for (std::size_t yf = 0; yf < a.yf; ++yf)
      for (std::size_t t1 = 0; t1 < a.t1; ++t1) {
        double p1 = spec.frontend1_prob(x1, yf, t1);
        if (p1 == 0.0)
          continue;
        for (std::size_t t2 = 0; t2 < a.t2; ++t2) {
          double p2 = spec.frontend2[x2][t2];
          if (p2 == 0.0)
            continue;
          entries.push_back(
              {{x1, x2, yf, t1, t2, spec.f1[x1][t2], spec.f2[x2][t1]}, pin * p1 * p2});
        }
      }
  }
  return ProbTable(isd_variables(), {a.x1, a.x2, a.yf, a.t1, a.t2, a.y1, a.y2}, entries);
}

/// Conditional entropies on one joint table, memoized by variable subset.
class IsdEntropyCache {
public:
  explicit IsdEntropyCache(const ProbTable &joint) : joint_(joint) {}

  double operator()(const std::vector<Signal> &of, const std::vector<Signal> &given) {
    unsigned a = mask(of), b = mask(given);
    if (a & b)
      throw Error(ErrorCode::domain, "overlapping entropy arguments");
    return b == 0 ? joint_entropy(a) : joint_entropy(a | b) - joint_entropy(b);
  }

private:
  static unsigned mask(const std::vector<Signal> &s) {
    unsigned m = 0;
    for (Signal x : s)
      m |= 1u << static_cast<unsigned>(x);
    return m;
  }

  double joint_entropy(unsigned m) {
    if (auto it = memo_.find(m); it != memo_.end())
      return it->second;
    std::vector<std::string> names;
    for (Signal s : kAllSignals)
      if (m & (1u << static_cast<unsigned>(s)))
        names.emplace_back(to_string(s));
    double h = entropy(joint_, VarSet(std::move(names)));
    memo_.emplace(m, h);
    return h;
  }

  const ProbTable &joint_;
  std::map<unsigned, double> memo_;
};

/// Evaluates a single bound; throws precondition for the feedback bound on a
/// generalized-feedback channel.
inline BoundValue eval_bound(const IsdChannelSpec &spec, const InputDist &p, BoundId id) {
  if (id == BoundId::fb_r1_plus_two_r2 && spec.feedback_mode != FeedbackMode::output_feedback)
    throw Error(ErrorCode::precondition, std::string(reason::requires_output_feedback));
  auto joint = joint_distribution(spec, p);
  IsdEntropyCache h(joint);
  return evaluate_terms(id, h);
}

inline BoundSet eval_bounds(const IsdChannelSpec &spec, const InputDist &p) {
  auto joint = joint_distribution(spec, p);
  IsdEntropyCache h(joint);
  BoundSet out;
  for (BoundId id : kAllBounds) {
    if (id == BoundId::fb_r1_plus_two_r2 && spec.feedback_mode != FeedbackMode::output_feedback) {
      out.set_absent(id, reason::requires_output_feedback);
      continue;
    }
    out[id] = evaluate_terms(id, h);
  }
  if (spec.feedback_mode == FeedbackMode::output_feedback && frontend1_correlated(spec))
    out.notes.emplace_back("frontend1_intra_pair_correlation");
  return out;
}

inline double eval_feedback_bound(const IsdChannelSpec &spec, const InputDist &p) {
  return *eval_bound(spec, p, BoundId::fb_r1_plus_two_r2).bits;
}

struct MaximizeResult {
  InputDist input;
  double bits;
  std::size_t evaluations;
};

struct MaximizeOptions {
  std::size_t restarts = 64;
  std::uint64_t seed = 42;
  double initial_step = 0.5;
  double min_step = 1e-3;
  double rel_improvement = 1e-6;
};

/// Maximizes one bound over the joint input law.
///
/// Restart 0 starts from the uniform law; restarts 1.. start from
/// Dirichlet(1) draws of one engine seeded with `seed`. Each restart runs
/// cyclic coordinate ascent: for every atom, try moving a fraction `step` of
/// mass toward it and away from it; a sweep that improves by less than
/// `rel_improvement` (relative) halves the step, and the restart ends once the
/// step drops below `min_step`. Every objective evaluation counts against
/// `budget`. The evaluation sequence does not depend on `budget`, so the
/// result is non-decreasing in it.
inline MaximizeResult maximize_bound(const IsdChannelSpec &spec, BoundId id, std::size_t budget,
                                     const MaximizeOptions &opt = {}) {
  require_valid(spec);
  if (budget < 1)
    throw Error(ErrorCode::domain, "maximization budget must be at least 1");
  if (id == BoundId::fb_r1_plus_two_r2 && spec.feedback_mode != FeedbackMode::output_feedback)
    throw Error(ErrorCode::precondition, std::string(reason::requires_output_feedback));

  const std::size_t n1 = spec.alphabets.x1, n2 = spec.alphabets.x2, n = n1 * n2;
  auto to_input = [&](const std::vector<double> &w) {
    return InputDist(ProbTable::from_dense({"X1", "X2"}, {n1, n2}, w));
  };

  std::size_t used = 0;
  std::vector<double> best_w;
  double best = -1.0;
  // Returns nullopt once the budget is spent.
  auto evaluate = [&](const std::vector<double> &w) -> std::optional<double> {
    if (used >= budget)
      return std::nullopt;
    ++used;
    double v = *eval_bound(spec, to_input(w), id).bits;
    if (v > best) {
      best = v;
      best_w = w;
    }
    return v;
  };
  auto normalized = [](std::vector<double> w) {
    double s = 0.0;
    for (double x : w)
      s += x;
    for (double &x : w)
      x /= s;
    return w;
  };

  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> expo(1.0);

  for (std::size_t r = 0; r < opt.restarts && used < budget; ++r) {
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    if (r > 0) {
      for (double &x : w)
        x = expo(rng);
      w = normalized(std::move(w));
    }
    auto cur = evaluate(w);
    if (!cur)
      break;
    double step = opt.initial_step;
    while (step >= opt.min_step && used < budget) {
      double sweep_start = *cur;
      for (std::size_t i = 0; i < n && used < budget; ++i) {
        std::vector<double> up(w);
        for (std::size_t j = 0; j < n; ++j)
          up[j] = (1.0 - step) * w[j] + (j == i ? step : 0.0);
        auto vu = evaluate(up);
        if (!vu)
          break;
        if (*vu > *cur) {
          w = normalized(std::move(up));
          cur = vu;
          continue;
        }
        if (w[i] <= 0.0)
          continue;
        std::vector<double> down(w);
        down[i] *= (1.0 - step);
        down = normalized(std::move(down));
        auto vd = evaluate(down);
        if (!vd)
          break;
        if (*vd > *cur) {
          w = std::move(down);
          cur = vd;
        }
      }
      if (*cur - sweep_start <= opt.rel_improvement * std::max(1.0, std::abs(sweep_start)))
        step *= 0.5;
    }
  }
  return {to_input(best_w), best, used};
}

/// Built-in linear deterministic instance on q-bit vectors,
/// q = max(n_direct, n_interf, n_coop). A level-n link delivers the top n
/// bits of its input, shifted down to the least significant positions.
inline IsdChannelSpec ldc_instance(unsigned n_direct, unsigned n_interf, unsigned n_coop) {
  if (n_direct > 3 || n_interf > 3 || n_coop > 3)
    throw Error(ErrorCode::size_guard, "linear deterministic levels are limited to 3");
  const unsigned q = std::max({n_direct, n_interf, n_coop});
  const std::size_t nx = std::size_t{1} << q;
  const std::size_t nt = std::size_t{1} << n_interf;
  const std::size_t nf = std::size_t{1} << n_coop;
  const std::size_t ny = std::size_t{1} << std::max(n_direct, n_interf);
  auto top = [q](std::size_t x, unsigned level) { return x >> (q - level); };

  IsdChannelSpec s;
  s.alphabets = {nx, nx, nf, nt, nt, ny, ny, nf};
  s.frontend1.assign(nx, std::vector<double>(nf * nt, 0.0));
  s.frontend2.assign(nx, std::vector<double>(nt, 0.0));
  s.f1.assign(nx, std::vector<std::size_t>(nt));
  s.f2.assign(nx, std::vector<std::size_t>(nt));
  s.f3.assign(nx, std::vector<std::size_t>(nf));
  for (std::size_t x = 0; x < nx; ++x) {
    s.frontend1[x][top(x, n_coop) * nt + top(x, n_interf)] = 1.0;
    s.frontend2[x][top(x, n_interf)] = 1.0;
    for (std::size_t t = 0; t < nt; ++t) {
      s.f1[x][t] = top(x, n_direct) ^ t;
      s.f2[x][t] = top(x, n_direct) ^ t;
    }
    for (std::size_t yf = 0; yf < nf; ++yf)
      s.f3[x][yf] = yf;
  }
  return s;
}

} // namespace capbound
