#pragma once

// The nine outer-bound expressions shared by the finite-alphabet and Gaussian
// engines, written once as signed sums of conditional entropies
// H(of | given). Each engine supplies the entropy evaluator.

#include "capbound/common.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capbound {

/// Channel signals. Yf is the noisy observation of X1 at transmitter 2; the
/// generalized feedback output YF2 = f3(X2, Yf) is replaced by Yf wherever it
/// appears conditioned on X2.
enum class Signal { X1, X2, Yf, T1, T2, Y1, Y2 };

inline constexpr std::array<Signal, 7> kAllSignals = {Signal::X1, Signal::X2, Signal::Yf,
                                                      Signal::T1, Signal::T2, Signal::Y1,
                                                      Signal::Y2};

inline std::string_view to_string(Signal s) {
  switch (s) {
  case Signal::X1: return "X1";
  case Signal::X2: return "X2";
  case Signal::Yf: return "Yf";
  case Signal::T1: return "T1";
  case Signal::T2: return "T2";
  case Signal::Y1: return "Y1";
  case Signal::Y2: return "Y2";
  }
  return "?";
}

enum class BoundId {
  cutset_r1_coop,
  cutset_r1,
  cutset_r2,
  sum_tuni1,
  sum_tuni2,
  sum_pv,
  two_r1_plus_r2,
  r1_plus_two_r2,
  fb_r1_plus_two_r2,
};

inline constexpr std::size_t kBoundCount = 9;

inline constexpr std::array<BoundId, kBoundCount> kAllBounds = {
    BoundId::cutset_r1_coop, BoundId::cutset_r1,      BoundId::cutset_r2,
    BoundId::sum_tuni1,      BoundId::sum_tuni2,      BoundId::sum_pv,
    BoundId::two_r1_plus_r2, BoundId::r1_plus_two_r2, BoundId::fb_r1_plus_two_r2};

inline std::string_view to_string(BoundId id) {
  switch (id) {
  case BoundId::cutset_r1_coop: return "cutset_r1_coop";
  case BoundId::cutset_r1: return "cutset_r1";
  case BoundId::cutset_r2: return "cutset_r2";
  case BoundId::sum_tuni1: return "sum_tuni1";
  case BoundId::sum_tuni2: return "sum_tuni2";
  case BoundId::sum_pv: return "sum_pv";
  case BoundId::two_r1_plus_r2: return "two_r1_plus_r2";
  case BoundId::r1_plus_two_r2: return "r1_plus_two_r2";
  case BoundId::fb_r1_plus_two_r2: return "fb_r1_plus_two_r2";
  }
  return "?";
}

inline BoundId parse_bound_id(std::string_view s) {
  for (BoundId id : kAllBounds)
    if (to_string(id) == s)
      return id;
  throw Error(ErrorCode::domain, "unknown bound id '" + std::string(s) + "'");
}

/// Rate-pair weights (a1, a2) of the bound a1*R1 + a2*R2 <= value.
struct RateWeights {
  int r1;
  int r2;
};

inline RateWeights weights(BoundId id) {
  switch (id) {
  case BoundId::cutset_r1_coop:
  case BoundId::cutset_r1: return {1, 0};
  case BoundId::cutset_r2: return {0, 1};
  case BoundId::sum_tuni1:
  case BoundId::sum_tuni2:
  case BoundId::sum_pv: return {1, 1};
  case BoundId::two_r1_plus_r2: return {2, 1};
  case BoundId::r1_plus_two_r2:
  case BoundId::fb_r1_plus_two_r2: return {1, 2};
  }
  return {0, 0};
}

/// Equation tag of the bound in the usual numbering of this bound family
/// (1a..1e cut-set and sum-rate, 2 sum-rate, 3 feedback, 4/5 new bounds).
inline std::string_view equation_tag(BoundId id) {
  switch (id) {
  case BoundId::cutset_r1_coop: return "1a";
  case BoundId::cutset_r1: return "1b";
  case BoundId::cutset_r2: return "1c";
  case BoundId::sum_tuni1: return "1d";
  case BoundId::sum_tuni2: return "1e";
  case BoundId::sum_pv: return "2";
  case BoundId::two_r1_plus_r2: return "4";
  case BoundId::r1_plus_two_r2: return "5";
  case BoundId::fb_r1_plus_two_r2: return "3";
  }
  return "?";
}

/// One signed term +/- H(of | given).
struct TermSpec {
  int sign;
  std::vector<Signal> of;
  std::vector<Signal> given;
};

inline std::string term_label(const TermSpec &t) {
  std::string s = "H(";
  for (std::size_t i = 0; i < t.of.size(); ++i)
    s += (i ? "," : "") + std::string(to_string(t.of[i]));
  if (!t.given.empty()) {
    s += "|";
    for (std::size_t i = 0; i < t.given.size(); ++i)
      s += (i ? "," : "") + std::string(to_string(t.given[i]));
  }
  return s + ")";
}

/// Entropy terms of each bound. Mutual informations are expanded on the
/// output side, I(X;Y|Z) = H(Y|Z) - H(Y|X,Z), so that every term conditions
/// a noisy observation; this keeps Gaussian terms finite when the inputs are
/// fully correlated.
inline std::vector<TermSpec> bound_terms(BoundId id) {
  using S = Signal;
  switch (id) {
  case BoundId::cutset_r1_coop: // I(X1; Y1, Yf | X2)
    return {{+1, {S::Y1, S::Yf}, {S::X2}}, {-1, {S::Y1, S::Yf}, {S::X1, S::X2}}};
  case BoundId::cutset_r1: // I(X1, X2; Y1)
    return {{+1, {S::Y1}, {}}, {-1, {S::Y1}, {S::X1, S::X2}}};
  case BoundId::cutset_r2: // I(X2; Y2 | X1)
    return {{+1, {S::Y2}, {S::X1}}, {-1, {S::Y2}, {S::X1, S::X2}}};
  case BoundId::sum_tuni1: // I(X1; Y1, Yf | Y2, X2) + I(X1, X2; Y2)
    return {{+1, {S::Y1, S::Yf}, {S::Y2, S::X2}},
            {-1, {S::Y1, S::Yf}, {S::X1, S::Y2, S::X2}},
            {+1, {S::Y2}, {}},
            {-1, {S::Y2}, {S::X1, S::X2}}};
  case BoundId::sum_tuni2: // I(X2; Y2 | Y1, X1) + I(X1, X2; Y1)
    return {{+1, {S::Y2}, {S::Y1, S::X1}},
            {-1, {S::Y2}, {S::X2, S::Y1, S::X1}},
            {+1, {S::Y1}, {}},
            {-1, {S::Y1}, {S::X1, S::X2}}};
  case BoundId::sum_pv:
    return {{+1, {S::Y1}, {S::T1, S::Yf}},
            {-1, {S::Y1}, {S::T1, S::Yf, S::X1, S::X2}},
            {+1, {S::Y2}, {S::T2, S::Yf}},
            {-1, {S::Y2}, {S::T2, S::Yf, S::X1, S::X2}},
            {+1, {S::Yf}, {S::T2}},
            {-1, {S::Yf}, {S::X1, S::X2, S::T2}}};
  case BoundId::two_r1_plus_r2:
    return {{+1, {S::Y1}, {}},
            {-1, {S::Y1}, {S::X1, S::X2}},
            {+1, {S::Y1}, {S::T1, S::Yf, S::X2}},
            {-1, {S::Y1}, {S::T1, S::Yf, S::X1, S::X2}},
            {+1, {S::Y2}, {S::T2, S::Yf}},
            {-1, {S::Y2}, {S::T2, S::Yf, S::X1, S::X2}},
            {+1, {S::Yf}, {S::T2}},
            {-1, {S::Yf}, {S::X1, S::X2, S::T2}}};
  case BoundId::r1_plus_two_r2:
    return {{+1, {S::Y2}, {}},
            {-1, {S::Y2}, {S::X1, S::X2}},
            {+1, {S::Y2}, {S::T2, S::Yf, S::X1}},
            {-1, {S::Y2}, {S::T2, S::Yf, S::X1, S::X2}},
            {+1, {S::Y1, S::Yf}, {S::T1}},
            {-1, {S::Y1, S::Yf}, {S::X1, S::X2, S::T1}}};
  case BoundId::fb_r1_plus_two_r2:
    return {{+1, {S::Y2}, {}},
            {-1, {S::Y2}, {S::X1, S::X2}},
            {+1, {S::Y2}, {S::Y1, S::X1}},
            {-1, {S::Y2}, {S::Y1, S::X1, S::X2}},
            {+1, {S::Y1}, {S::T1}},
            {-1, {S::Y1}, {S::T1, S::X1, S::X2}}};
  }
  return {};
}

struct EvaluatedTerm {
  TermSpec spec;
  double bits;
};

/// Value of one bound: present with its term breakdown, or absent with a
/// reason code. `argmax_rho` is filled by correlation maximization.
struct BoundValue {
  std::optional<double> bits;
  std::string reason;
  std::vector<EvaluatedTerm> terms;
  std::optional<std::complex<double>> argmax_rho;
};

namespace reason {
inline constexpr std::string_view requires_output_feedback = "requires_output_feedback";
inline constexpr std::string_view requires_gains_above_one = "requires_gains_above_one";
inline constexpr std::string_view not_evaluated = "not_evaluated";
} // namespace reason

class BoundSet {
public:
  BoundSet() {
    for (auto &e : entries_)
      e.reason = reason::not_evaluated;
  }

  const BoundValue &operator[](BoundId id) const { return entries_[static_cast<std::size_t>(id)]; }
  BoundValue &operator[](BoundId id) { return entries_[static_cast<std::size_t>(id)]; }

  bool has(BoundId id) const { return (*this)[id].bits.has_value(); }

  /// Throws not_applicable with the recorded reason when absent.
  double value(BoundId id) const {
    const auto &e = (*this)[id];
    if (!e.bits)
      throw Error(ErrorCode::not_applicable,
                  std::string(to_string(id)) + " is absent: " + e.reason);
    return *e.bits;
  }

  void set_absent(BoundId id, std::string_view why) {
    auto &e = (*this)[id];
    e.bits.reset();
    e.terms.clear();
    e.reason = std::string(why);
  }

  std::vector<std::string> notes;

private:
  std::array<BoundValue, kBoundCount> entries_;
};

/// Evaluates the terms of `id` with `cond_entropy(of, given)` and stores the
/// signed sum. Round-off below `floor_tol` is clipped to zero.
template <class CondEntropy>
BoundValue evaluate_terms(BoundId id, CondEntropy &&cond_entropy, double floor_tol = 1e-12) {
  BoundValue v;
  double sum = 0.0;
  for (auto &t : bound_terms(id)) {
    double h = cond_entropy(t.of, t.given);
    sum += t.sign * h;
    v.terms.push_back({std::move(t), h});
  }
  if (sum < 0.0 && sum > -floor_tol)
    sum = 0.0;
  v.bits = sum;
  return v;
}

} // namespace capbound
