#pragma once

// Exact information measures over finite-alphabet joint distributions.
//
// A ProbTable holds a joint pmf over an ordered list of named variables, each
// with a finite alphabet {0, ..., card-1}. Only atoms with positive mass are
// stored; they are keyed by the row-major ordinal of the full symbol tuple
// (first variable most significant), so every enumeration is deterministic.
// All measures are in bits.

#include "capbound/common.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace capbound {

/// A list of distinct variable names. May be empty where an operation allows
/// it (the conditioning side of H(a|b) or I(a;b|given)).
class VarSet {
public:
  VarSet() = default;
  VarSet(std::initializer_list<std::string_view> names)
      : VarSet(std::vector<std::string>(names.begin(), names.end())) {}
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw Error(ErrorCode::domain, "duplicate variable '" + names_[i] + "' in variable set");
  }

  const std::vector<std::string> &names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  bool contains(std::string_view n) const {
    return std::find(names_.begin(), names_.end(), n) != names_.end();
  }
  bool disjoint(const VarSet &o) const {
    return std::none_of(names_.begin(), names_.end(),
                        [&](const std::string &n) { return o.contains(n); });
  }
  VarSet unite(const VarSet &o) const {
    std::vector<std::string> all = names_;
    for (const auto &n : o.names_)
      if (!contains(n))
        all.push_back(n);
    return VarSet(std::move(all));
  }

private:
  std::vector<std::string> names_;
};

class ProbTable {
public:
  using Key = std::uint64_t;
  using Tuple = std::vector<std::size_t>;

  static constexpr double kExactTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-9;

  /// Builds a table from explicit (tuple, mass) entries. Tuples absent from
  /// `entries` have mass zero.
  ProbTable(std::vector<std::string> variables, std::vector<std::size_t> cardinalities,
            const std::vector<std::pair<Tuple, double>> &entries)
      : variables_(std::move(variables)), cards_(std::move(cardinalities)) {
    init_layout();
    std::vector<std::pair<Key, double>> raw;
    raw.reserve(entries.size());
    for (const auto &[tuple, m] : entries)
      raw.emplace_back(encode(tuple), m);
    finish(std::move(raw));
  }

  /// Builds a table from a dense row-major mass vector of the full tuple space.
  static ProbTable from_dense(std::vector<std::string> variables,
                              std::vector<std::size_t> cardinalities,
                              std::span<const double> dense) {
    ProbTable t(std::move(variables), std::move(cardinalities));
    if (dense.size() != t.space_size_)
      throw Error(ErrorCode::domain, "dense mass vector has " + std::to_string(dense.size()) +
                                         " entries, expected " + std::to_string(t.space_size_));
    std::vector<std::pair<Key, double>> raw;
    for (Key k = 0; k < dense.size(); ++k)
      raw.emplace_back(k, dense[k]);
    t.finish(std::move(raw));
    return t;
  }

  const std::vector<std::string> &variables() const { return variables_; }
  const std::vector<std::size_t> &cardinalities() const { return cards_; }
  std::size_t arity() const { return variables_.size(); }
  std::uint64_t space_size() const { return space_size_; }

  /// Positive-mass atoms, sorted by key.
  const std::vector<std::pair<Key, double>> &atoms() const { return atoms_; }

  std::size_t index_of(std::string_view name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end())
      throw Error(ErrorCode::domain, "unknown variable '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - variables_.begin());
  }

  std::size_t cardinality(std::string_view name) const { return cards_[index_of(name)]; }

  Key encode(std::span<const std::size_t> tuple) const {
    if (tuple.size() != arity())
      throw Error(ErrorCode::domain, "tuple arity " + std::to_string(tuple.size()) +
                                         " does not match variable count " +
                                         std::to_string(arity()));
    Key k = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (tuple[i] >= cards_[i])
        throw Error(ErrorCode::domain, "symbol " + std::to_string(tuple[i]) +
                                           " outside the alphabet of '" + variables_[i] + "'");
      k = k * cards_[i] + tuple[i];
    }
    return k;
  }

  Tuple decode(Key key) const {
    Tuple t(arity());
    for (std::size_t i = arity(); i-- > 0;) {
      t[i] = static_cast<std::size_t>(key % cards_[i]);
      key /= cards_[i];
    }
    return t;
  }

  double mass(std::span<const std::size_t> tuple) const {
    Key k = encode(tuple);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), k,
                               [](const auto &a, Key v) { return a.first < v; });
    return (it != atoms_.end() && it->first == k) ? it->second : 0.0;
  }

  double total_mass() const {
    double s = 0.0;
    for (const auto &a : atoms_)
      s += a.second;
    return s;
  }

private:
  ProbTable(std::vector<std::string> variables, std::vector<std::size_t> cardinalities)
      : variables_(std::move(variables)), cards_(std::move(cardinalities)) {
    init_layout();
  }

  friend ProbTable marginalize(const ProbTable &, const VarSet &);

  void init_layout() {
    if (variables_.empty())
      throw Error(ErrorCode::domain, "a probability table needs at least one variable");
    if (variables_.size() != cards_.size())
      throw Error(ErrorCode::domain, "variable and alphabet lists differ in length");
    (void)VarSet(variables_);
    space_size_ = 1;
    for (std::size_t i = 0; i < cards_.size(); ++i) {
      if (cards_[i] == 0)
        throw Error(ErrorCode::domain, "empty alphabet for '" + variables_[i] + "'");
      if (space_size_ > std::numeric_limits<Key>::max() / cards_[i])
        throw Error(ErrorCode::size_guard, "tuple space does not fit a 64-bit key");
      space_size_ *= cards_[i];
    }
  }

  // Sorts, rejects duplicates and negatives, drops zeros, checks normalization.
  void finish(std::vector<std::pair<Key, double>> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    double total = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (i > 0 && raw[i].first == raw[i - 1].first)
        throw Error(ErrorCode::domain, "duplicate tuple in probability table");
      if (!std::isfinite(raw[i].second) || raw[i].second < 0.0)
        throw Error(ErrorCode::domain, "probability mass must be finite and non-negative");
      total += raw[i].second;
    }
    double err = std::abs(total - 1.0);
    if (err > kRenormalizeTolerance)
      throw Error(ErrorCode::domain,
                  "probability masses sum to " + std::to_string(total) + ", not 1");
    atoms_.clear();
    for (const auto &a : raw)
      if (a.second > 0.0)
        atoms_.emplace_back(a.first, err > kExactTolerance ? a.second / total : a.second);
  }

  std::vector<std::string> variables_;
  std::vector<std::size_t> cards_;
  std::uint64_t space_size_ = 1;
  std::vector<std::pair<Key, double>> atoms_;
};

/// Marginal over `keep`, with variables in the order given by `keep`.
inline ProbTable marginalize(const ProbTable &joint, const VarSet &keep) {
  if (keep.empty())
    throw Error(ErrorCode::domain, "cannot marginalize onto an empty variable set");
  std::vector<std::size_t> pos;
  std::vector<std::size_t> cards;
  for (const auto &n : keep.names()) {
    pos.push_back(joint.index_of(n));
    cards.push_back(joint.cardinalities()[pos.back()]);
  }
  ProbTable out(keep.names(), cards);

  std::vector<std::pair<ProbTable::Key, double>> mapped;
  mapped.reserve(joint.atoms().size());
  for (const auto &[key, m] : joint.atoms()) {
    auto full = joint.decode(key);
    ProbTable::Key k = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
      k = k * cards[i] + full[pos[i]];
    mapped.emplace_back(k, m);
  }
  std::stable_sort(mapped.begin(), mapped.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  std::vector<std::pair<ProbTable::Key, double>> merged;
  for (const auto &a : mapped) {
    if (!merged.empty() && merged.back().first == a.first)
      merged.back().second += a.second;
    else
      merged.push_back(a);
  }
  out.atoms_ = std::move(merged);
  return out;
}

/// H(vars) in bits.
inline double entropy(const ProbTable &joint, const VarSet &vars) {
  if (vars.empty())
    throw Error(ErrorCode::domain, "entropy of an empty variable set");
  double h = 0.0;
  const ProbTable m = marginalize(joint, vars);
  for (const auto &a : m.atoms())
    h -= plogp(a.second);
  return h > 0.0 ? h : 0.0;
}

/// H(a | b) = H(a, b) - H(b); b may be empty.
inline double conditional_entropy(const ProbTable &joint, const VarSet &a, const VarSet &b) {
  if (!a.disjoint(b))
    throw Error(ErrorCode::domain, "conditional entropy needs disjoint variable sets");
  if (b.empty())
    return entropy(joint, a);
  double h = entropy(joint, a.unite(b)) - entropy(joint, b);
  return h > 0.0 ? h : 0.0;
}

/// I(a; b | given) = H(a | given) - H(a | b, given).
inline double mutual_information(const ProbTable &joint, const VarSet &a, const VarSet &b,
                                 const VarSet &given = {}) {
  if (!a.disjoint(b) || !a.disjoint(given) || !b.disjoint(given))
    throw Error(ErrorCode::domain, "mutual information needs pairwise disjoint variable sets");
  if (a.empty() || b.empty())
    throw Error(ErrorCode::domain, "mutual information needs non-empty variable sets");
  return conditional_entropy(joint, a, given) - conditional_entropy(joint, a, b.unite(given));
}

} // namespace capbound
