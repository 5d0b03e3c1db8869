#pragma once

// Serialization of results: JSON with a fixed key order and CSV tables.
// Values are rounded to 6 decimals unless `raw` is set; the same inputs always
// produce the same bytes.

#include "capbound/bounds.hpp"
#include "capbound/gdof.hpp"
#include "capbound/region.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <unistd.h>

namespace capbound {

using ojson = nlohmann::ordered_json;

inline double rounded(double v, bool raw) {
  if (raw)
    return v;
  double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

/// Rate-region constraints a1 R1 + a2 R2 <= value for every present bound.
inline HalfspaceSet rate_constraints(const BoundSet &bs) {
  HalfspaceSet hs;
  for (BoundId id : kAllBounds) {
    if (!bs.has(id))
      continue;
    auto w = weights(id);
    hs.constraints.push_back({static_cast<double>(w.r1), static_cast<double>(w.r2),
                              bs.value(id), std::string(to_string(id))});
  }
  return hs;
}

inline ojson bound_set_json(const BoundSet &bs, bool raw, bool with_terms = false) {
  ojson arr = ojson::array();
  for (BoundId id : kAllBounds) {
    const auto &e = bs[id];
    auto w = weights(id);
    ojson j;
    j["id"] = std::string(to_string(id));
    j["equation"] = std::string(equation_tag(id));
    j["weights"] = {w.r1, w.r2};
    if (e.bits) {
      j["value"] = rounded(*e.bits, raw);
    } else {
      j["value"] = nullptr;
      j["reason"] = e.reason;
    }
    if (e.argmax_rho)
      j["argmax_rho"] = {{"magnitude", rounded(std::abs(*e.argmax_rho), raw)},
                         {"phase", rounded(std::arg(*e.argmax_rho) < 0
                                               ? std::arg(*e.argmax_rho) + 2 * std::numbers::pi
                                               : std::arg(*e.argmax_rho),
                                           raw)}};
    if (with_terms && !e.terms.empty()) {
      ojson terms = ojson::array();
      for (const auto &t : e.terms)
        terms.push_back({{"sign", t.spec.sign},
                         {"term", term_label(t.spec)},
                         {"bits", rounded(t.bits, raw)}});
      j["terms"] = terms;
    }
    arr.push_back(j);
  }
  ojson out;
  out["bounds"] = arr;
  if (!bs.notes.empty())
    out["notes"] = bs.notes;
  return out;
}

inline ojson point_json(const Point2 &p, bool raw) {
  return ojson::array({rounded(p.r1, raw), rounded(p.r2, raw)});
}

/// {constraints, vertices, active_ids, touching, area}
inline ojson polytope_json(const HalfspaceSet &hs, bool raw) {
  ojson cons = ojson::array();
  for (const auto &h : hs.constraints)
    cons.push_back({{"label", h.label},
                    {"a1", rounded(h.a1, raw)},
                    {"a2", rounded(h.a2, raw)},
                    {"b", rounded(h.b, raw)}});
  auto poly = vertex_polygon(hs);
  auto red = redundant_constraints(hs);
  ojson verts = ojson::array();
  for (const auto &v : poly.vertices)
    verts.push_back(point_json(v, raw));
  ojson touching = ojson::array();
  for (const auto &t : red.touching)
    touching.push_back({{"id", t.index}, {"at", point_json(t.at, raw)}});
  ojson j;
  j["constraints"] = cons;
  j["vertices"] = verts;
  j["active_ids"] = red.active;
  j["touching"] = touching;
  j["area"] = rounded(polygon_area(poly.vertices), raw);
  return j;
}

inline std::string vertices_csv(const HalfspaceSet &hs, bool raw) {
  std::string out = "R1,R2\n";
  for (const auto &v : vertex_polygon(hs).vertices) {
    if (raw) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.r1, v.r2);
      out += buf;
    } else {
      out += fixed6(v.r1) + "," + fixed6(v.r2) + "\n";
    }
  }
  return out;
}

inline std::string join_ids(const std::vector<std::size_t> &ids, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i)
    s += (i ? std::string(1, sep) : std::string()) + std::to_string(ids[i]);
  return s;
}

inline std::string regime_csv(const std::vector<RegimeRow> &rows) {
  std::string out = "alpha,beta,label,classical,active_ids\n";
  for (const auto &r : rows)
    out += fixed6(r.alpha) + "," + fixed6(r.beta) + "," + std::string(to_string(r.label)) + "," +
           (r.classical ? "true" : "false") + "," + join_ids(r.active_ids) + "\n";
  return out;
}

inline ojson regime_summary_json(const std::vector<RegimeRow> &rows) {
  ojson counts;
  for (const auto &[label, n] : label_counts(rows))
    counts[label] = n;
  std::size_t disagree = 0, classical_mismatch = 0;
  for (const auto &r : rows) {
    if (r.label == RegimeLabel::out_of_scope)
      continue;
    disagree += r.label != r.predicted;
    if (r.classical && r.classical_region_equal && !*r.classical_region_equal)
      ++classical_mismatch;
  }
  ojson j;
  j["points"] = rows.size();
  j["counts"] = counts;
  j["predicate_disagreements"] = disagree;
  j["classical_region_mismatches"] = classical_mismatch;
  return j;
}

/// Writes `content` to `path` through a temporary file and a rename; "-" or
/// an empty path writes to `fallback`.
inline void write_output(const std::string &path, const std::string &content,
                         std::ostream &fallback = std::cout) {
  if (path.empty() || path == "-") {
    fallback << content;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::io, "cannot write output '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::io, "cannot write output '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::io, "cannot write output '" + path + "'");
  }
}

} // namespace capbound
