#pragma once

// Channel-spec and input-distribution files.
//
// Channel spec:
//   {
//     "alphabets": {"x1": 2, "x2": 2, "yf": 2, "t1": 2, "t2": 2,
//                   "y1": 2, "y2": 2, "yf2": 2},      // y1, y2, yf2 optional
//     "frontend1": [[["1", "0"], ["0", "0"]], ...],    // [x1][yf][t1] = P(yf,t1|x1)
//     "frontend2": [["1", "0"], ["0", "1"]],           // [x2][t2]    = P(t2|x2)
//     "f1": [[0, 1], [1, 0]],                          // [x1][t2] -> y1
//     "f2": [[0, 1], [1, 0]],                          // [x2][t1] -> y2
//     "f3": [[0, 1], [0, 1]],                          // [x2][yf] -> yf2
//     "feedback_mode": "generalized"                   // or "output_feedback"
//   }                                                  // (mode optional)
//
// Probabilities are strings holding a decimal ("0.25", "1e-3") or a ratio of
// decimals ("1/3"). Omitted output alphabets default to 1 + the largest
// function value.
//
// Input distribution: {"mass": [["0.25", "0.25"], ["0.25", "0.25"]]}  // [x1][x2]

#include "capbound/isd_channel.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace capbound {

namespace detail {

[[noreturn]] inline void field_error(const std::string &field, const std::string &what) {
  throw Error(ErrorCode::domain, "field '" + field + "': " + what);
}

inline double parse_decimal(const std::string &s, const std::string &field) {
  if (s.empty())
    field_error(field, "empty probability string");
  errno = 0;
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    field_error(field, "'" + s + "' is not a decimal number");
  return v;
}

inline double parse_probability(const nlohmann::json &j, const std::string &field) {
  if (!j.is_string())
    field_error(field, "probabilities must be decimal strings");
  const auto s = j.get<std::string>();
  double v = 0.0;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    double num = parse_decimal(s.substr(0, slash), field);
    double den = parse_decimal(s.substr(slash + 1), field);
    if (den == 0.0)
      field_error(field, "zero denominator");
    v = num / den;
  } else {
    v = parse_decimal(s, field);
  }
  if (!(v >= 0.0 && v <= 1.0))
    field_error(field, "probability " + s + " is outside [0, 1]");
  return v;
}

inline const nlohmann::json &require(const nlohmann::json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    field_error(key, "missing");
  return j.at(key);
}

inline std::size_t parse_size(const nlohmann::json &j, const std::string &field) {
  if (!j.is_number_unsigned())
    field_error(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::vector<std::size_t>> parse_function(const nlohmann::json &j,
                                                            const std::string &field) {
  if (!j.is_array())
    field_error(field, "expected an array of rows");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array())
      field_error(rf, "expected an array");
    auto &row = out.emplace_back();
    for (std::size_t c = 0; c < j[r].size(); ++c)
      row.push_back(parse_size(j[r][c], rf + "[" + std::to_string(c) + "]"));
  }
  return out;
}

inline std::vector<std::vector<double>> parse_prob_rows(const nlohmann::json &j,
                                                        const std::string &field) {
  if (!j.is_array())
    field_error(field, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array())
      field_error(rf, "expected an array");
    auto &row = out.emplace_back();
    for (std::size_t c = 0; c < j[r].size(); ++c)
      row.push_back(parse_probability(j[r][c], rf + "[" + std::to_string(c) + "]"));
  }
  return out;
}

inline std::size_t infer_card(const std::vector<std::vector<std::size_t>> &f) {
  std::size_t m = 0;
  for (const auto &row : f)
    for (std::size_t v : row)
      m = std::max(m, v + 1);
  return std::max<std::size_t>(m, 1);
}

inline std::string probability_string(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

} // namespace detail

/// Parses and validates a channel spec. Shape problems name the offending
/// field; semantic problems (normalization, injectivity) come from validate().
inline IsdChannelSpec channel_spec_from_json(const nlohmann::json &j) {
  using namespace detail;
  IsdChannelSpec s;
  const auto &al = require(j, "alphabets");
  s.alphabets.x1 = parse_size(require(al, "x1"), "alphabets.x1");
  s.alphabets.x2 = parse_size(require(al, "x2"), "alphabets.x2");
  s.alphabets.yf = parse_size(require(al, "yf"), "alphabets.yf");
  s.alphabets.t1 = parse_size(require(al, "t1"), "alphabets.t1");
  s.alphabets.t2 = parse_size(require(al, "t2"), "alphabets.t2");

  const auto &fe1 = require(j, "frontend1");
  if (!fe1.is_array())
    field_error("frontend1", "expected an array indexed [x1][yf][t1]");
  for (std::size_t x1 = 0; x1 < fe1.size(); ++x1) {
    auto rows = parse_prob_rows(fe1[x1], "frontend1[" + std::to_string(x1) + "]");
    if (rows.size() != s.alphabets.yf)
      field_error("frontend1[" + std::to_string(x1) + "]",
                  "expected " + std::to_string(s.alphabets.yf) + " rows (one per yf)");
    auto &flat = s.frontend1.emplace_back();
    for (std::size_t yf = 0; yf < rows.size(); ++yf) {
      if (rows[yf].size() != s.alphabets.t1)
        field_error("frontend1[" + std::to_string(x1) + "][" + std::to_string(yf) + "]",
                    "expected " + std::to_string(s.alphabets.t1) + " entries (one per t1)");
      flat.insert(flat.end(), rows[yf].begin(), rows[yf].end());
    }
  }
  s.frontend2 = parse_prob_rows(require(j, "frontend2"), "frontend2");
  s.f1 = parse_function(require(j, "f1"), "f1");
  s.f2 = parse_function(require(j, "f2"), "f2");
  s.f3 = parse_function(require(j, "f3"), "f3");

  s.alphabets.y1 = al.contains("y1") ? parse_size(al["y1"], "alphabets.y1") : infer_card(s.f1);
  s.alphabets.y2 = al.contains("y2") ? parse_size(al["y2"], "alphabets.y2") : infer_card(s.f2);
  s.alphabets.yf2 =
      al.contains("yf2") ? parse_size(al["yf2"], "alphabets.yf2") : infer_card(s.f3);

  const nlohmann::json mode = j.value("feedback_mode", nlohmann::json("generalized"));
  if (mode == "generalized")
    s.feedback_mode = FeedbackMode::generalized;
  else if (mode == "output_feedback")
    s.feedback_mode = FeedbackMode::output_feedback;
  else
    field_error("feedback_mode", "expected \"generalized\" or \"output_feedback\"");

  if (auto rep = validate(s); !rep.ok())
    throw Error(ErrorCode::domain, "field '" + rep.violation->table +
                                       "': " + rep.violation->message);
  return s;
}

inline nlohmann::ordered_json channel_spec_to_json(const IsdChannelSpec &s) {
  using nlohmann::ordered_json;
  const auto &a = s.alphabets;
  ordered_json j;
  j["alphabets"] = {{"x1", a.x1}, {"x2", a.x2}, {"yf", a.yf},   {"t1", a.t1},
                    {"t2", a.t2}, {"y1", a.y1}, {"y2", a.y2}, {"yf2", a.yf2}};
  ordered_json fe1 = ordered_json::array();
  for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
    ordered_json rows = ordered_json::array();
    for (std::size_t yf = 0; yf < a.yf; ++yf) {
      ordered_json row = ordered_json::array();
      for (std::size_t t1 = 0; t1 < a.t1; ++t1)
        row.push_back(detail::probability_string(s.frontend1_prob(x1, yf, t1)));
      rows.push_back(row);
    }
    fe1.push_back(rows);
  }
  j["frontend1"] = fe1;
  ordered_json fe2 = ordered_json::array();
  for (const auto &r : s.frontend2) {
    ordered_json row = ordered_json::array();
    for (double p : r)
      row.push_back(detail::probability_string(p));
    fe2.push_back(row);
  }
  j["frontend2"] = fe2;
  j["f1"] = s.f1;
  j["f2"] = s.f2;
  j["f3"] = s.f3;
  j["feedback_mode"] = std::string(to_string(s.feedback_mode));
  return j;
}

inline InputDist input_dist_from_json(const nlohmann::json &j) {
  auto rows = detail::parse_prob_rows(detail::require(j, "mass"), "mass");
  return InputDist::from_matrix(rows);
}

inline nlohmann::json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::io, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::domain, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline IsdChannelSpec load_channel_spec(const std::string &path) {
  return channel_spec_from_json(read_json_file(path));
}

} // namespace capbound
