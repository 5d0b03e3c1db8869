#pragma once

// Command-line front end. Exit status: 0 success, 1 domain/IO error (one-line
// diagnostic on stderr), 2 usage error.

#include "capbound/capbound.hpp"
#include "criteria.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace capbound::cli {

struct GainFlags {
  double s1 = 0, s2 = 0, i1 = 0, i2 = 0, c = 0;
  double theta1 = 0, theta2 = 0;
  double noise_corr = 0;

  void add_to(CLI::App *cmd, bool with_noise_corr) {
    cmd->add_option("--s1", s1, "direct-link SNR of pair 1 (linear)")->required();
    cmd->add_option("--s2", s2, "direct-link SNR of pair 2 (linear)")->required();
    cmd->add_option("--i1", i1, "INR of X1 at receiver 2 (linear)")->required();
    cmd->add_option("--i2", i2, "INR of X2 at receiver 1 (linear)")->required();
    cmd->add_option("--c", c, "cooperation-link gain (linear)")->required();
    cmd->add_option("--theta1", theta1, "phase of the X1 interference link (rad)");
    cmd->add_option("--theta2", theta2, "phase of the X2 interference link (rad)");
    if (with_noise_corr)
      cmd->add_option("--noise-corr", noise_corr, "real correlation E[Z2 Zf*]");
  }

  GaussianParams params() const {
    GaussianParams p;
    p.s1 = s1, p.s2 = s2, p.i1 = i1, p.i2 = i2, p.c = c;
    p.theta1 = theta1, p.theta2 = theta2;
    p.noise_corr_2f = noise_corr;
    p.check();
    return p;
  }
};

inline ojson params_json(const GaussianParams &p, bool raw) {
  ojson j;
  j["s1"] = rounded(p.s1, raw);
  j["s2"] = rounded(p.s2, raw);
  j["i1"] = rounded(p.i1, raw);
  j["i2"] = rounded(p.i2, raw);
  j["c"] = rounded(p.c, raw);
  j["theta1"] = rounded(p.theta1, raw);
  j["theta2"] = rounded(p.theta2, raw);
  j["gains_above_one"] = p.gains_above_one();
  return j;
}

struct ChannelFlags {
  std::string spec_path;
  std::string ldc;

  void add_to(CLI::App *cmd) {
    auto *s = cmd->add_option("--spec", spec_path, "channel spec JSON file");
    auto *l = cmd->add_option("--ldc", ldc, "built-in linear deterministic channel n_direct,n_interf,n_coop");
    s->excludes(l);
  }

  IsdChannelSpec load() const {
    if (!spec_path.empty())
      return load_channel_spec(spec_path);
    if (ldc.empty())
      throw Error(ErrorCode::usage, "one of --spec or --ldc is required");
    std::vector<unsigned> levels;
    std::stringstream ss(ldc);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0)
          throw std::invalid_argument(tok);
        levels.push_back(static_cast<unsigned>(v));
      } catch (const std::exception &) {
        throw Error(ErrorCode::usage, "--ldc expects three non-negative integers, got '" + ldc + "'");
      }
    }
    if (levels.size() != 3)
      throw Error(ErrorCode::usage, "--ldc expects three non-negative integers, got '" + ldc + "'");
    return ldc_instance(levels[0], levels[1], levels[2]);
  }
};

inline std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1)
    throw Error(ErrorCode::domain, "grid count must be positive");
  std::vector<double> g;
  for (int i = 0; i < count; ++i)
    g.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return g;
}

inline std::string dump(const ojson &j) { return j.dump(2) + "\n"; }

/// Parses argv and runs one subcommand; never throws.
inline int run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
  CLI::App app{"Outer bounds for the interference channel with unilateral source cooperation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format; // json by default, csv for gdof-map
  bool raw = false;
  std::uint64_t seed = 42;
  app.add_option("-o,--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "json or csv (default: csv for gdof-map, else json)")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--raw", raw, "full-precision numbers instead of 6 decimals");
  app.add_option("--seed", seed, "seed for randomized procedures");

  // bounds
  GainFlags bounds_gains;
  auto *bounds = app.add_subcommand("bounds", "closed-form Gaussian bounds and rate polytope");
  bounds_gains.add_to(bounds, false);

  // rho-sweep
  GainFlags sweep_gains;
  RhoGrid grid;
  bool no_refine = false;
  std::optional<double> rho_mag, rho_phase;
  auto *sweep = app.add_subcommand("rho-sweep", "per-rho Gaussian bounds and their maxima");
  sweep_gains.add_to(sweep, true);
  sweep->add_option("--mag-steps", grid.magnitude_steps, "grid points in |rho|");
  sweep->add_option("--phase-steps", grid.phase_steps, "grid points in arg rho");
  sweep->add_flag("--no-refine", no_refine, "skip the golden-section refinement");
  sweep->add_option("--rho-mag", rho_mag, "evaluate only at this |rho|");
  sweep->add_option("--rho-phase", rho_phase, "phase for --rho-mag (rad)");

  // gdof
  GdofParams gp;
  auto *gdof = app.add_subcommand("gdof", "symmetric gDoF region and active bounds");
  gdof->add_option("--alpha", gp.alpha, "interference exponent")->required();
  gdof->add_option("--beta", gp.beta, "cooperation exponent")->required();

  // gdof-map
  double a_min = 0.01, a_max = 0.99, b_min = 0.01, b_max = 0.99;
  int a_count = 99, b_count = 99;
  std::string summary_path;
  auto *gmap = app.add_subcommand("gdof-map", "regime map over an (alpha, beta) grid");
  gmap->add_option("--alpha-min", a_min);
  gmap->add_option("--alpha-max", a_max);
  gmap->add_option("--alpha-count", a_count);
  gmap->add_option("--beta-min", b_min);
  gmap->add_option("--beta-max", b_max);
  gmap->add_option("--beta-count", b_count);
  gmap->add_option("--summary", summary_path, "also write the JSON label summary here");

  // isd-eval
  ChannelFlags eval_ch;
  std::string inputs = "uniform";
  bool with_terms = false;
  auto *isd_eval = app.add_subcommand("isd-eval", "evaluate all bounds on a finite channel");
  eval_ch.add_to(isd_eval);
  isd_eval->add_option("--inputs", inputs, "'uniform' or an input-distribution JSON file");
  isd_eval->add_flag("--terms", with_terms, "include the entropy-term breakdown");

  // isd-opt
  ChannelFlags opt_ch;
  std::string bound_name;
  std::size_t budget = 2000;
  auto *isd_opt = app.add_subcommand("isd-opt", "maximize one bound over input distributions");
  opt_ch.add_to(isd_opt);
  isd_opt->add_option("--bound", bound_name, "bound id")->required();
  isd_opt->add_option("--budget", budget, "objective evaluations");

  // verify
  auto *verify = app.add_subcommand("verify", "run the oracle, dominance and slope suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (*bounds) {
      auto p = bounds_gains.params();
      auto bs = closed_form_bounds(p);
      auto hs = rate_constraints(bs);
      if (format == "csv") {
        text = vertices_csv(hs, raw);
      } else {
        ojson j;
        j["command"] = "bounds";
        j["params"] = params_json(p, raw);
        j["bounds"] = bound_set_json(bs, raw)["bounds"];
        j["polytope"] = polytope_json(hs, raw);
        text = dump(j);
      }
    } else if (*sweep) {
      auto p = sweep_gains.params();
      grid.refine = !no_refine;
      if (rho_mag) {
        auto rho = InputCorrelation::polar(*rho_mag, rho_phase.value_or(0.0));
        auto bs = eval_bounds_at_rho(p, rho);
        ojson j;
        j["command"] = "rho-sweep";
        j["params"] = params_json(p, raw);
        j["rho"] = {{"magnitude", rounded(*rho_mag, raw)},
                    {"phase", rounded(rho_phase.value_or(0.0), raw)}};
        j["bounds"] = bound_set_json(bs, raw, true)["bounds"];
        text = dump(j);
      } else {
        if (grid.magnitude_steps < 2 || grid.phase_steps < 1)
          throw Error(ErrorCode::domain, "--mag-steps must be >= 2 and --phase-steps >= 1");
        if (format == "csv") {
          text = "magnitude,phase";
          for (BoundId id : kGaussianBounds)
            text += "," + std::string(to_string(id));
          text += "\n";
          for (int k = 0; k < grid.magnitude_steps; ++k)
            for (int jph = 0; jph < (k == 0 ? 1 : grid.phase_steps); ++jph) {
              double mag = static_cast<double>(k) / (grid.magnitude_steps - 1);
              double ph = 2 * std::numbers::pi * jph / grid.phase_steps;
              auto bs = eval_bounds_at_rho(p, InputCorrelation::polar(mag, ph));
              text += fixed6(mag) + "," + fixed6(ph);
              for (BoundId id : kGaussianBounds)
                text += "," + fixed6(bs.value(id));
              text += "\n";
            }
        } else {
          auto bs = max_over_rho(p, grid);
          ojson j;
          j["command"] = "rho-sweep";
          j["params"] = params_json(p, raw);
          j["grid"] = {{"magnitude_steps", grid.magnitude_steps},
                       {"phase_steps", grid.phase_steps},
                       {"refine", grid.refine}};
          j["bounds"] = bound_set_json(bs, raw)["bounds"];
          j["polytope"] = polytope_json(rate_constraints(bs), raw);
          text = dump(j);
        }
      }
    } else if (*gdof) {
      auto rep = active_constraints(gp);
      auto hs = gdof_region(gp);
      if (format == "csv") {
        text = vertices_csv(hs, raw);
      } else {
        ojson j;
        j["command"] = "gdof";
        j["alpha"] = rounded(gp.alpha, raw);
        j["beta"] = rounded(gp.beta, raw);
        j["label"] = std::string(to_string(rep.label));
        j["predicted_label"] = std::string(to_string(rep.predicted));
        j["classical"] = classical_flag(gp);
        j["classical_region_equal"] = region_equal(hs, classical_ic_gdof(gp.alpha));
        j["region"] = polytope_json(hs, raw);
        text = dump(j);
      }
    } else if (*gmap) {
      auto rows = regime_map(linear_grid(a_min, a_max, a_count), linear_grid(b_min, b_max, b_count));
      if (!summary_path.empty())
        write_output(summary_path, dump(regime_summary_json(rows)));
      if (format == "json") {
        ojson j;
        j["command"] = "gdof-map";
        j["summary"] = regime_summary_json(rows);
        ojson arr = ojson::array();
        for (const auto &r : rows)
          arr.push_back({{"alpha", rounded(r.alpha, raw)},
                         {"beta", rounded(r.beta, raw)},
                         {"label", std::string(to_string(r.label))},
                         {"classical", r.classical},
                         {"active_ids", r.active_ids}});
        j["rows"] = arr;
        text = dump(j);
      } else {
        text = regime_csv(rows);
      }
    } else if (*isd_eval) {
      auto spec = eval_ch.load();
      auto p = inputs == "uniform" ? InputDist::uniform(spec.alphabets.x1, spec.alphabets.x2)
                                   : input_dist_from_json(read_json_file(inputs));
      auto bs = eval_bounds(spec, p);
      auto hs = rate_constraints(bs);
      if (format == "csv") {
        text = vertices_csv(hs, raw);
      } else {
        ojson j;
        j["command"] = "isd-eval";
        j["feedback_mode"] = std::string(to_string(spec.feedback_mode));
        auto b = bound_set_json(bs, raw, with_terms);
        j["bounds"] = b["bounds"];
        if (b.contains("notes"))
          j["notes"] = b["notes"];
        j["polytope"] = polytope_json(hs, raw);
        text = dump(j);
      }
    } else if (*isd_opt) {
      auto spec = opt_ch.load();
      auto id = parse_bound_id(bound_name);
      MaximizeOptions mo;
      mo.seed = seed;
      auto res = maximize_bound(spec, id, budget, mo);
      ojson mass = ojson::array();
      for (const auto &row : res.input.matrix()) {
        ojson r = ojson::array();
        for (double v : row)
          r.push_back(rounded(v, raw));
        mass.push_back(r);
      }
      ojson j;
      j["command"] = "isd-opt";
      j["bound"] = bound_name;
      j["value"] = rounded(res.bits, raw);
      j["evaluations"] = res.evaluations;
      j["seed"] = seed;
      j["input"] = {{"mass", mass}};
      text = dump(j);
    } else if (*verify) {
      auto results = acceptance::run_all();
      text = acceptance::render(results);
      bool all = std::all_of(results.begin(), results.end(),
                             [](const auto &r) { return r.pass; });
      text += all ? "ALL PASS\n" : "FAILURES\n";
      write_output(out_path, text, out);
      return all ? 0 : 1;
    }
    write_output(out_path, text, out);
    return 0;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::usage ? 2 : 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace capbound::cli
