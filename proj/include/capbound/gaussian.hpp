#pragma once

// Complex Gaussian interference channel with unilateral source cooperation:
//
//   T1 = sqrt(I1) e^{j theta1} X1 + Z2        T2 = sqrt(I2) e^{j theta2} X2 + Z1
//   Y1 = sqrt(S1) X1 + T2                     Y2 = T1 + sqrt(S2) X2
//   Yf = sqrt(C) X1 + Zf
//
// with unit-power inputs, E[X1 X2^*] = rho and unit-variance circularly
// symmetric noises. Z1 is independent of (Z2, Zf); E[Z2 Zf^*] defaults to 0.

#include "capbound/bounds.hpp"
#include "capbound/common.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace capbound {

using cplx = std::complex<double>;

struct GaussianParams {
  double s1 = 1.0, s2 = 1.0; // direct-link SNRs
  double i1 = 1.0, i2 = 1.0; // interference-link INRs
  double c = 1.0;            // cooperation-link gain
  double theta1 = 0.0, theta2 = 0.0;
  cplx noise_corr_2f = 0.0; // E[Z2 Zf^*]

  void check() const {
    for (double g : {s1, s2, i1, i2, c})
      if (!std::isfinite(g) || g < 0.0)
        throw Error(ErrorCode::domain, "channel gains must be finite and non-negative");
    if (!std::isfinite(theta1) || !std::isfinite(theta2))
      throw Error(ErrorCode::domain, "interference phases must be finite");
    if (std::abs(noise_corr_2f) > 1.0)
      throw Error(ErrorCode::domain, "noise correlation magnitude exceeds 1");
  }

  bool gains_above_one() const { return std::min({s1, s2, i1, i2, c}) > 1.0; }
};

/// E[X1 X2^*].
struct InputCorrelation {
  cplx rho = 0.0;

  InputCorrelation() = default;
  InputCorrelation(cplx r) : rho(r) { // NOLINT: implicit from a complex value
    if (!(std::abs(r) <= 1.0 + 1e-15))
      throw Error(ErrorCode::domain, "input correlation must satisfy |rho| <= 1");
  }
  static InputCorrelation polar(double magnitude, double phase) {
    return InputCorrelation(std::polar(magnitude, phase));
  }
};

/// Covariance of (X1, X2, T1, T2, Y1, Y2, Yf), in that order.
struct JointCovariance {
  using Matrix = Eigen::Matrix<cplx, 7, 7>;
  Matrix k;

  static std::size_t index(Signal s) {
    switch (s) {
    case Signal::X1: return 0;
    case Signal::X2: return 1;
    case Signal::T1: return 2;
    case Signal::T2: return 3;
    case Signal::Y1: return 4;
    case Signal::Y2: return 5;
    case Signal::Yf: return 6;
    }
    return 0;
  }
  cplx operator()(Signal a, Signal b) const { return k(index(a), index(b)); }
};

inline JointCovariance covariance(const GaussianParams &p, const InputCorrelation &rho) {
  p.check();
  // Sources: X1, X2, Z1, Z2, Zf.
  Eigen::Matrix<cplx, 5, 5> src = Eigen::Matrix<cplx, 5, 5>::Identity();
  src(0, 1) = rho.rho;
  src(1, 0) = std::conj(rho.rho);
  src(3, 4) = p.noise_corr_2f;
  src(4, 3) = std::conj(p.noise_corr_2f);

  const cplx g1 = std::sqrt(p.i1) * std::polar(1.0, p.theta1);
  const cplx g2 = std::sqrt(p.i2) * std::polar(1.0, p.theta2);
  Eigen::Matrix<cplx, 7, 5> mix = Eigen::Matrix<cplx, 7, 5>::Zero();
  mix(0, 0) = 1.0;                                              // X1
  mix(1, 1) = 1.0;                                              // X2
  mix(2, 0) = g1, mix(2, 3) = 1.0;                              // T1
  mix(3, 1) = g2, mix(3, 2) = 1.0;                              // T2
  mix(4, 0) = std::sqrt(p.s1), mix(4, 1) = g2, mix(4, 2) = 1.0; // Y1
  mix(5, 0) = g1, mix(5, 1) = std::sqrt(p.s2), mix(5, 3) = 1.0; // Y2
  mix(6, 0) = std::sqrt(p.c), mix(6, 4) = 1.0;                  // Yf

  JointCovariance out;
  out.k = mix * src * mix.adjoint();
  out.k = (0.5 * (out.k + out.k.adjoint())).eval();
  return out;
}

/// log2(pi e): differential entropy of a unit-variance complex Gaussian.
inline const double kComplexGaussianOffset = std::log2(std::numbers::pi * std::numbers::e);

inline constexpr double kEigenFloor = 1e-12;

/// h(a | b) = log2 det(pi e K_{a|b}) in bits, K_{a|b} the Schur complement of
/// the b block (pseudo-inverse when that block is singular). Eigenvalues of
/// the conditional covariance are floored at kEigenFloor; anything below
/// -1e-6 (relative to the block scale) is reported as a numerical error.
/// `offset_bits` is the per-dimension constant, log2(pi e) by default.
inline double gaussian_cond_entropy(const JointCovariance &cov, const std::vector<Signal> &a,
                                    const std::vector<Signal> &b,
                                    double offset_bits = kComplexGaussianOffset) {
  using Mat = Eigen::MatrixXcd;
  if (a.empty())
    throw Error(ErrorCode::domain, "differential entropy of an empty set");
  for (Signal x : a)
    for (Signal y : b)
      if (x == y)
        throw Error(ErrorCode::domain, "conditional entropy needs disjoint variable sets");
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Mat kaa(na, na), kab(na, nb), kbb(nb, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j)
      kaa(i, j) = cov(a[i], a[j]);
    for (Eigen::Index j = 0; j < nb; ++j)
      kab(i, j) = cov(a[i], b[j]);
  }
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      kbb(i, j) = cov(b[i], b[j]);

  Mat cond = kaa;
  if (nb > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(kbb);
    const auto &ev = es.eigenvalues();
    const double cutoff = kEigenFloor * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv(nb);
    for (Eigen::Index i = 0; i < nb; ++i)
      inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
    Mat pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
    cond = kaa - kab * pinv * kab.adjoint();
  }
  cond = (0.5 * (cond + cond.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(cond, Eigen::EigenvaluesOnly);
  const auto &ev = es.eigenvalues();
  const double scale = std::max(1.0, kaa.diagonal().real().cwiseAbs().maxCoeff());
  double h = static_cast<double>(na) * offset_bits;
  for (Eigen::Index i = 0; i < na; ++i) {
    if (ev(i) < -1e-6 * scale)
      throw Error(ErrorCode::numerical,
                  "conditional covariance is not positive semidefinite (eigenvalue " +
                      std::to_string(ev(i)) + ")");
    h += std::log2(std::max(ev(i), kEigenFloor));
  }
  return h;
}

/// Bounds that exist for the Gaussian model (the feedback bound does not:
/// the cooperating source observes Yf, not Y2).
inline constexpr std::array<BoundId, 8> kGaussianBounds = {
    BoundId::cutset_r1_coop, BoundId::cutset_r1, BoundId::cutset_r2,      BoundId::sum_tuni1,
    BoundId::sum_tuni2,      BoundId::sum_pv,    BoundId::two_r1_plus_r2, BoundId::r1_plus_two_r2};

inline BoundValue eval_bound_at_rho(const GaussianParams &p, const InputCorrelation &rho,
                                    BoundId id, double offset_bits = kComplexGaussianOffset) {
  if (id == BoundId::fb_r1_plus_two_r2)
    throw Error(ErrorCode::precondition, std::string(reason::requires_output_feedback));
  auto cov = covariance(p, rho);
  return evaluate_terms(
      id,
      [&](const std::vector<Signal> &of, const std::vector<Signal> &given) {
        return gaussian_cond_entropy(cov, of, given, offset_bits);
      },
      1e-8);
}

inline BoundSet eval_bounds_at_rho(const GaussianParams &p, const InputCorrelation &rho,
                                   double offset_bits = kComplexGaussianOffset) {
  auto cov = covariance(p, rho);
  auto h = [&](const std::vector<Signal> &of, const std::vector<Signal> &given) {
    return gaussian_cond_entropy(cov, of, given, offset_bits);
  };
  BoundSet out;
  for (BoundId id : kGaussianBounds)
    out[id] = evaluate_terms(id, h, 1e-8);
  out.set_absent(BoundId::fb_r1_plus_two_r2, reason::requires_output_feedback);
  return out;
}

struct RhoGrid {
  int magnitude_steps = 21; // |rho| = k / (magnitude_steps - 1)
  int phase_steps = 16;     // arg rho = 2 pi j / phase_steps
  bool refine = true;       // golden-section pass in each coordinate
};

namespace detail {

inline double wrap_phase(double ph) {
  const double two_pi = 2.0 * std::numbers::pi;
  ph = std::fmod(ph, two_pi);
  return ph < 0.0 ? ph + two_pi : ph;
}

template <class F> double golden_max(F &&f, double lo, double hi, int iters, double &fbest) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo), f1 = f(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo), f2 = f(x2);
    }
  }
  if (f1 >= f2) {
    fbest = f1;
    return x1;
  }
  fbest = f2;
  return x2;
}

} // namespace detail

/// Per-bound maximum over |rho| in [0, 1] and arg rho in [0, 2 pi) on a polar
/// grid, optionally followed by one golden-section pass on the magnitude and
/// then the phase around the grid argmax. Ties keep the smaller |rho|, then
/// the smaller phase. The achieving rho is stored in `argmax_rho`.
inline BoundSet max_over_rho(const GaussianParams &p, const RhoGrid &grid = {}) {
  p.check();
  if (grid.magnitude_steps < 2 || grid.phase_steps < 1)
    throw Error(ErrorCode::domain, "rho grid needs >= 2 magnitude steps and >= 1 phase step");
  const double two_pi = 2.0 * std::numbers::pi;
  const auto m_steps = static_cast<std::size_t>(grid.magnitude_steps);
  const auto p_steps = static_cast<std::size_t>(grid.phase_steps);

  struct Point {
    double mag, phase;
  };
  std::vector<Point> points{{0.0, 0.0}}; // rho = 0 once
  for (std::size_t k = 1; k < m_steps; ++k)
    for (std::size_t j = 0; j < p_steps; ++j)
      points.push_back({static_cast<double>(k) / static_cast<double>(m_steps - 1),
                        two_pi * static_cast<double>(j) / static_cast<double>(p_steps)});

  auto values = parallel_map(points.size(), [&](std::size_t i) {
    return eval_bounds_at_rho(p, InputCorrelation::polar(points[i].mag, points[i].phase));
  });

  const double dm = 1.0 / static_cast<double>(m_steps - 1);
  const double dphi = two_pi / static_cast<double>(p_steps);
  auto better = [](double v, double best) { return v > best + 1e-12 * std::max(1.0, std::abs(best)); };

  BoundSet out;
  out.set_absent(BoundId::fb_r1_plus_two_r2, reason::requires_output_feedback);
  for (BoundId id : kGaussianBounds) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
      if (better(*values[i][id].bits, *values[arg][id].bits))
        arg = i;
    double mag = points[arg].mag, phase = points[arg].phase;
    double best = *values[arg][id].bits;

    if (grid.refine) {
      auto at = [&](double m, double ph) {
        return *eval_bound_at_rho(p, InputCorrelation::polar(std::clamp(m, 0.0, 1.0), ph), id).bits;
      };
      double fm = 0.0;
      double m = detail::golden_max([&](double x) { return at(x, phase); },
                                    std::max(0.0, mag - dm), std::min(1.0, mag + dm), 60, fm);
      if (better(fm, best))
        mag = m, best = fm;
      if (mag > 0.0 && p_steps > 1) {
        double fp = 0.0;
        double ph = detail::golden_max([&](double x) { return at(mag, x); }, phase - dphi,
                                       phase + dphi, 60, fp);
        if (better(fp, best))
          phase = detail::wrap_phase(ph), best = fp;
      }
    }
    if (mag == 0.0)
      phase = 0.0;
    out[id] = eval_bound_at_rho(p, InputCorrelation::polar(mag, phase), id);
    out[id].argmax_rho = std::polar(mag, phase);
  }
  return out;
}

/// Relaxed closed forms of the bounds, in bits. The sum-rate bound sum_pv and
/// the two new bounds are only emitted when every gain exceeds one.
inline BoundSet closed_form_bounds(const GaussianParams &p) {
  p.check();
  const double s1 = p.s1, s2 = p.s2, i1 = p.i1, i2 = p.i2, c = p.c;
  auto lg = [](double x) { return std::log2(x); };
  const double coherent1 = lg(1.0 + std::pow(std::sqrt(s1) + std::sqrt(i2), 2));
  const double coherent2 = lg(1.0 + std::pow(std::sqrt(s2) + std::sqrt(i1), 2));

  BoundSet out;
  auto put = [&](BoundId id, double v) {
    out[id].bits = v;
    out[id].reason.clear();
  };
  put(BoundId::cutset_r1_coop, lg(1.0 + c + s1));
  put(BoundId::cutset_r1, coherent1);
  put(BoundId::cutset_r2, lg(1.0 + s2));
  put(BoundId::sum_tuni1, lg(1.0 + (s1 + c) / (1.0 + i1)) + coherent2);
  put(BoundId::sum_tuni2, lg(1.0 + s2 / (1.0 + i2)) + coherent1);
  if (p.gains_above_one()) {
    put(BoundId::sum_pv, lg(1.0 + i2 + s1 / i1) + lg(1.0 + i1 / c + s2 / i2) + lg(1.0 + c) + 2.0);
    put(BoundId::two_r1_plus_r2, coherent1 + lg(1.0 + c) + 1.0 + lg(1.0 + s1 / (1.0 + i1 + c)) +
                                     lg(1.0 + i1 / c + s2 / i2));
    put(BoundId::r1_plus_two_r2,
        coherent2 + lg(1.0 + s2 / (1.0 + i2)) +
            lg(1.0 + i2 + (s1 + c + i2 * c + 2.0 * std::sqrt(s1 * i2)) / (1.0 + i1)));
  } else {
    for (BoundId id : {BoundId::sum_pv, BoundId::two_r1_plus_r2, BoundId::r1_plus_two_r2})
      out.set_absent(id, reason::requires_gains_above_one);
  }
  out.set_absent(BoundId::fb_r1_plus_two_r2, reason::requires_output_feedback);
  return out;
}

} // namespace capbound
