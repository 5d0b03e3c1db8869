#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace capbound {

enum class ErrorCode {
  domain,              // argument outside an operation's domain
  usage,               // malformed request (CLI level)
  precondition,        // operation called in the wrong mode
  numerical,           // covariance not PSD beyond tolerance, etc.
  unbounded,           // halfspace set does not bound the region
  infeasible,          // halfspace set is empty
  regime_not_covered,  // gDoF parameters outside the analysed sub-regime
  not_applicable,      // bound gated off for these parameters
  size_guard,          // instance too large for exhaustive enumeration
  io,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
  case ErrorCode::domain: return "domain";
  case ErrorCode::usage: return "usage";
  case ErrorCode::precondition: return "precondition";
  case ErrorCode::numerical: return "numerical";
  case ErrorCode::unbounded: return "unbounded";
  case ErrorCode::infeasible: return "infeasible";
  case ErrorCode::regime_not_covered: return "regime_not_covered";
  case ErrorCode::not_applicable: return "not_applicable";
  case ErrorCode::size_guard: return "size_guard";
  case ErrorCode::io: return "io";
  }
  return "unknown";
}

/// Every library failure is reported through this type; `code()` is stable
/// and is what the CLI maps to exit statuses.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// [x]^+
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// p * log2(p) with the 0 log 0 = 0 convention.
inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

/// Worker count for grid sweeps; CAPBOUND_THREADS caps it.
inline unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("CAPBOUND_THREADS")) {
    char *end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1)
      n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Evaluates fn(i) for i in [0, n) and returns the results in index order,
/// so any reduction over the result is independent of the schedule.
template <class Fn>
auto parallel_map(std::size_t n, Fn &&fn, unsigned threads = sweep_threads())
    -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads)
          out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
    th.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

} // namespace capbound
