#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/exact.hpp"
#include "dynbc/problem.hpp"
#include "dynbc/scheme.hpp"
#include "dynbc/stepping.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Relative terminal error: both states are flattened to (u_1..u_{nx-1},
/// v_0, v_1) and compared in the Euclidean norm, normalized by the
/// reference.
inline double relative_error(const CoupledState& numeric, const CoupledState& reference) {
  detail::require(numeric.u.size() == reference.u.size() && numeric.v.size() == reference.v.size(),
                  "relative_error: state sizes differ");
  double diff = 0.0, ref = 0.0;
  for (std::size_t j = 0; j < numeric.u.size(); ++j) {
    const double d = numeric.u.values[j] - reference.u.values[j];
    diff += d * d;
    ref += reference.u.values[j] * reference.u.values[j];
  }
  for (std::size_t i = 0; i < numeric.v.size(); ++i) {
    const double d = numeric.v.v[i] - reference.v.v[i];
    diff += d * d;
    ref += reference.v.v[i] * reference.v.v[i];
  }
  if (ref == 0.0) throw NumericError("relative_error: reference norm is zero");
  return std::sqrt(diff) / std::sqrt(ref);
}

/// How the terminal reference state is obtained: the closed-form solution
/// (first test problem only) or a fine run of the same scheme.
struct ExperimentReference {
  enum class Kind { Exact, FineRun };

  static ExperimentReference exact() { return {Kind::Exact, 0}; }
  static ExperimentReference fine_run(std::size_t nt_fine) { return {Kind::FineRun, nt_fine}; }

  Kind kind;
  std::size_t nt_fine;
};

struct ExperimentSpec {
  Problem problem;
  Scheme scheme;
  std::vector<double> tau_list;  // each must divide t_max into whole steps
  ExperimentReference reference;
};

struct ConvergenceEntry {
  double tau;
  double error;
};

/// Inclusive index range [first, last] into a tau-descending entry list.
struct FitWindow {
  std::size_t first;
  std::size_t last;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;  // sorted by decreasing tau
  FitWindow fit_window;
  double slope;
  double intercept;
};

namespace detail {

inline std::size_t steps_for_tau(double t_max, double tau) {
  require(std::isfinite(tau) && tau > 0.0, "tau values must be positive");
  const double ratio = t_max / tau;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
    throw ConfigError("tau does not divide t_max into a whole number of steps");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace detail

/// Terminal reference state for a fine-run experiment: the same scheme at
/// nt_fine steps.  nt_fine must exceed every coarse step count in the sweep.
inline CoupledState reference_solution(const ExperimentSpec& spec) {
  detail::require(spec.reference.kind == ExperimentReference::Kind::FineRun,
                  "reference_solution: only fine-run references are computed here");
  for (double tau : spec.tau_list) {
    if (spec.reference.nt_fine <= detail::steps_for_tau(spec.problem.t_max, tau)) {
      throw ConfigError("reference_solution: nt_fine must exceed every coarse step count");
    }
  }
  return run_terminal(spec.problem, spec.scheme, spec.reference.nt_fine);
}

/// Least-squares slope and intercept of log(error) against log(tau) over an
/// inclusive index window.  The slope is the observed convergence order.
inline std::pair<double, double> fit_order(const std::vector<ConvergenceEntry>& entries,
                                           FitWindow w) {
  if (w.first > w.last || w.last >= entries.size() || w.last - w.first + 1 < 2) {
    throw NumericError("fit_order: window must contain at least two points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(w.last - w.first + 1);
  for (std::size_t i = w.first; i <= w.last; ++i) {
    if (!(entries[i].error > 0.0) || !std::isfinite(entries[i].error)) {
      throw NumericError("fit_order: errors in the window must be positive");
    }
    const double x = std::log(entries[i].tau);
    const double y = std::log(entries[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw NumericError("fit_order: degenerate abscissas");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return {slope, intercept};
}

/// Largest coarse-tau prefix on which the error still decreases like a
/// method of positive order: each log-error decrement must be at least
/// `threshold` times the first-order decrement for that tau ratio.  Trims
/// the flat tail where rounding or spatial error dominates; falls back to
/// the full range when no usable prefix exists.
inline FitWindow detect_plateau(const std::vector<ConvergenceEntry>& entries,
                                double threshold = 0.2) {
  const std::size_t n = entries.size();
  if (n < 3) return FitWindow{0, n == 0 ? 0 : n - 1};
  std::size_t last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(entries[i].error > 0.0) || !(entries[i + 1].error > 0.0)) break;
    const double drop = std::log(entries[i].error) - std::log(entries[i + 1].error);
    const double first_order = std::log(entries[i].tau) - std::log(entries[i + 1].tau);
    if (drop >= threshold * first_order) {
      last = i + 1;
    } else {
      break;
    }
  }
  if (last < 1) return FitWindow{0, n - 1};
  return FitWindow{0, last};
}

/// Error sweep only: run the scheme once per tau and measure the terminal
/// error against the reference.  Entries come back sorted by decreasing tau.
inline std::vector<ConvergenceEntry> sweep_errors(const ExperimentSpec& spec) {
  detail::require(!spec.tau_list.empty(), "sweep_errors: empty tau list");
  std::vector<double> taus = spec.tau_list;
  std::sort(taus.begin(), taus.end(), std::greater<double>());

  std::vector<std::size_t> counts;
  counts.reserve(taus.size());
  for (double tau : taus) counts.push_back(detail::steps_for_tau(spec.problem.t_max, tau));

  CoupledState ref = [&] {
    if (spec.reference.kind == ExperimentReference::Kind::Exact) {
      return exact_solution_example1(spec.problem.t_max, spec.problem.params);
    }
    ExperimentSpec sorted = spec;
    sorted.tau_list = taus;
    return reference_solution(sorted);
  }();

  std::vector<ConvergenceEntry> entries;
  entries.reserve(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const CoupledState terminal = run_terminal(spec.problem, spec.scheme, counts[i]);
    entries.push_back(ConvergenceEntry{taus[i], relative_error(terminal, ref)});
  }
  return entries;
}

/// Window selection plus order fit on precomputed entries.
inline ConvergenceReport make_report(std::vector<ConvergenceEntry> entries,
                                     std::optional<FitWindow> window_override = {}) {
  ConvergenceReport report;
  report.entries = std::move(entries);
  report.fit_window = window_override ? *window_override : detect_plateau(report.entries);
  auto [slope, intercept] = fit_order(report.entries, report.fit_window);
  report.slope = slope;
  report.intercept = intercept;
  return report;
}

/// Full sweep: run the scheme once per tau, measure terminal errors against
/// the reference, pick a fit window (plateau-trimmed unless overridden) and
/// fit the observed order.
inline ConvergenceReport convergence_study(const ExperimentSpec& spec,
                                           std::optional<FitWindow> window_override = {}) {
  return make_report(sweep_errors(spec), window_override);
}

/// Dyadic step sweep tau_k = t_max * 2^-k for k in [k_min, k_max].
inline std::vector<double> dyadic_tau_list(double t_max, int k_min, int k_max) {
  detail::require(k_min >= 0 && k_min <= k_max, "dyadic_tau_list: need 0 <= k_min <= k_max");
  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) taus.push_back(t_max * std::ldexp(1.0, -k));
  return taus;
}

}  // namespace dynbc
