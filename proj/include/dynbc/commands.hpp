#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynbc/config.hpp"
#include "dynbc/convergence.hpp"
#include "dynbc/csv.hpp"
#include "dynbc/stepping.hpp"

namespace dynbc {

namespace detail {

/// Roughly equispaced interior grid indices, at most `count` of them.
inline std::vector<std::size_t> decimated_indices(std::size_t nx, std::size_t count) {
  std::vector<std::size_t> idx;
  if (count >= nx - 1) {
    for (std::size_t j = 1; j < nx; ++j) idx.push_back(j);
    return idx;
  }
  for (std::size_t i = 1; i <= count; ++i) {
    std::size_t j = (i * nx) / (count + 1);
    j = std::min(std::max<std::size_t>(j, 1), nx - 1);
    if (idx.empty() || idx.back() != j) idx.push_back(j);
  }
  return idx;
}

inline std::string theta_json(const Scheme& scheme) {
  return scheme.kind() == Scheme::Kind::Weighted ? format_double(scheme.theta()) : "null";
}

}  // namespace detail

/// Write one trajectory as CSV: a row per time level with columns
/// t, u at the decimated interior nodes, v_left, v_right.
inline int cmd_run(const RunConfig& cfg, std::ostream& log = std::cout) {
  const std::string path = cfg.out_path.empty() ? "run.csv" : cfg.out_path;
  const std::vector<CoupledState> traj = run(cfg.problem, cfg.scheme, cfg.nt_run);
  const std::vector<std::size_t> cols =
      detail::decimated_indices(cfg.problem.params.nx, cfg.decimate);

  CsvWriter csv(path);
  std::vector<std::string> header;
  header.push_back("t");
  for (std::size_t j : cols) header.push_back("u_x" + format_double(cfg.problem.params.grid_x(j)));
  header.push_back("v_left");
  header.push_back("v_right");
  csv.row(header);

  const double tau = cfg.problem.t_max / static_cast<double>(cfg.nt_run);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<std::string> row;
    row.push_back(format_double(static_cast<double>(k) * tau));
    for (std::size_t j : cols) row.push_back(format_double(traj[k].u.values[j - 1]));
    row.push_back(format_double(traj[k].v.v[0]));
    row.push_back(format_double(traj[k].v.v[1]));
    csv.row(row);
  }
  csv.close();
  log << "wrote " << traj.size() << " states to " << path << "\n";
  return 0;
}

namespace detail {

inline void write_convergence_csv(const std::string& path,
                                  const std::vector<ConvergenceEntry>& entries,
                                  std::optional<FitWindow> window) {
  CsvWriter csv(path);
  csv.row({"tau", "error", "in_fit_window"});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool in = window && i >= window->first && i <= window->last;
    csv.row({format_double(entries[i].tau), format_double(entries[i].error), in ? "1" : "0"});
  }
  csv.close();
}

inline nlohmann::ordered_json summary_json(const RunConfig& cfg, const ConvergenceReport& rep) {
  nlohmann::ordered_json j;
  j["scheme"] = cfg.scheme.name();
  if (cfg.scheme.kind() == Scheme::Kind::Weighted) {
    j["theta"] = cfg.scheme.theta();
  } else {
    j["theta"] = nullptr;
  }
  j["entries"] = rep.entries.size();
  j["window"] = {rep.fit_window.first, rep.fit_window.last};
  j["slope"] = rep.slope;
  j["intercept"] = rep.intercept;
  return j;
}

}  // namespace detail

/// Run the configured sweep, write the tau/error table and print the fitted
/// order, both human-readable and as one JSON line.  A failed fit still
/// leaves the partial CSV behind and exits with the numerical-error status.
inline int cmd_convergence(const RunConfig& cfg, std::ostream& log = std::cout) {
  const std::string path = cfg.out_path.empty() ? "convergence.csv" : cfg.out_path;
  const ExperimentSpec spec{cfg.problem, cfg.scheme, cfg.tau_list, cfg.reference};
  const std::vector<ConvergenceEntry> entries = sweep_errors(spec);

  ConvergenceReport report;
  try {
    report = make_report(entries, cfg.fit_window);
  } catch (const NumericError& e) {
    detail::write_convergence_csv(path, entries, std::nullopt);
    log << "fit failed: " << e.what() << " (partial table in " << path << ")\n";
    return 3;
  }

  detail::write_convergence_csv(path, report.entries, report.fit_window);
  log << "scheme " << cfg.scheme.name();
  if (cfg.scheme.kind() == Scheme::Kind::Weighted) {
    log << " (theta = " << format_double(cfg.scheme.theta()) << ")";
  }
  log << ": " << report.entries.size() << " step sizes, fit window ["
      << report.fit_window.first << ", " << report.fit_window.last << "]\n";
  log << "observed order " << format_double(report.slope) << ", intercept "
      << format_double(report.intercept) << "\n";
  log << detail::summary_json(cfg, report).dump() << "\n";
  return 0;
}

namespace detail {

struct ReproduceRow {
  std::string label;       // scheme label used in filenames and the table
  Scheme scheme;
  std::string regime;      // full | coarse | fine
  double published_order;
  bool gated;              // informational only when false
};

/// Indices of entries on one side of the regime split at ln(tau) = split.
inline std::optional<FitWindow> regime_window(const std::vector<ConvergenceEntry>& entries,
                                              double split, bool coarse) {
  std::optional<FitWindow> w;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double lt = std::log(entries[i].tau);
    const bool in = coarse ? lt > split : lt < split;
    if (!in) continue;
    if (!w) {
      w = FitWindow{i, i};
    } else {
      w->first = std::min(w->first, i);
      w->last = std::max(w->last, i);
    }
  }
  return w;
}

}  // namespace detail

/// Re-run the published convergence experiments and print observed orders
/// next to the published ones.  `which` selects the experiment family:
/// "table1" is the closed-form problem at nx = 32768, "table2" the
/// oscillatory problem at nx = 128 measured against fine runs, where the
/// Strang scheme is fitted separately on the two regimes split at
/// ln(tau) = -2.5.
inline int cmd_reproduce(const std::string& which, std::optional<std::size_t> nx_override = {},
                         std::string out_dir = "", std::ostream& log = std::cout) {
  if (which != "table1" && which != "table2") {
    throw ConfigError("reproduce: argument must be table1 or table2");
  }
  const bool first = which == "table1";
  if (out_dir.empty()) out_dir = "reproduce_" + which;

  const std::size_t nx = nx_override.value_or(first ? 32768 : 128);
  const double t_max = 2.0;
  const Problem problem = first ? example1_problem(nx, t_max) : example2_problem(nx, t_max);
  const std::vector<double> taus = dyadic_tau_list(t_max, 2, first ? 11 : 10);
  std::size_t max_count = 0;
  for (double tau : taus) {
    max_count = std::max(max_count, detail::steps_for_tau(t_max, tau));
  }
  const ExperimentReference reference =
      first ? ExperimentReference::exact() : ExperimentReference::fine_run(64 * max_count);

  std::vector<detail::ReproduceRow> rows;
  if (first) {
    rows = {{"lie", Scheme::lie(), "full", 1.0004, true},
            {"strang", Scheme::strang(), "full", 1.2405, true},
            {"weighted_0.3", Scheme::weighted(0.3), "full", 1.0549, true},
            {"weighted_0.5", Scheme::weighted(0.5), "full", 1.1646, true}};
  } else {
    rows = {{"lie", Scheme::lie(), "full", 1.0100, true},
            {"strang", Scheme::strang(), "coarse", 1.3056, true},
            {"strang", Scheme::strang(), "fine", 1.9812, true},
            {"weighted_0.3", Scheme::weighted(0.3), "full", 1.0256, true},
            {"weighted_0.5", Scheme::weighted(0.5), "full", 1.5765, false}};
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  // One sweep per distinct scheme; the two Strang regimes share a sweep.
  std::vector<ConvergenceReport> reports(rows.size());
  std::vector<ConvergenceEntry> last_entries;
  std::string last_label;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].label != last_label) {
      const ExperimentSpec spec{problem, rows[r].scheme, taus, reference};
      last_entries = sweep_errors(spec);
      last_label = rows[r].label;
      detail::write_convergence_csv(out_dir + "/" + which + "_" + rows[r].label + ".csv",
                                    last_entries, std::nullopt);
    }
    std::optional<FitWindow> window;
    if (rows[r].regime != "full") {
      window = detail::regime_window(last_entries, -2.5, rows[r].regime == "coarse");
      if (!window) throw NumericError("reproduce: empty " + rows[r].regime + " regime");
    }
    reports[r] = make_report(last_entries, window);
  }

  CsvWriter summary(out_dir + "/summary.csv");
  summary.row({"table", "scheme", "theta", "regime", "slope", "intercept", "window_first",
               "window_last", "published_order", "abs_diff"});
  nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
  log << which << " (nx = " << nx << ")\n";
  log << "scheme          regime   published           computed            |diff|\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const ConvergenceReport& rep = reports[r];
    const double diff = std::abs(rep.slope - rows[r].published_order);
    summary.row({which, rows[r].label,
                 rows[r].scheme.kind() == Scheme::Kind::Weighted
                     ? format_double(rows[r].scheme.theta())
                     : "",
                 rows[r].regime, format_double(rep.slope), format_double(rep.intercept),
                 std::to_string(rep.fit_window.first), std::to_string(rep.fit_window.last),
                 format_double(rows[r].published_order), format_double(diff)});
    nlohmann::ordered_json jr;
    jr["scheme"] = rows[r].label;
    jr["regime"] = rows[r].regime;
    jr["published"] = rows[r].published_order;
    jr["computed"] = rep.slope;
    jr["abs_diff"] = diff;
    jr["window"] = {rep.fit_window.first, rep.fit_window.last};
    jrows.push_back(jr);

    char pad1[16], pad2[16];
    std::snprintf(pad1, sizeof pad1, "%-15s", rows[r].label.c_str());
    std::snprintf(pad2, sizeof pad2, "%-8s", rows[r].regime.c_str());
    std::string published = format_double(rows[r].published_order);
    published.resize(19, ' ');
    std::string computed = format_double(rep.slope);
    computed.resize(19, ' ');
    log << pad1 << " " << pad2 << " " << published << " " << computed << " "
        << format_double(diff) << (rows[r].gated ? "" : "   (informational)") << "\n";
  }
  summary.close();

  nlohmann::ordered_json jout;
  jout["table"] = which;
  jout["nx"] = nx;
  jout["rows"] = jrows;
  log << jout.dump() << "\n";
  return 0;
}

}  // namespace dynbc
