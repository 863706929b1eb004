#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynbc/convergence.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/problem.hpp"
#include "dynbc/scheme.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Shape of the interior initial data for custom problems.
struct InitialU {
  std::string kind = "zero";  // zero | sine | gaussian | example1
  double amplitude = 1.0;
  double sharpness = 1.0;
  double center = 0.5;
  int mode = 1;
};

/// Raw configuration as read from JSON or collected from command-line
/// flags; every field is optional until resolution.
struct ConfigValues {
  std::optional<std::string> problem;  // example1 | example2 | custom
  std::optional<std::string> scheme;   // lie | strang | weighted | naive
  std::optional<double> theta;
  std::optional<double> c, beta, tmax;
  std::optional<std::size_t> nx;
  std::optional<std::array<std::array<double, 2>, 2>> B;
  std::optional<InitialU> initial_u;
  std::optional<std::array<double, 2>> initial_v;
  std::optional<std::array<int, 2>> tau_dyadic;
  std::optional<std::vector<double>> tau_values;
  std::optional<std::string> reference_kind;  // exact | fine
  std::optional<std::size_t> nt_fine;
  std::optional<std::size_t> fine_multiple;
  std::optional<std::array<std::size_t, 2>> fit_window;
  std::optional<std::size_t> nt;
  std::optional<std::size_t> decimate;
  std::optional<std::string> out;
};

/// Fully resolved experiment description shared by all subcommands.
struct RunConfig {
  Problem problem;
  Scheme scheme;
  std::string problem_name;
  std::vector<double> tau_list;
  ExperimentReference reference;
  std::optional<FitWindow> fit_window;
  std::size_t nt_run;
  std::size_t decimate;
  std::string out_path;
};

namespace detail {

using json = nlohmann::json;

inline ConfigError config_parse_error(const std::string& text, const json::parse_error& e) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return ConfigError("config: syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
}

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const auto& key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
  }
}

inline double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("config: field '" + field + "' must be a number");
  return j.get<double>();
}

inline std::size_t get_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("config: field '" + field + "' must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError("config: field '" + field + "' must be a string");
  return j.get<std::string>();
}

inline InitialU parse_initial_u(const json& j) {
  if (!j.is_object()) throw ConfigError("config: field 'initial.u' must be an object");
  reject_unknown_keys(j, {"kind", "amplitude", "sharpness", "center", "mode"}, "initial.u");
  InitialU u;
  if (!j.contains("kind")) throw ConfigError("config: field 'initial.u.kind' is required");
  u.kind = get_string(j.at("kind"), "initial.u.kind");
  if (u.kind != "zero" && u.kind != "sine" && u.kind != "gaussian" && u.kind != "example1") {
    throw ConfigError("config: field 'initial.u.kind' must be zero, sine, gaussian or example1");
  }
  if (j.contains("amplitude")) u.amplitude = get_number(j.at("amplitude"), "initial.u.amplitude");
  if (j.contains("sharpness")) u.sharpness = get_number(j.at("sharpness"), "initial.u.sharpness");
  if (j.contains("center")) u.center = get_number(j.at("center"), "initial.u.center");
  if (j.contains("mode")) {
    u.mode = static_cast<int>(get_count(j.at("mode"), "initial.u.mode"));
    if (u.mode < 1) throw ConfigError("config: field 'initial.u.mode' must be >= 1");
  }
  return u;
}

}  // namespace detail

/// Parse the JSON configuration text into raw values.  Rejects unknown keys
/// and ill-typed fields; does not apply preset defaults.
inline ConfigValues parse_config_text(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw detail::config_parse_error(text, e);
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  detail::reject_unknown_keys(root,
                              {"problem", "scheme", "theta", "c", "beta", "nx", "tmax", "B",
                               "initial", "tau", "reference", "fit_window", "nt", "decimate",
                               "out"},
                              "top level");

  ConfigValues v;
  if (root.contains("problem")) v.problem = detail::get_string(root.at("problem"), "problem");
  if (root.contains("scheme")) v.scheme = detail::get_string(root.at("scheme"), "scheme");
  if (root.contains("theta")) v.theta = detail::get_number(root.at("theta"), "theta");
  if (root.contains("c")) v.c = detail::get_number(root.at("c"), "c");
  if (root.contains("beta")) v.beta = detail::get_number(root.at("beta"), "beta");
  if (root.contains("tmax")) v.tmax = detail::get_number(root.at("tmax"), "tmax");
  if (root.contains("nx")) v.nx = detail::get_count(root.at("nx"), "nx");
  if (root.contains("nt")) v.nt = detail::get_count(root.at("nt"), "nt");
  if (root.contains("decimate")) v.decimate = detail::get_count(root.at("decimate"), "decimate");
  if (root.contains("out")) v.out = detail::get_string(root.at("out"), "out");

  if (root.contains("B")) {
    const auto& jb = root.at("B");
    if (!jb.is_array() || jb.size() != 2 || !jb[0].is_array() || jb[0].size() != 2 ||
        !jb[1].is_array() || jb[1].size() != 2) {
      throw ConfigError("config: field 'B' must be a 2x2 array of numbers");
    }
    std::array<std::array<double, 2>, 2> b{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) b[i][j] = detail::get_number(jb[i][j], "B");
    v.B = b;
  }

  if (root.contains("initial")) {
    const auto& ji = root.at("initial");
    if (!ji.is_object()) throw ConfigError("config: field 'initial' must be an object");
    detail::reject_unknown_keys(ji, {"u", "v"}, "initial");
    if (ji.contains("u")) v.initial_u = detail::parse_initial_u(ji.at("u"));
    if (ji.contains("v")) {
      const auto& jv = ji.at("v");
      if (!jv.is_array() || jv.size() != 2) {
        throw ConfigError("config: field 'initial.v' must be an array of two numbers");
      }
      v.initial_v = {detail::get_number(jv[0], "initial.v"), detail::get_number(jv[1], "initial.v")};
    }
  }

  if (root.contains("tau")) {
    const auto& jt = root.at("tau");
    if (jt.is_array()) {
      std::vector<double> taus;
      for (const auto& x : jt) taus.push_back(detail::get_number(x, "tau"));
      v.tau_values = taus;
    } else if (jt.is_object()) {
      detail::reject_unknown_keys(jt, {"dyadic", "list"}, "tau");
      if (jt.contains("dyadic")) {
        const auto& jd = jt.at("dyadic");
        if (!jd.is_array() || jd.size() != 2) {
          throw ConfigError("config: field 'tau.dyadic' must be [k_min, k_max]");
        }
        v.tau_dyadic = {static_cast<int>(detail::get_count(jd[0], "tau.dyadic")),
                        static_cast<int>(detail::get_count(jd[1], "tau.dyadic"))};
      }
      if (jt.contains("list")) {
        std::vector<double> taus;
        for (const auto& x : jt.at("list")) taus.push_back(detail::get_number(x, "tau.list"));
        v.tau_values = taus;
      }
    } else {
      throw ConfigError("config: field 'tau' must be an array or an object");
    }
  }

  if (root.contains("reference")) {
    const auto& jr = root.at("reference");
    if (jr.is_string()) {
      const std::string s = jr.get<std::string>();
      if (s != "exact") throw ConfigError("config: field 'reference' string form must be 'exact'");
      v.reference_kind = s;
    } else if (jr.is_object()) {
      detail::reject_unknown_keys(jr, {"nt_fine", "fine_multiple"}, "reference");
      v.reference_kind = "fine";
      if (jr.contains("nt_fine")) v.nt_fine = detail::get_count(jr.at("nt_fine"), "reference.nt_fine");
      if (jr.contains("fine_multiple")) {
        v.fine_multiple = detail::get_count(jr.at("fine_multiple"), "reference.fine_multiple");
      }
    } else {
      throw ConfigError("config: field 'reference' must be 'exact' or an object");
    }
  }

  if (root.contains("fit_window")) {
    const auto& jw = root.at("fit_window");
    if (!jw.is_array() || jw.size() != 2) {
      throw ConfigError("config: field 'fit_window' must be [first, last]");
    }
    v.fit_window = {detail::get_count(jw[0], "fit_window"), detail::get_count(jw[1], "fit_window")};
  }
  return v;
}

namespace detail {

inline GridFunction build_initial_u(const InitialU& u, const DomainParams& p) {
  GridFunction g{std::vector<double>(p.interior_points(), 0.0)};
  for (std::size_t j = 1; j < p.nx; ++j) {
    const double x = p.grid_x(j);
    double val = 0.0;
    if (u.kind == "zero") {
      val = 0.0;
    } else if (u.kind == "sine") {
      val = u.amplitude * std::sin(static_cast<double>(u.mode) * pi * x / p.beta);
    } else if (u.kind == "gaussian") {
      val = u.amplitude * std::exp(-u.sharpness * (x - u.center) * (x - u.center));
    } else if (u.kind == "example1") {
      val = std::cos(0.5 * x) + std::sinh(x);
    }
    g.values[j - 1] = val;
  }
  return g;
}

}  // namespace detail

/// Apply preset defaults and validity rules, producing a ready-to-run
/// configuration.  Presets pin the problem fields (c, beta, B, initial);
/// overriding those is only allowed for problem = "custom".
inline RunConfig resolve_config(const ConfigValues& v) {
  if (!v.problem) throw ConfigError("config: field 'problem' is required (or pass --preset)");
  const std::string name = *v.problem;
  if (name != "example1" && name != "example2" && name != "custom") {
    throw ConfigError("config: field 'problem' must be example1, example2 or custom");
  }

  const bool preset = name != "custom";
  if (preset && (v.c || v.beta || v.B || v.initial_u || v.initial_v)) {
    throw ConfigError("config: fields c, beta, B and initial are fixed by preset problems");
  }

  double tmax = v.tmax.value_or(2.0);
  if (!(std::isfinite(tmax) && tmax > 0.0)) {
    throw ConfigError("config: field 'tmax' must be positive");
  }

  std::optional<Problem> problem;
  int default_kmax = 11;
  if (name == "example1") {
    const std::size_t nx = v.nx.value_or(32768);
    try {
      problem.emplace(example1_problem(nx, tmax));
    } catch (const ContractError& e) {
      throw ConfigError(std::string("config: field 'nx': ") + e.what());
    }
    default_kmax = 11;
  } else if (name == "example2") {
    const std::size_t nx = v.nx.value_or(128);
    try {
      problem.emplace(example2_problem(nx, tmax));
    } catch (const ContractError& e) {
      throw ConfigError(std::string("config: field 'nx': ") + e.what());
    }
    default_kmax = 10;
  } else {
    if (!v.c || !v.beta || !v.nx || !v.B || !v.initial_v) {
      throw ConfigError("config: custom problems require c, beta, nx, B and initial.v");
    }
    try {
      DomainParams p(*v.c, *v.beta, *v.nx);
      GridFunction u0 = detail::build_initial_u(v.initial_u.value_or(InitialU{}), p);
      BoundaryState v0{{(*v.initial_v)[0], (*v.initial_v)[1]}};
      BoundaryMatrix B = BoundaryMatrix::from_rows({{(*v.B)[0][0], (*v.B)[0][1]},
                                                    {(*v.B)[1][0], (*v.B)[1][1]}});
      problem.emplace(p, B, u0, v0, tmax);
    } catch (const ContractError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  Scheme scheme = [&] {
    const std::string s = v.scheme.value_or("lie");
    if (s == "lie") return Scheme::lie();
    if (s == "strang") return Scheme::strang();
    if (s == "naive") return Scheme::naive_lie();
    if (s == "weighted") {
      const double theta = v.theta.value_or(0.5);
      try {
        return Scheme::weighted(theta);
      } catch (const ContractError& e) {
        throw ConfigError(std::string("config: field 'theta': ") + e.what());
      }
    }
    throw ConfigError("config: field 'scheme' must be lie, strang, weighted or naive");
  }();
  if (v.theta && scheme.kind() != Scheme::Kind::Weighted) {
    throw ConfigError("config: field 'theta' only applies to the weighted scheme");
  }

  std::vector<double> taus;
  if (v.tau_values && v.tau_dyadic) {
    throw ConfigError("config: give either a tau list or a dyadic range, not both");
  }
  if (v.tau_values) {
    taus = *v.tau_values;
  } else {
    const std::array<int, 2> range = v.tau_dyadic.value_or(std::array<int, 2>{2, default_kmax});
    if (range[0] > range[1]) throw ConfigError("config: field 'tau.dyadic' needs k_min <= k_max");
    taus = dyadic_tau_list(tmax, range[0], range[1]);
  }
  if (taus.empty()) throw ConfigError("config: field 'tau' must contain at least one value");
  std::sort(taus.begin(), taus.end(), std::greater<double>());
  std::size_t max_count = 1;
  for (double tau : taus) {
    try {
      max_count = std::max(max_count, detail::steps_for_tau(tmax, tau));
    } catch (const ContractError& e) {
      throw ConfigError(std::string("config: field 'tau': ") + e.what());
    }
  }

  const std::string ref_kind =
      v.reference_kind.value_or(name == "example1" ? std::string("exact") : std::string("fine"));
  ExperimentReference reference = ExperimentReference::exact();
  if (ref_kind == "exact") {
    if (name != "example1") {
      throw ConfigError("config: reference 'exact' requires the example1 problem");
    }
  } else {
    std::size_t nt_fine = 0;
    if (v.nt_fine && v.fine_multiple) {
      throw ConfigError("config: give either reference.nt_fine or reference.fine_multiple");
    }
    if (v.nt_fine) {
      nt_fine = *v.nt_fine;
    } else {
      const std::size_t multiple = v.fine_multiple.value_or(64);
      if (multiple < 2) throw ConfigError("config: field 'reference.fine_multiple' must be >= 2");
      nt_fine = multiple * max_count;
    }
    if (nt_fine <= max_count) {
      throw ConfigError("config: field 'reference.nt_fine' must exceed every coarse step count");
    }
    reference = ExperimentReference::fine_run(nt_fine);
  }

  std::optional<FitWindow> window;
  if (v.fit_window) {
    const auto [first, last] = *v.fit_window;
    if (first > last || last >= taus.size()) {
      throw ConfigError("config: field 'fit_window' must satisfy first <= last < #tau");
    }
    window = FitWindow{first, last};
  }

  const std::size_t nt_run = v.nt.value_or(20);
  if (nt_run < 1) throw ConfigError("config: field 'nt' must be >= 1");
  const std::size_t decimate = v.decimate.value_or(65);
  if (decimate < 1) throw ConfigError("config: field 'decimate' must be >= 1");

  return RunConfig{std::move(*problem), scheme,   name,   std::move(taus), reference,
                   window,              nt_run,   decimate, v.out.value_or("")};
}

/// One-shot parse: JSON text to a resolved configuration.
inline RunConfig parse_config(const std::string& text) {
  return resolve_config(parse_config_text(text));
}

}  // namespace dynbc
