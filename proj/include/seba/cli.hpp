#pragma once

// Command-line front end. Parses a run configuration, checks it, runs it and
// writes the report.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seba/parallel.hpp"
#include "seba/report.hpp"

namespace seba::cli {

enum class Command { sieve, spectrum, moments, exponents, tail, epstein, symmetry };

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitValidation = 2;

/// Input rejected before any computation starts.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(Command c) {
  switch (c) {
    case Command::sieve: return "sieve";
    case Command::spectrum: return "spectrum";
    case Command::moments: return "moments";
    case Command::exponents: return "exponents";
    case Command::tail: return "tail";
    case Command::epstein: return "epstein";
    case Command::symmetry: return "symmetry";
  }
  return "?";
}

inline Command command_from(const std::string& s) {
  for (auto c : {Command::sieve, Command::spectrum, Command::moments, Command::exponents, Command::tail,
                 Command::epstein, Command::symmetry})
    if (to_string(c) == s) return c;
  throw ValidationError("unknown command '" + s + "'");
}

struct RunConfig {
  Command command = Command::sieve;

  // Lattice range. For spectra, intervals (n_j, n_{j+1}) with x_min ≤ n_j ≤ x_max.
  std::int64_t x_min = 0;
  std::int64_t x_max = 1000;

  // Coupling.
  std::string mode = "weak";
  double theta = 0.0;
  double beta_c = 0.0;
  double beta_b = 0.0;
  double root_tol = 1e-9;
  bool ground_state = false;
  /// Sieve bound for spectral commands; 0 picks a default in resolve().
  std::int64_t table_max = 0;

  // Moments and exponents. An empty grid takes the per-command default.
  std::vector<double> q_grid;
  double zeta_rel_tol = 1e-8;
  bool zeta_complete = true;

  double x_lo = 16.0;
  double x_hi = std::numeric_limits<double>::infinity();
  std::string alpha_source = "log_ratio";
  double alpha_fixed = 0.0;
  std::string normalization = "support";
  bool reduce_units = false;
  bool normal_order_filter = true;
  double normal_order_epsilon = 0.25;
  bool delta_filter = true;
  double delta_epsilon = 0.25;
  std::int64_t min_block = 32;

  // Mean tail.
  double T = 1e4;
  double g_exponent = 0.3;

  // Epstein and symmetry.
  std::vector<double> a_list;
  double s = 2.0;
  std::string method = "continued";
  double tol = 1e-10;

  // Output. Neither the path nor the replay source is echoed.
  std::string format;
  std::string output;
};

inline CouplingConfig coupling_of(const RunConfig& c);

/// Fills per-command defaults so the echoed config is complete.
inline void resolve(RunConfig& c) {
  if (c.format.empty())
    c.format = (c.command == Command::exponents || c.command == Command::epstein) ? "json" : "csv";
  if (c.q_grid.empty()) {
    switch (c.command) {
      case Command::symmetry: c.q_grid = {0.05, 0.15, 0.25, 0.35, 0.45}; break;
      case Command::tail: c.q_grid = {1.0, 1.5, 2.0}; break;
      default: c.q_grid = {1.0, 1.5, 2.0, 3.0}; break;
    }
  }
  if (c.a_list.empty()) c.a_list = {1.0};
  if (c.table_max == 0 && c.x_max >= 1 && c.x_max <= std::int64_t{1} << 40 &&
      (c.command == Command::spectrum || c.command == Command::moments || c.command == Command::exponents)) {
    const auto need = required_table_bound(c.x_max, coupling_of(c));
    // Zeta sums at the default tolerance want a cutoff well past the solver's.
    const bool zeta = c.command != Command::spectrum;
    c.table_max = zeta ? std::max({need, 50 * c.x_max, std::int64_t{1'000'000}}) : need;
  }
}

inline json to_json(const RunConfig& c) {
  json j{{"command", to_string(c.command)}, {"version", kVersion}, {"format", c.format}};
  auto coupling = [&] {
    j["x_min"] = c.x_min;
    j["x_max"] = c.x_max;
    j["mode"] = c.mode;
    j["theta"] = json_number(c.theta);
    j["beta_c"] = json_number(c.beta_c);
    j["beta_b"] = json_number(c.beta_b);
    j["root_tol"] = json_number(c.root_tol);
    j["table_max"] = c.table_max;
  };
  auto qs = [&] {
    json arr = json::array();
    for (const double q : c.q_grid) arr.push_back(json_number(q));
    j["q"] = arr;
  };
  switch (c.command) {
    case Command::sieve: j["x_max"] = c.x_max; break;
    case Command::spectrum:
      coupling();
      j["ground_state"] = c.ground_state;
      break;
    case Command::moments:
      coupling();
      qs();
      j["zeta_rel_tol"] = json_number(c.zeta_rel_tol);
      j["zeta_complete"] = c.zeta_complete;
      break;
    case Command::exponents:
      coupling();
      qs();
      j["zeta_rel_tol"] = json_number(c.zeta_rel_tol);
      j["zeta_complete"] = c.zeta_complete;
      j["x_lo"] = json_number(c.x_lo);
      j["x_hi"] = json_number(c.x_hi);
      j["alpha_source"] = c.alpha_source;
      j["alpha_fixed"] = json_number(c.alpha_fixed);
      j["normalization"] = c.normalization;
      j["reduce_units"] = c.reduce_units;
      j["normal_order_filter"] = c.normal_order_filter;
      j["normal_order_epsilon"] = json_number(c.normal_order_epsilon);
      j["delta_filter"] = c.delta_filter;
      j["delta_epsilon"] = json_number(c.delta_epsilon);
      j["min_block"] = c.min_block;
      break;
    case Command::tail:
      qs();
      j["T"] = json_number(c.T);
      j["g_exponent"] = json_number(c.g_exponent);
      break;
    case Command::epstein:
      j["a"] = json_number(c.a_list.front());
      j["s"] = json_number(c.s);
      j["method"] = c.method;
      j["tol"] = json_number(c.tol);
      break;
    case Command::symmetry: {
      qs();
      json arr = json::array();
      for (const double a : c.a_list) arr.push_back(json_number(a));
      j["a"] = arr;
      break;
    }
  }
  return j;
}

inline RunConfig from_json(const json& j) {
  RunConfig c;
  try {
    c.command = command_from(j.at("command").get<std::string>());
    auto num = [&](const char* key, double& dst) {
      if (j.contains(key)) dst = number_from_json(j.at(key));
    };
    auto list = [&](const char* key, std::vector<double>& dst) {
      if (!j.contains(key)) return;
      dst.clear();
      if (j.at(key).is_array()) {
        for (const auto& v : j.at(key)) dst.push_back(number_from_json(v));
      } else {
        dst.push_back(number_from_json(j.at(key)));
      }
    };
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("x_min")) c.x_min = j.at("x_min").get<std::int64_t>();
    if (j.contains("x_max")) c.x_max = j.at("x_max").get<std::int64_t>();
    if (j.contains("table_max")) c.table_max = j.at("table_max").get<std::int64_t>();
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    num("theta", c.theta);
    num("beta_c", c.beta_c);
    num("beta_b", c.beta_b);
    num("root_tol", c.root_tol);
    if (j.contains("ground_state")) c.ground_state = j.at("ground_state").get<bool>();
    list("q", c.q_grid);
    num("zeta_rel_tol", c.zeta_rel_tol);
    if (j.contains("zeta_complete")) c.zeta_complete = j.at("zeta_complete").get<bool>();
    num("x_lo", c.x_lo);
    num("x_hi", c.x_hi);
    if (j.contains("alpha_source")) c.alpha_source = j.at("alpha_source").get<std::string>();
    num("alpha_fixed", c.alpha_fixed);
    if (j.contains("normalization")) c.normalization = j.at("normalization").get<std::string>();
    if (j.contains("reduce_units")) c.reduce_units = j.at("reduce_units").get<bool>();
    if (j.contains("normal_order_filter")) c.normal_order_filter = j.at("normal_order_filter").get<bool>();
    num("normal_order_epsilon", c.normal_order_epsilon);
    if (j.contains("delta_filter")) c.delta_filter = j.at("delta_filter").get<bool>();
    num("delta_epsilon", c.delta_epsilon);
    if (j.contains("min_block")) c.min_block = j.at("min_block").get<std::int64_t>();
    num("T", c.T);
    num("g_exponent", c.g_exponent);
    list("a", c.a_list);
    num("s", c.s);
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    num("tol", c.tol);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  } catch (const FormatError& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
  return c;
}

inline CouplingConfig coupling_of(const RunConfig& c) {
  CouplingConfig cc;
  cc.mode = c.mode == "strong" ? CouplingMode::strong : CouplingMode::weak;
  cc.theta = c.theta;
  cc.beta_c = c.beta_c;
  cc.beta_b = c.beta_b;
  cc.root_tol = c.root_tol;
  cc.ground_state = c.ground_state;
  return cc;
}

inline EstimatorConfig estimator_of(const RunConfig& c) {
  EstimatorConfig e;
  e.x_lo = c.x_lo;
  e.x_hi = c.x_hi;
  e.alpha_source = c.alpha_source == "fixed"           ? AlphaSource::fixed
                   : c.alpha_source == "mean_distance" ? AlphaSource::mean_distance
                                                       : AlphaSource::log_ratio;
  e.alpha_fixed = c.alpha_fixed;
  e.normalization = c.normalization == "weak"         ? Normalization::weak
                    : c.normalization == "asymptotic" ? Normalization::asymptotic
                                                      : Normalization::support;
  e.reduce_units = c.reduce_units;
  e.normal_order_filter = c.normal_order_filter;
  e.normal_order_epsilon = c.normal_order_epsilon;
  e.delta_filter = c.delta_filter;
  e.delta_epsilon = c.delta_epsilon;
  e.min_block = c.min_block;
  e.zeta.rel_tol = c.zeta_rel_tol;
  e.zeta.complete_tail = c.zeta_complete;
  return e;
}

inline void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
  };
  need(c.format == "csv" || c.format == "json", "format must be csv or json");
  auto spectral = [&] {
    need(c.x_min >= 0, "x-min must be nonnegative");
    need(c.x_max >= 1, "x-max must be at least 1");
    need(c.x_min <= c.x_max, "x-min must not exceed x-max");
    need(c.mode == "weak" || c.mode == "strong", "mode must be weak or strong");
    need(std::isfinite(c.theta) && std::isfinite(c.beta_c) && std::isfinite(c.beta_b), "coupling must be finite");
    need(c.root_tol > 0, "root-tol must be positive");
    need(!(c.ground_state && c.mode == "strong"), "ground-state needs weak mode");
    need(c.table_max >= required_table_bound(c.x_max, coupling_of(c)),
         "table-max is below what the solver needs (" + std::to_string(required_table_bound(c.x_max, coupling_of(c))) +
             ")");
  };
  auto moments_q = [&] {
    need(!c.q_grid.empty(), "q grid is empty");
    for (std::size_t i = 0; i < c.q_grid.size(); ++i) {
      need(c.q_grid[i] > 0.5 && std::isfinite(c.q_grid[i]), "every q must be finite and exceed 1/2");
      need(i == 0 || c.q_grid[i] > c.q_grid[i - 1], "q grid must be strictly ascending");
    }
    need(c.zeta_rel_tol > 0, "zeta-rel-tol must be positive");
  };
  switch (c.command) {
    case Command::sieve: need(c.x_max >= 0, "x-max must be nonnegative"); break;
    case Command::spectrum: spectral(); break;
    case Command::moments:
      spectral();
      moments_q();
      break;
    case Command::exponents:
      spectral();
      moments_q();
      need(c.alpha_source == "log_ratio" || c.alpha_source == "mean_distance" || c.alpha_source == "fixed",
           "alpha-source must be log_ratio, mean_distance or fixed");
      need(c.normalization == "support" || c.normalization == "asymptotic" || c.normalization == "weak",
           "normalization must be support, asymptotic or weak");
      need(c.x_lo < c.x_hi, "x-lo must be below x-hi");
      need(c.normal_order_epsilon > 0 && c.delta_epsilon > 0, "filter epsilons must be positive");
      need(c.min_block >= 1, "min-block must be at least 1");
      break;
    case Command::tail:
      need(!c.q_grid.empty(), "q grid is empty");
      for (const double q : c.q_grid) need(q > 0.5 && std::isfinite(q), "every q must be finite and exceed 1/2");
      need(c.T >= 1 && std::isfinite(c.T), "T must be at least 1");
      need(c.g_exponent >= 0 && c.g_exponent <= 0.9, "g-exponent must lie in [0, 0.9]");
      need(3.0 * c.T <= 2e9, "T too large for the sieve");
      break;
    case Command::epstein:
      need(c.a_list.size() == 1, "epstein takes a single a");
      need(c.a_list.front() > 0 && std::isfinite(c.a_list.front()), "a must be positive");
      need(std::isfinite(c.s) && c.s != 1.0, "s must be finite and differ from 1");
      need(c.method == "continued" || c.method == "direct", "method must be continued or direct");
      need(c.method != "direct" || c.s > 1.0, "direct summation needs s > 1");
      need(c.tol > 0, "tol must be positive");
      break;
    case Command::symmetry:
      need(!c.q_grid.empty(), "q grid is empty");
      for (const double q : c.q_grid) {
        need(std::isfinite(q), "q must be finite");
        need(q != 0.0 && q != 0.5 && q != 1.0 && q != -0.5, "q and 1/2 - q must avoid 0, 1/2 and 1");
      }
      for (const double a : c.a_list) need(a > 0 && std::isfinite(a), "a must be positive");
      break;
  }
  if (!c.output.empty()) {
    const std::filesystem::path p(c.output);
    const auto parent = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
    std::error_code ec;
    need(std::filesystem::is_directory(parent, ec), "output directory " + parent.string() + " does not exist");
    need(!std::filesystem::is_directory(p, ec), "output path " + p.string() + " is a directory");
  }
}

namespace detail {

inline SebaSpectrum solve_spectrum(const RunConfig& c, ArithmeticTable& table) {
  const auto cc = coupling_of(c);
  table = build_table(c.table_max);
  return solve_range(c.x_min, c.x_max, table, cc);
}

}  // namespace detail

/// Runs the configured computation and returns the report text.
inline std::string run_to_string(const RunConfig& cfg_in) {
  RunConfig c = cfg_in;
  resolve(c);
  validate(c);
  const json echo = to_json(c);
  const bool csv = c.format == "csv";
  std::ostringstream os;
  json body;

  switch (c.command) {
    case Command::sieve: {
      const auto table = build_table(std::max<std::int64_t>(c.x_max, 1));
      if (csv) {
        write_sieve_csv(os, table, c.x_max);
      } else {
        json rows = json::array();
        for (const auto n : table.representable()) {
          if (n > c.x_max) break;
          rows.push_back({{"n", n}, {"r2", table.r2(n)}, {"omega1", table.omega1(n)}});
        }
        body = rows;
      }
      break;
    }
    case Command::spectrum: {
      ArithmeticTable table;
      const auto spec = detail::solve_spectrum(c, table);
      if (csv)
        write_spectrum_csv(os, spec);
      else
        body = spectrum_json(spec);
      break;
    }
    case Command::moments: {
      ArithmeticTable table;
      const auto spec = detail::solve_spectrum(c, table);
      ZetaWindow w;
      w.rel_tol = c.zeta_rel_tol;
      w.complete_tail = c.zeta_complete;
      std::vector<MomentProfile> profiles(spec.records.size());
      parallel_for(profiles.size(), [&](std::size_t i) { profiles[i] = moment_profile(spec.records[i], c.q_grid, table, w); });
      if (csv)
        write_moments_csv(os, profiles);
      else
        body = moments_json(profiles);
      break;
    }
    case Command::exponents: {
      ArithmeticTable table;
      const auto spec = detail::solve_spectrum(c, table);
      const auto rep = fractal_estimates(spec, table, c.q_grid, estimator_of(c));
      if (csv)
        write_exponents_csv(os, rep);
      else
        body = exponent_report_json(rep);
      break;
    }
    case Command::tail: {
      const auto table = build_table(static_cast<std::int64_t>(std::ceil(3.0 * c.T)));
      const double G = std::max(1.0, std::pow(c.T, c.g_exponent));
      std::vector<TailRow> rows;
      for (const double q : c.q_grid) rows.push_back({q, mean_tail(c.T, G, q, table)});
      if (csv)
        write_tail_csv(os, c.T, G, rows);
      else
        body = tail_json(c.T, G, rows);
      break;
    }
    case Command::epstein: {
      const RectangularForm Q(c.a_list.front());
      const auto v = c.method == "direct" ? epstein_direct(Q, c.s, c.tol) : epstein_continued(Q, c.s);
      if (csv)
        write_epstein_csv(os, c.a_list.front(), v);
      else
        body = epstein_json(c.a_list.front(), v);
      break;
    }
    case Command::symmetry: {
      std::vector<SymmetryRow> rows;
      for (const double a : c.a_list) {
        const RectangularForm Q(a);
        for (const double q : c.q_grid)
          rows.push_back({a, ground_exponents(Q, q, LogPolicy::modulus), symmetry_check(Q, q)});
      }
      if (csv)
        write_symmetry_csv(os, rows);
      else
        body = symmetry_json(rows);
      break;
    }
  }

  if (csv) {
    std::ostringstream full;
    write_csv_preamble(full, echo);
    full << os.str();
    return full.str();
  }
  json doc{{"version", kVersion}, {"config", echo}, {"result", body}};
  return doc.dump(2) + "\n";
}

/// Builds the argument parser. Options write straight into `cfg`.
inline void configure_parser(CLI::App& app, RunConfig& cfg, std::string& replay) {
  app.require_subcommand(0, 1);
  app.add_option("--replay", replay, "Re-run the configuration echoed in a report file");
  app.add_option("-o,--out", cfg.output, "Report path (stdout when omitted)");
  app.add_option("--format", cfg.format, "csv or json");

  auto out_opts = [&](CLI::App* sub) {
    sub->add_option("-o,--out", cfg.output, "Report path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv or json");
  };
  auto range_opts = [&](CLI::App* sub) {
    sub->add_option("--x-min", cfg.x_min, "Lowest left lattice element");
    sub->add_option("--x-max", cfg.x_max, "Highest left lattice element");
    sub->add_option("--mode", cfg.mode, "weak or strong");
    sub->add_option("--theta", cfg.theta, "Weak-coupling right-hand side");
    sub->add_option("--beta-c", cfg.beta_c, "Strong coupling: beta = c (log lambda)^b, the c");
    sub->add_option("--beta-b", cfg.beta_b, "Strong coupling: the exponent b");
    sub->add_option("--root-tol", cfg.root_tol, "Root bracket width");
    sub->add_option("--table-max", cfg.table_max, "Sieve bound (default: large enough for the zeta tolerance)");
  };
  auto q_opt = [&](CLI::App* sub) { sub->add_option("--q", cfg.q_grid, "q grid")->delimiter(','); };
  auto zeta_opts = [&](CLI::App* sub) {
    sub->add_option("--zeta-rel-tol", cfg.zeta_rel_tol, "Relative tolerance of the spectral zeta tail");
    sub->add_flag("!--no-zeta-completion", cfg.zeta_complete, "Plain truncated spectral zeta sums");
  };

  auto* sieve = app.add_subcommand("sieve", "r2 and omega1 over the representable set");
  sieve->add_option("--x-max", cfg.x_max, "Upper bound");
  out_opts(sieve);

  auto* spectrum = app.add_subcommand("spectrum", "Solve the secular equation interval by interval");
  range_opts(spectrum);
  spectrum->add_flag("--ground-state", cfg.ground_state, "Also solve below zero (weak mode)");
  out_opts(spectrum);

  auto* moments = app.add_subcommand("moments", "Spectral zeta, moments and entropies per eigenvalue");
  range_opts(moments);
  q_opt(moments);
  zeta_opts(moments);
  out_opts(moments);

  auto* exponents = app.add_subcommand("exponents", "Windowed fractal-exponent estimates");
  range_opts(exponents);
  q_opt(exponents);
  zeta_opts(exponents);
  exponents->add_option("--x-lo", cfg.x_lo, "Estimator window lower end in lambda");
  exponents->add_option("--x-hi", cfg.x_hi, "Estimator window upper end in lambda");
  exponents->add_option("--alpha-source", cfg.alpha_source, "log_ratio, mean_distance or fixed");
  exponents->add_option("--alpha", cfg.alpha_fixed, "Alpha used with --alpha-source fixed");
  exponents->add_option("--normalization", cfg.normalization, "support, asymptotic or weak");
  exponents->add_flag("--reduce-units", cfg.reduce_units, "Measure rotation orbits (subtract log 4)");
  exponents->add_flag("!--no-normal-order-filter", cfg.normal_order_filter, "Keep every n-tilde");
  exponents->add_option("--normal-order-epsilon", cfg.normal_order_epsilon, "Normal-order filter epsilon");
  exponents->add_flag("!--no-delta-filter", cfg.delta_filter, "Keep every gap");
  exponents->add_option("--delta-epsilon", cfg.delta_epsilon, "Gap filter epsilon");
  exponents->add_option("--min-block", cfg.min_block, "Minimum dyadic block size");
  out_opts(exponents);

  auto* tail = app.add_subcommand("tail", "Mean tail over [T, 2T] against its prediction");
  tail->add_option("--T", cfg.T, "Window start T");
  tail->add_option("--g-exponent", cfg.g_exponent, "G = T^g");
  q_opt(tail);
  out_opts(tail);

  auto* epstein = app.add_subcommand("epstein", "Epstein zeta of the rectangular form");
  epstein->add_option("--a", cfg.a_list, "Aspect parameter a")->expected(1);
  epstein->add_option("--s", cfg.s, "Argument s");
  epstein->add_option("--method", cfg.method, "continued or direct");
  epstein->add_option("--tol", cfg.tol, "Tolerance of direct summation");
  out_opts(epstein);

  auto* symmetry = app.add_subcommand("symmetry", "Ground-state exponents and the q -> 1/2 - q relation");
  symmetry->add_option("--a", cfg.a_list, "Aspect parameters")->delimiter(',');
  q_opt(symmetry);
  out_opts(symmetry);
}

/// Full entry point: parse, run, write. Returns the process exit status.
inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Point-scatterer spectral laboratory"};
  app.set_version_flag("--version", std::string(kVersion));
  RunConfig cfg;
  std::string replay;
  configure_parser(app, cfg, replay);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  std::string text;
  try {
    if (!replay.empty()) {
      if (!app.get_subcommands().empty()) throw ValidationError("--replay takes no subcommand");
      std::ifstream in(replay);
      if (!in) throw ValidationError("cannot read " + replay);
      json echoed;
      try {
        echoed = read_echoed_config(in);
      } catch (const std::exception& e) {
        throw ValidationError(std::string("cannot read config from ") + replay + ": " + e.what());
      }
      const std::string output = cfg.output;
      cfg = from_json(echoed);
      cfg.output = output;
    } else {
      if (app.get_subcommands().empty()) throw ValidationError("a subcommand is required");
      cfg.command = command_from(app.get_subcommands().front()->get_name());
    }
    resolve(cfg);
    validate(cfg);
    text = run_to_string(cfg);
  } catch (const ValidationError& e) {
    err << "seba_lab: validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "seba_lab: " << to_string(cfg.command) << ": " << e.what() << '\n';
    return kExitComputation;
  }

  try {
    if (cfg.output.empty())
      out << text;
    else
      write_file_atomic(cfg.output, text);
  } catch (const std::exception& e) {
    err << "seba_lab: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace seba::cli
