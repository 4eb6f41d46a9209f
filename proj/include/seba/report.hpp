#pragma once

// Text serialization of the pipeline outputs. CSV for tables, JSON for
// nested reports. Every floating value is written in its shortest
// round-trip form.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seba/arithmetic.hpp"
#include "seba/epstein.hpp"
#include "seba/estimator.hpp"
#include "seba/multifractal.hpp"
#include "seba/numeric.hpp"
#include "seba/spectrum.hpp"

#ifndef SEBA_VERSION
#define SEBA_VERSION "0.0.0"
#endif

namespace seba {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = SEBA_VERSION;

/// JSON has no infinities, so non-finite values are written as strings.
inline json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a number, got " + j.dump());
}

template <typename Map>
json json_map(const Map& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[format_double(k)] = json_number(v);
  return out;
}

/// Leading comment lines of every CSV report: the version and the resolved
/// configuration as one line of JSON.
inline void write_csv_preamble(std::ostream& os, const json& config) {
  os << "# seba_lab " << kVersion << '\n';
  os << "# config " << config.dump() << '\n';
}

/// Reads back the configuration echoed by either report format.
inline json read_echoed_config(std::istream& is) {
  std::string first;
  std::getline(is, first);
  if (!first.empty() && first[0] == '#') {
    std::string line;
    while (std::getline(is, line)) {
      if (line.rfind("# config ", 0) == 0) return json::parse(line.substr(9));
      if (line.empty() || line[0] != '#') break;
    }
    throw FormatError("CSV report carries no config line");
  }
  std::stringstream rest;
  rest << first << '\n' << is.rdbuf();
  const auto doc = json::parse(rest.str());
  if (!doc.contains("config")) throw FormatError("JSON report carries no config object");
  return doc.at("config");
}

// ---------------------------------------------------------------------------
// Tables

inline void write_sieve_csv(std::ostream& os, const ArithmeticTable& table, std::int64_t x) {
  os << "n,r2,omega1\n";
  for (const auto n : table.representable()) {
    if (n > x) break;
    os << n << ',' << table.r2(n) << ',' << static_cast<int>(table.omega1(n)) << '\n';
  }
}

inline void write_spectrum_csv(std::ostream& os, const SebaSpectrum& spec) {
  os << "j,n_j,n_next,lambda,gap_left,gap_right,Delta,n_tilde\n";
  for (const auto& r : spec.records) {
    os << r.j << ',' << r.n_j << ',' << r.n_next << ',' << format_double(r.lambda) << ','
       << format_double(r.gap_left) << ',' << format_double(r.gap_right) << ',' << format_double(r.Delta) << ','
       << r.n_tilde << '\n';
  }
}

inline json spectrum_json(const SebaSpectrum& spec) {
  json recs = json::array();
  for (const auto& r : spec.records) {
    recs.push_back({{"j", r.j},
                    {"n_j", r.n_j},
                    {"n_next", r.n_next},
                    {"lambda", json_number(r.lambda)},
                    {"gap_left", json_number(r.gap_left)},
                    {"gap_right", json_number(r.gap_right)},
                    {"Delta", json_number(r.Delta)},
                    {"n_tilde", r.n_tilde}});
  }
  json out{{"records", recs}};
  out["ground_lambda"] = spec.ground_lambda ? json_number(*spec.ground_lambda) : json(nullptr);
  return out;
}

inline void write_moments_csv(std::ostream& os, const std::vector<MomentProfile>& profiles) {
  os << "lambda,q,zeta2q,m_q,h_q,H_q,tail_bound\n";
  for (const auto& p : profiles) {
    for (const double q : p.q_grid) {
      os << format_double(p.lambda) << ',' << format_double(q) << ',' << format_double(p.zeta2q.at(q)) << ','
         << format_double(p.m_q.at(q)) << ',' << format_double(p.h_q.at(q)) << ',' << format_double(p.H_q.at(q))
         << ',' << format_double(p.tail_bound.at(q)) << '\n';
    }
  }
}

inline json moments_json(const std::vector<MomentProfile>& profiles) {
  json rows = json::array();
  for (const auto& p : profiles) {
    rows.push_back({{"lambda", json_number(p.lambda)},
                    {"Delta", json_number(p.Delta)},
                    {"n_tilde", p.n_tilde},
                    {"zeta2q", json_map(p.zeta2q)},
                    {"m_q", json_map(p.m_q)},
                    {"h_q", json_map(p.h_q)},
                    {"H_q", json_map(p.H_q)},
                    {"M_q", json_map(p.M_q)},
                    {"tail_bound", json_map(p.tail_bound)},
                    {"shannon", json_number(p.shannon)},
                    {"shannon_error", json_number(p.shannon_error)}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Exponents

inline json exponent_report_json(const ExponentReport& rep) {
  json blocks = json::array();
  for (const auto& b : rep.blocks) {
    blocks.push_back({{"lo", json_number(b.lo)},
                      {"hi", json_number(b.hi)},
                      {"count", b.count},
                      {"c_mean", json_number(b.c_mean)},
                      {"d_mean", json_map(b.d_mean)},
                      {"e_mean", json_map(b.e_mean)},
                      {"D_mean", json_map(b.D_mean)}});
  }
  json qs = json::array();
  for (const double q : rep.q_grid) qs.push_back(q);
  json out{{"x_lo", json_number(rep.x_lo)},
           {"x_hi", json_number(rep.x_hi)},
           {"records_in_window", rep.records_in_window},
           {"filtered", rep.filtered},
           {"alpha_hat", json_number(rep.alpha_hat)},
           {"alpha_source", to_string(rep.alpha_source)},
           {"normalization", to_string(rep.normalization)},
           {"reduce_units", rep.reduce_units},
           {"mean_Delta", json_number(rep.mean_Delta)},
           {"c_hat", json_number(rep.c_hat)},
           {"q_grid", qs},
           {"G", json_map(rep.G)},
           {"N", json_map(rep.N)},
           {"d_hat", json_map(rep.d_hat)},
           {"D_hat", json_map(rep.D_hat)},
           {"D_hat_direct", json_map(rep.D_hat_direct)},
           {"orderings_differ", rep.orderings_differ},
           {"theory_applicable", rep.theory_applicable}};
  if (rep.q_admissible)
    out["q_admissible"] = json::array({json_number(rep.q_admissible->first), json_number(rep.q_admissible->second)});
  else
    out["q_admissible"] = nullptr;
  out["d_theory"] = json_map(rep.d_theory);
  out["D_theory"] = json_map(rep.D_theory);
  out["blocks"] = blocks;
  return out;
}

inline void write_exponents_csv(std::ostream& os, const ExponentReport& rep) {
  auto opt = [](const std::map<double, double>& m, double q) {
    const auto it = m.find(q);
    return it == m.end() ? std::string{} : format_double(it->second);
  };
  os << "q,d_hat,D_hat,D_hat_direct,d_theory,D_theory,G,N\n";
  for (const double q : rep.q_grid) {
    os << format_double(q) << ',' << format_double(rep.d_hat.at(q)) << ',' << format_double(rep.D_hat.at(q)) << ','
       << format_double(rep.D_hat_direct.at(q)) << ',' << opt(rep.d_theory, q) << ',' << opt(rep.D_theory, q) << ','
       << format_double(rep.G.at(q)) << ',' << format_double(rep.N.at(q)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Tails, Epstein values, symmetry

struct TailRow {
  double q = 0.0;
  MeanTail tail;
};

inline void write_tail_csv(std::ostream& os, double T, double G, const std::vector<TailRow>& rows) {
  os << "T,G,q,mean_tail,remainder_bound,prediction,ratio\n";
  for (const auto& r : rows) {
    os << format_double(T) << ',' << format_double(G) << ',' << format_double(r.q) << ','
       << format_double(r.tail.value) << ',' << format_double(r.tail.remainder_bound) << ','
       << format_double(r.tail.prediction) << ',' << format_double(r.tail.ratio) << '\n';
  }
}

inline json tail_json(double T, double G, const std::vector<TailRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"q", json_number(r.q)},
                   {"mean_tail", json_number(r.tail.value)},
                   {"remainder_bound", json_number(r.tail.remainder_bound)},
                   {"prediction", json_number(r.tail.prediction)},
                   {"ratio", json_number(r.tail.ratio)}});
  }
  return json{{"T", json_number(T)}, {"G", json_number(G)}, {"rows", arr}};
}

inline std::string to_string(EpsteinMethod m) { return m == EpsteinMethod::direct ? "direct" : "continued"; }

inline json epstein_json(double a, const EpsteinValue& v) {
  return json{{"a", json_number(a)},
              {"s", json_number(v.s.real())},
              {"method", to_string(v.method)},
              {"value", json_number(v.value.real())},
              {"value_imag", json_number(v.value.imag())},
              {"certified_error", json_number(v.certified_error)}};
}

inline void write_epstein_csv(std::ostream& os, double a, const EpsteinValue& v) {
  os << "a,s,method,value,value_imag,certified_error\n";
  os << format_double(a) << ',' << format_double(v.s.real()) << ',' << to_string(v.method) << ','
     << format_double(v.value.real()) << ',' << format_double(v.value.imag()) << ','
     << format_double(v.certified_error) << '\n';
}

struct SymmetryRow {
  double a = 1.0;
  GroundExponents ground;
  SymmetryResult check;
};

inline void write_symmetry_csv(std::ostream& os, const std::vector<SymmetryRow>& rows) {
  os << "a,q,d_star,D_star,residual_symmetry,residual_literal,log_phi\n";
  for (const auto& r : rows) {
    os << format_double(r.a) << ',' << format_double(r.check.q) << ',' << format_double(r.ground.d_star) << ','
       << format_double(r.ground.D_star) << ',' << format_double(r.check.residual) << ','
       << format_double(r.check.literal_residual) << ',' << format_double(r.check.log_phi) << '\n';
  }
}

inline json symmetry_json(const std::vector<SymmetryRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"a", json_number(r.a)},
                   {"q", json_number(r.check.q)},
                   {"d_star", json_number(r.ground.d_star)},
                   {"D_star", json_number(r.ground.D_star)},
                   {"D_star_reflected", json_number(r.check.lhs)},
                   {"residual_symmetry", json_number(r.check.residual)},
                   {"residual_literal", json_number(r.check.literal_residual)},
                   {"log_phi", json_number(r.check.log_phi)}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Files

/// Writes `text` to `path` through a sibling temporary and a rename, so a
/// failed run never leaves a partial report behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move report into place at " + path.string());
  }
}

}  // namespace seba
