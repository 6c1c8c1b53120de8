#pragma once

// JSON literals and CSV datasets.

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gml/amalgam.hpp"
#include "gml/fio.hpp"
#include "gml/seq_algebra.hpp"

namespace gml::io {

using json = nlohmann::json;

// --- sequences: {"dim": m, "entries": [[[n1,...,nm], re, im], ...]} ---

inline json to_json(const SparseSeq& a) {
  json entries = json::array();
  for (const auto& [n, v] : a.entries()) entries.push_back(json::array({n, v.real(), v.imag()}));
  return {{"dim", a.dim()}, {"entries", entries}};
}

inline SparseSeq sequence_from_json(const json& j) {
  SparseSeq a(j.at("dim").get<int>());
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("sequence entry must be [index, re, im]");
    a.add(e[0].get<std::vector<long>>(), cplx(e[1].get<double>(), e[2].get<double>()));
  }
  return a;
}

// --- signals: [[re, im], ...]; fields: row-major N x N arrays of [re, im] ---

inline json to_json(const Signal& f) {
  json out = json::array();
  for (Eigen::Index t = 0; t < f.size(); ++t) out.push_back({f(t).real(), f(t).imag()});
  return out;
}

inline Signal signal_from_json(const json& j) {
  Signal f(static_cast<Eigen::Index>(j.size()));
  for (size_t t = 0; t < j.size(); ++t) f(t) = cplx(j[t].at(0).get<double>(), j[t].at(1).get<double>());
  return f;
}

inline json field_to_json(const Eigen::MatrixXcd& c) {
  json rows = json::array();
  for (Eigen::Index k = 0; k < c.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index l = 0; l < c.cols(); ++l) row.push_back({c(k, l).real(), c(k, l).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline Eigen::MatrixXcd field_from_json(const json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd c(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (static_cast<Eigen::Index>(j[k].size()) != n) throw std::invalid_argument("field must be N x N");
    for (Eigen::Index l = 0; l < n; ++l) c(k, l) = cplx(j[k][l].at(0).get<double>(), j[k][l].at(1).get<double>());
  }
  return c;
}

// --- symplectic data ---

inline json to_json(const SympMat& m) { return json::array({{m.a(), m.b()}, {m.c(), m.d()}}); }

inline SympMat symp_from_json(const json& j, long n) {
  return {j.at(0).at(0).get<long>(), j.at(0).at(1).get<long>(), j.at(1).at(0).get<long>(), j.at(1).at(1).get<long>(), n};
}

inline json to_json(const GeneratorWord& w) {
  json out = json::array();
  for (const auto& g : w) out.push_back(to_string(g));
  return out;
}

inline GeneratorWord word_from_json(const json& j) {
  static const std::regex token(R"((Chirp|Dilate)\((-?\d+)\))");
  GeneratorWord w;
  for (const auto& t : j) {
    const auto s = t.get<std::string>();
    std::smatch m;
    if (s == "J") {
      w.push_back(Generator::j());
    } else if (std::regex_match(s, m, token)) {
      const long v = std::stol(m[2].str());
      w.push_back(m[1] == "Chirp" ? Generator::chirp(v) : Generator::dilate(v));
    } else {
      throw std::invalid_argument("unknown generator token '" + s + "'");
    }
  }
  return w;
}

inline json to_json(const FioReport& r) {
  return {{"quasi_norm", r.quasi_norm}, {"tail_fraction", r.tail_fraction}, {"decay_exponent", r.decay_exponent}};
}

// --- CSV datasets ---

struct Dataset {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const Dataset& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (size_t i = 0; i < d.columns.size(); ++i) out << (i ? "," : "") << d.columns[i];
  out << '\n';
  for (const auto& row : d.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

/// (mu_k, mu_l, value) over centered offsets, lexicographic.
inline Dataset profile_dataset(std::string name, const DecayProfile& d, const std::string& value_column = "value") {
  Dataset out{std::move(name), {"mu_k", "mu_l", value_column}, {}};
  const long n = d.N(), half = n / 2;
  for (long k = -half; k <= n - 1 - half; ++k)
    for (long l = -half; l <= n - 1 - half; ++l)
      out.rows.push_back({double(k), double(l), d.at({k, l})});
  return out;
}

/// (k, l, re, im) in row-major order.
inline Dataset field_dataset(std::string name, const Eigen::MatrixXcd& c) {
  Dataset out{std::move(name), {"k", "l", "re", "im"}, {}};
  for (Eigen::Index k = 0; k < c.rows(); ++k)
    for (Eigen::Index l = 0; l < c.cols(); ++l)
      out.rows.push_back({double(k), double(l), c(k, l).real(), c(k, l).imag()});
  return out;
}

/// (mu_k, mu_l, lam_k, lam_l, re, im) for every entry.
inline Dataset gabor_dataset(std::string name, const GaborMatrix& m) {
  const long n = lattice_side(m);
  Dataset out{std::move(name), {"mu_k", "mu_l", "lam_k", "lam_l", "re", "im"}, {}};
  out.rows.reserve(m.size());
  for (long mu = 0; mu < n * n; ++mu)
    for (long lam = 0; lam < n * n; ++lam) {
      const cplx v = m(mu, lam);
      out.rows.push_back({double(mu / n), double(mu % n), double(lam / n), double(lam % n), v.real(), v.imag()});
    }
  return out;
}

inline Dataset sequence_dataset(std::string name, const SparseSeq& a) {
  Dataset out{std::move(name), {}, {}};
  for (int k = 0; k < a.dim(); ++k) out.columns.push_back("n" + std::to_string(k + 1));
  out.columns.insert(out.columns.end(), {"re", "im"});
  for (const auto& [n, v] : a.entries()) {
    std::vector<double> row(n.begin(), n.end());
    row.push_back(v.real());
    row.push_back(v.imag());
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// Grid read from CSV rows (x, y, value) with a header line. The points must
/// form the full grid -R + i/M, i = 0..2RM, in both axes.
inline SampledField field_from_csv(std::istream& in) {
  std::string line;
  std::getline(in, line);
  std::vector<std::array<double, 3>> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::array<double, 3> p{};
    char comma = 0;
    if (!(ss >> p[0] >> comma >> p[1] >> comma >> p[2])) throw std::invalid_argument("bad CSV row: " + line);
    pts.push_back(p);
  }
  if (pts.empty()) throw std::invalid_argument("empty field CSV");
  double lo = pts[0][0], hi = pts[0][0];
  for (const auto& p : pts) {
    lo = std::min({lo, p[0], p[1]});
    hi = std::max({hi, p[0], p[1]});
  }
  const auto side = static_cast<long>(std::lround(std::sqrt(static_cast<double>(pts.size()))));
  const long extent = std::lround(-lo);
  if (side * side != static_cast<long>(pts.size()) || extent < 1 || std::abs(hi + lo) > 1e-9 || (side - 1) % (2 * extent) != 0) {
    throw std::invalid_argument("field CSV is not a complete centered grid");
  }
  const long per_cell = (side - 1) / (2 * extent);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(side, side);
  for (const auto& p : pts) {
    const long i = std::lround((p[0] + extent) * per_cell), j = std::lround((p[1] + extent) * per_cell);
    v(i, j) = p[2];
  }
  return {extent, per_cell, std::move(v)};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

}  // namespace gml::io
