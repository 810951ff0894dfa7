#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "niga/errors.hpp"

namespace niga::experiments {

using Json = nlohmann::ordered_json;

/// One benchmark cell: a mesh (and variant) with its measured quantities.
struct Cell {
  std::string mesh;
  std::string variant;
  double h = 0.0;
  int dofs = 0;
  std::optional<double> l2;
  std::optional<double> energy;
  std::optional<double> cond;
  std::optional<int> newton_iters;
  std::optional<int> outliers;
  bool converged = true;
  Json extra = Json::object();
};

/// A named pass/fail check evaluated by a driver.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string benchmark;
  Json config = Json::object();
  std::vector<Cell> cells;
  Json rates = Json::object();
  std::vector<Check> checks;
  double runtime_s = 0.0;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }

  std::vector<const Cell*> variant_cells(const std::string& variant) const {
    std::vector<const Cell*> out;
    for (const auto& c : cells) {
      if (c.variant == variant) out.push_back(&c);
    }
    return out;
  }
};

/// Least-squares slope of log(err) against log(h) over the last `window` points.
/// Refuses (DomainError) with fewer than `window` points or non-positive data.
inline double fit_rate(const std::vector<double>& h, const std::vector<double>& err, std::size_t window = 3) {
  if (h.size() != err.size()) throw DomainError("fit_rate: size mismatch");
  if (window < 3 || h.size() < window) throw DomainError("fit_rate: at least 3 meshes are required for a rate");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t first = h.size() - window;
  for (std::size_t i = first; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(err[i] > 0.0)) throw DomainError("fit_rate: h and errors must be positive");
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(window);
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw DomainError("fit_rate: mesh sizes must differ");
  return (n * sxy - sx * sy) / den;
}

/// Rate of a variant's energy (or l2) errors; nullopt when fewer than 3 cells carry the error.
inline std::optional<double> variant_rate(const ExperimentReport& r, const std::string& variant, bool energy = true) {
  std::vector<double> h, e;
  for (const Cell* c : r.variant_cells(variant)) {
    const auto& v = energy ? c->energy : c->l2;
    if (!v) continue;
    h.push_back(c->h);
    e.push_back(*v);
  }
  if (h.size() < 3) return std::nullopt;
  return fit_rate(h, e);
}

inline Json to_json(const Cell& c) {
  Json j;
  j["mesh"] = c.mesh;
  if (!c.variant.empty()) j["variant"] = c.variant;
  j["h"] = c.h;
  j["dofs"] = c.dofs;
  Json errors = Json::object();
  errors["l2"] = c.l2 ? Json(*c.l2) : Json(nullptr);
  errors["energy"] = c.energy ? Json(*c.energy) : Json(nullptr);
  j["errors"] = errors;
  j["cond"] = c.cond ? Json(*c.cond) : Json(nullptr);
  j["newton_iters"] = c.newton_iters ? Json(*c.newton_iters) : Json(nullptr);
  j["outliers"] = c.outliers ? Json(*c.outliers) : Json(nullptr);
  j["converged"] = c.converged;
  for (const auto& [k, v] : c.extra.items()) j[k] = v;
  return j;
}

inline Json to_json(const ExperimentReport& r) {
  Json j;
  j["benchmark"] = r.benchmark;
  j["config"] = r.config;
  j["cells"] = Json::array();
  for (const auto& c : r.cells) j["cells"].push_back(to_json(c));
  j["rates"] = r.rates;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["passed"] = r.passed();
  j["runtime_s"] = r.runtime_s;
  return j;
}

/// Plain CSV table with a header line; numbers are written with 12 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n' << std::setprecision(12);
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) throw DomainError("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("read_csv: missing header");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("read_csv: not a number: '" + cell + "'");
      }
    }
    if (row.size() != t.header.size()) throw ConfigError("read_csv: row width differs from header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void save_csv(const std::filesystem::path& path, const CsvTable& t) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  write_csv(os, t);
}

inline void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << std::setw(2) << j << '\n';
}

/// Wall-clock stopwatch in seconds.
class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace niga::experiments
