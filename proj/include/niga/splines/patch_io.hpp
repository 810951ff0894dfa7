#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "niga/splines/nurbs_patch.hpp"

namespace niga::splines {

// Plain-text patch format (tokens separated by whitespace, '#' starts a comment):
//   dim 2
//   degree_u 2
//   knots_u 0 0 0 1 1 1
//   degree_v 2
//   knots_v 0 0 0 1 1 1
//   weights        one grid row (fixed j) per line
//   points         x y pairs, one grid row per line

inline void write_patch(std::ostream& os, const NurbsPatch& patch) {
  os << std::setprecision(17);
  os << "dim " << patch.param_dim() << '\n';
  auto write_knots = [&](const char* tag, const KnotVector& k) {
    os << "degree_" << tag << ' ' << k.degree() << '\n' << "knots_" << tag;
    for (double v : k.values()) os << ' ' << v;
    os << '\n';
  };
  write_knots("u", patch.knots_u);
  if (patch.knots_v) write_knots("v", *patch.knots_v);
  os << "weights\n";
  for (int j = 0; j < patch.n_v(); ++j) {
    for (int i = 0; i < patch.n_u(); ++i) os << (i ? " " : "") << patch.weights[patch.index(i, j)];
    os << '\n';
  }
  os << "points\n";
  for (int j = 0; j < patch.n_v(); ++j) {
    for (int i = 0; i < patch.n_u(); ++i) {
      const auto& P = patch.points[patch.index(i, j)];
      os << (i ? " " : "") << P.x() << ' ' << P.y();
    }
    os << '\n';
  }
}

inline NurbsPatch read_patch(std::istream& is) {
  std::stringstream clean;
  for (std::string line; std::getline(is, line);) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    clean << line << '\n';
  }
  auto expect = [&](const std::string& tag) {
    std::string tok;
    if (!(clean >> tok) || tok != tag) throw DomainError("patch file: expected '" + tag + "'");
  };
  auto read_int = [&]() {
    int v;
    if (!(clean >> v)) throw DomainError("patch file: expected integer");
    return v;
  };
  auto read_double = [&]() {
    double v;
    if (!(clean >> v)) throw DomainError("patch file: expected number");
    return v;
  };
  expect("dim");
  const int dim = read_int();
  if (dim != 1 && dim != 2) throw DomainError("patch file: dim must be 1 or 2");
  // Knot count is implied by the next keyword, so read until a non-number appears.
  auto read_knots = [&](const std::string& tag) {
    expect("degree_" + tag);
    const int p = read_int();
    expect("knots_" + tag);
    std::vector<double> values;
    while (true) {
      const auto pos = clean.tellg();
      double v;
      if (clean >> v) {
        values.push_back(v);
      } else {
        clean.clear();
        clean.seekg(pos);
        break;
      }
    }
    return KnotVector(std::move(values), p);
  };
  NurbsPatch patch;
  patch.knots_u = read_knots("u");
  if (dim == 2) patch.knots_v = read_knots("v");
  expect("weights");
  patch.weights.resize(patch.size());
  for (double& w : patch.weights) w = read_double();
  expect("points");
  patch.points.resize(patch.size());
  for (auto& P : patch.points) {
    P.x() = read_double();
    P.y() = read_double();
  }
  patch.validate();
  return patch;
}

inline NurbsPatch load_patch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open patch file " + path);
  return read_patch(in);
}

inline void save_patch(const std::string& path, const NurbsPatch& patch) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write patch file " + path);
  write_patch(out, patch);
}

}  // namespace niga::splines
