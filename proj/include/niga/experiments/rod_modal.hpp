#pragma once

#include <complex>
#include <numbers>

#include "niga/assembly/rod.hpp"
#include "niga/experiments/common.hpp"
#include "niga/experiments/outliers.hpp"

namespace niga::experiments {

/// Longitudinal vibration of the unit rod (E = rho = 1, omega_n = n pi) split into equal patches
/// coupled weakly at their common ends. End conditions u(0) = u(1) = 0 are either removed from the
/// unknowns (strong) or imposed weakly with the coupling variant.
struct RodParams {
  int degree = 2;
  int patches = 4;
  int elements_per_patch = 128;
  NitscheConfig cfg = NitscheConfig::standard();
  bool strong_ends = true;
  double delta = 0.10;
  int mode_samples = 20;  // samples per element for exported mode shapes
};

struct RodSpectrum {
  int N = 0;
  std::vector<double> omega;       // ascending
  std::vector<double> normalized;  // omega_n / (n pi)
  OutlierResult outliers;
  std::vector<double> localization;  // per outlier mode: strain energy share of interface-adjacent elements
  double max_imag_ratio = 0.0;       // max |Im lambda| / max |lambda|
  MultiPatchModel model;
  model::DofMap dofs;
  std::vector<int> kept;           // global dof of each reduced unknown
  Eigen::MatrixXcd outlier_modes;  // reduced coordinates, one column per outlier
};

inline MultiPatchModel rod_model(int patches, int elements_per_patch, int p) {
  MultiPatchModel m;
  m.components = 1;
  for (int k = 0; k < patches; ++k) {
    const auto r = splines::make_rod(1.0 / patches, p, static_cast<double>(k) / patches);
    m.add_patch(splines::h_refine(r, elements_per_patch), {1.0, 0.0, model::MaterialMode::rod});
  }
  return m;
}

/// Strain energy int E |u'|^2 of a (complex) mode per element, keyed by (patch, element index).
inline std::vector<std::vector<double>> rod_element_energy(const MultiPatchModel& m, const model::DofMap& dofs,
                                                           const Eigen::VectorXcd& u) {
  std::vector<std::vector<double>> out(m.num_patches());
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    const int n = patch.degree_u() + 1;
    for (const auto& e : model::patch_elements(patch, p)) {
      double s = 0.0;
      for (const auto& q : model::element_points(e, n, false)) {
        const auto cp = splines::eval_nurbs_1d(patch, q.u);
        std::complex<double> du = 0.0;
        const auto idx = assembly::local_dofs(dofs, p, cp.basis);
        for (std::size_t i = 0; i < idx.size(); ++i) du += cp.dR[i] * u[idx[i]];
        s += m.materials[p].E * std::norm(du) * std::abs(cp.dx) * q.w;
      }
      out[p].push_back(s);
    }
  }
  return out;
}

inline RodSpectrum run_rod_spectrum(const RodParams& prm) {
  RodSpectrum r;
  r.model = rod_model(prm.patches, prm.elements_per_patch, prm.degree);
  r.dofs = model::DofMap(r.model, 1);
  const auto rm = assembly::assemble_rod(r.model, r.dofs);
  std::vector<nitsche::NitschePoint> pts;
  for (int k = 0; k + 1 < prm.patches; ++k) pts.push_back(nitsche::rod_coupling_point(r.model, r.dofs, k, k + 1));
  if (!prm.strong_ends) {
    pts.push_back(nitsche::rod_end_point(r.model, r.dofs, 0, false));
    pts.push_back(nitsche::rod_end_point(r.model, r.dofs, prm.patches - 1, true));
  }
  AssembledSystem sys{rm.K, Eigen::VectorXd::Zero(r.dofs.size()), r.dofs};
  std::vector<char> fixed(r.dofs.size(), 0);
  if (prm.strong_ends) {
    fixed[r.dofs(0, 0, 0)] = 1;
    fixed[r.dofs(prm.patches - 1, r.model.patches.back().size() - 1, 0)] = 1;
  }
  if (!pts.empty()) nitsche::add_terms(sys, rm.K, pts, prm.cfg, {}, fixed);
  for (int i = 0; i < r.dofs.size(); ++i) {
    if (!fixed[i]) r.kept.push_back(i);
  }
  const Eigen::MatrixXd Kd(sys.K), Md(rm.M);
  const int N = static_cast<int>(r.kept.size());
  Eigen::MatrixXd K(N, N), M(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      K(i, j) = Kd(r.kept[i], r.kept[j]);
      M(i, j) = Md(r.kept[i], r.kept[j]);
    }
  }
  r.N = N;
  // omega = sqrt(|lambda|); the skew variant's operator is nonsymmetric and its spectrum can be complex.
  const auto eig = linalg::generalized_nonsymmetric_eig(K, M, true);
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::vector<double> w(N);
  double max_imag = 0.0, max_abs = 0.0;
  for (int i = 0; i < N; ++i) {
    w[i] = std::sqrt(std::abs(eig.values[i]));
    max_imag = std::max(max_imag, std::abs(eig.values[i].imag()));
    max_abs = std::max(max_abs, std::abs(eig.values[i]));
  }
  r.max_imag_ratio = max_abs > 0 ? max_imag / max_abs : 0.0;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
  for (int i = 0; i < N; ++i) {
    r.omega.push_back(w[order[i]]);
    r.normalized.push_back(w[order[i]] / ((i + 1) * std::numbers::pi));
  }
  r.outliers = detect_outliers(r.omega, prm.delta);

  // Interface-adjacent elements: the p elements on either side of every patch junction.
  r.outlier_modes.resize(N, r.outliers.count);
  for (int k = 0; k < r.outliers.count; ++k) {
    const Eigen::VectorXcd v = eig.vectors.col(order[r.outliers.indices[k]]);
    r.outlier_modes.col(k) = v;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(r.dofs.size());
    for (int i = 0; i < N; ++i) full[r.kept[i]] = v[i];
    const auto energy = rod_element_energy(r.model, r.dofs, full);
    double total = 0.0, near = 0.0;
    for (int p = 0; p < prm.patches; ++p) {
      const int ne = static_cast<int>(energy[p].size());
      for (int e = 0; e < ne; ++e) {
        total += energy[p][e];
        const bool left_junction = p > 0 && e < prm.degree;
        const bool right_junction = p + 1 < prm.patches && e >= ne - prm.degree;
        if (left_junction || right_junction) near += energy[p][e];
      }
    }
    r.localization.push_back(total > 0 ? near / total : 0.0);
  }
  return r;
}

/// Sampled real part of each outlier mode (normalized to unit max modulus), one column per mode.
inline CsvTable rod_mode_table(const RodSpectrum& r, int samples_per_element) {
  CsvTable t;
  t.header = {"x"};
  for (int k = 0; k < r.outliers.count; ++k) t.header.push_back("mode_" + std::to_string(r.outliers.indices[k] + 1));
  std::vector<Eigen::VectorXcd> full;
  for (int k = 0; k < r.outliers.count; ++k) {
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(r.dofs.size());
    for (int i = 0; i < r.N; ++i) f[r.kept[i]] = r.outlier_modes(i, k);
    // Rotate so the largest coefficient is real, then scale to unit modulus.
    Eigen::Index imax = 0;
    f.cwiseAbs().maxCoeff(&imax);
    if (std::abs(f[imax]) > 0) f /= f[imax];
    full.push_back(f);
  }
  for (int p = 0; p < r.model.num_patches(); ++p) {
    const auto& patch = r.model.patches[p];
    for (const auto& e : model::patch_elements(patch, p)) {
      for (int s = 0; s < samples_per_element; ++s) {
        const double u = e.u0 + (e.u1 - e.u0) * s / samples_per_element;
        const auto cp = splines::eval_nurbs_1d(patch, u);
        const auto idx = assembly::local_dofs(r.dofs, p, cp.basis);
        std::vector<double> row{cp.x};
        for (const auto& f : full) {
          std::complex<double> val = 0.0;
          for (std::size_t i = 0; i < idx.size(); ++i) val += cp.R[i] * f[idx[i]];
          row.push_back(val.real());
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

inline CsvTable rod_spectrum_table(const RodSpectrum& r) {
  CsvTable t;
  t.header = {"n_over_N", "omega_ratio", "omega"};
  for (int i = 0; i < r.N; ++i) t.rows.push_back({(i + 1.0) / r.N, r.normalized[i], r.omega[i]});
  return t;
}

struct RodModalParams {
  std::vector<int> degrees{2, 3, 4, 5};
  int patches = 4;
  int elements_per_patch = 128;
  bool strong_ends = true;
  double delta = 0.10;
  double low_band = 0.2;         // n/N below which the conforming p = 2 spectrum must match n pi
  double low_tol = 0.01;
  int expected_standard = 6;     // p = 2 outlier counts of the standard and skew couplings
  int expected_skew = 9;
  int count_tol = 2;
  double localization_min = 0.5;
  NitscheConfig standard = NitscheConfig::standard();
  NitscheConfig skew = NitscheConfig::skew_free();
};

struct RodModalRun {
  ExperimentReport report;
  std::map<std::string, RodSpectrum> spectra;  // keyed by cell variant
};

inline RodModalRun run_rod_modal(const RodModalParams& prm) {
  Stopwatch clock;
  RodModalRun run;
  auto& rep = run.report;
  rep.benchmark = "rod-modal";
  rep.config = {{"patches", prm.patches}, {"elements_per_patch", prm.elements_per_patch},
                {"strong_ends", prm.strong_ends}, {"delta", prm.delta}};
  const int total = prm.patches * prm.elements_per_patch;
  for (int p : prm.degrees) {
    struct Case {
      std::string name;
      int patches;
      NitscheConfig cfg;
    };
    const std::vector<Case> cases{{"conforming", 1, prm.standard}, {"standard", prm.patches, prm.standard},
                                  {"skew", prm.patches, prm.skew}};
    std::map<std::string, int> count;
    for (const auto& cs : cases) {
      RodParams rp;
      rp.degree = p;
      rp.patches = cs.patches;
      rp.elements_per_patch = total / cs.patches;
      rp.cfg = cs.cfg;
      rp.strong_ends = prm.strong_ends;
      rp.delta = prm.delta;
      auto spec = run_rod_spectrum(rp);
      Cell c;
      c.mesh = std::to_string(cs.patches) + "x" + std::to_string(rp.elements_per_patch);
      c.variant = cs.name + ",p=" + std::to_string(p);
      c.h = 1.0 / total;
      c.dofs = spec.N;
      c.outliers = spec.outliers.count;
      double loc_min = 1.0;
      for (double l : spec.localization) loc_min = std::min(loc_min, l);
      c.extra = {{"degree", p}, {"localization", spec.localization}, {"max_imag_ratio", spec.max_imag_ratio}};
      count[cs.name] = spec.outliers.count;
      if (cs.name == "conforming" && p == 2) {
        double worst = 0.0;
        for (int i = 0; i < spec.N; ++i) {
          if ((i + 1.0) / spec.N < prm.low_band) worst = std::max(worst, std::abs(spec.normalized[i] - 1.0));
        }
        rep.check("conforming p=2 matches n*pi within " + fmt(100 * prm.low_tol) + "% for n/N < " + fmt(prm.low_band),
                  worst <= prm.low_tol, "max deviation " + fmt(worst));
      }
      if (p == 2 && cs.name != "conforming") {
        const int expected = cs.name == "skew" ? prm.expected_skew : prm.expected_standard;
        rep.check(cs.name + " p=2 outlier count " + std::to_string(expected) + " +- " + std::to_string(prm.count_tol),
                  std::abs(spec.outliers.count - expected) <= prm.count_tol,
                  std::to_string(spec.outliers.count) + " of " + std::to_string(spec.N));
        rep.check(cs.name + " p=2 outlier modes localized at interfaces (>= " + fmt(100 * prm.localization_min) + "%)",
                  spec.outliers.count > 0 && loc_min >= prm.localization_min, "min share " + fmt(loc_min));
      }
      rep.cells.push_back(c);
      run.spectra[c.variant] = std::move(spec);
    }
    rep.check("p=" + std::to_string(p) + ": coupled runs have more outliers than conforming",
              count["standard"] > count["conforming"] && count["skew"] > count["conforming"],
              "conforming " + std::to_string(count["conforming"]) + ", standard " + std::to_string(count["standard"]) +
                  ", skew " + std::to_string(count["skew"]));
    if (p == 2) {
      rep.check("p=2: skew has more outliers than standard", count["skew"] > count["standard"],
                std::to_string(count["skew"]) + " vs " + std::to_string(count["standard"]));
    }
  }
  rep.runtime_s = clock.seconds();
  return run;
}

}  // namespace niga::experiments
