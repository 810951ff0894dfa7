#pragma once

#include "niga/experiments/common.hpp"

namespace niga::experiments {

/// Square [0,L]^2 with the quartic field imposed weakly on the outer boundary; either one patch
/// (conforming) or two patches split at x = L/2 and coupled weakly. The outer boundary always uses
/// the parameter-free skew variant, so only the interface treatment differs between variants.
struct CouplingParams {
  std::vector<int> degrees{2, 3, 4};
  std::vector<int> meshes{4, 8, 16, 32};  // elements per side of the whole square
  std::vector<int> cond_meshes{4, 8, 16};
  double L = 20.0;
  Material material{1000.0, 0.25};
  NitscheConfig outer = NitscheConfig::skew_free();
  NitscheConfig standard = NitscheConfig::standard();
  NitscheConfig skew = NitscheConfig::skew_free();
  double rate_tol = 0.3;
  double cond_growth_limit = 2.0;
};

inline MultiPatchModel coupling_model(const CouplingParams& prm, int p, int n, bool split,
                                      const model::VectorField& ubar) {
  MultiPatchModel m;
  if (!split) {
    m.add_patch(splines::h_refine(splines::make_unit_square(prm.L, p), n, n), prm.material);
    for (Side s : kAllSides) m.tag(0, s, dirichlet_tag(ubar));
    return m;
  }
  if (n % 2) throw DomainError("coupling: elements per side must be even to split the square");
  const double h = prm.L / 2.0;
  m.add_patch(splines::h_refine(splines::make_rectangle(0, 0, h, prm.L, p), n / 2, n), prm.material);
  m.add_patch(splines::h_refine(splines::make_rectangle(h, 0, prm.L, prm.L, p), n / 2, n), prm.material);
  for (Side s : {Side::u_min, Side::v_min, Side::v_max}) m.tag(0, s, dirichlet_tag(ubar));
  for (Side s : {Side::u_max, Side::v_min, Side::v_max}) m.tag(1, s, dirichlet_tag(ubar));
  m.interfaces.push_back({{0, Side::u_max}, {1, Side::u_min}});
  m.validate();
  return m;
}

struct CouplingVariant {
  std::string name;
  bool split;
  NitscheConfig cfg;
};

inline std::vector<CouplingVariant> coupling_variants(const CouplingParams& prm) {
  return {{"conforming", false, prm.outer}, {"standard", true, prm.standard}, {"skew", true, prm.skew}};
}

inline ExperimentReport run_coupling_statics(const CouplingParams& prm) {
  Stopwatch clock;
  ExperimentReport rep;
  rep.benchmark = "coupling";
  rep.config = {{"L", prm.L},           {"E", prm.material.E}, {"nu", prm.material.nu}, {"meshes", prm.meshes},
                {"cond_meshes", prm.cond_meshes}, {"outer", variant_name(prm.outer)}};
  const auto quartic = elastic_reference(quartic_field(4));
  const auto linear = elastic_reference(quartic_field(1));

  for (int p : prm.degrees) {
    // Linear field through the interface.
    for (const auto& v : coupling_variants(prm)) {
      if (!v.split) continue;
      const auto m = coupling_model(prm, p, prm.meshes.front(), true, linear.value);
      const auto s = solve_elastic(m, prm.outer, v.cfg);
      const double e = assembly::error_norms(FieldSolution(m, s.sys.dofs, s.x), linear).energy;
      rep.check("linear field exact, " + v.name + " p=" + std::to_string(p), e < 1e-9, "energy error " + fmt(e));
    }
    std::map<std::string, std::map<int, double>> cond;
    for (const auto& v : coupling_variants(prm)) {
      const std::string variant = v.name + ",p=" + std::to_string(p);
      for (int n : prm.meshes) {
        const auto m = coupling_model(prm, p, n, v.split, quartic.value);
        const auto s = solve_elastic(m, prm.outer, v.cfg);
        const auto err = assembly::error_norms(FieldSolution(m, s.sys.dofs, s.x), quartic);
        Cell c;
        c.mesh = mesh_label(n, n);
        c.variant = variant;
        c.h = prm.L / n;
        c.dofs = s.sys.dofs.size();
        c.energy = err.energy;
        c.l2 = err.l2;
        if (std::find(prm.cond_meshes.begin(), prm.cond_meshes.end(), n) != prm.cond_meshes.end()) {
          c.cond = linalg::condition_number(s.sys.K);
          cond[v.name][n] = *c.cond;
        }
        c.extra = {{"degree", p}, {"gamma0_interface", s.gamma_interface}};
        rep.cells.push_back(c);
      }
      // A field inside the spline space is reproduced, so a rate is only meaningful for p < 4.
      if (p < 4) {
        if (const auto rate = variant_rate(rep, variant)) {
          rep.rates[variant] = *rate;
          if (v.split) {
            rep.check("energy rate " + variant + " within " + fmt(prm.rate_tol) + " of " + std::to_string(p),
                      std::abs(*rate - p) <= prm.rate_tol, "rate " + fmt(*rate));
          }
        }
      } else if (v.split) {
        const double e = *rep.variant_cells(variant).back()->energy;
        rep.check("quartic field exact at p=4, " + v.name, e < 1e-8, "energy error " + fmt(e));
      }
    }
    bool ordered = true;
    std::string detail;
    for (int n : prm.cond_meshes) {
      ordered = ordered && cond["standard"][n] > cond["skew"][n];
      detail += mesh_label(n, n) + ": " + fmt(cond["standard"][n]) + " > " + fmt(cond["skew"][n]) + "; ";
    }
    rep.check("cond(standard) > cond(skew), p=" + std::to_string(p), ordered, detail);
    const int n0 = prm.cond_meshes.front(), n1 = prm.cond_meshes.back();
    const double growth = cond["skew"][n1] / cond["skew"][n0];
    const double growth_conf = cond["conforming"][n1] / cond["conforming"][n0];
    rep.rates["cond_growth_skew,p=" + std::to_string(p)] = growth;
    rep.rates["cond_growth_conforming,p=" + std::to_string(p)] = growth_conf;
    rep.check("cond(skew) growth " + std::to_string(n0) + "->" + std::to_string(n1) + " <= x" +
                  fmt(prm.cond_growth_limit) + ", p=" + std::to_string(p),
              growth <= prm.cond_growth_limit,
              "skew x" + fmt(growth) + " (conforming x" + fmt(growth_conf) + ", skew/conforming at " +
                  std::to_string(n1) + ": " + fmt(cond["skew"][n1] / cond["conforming"][n1]) + ")");
  }
  rep.runtime_s = clock.seconds();
  return rep;
}

}  // namespace niga::experiments
