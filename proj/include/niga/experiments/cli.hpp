#pragma once

#include <cctype>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "niga/experiments/block.hpp"
#include "niga/experiments/config.hpp"
#include "niga/experiments/coupling.hpp"
#include "niga/experiments/hertz.hpp"
#include "niga/experiments/patch_tests.hpp"
#include "niga/experiments/plate.hpp"
#include "niga/experiments/rod_modal.hpp"
#include "niga/splines/patch_io.hpp"

namespace niga::experiments {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverError = 1;
inline constexpr int kExitAssertionFailure = 2;
inline constexpr int kExitUsage = 64;

/// Benchmark settings after merging the config file with the command-line flags (flags win).
struct CliSettings {
  KeyValueConfig values;
  std::filesystem::path out = "niga_out";

  std::optional<int> opt_int(const std::string& key) const {
    if (!values.has(key)) return std::nullopt;
    return values.get_int(key, 0);
  }
  std::optional<double> opt_double(const std::string& key) const {
    if (!values.has(key)) return std::nullopt;
    return values.get_double(key, 0.0);
  }
  double num(const std::string& key, double fallback) const { return values.get_double(key, fallback); }
  int integer(const std::string& key, int fallback) const { return values.get_int(key, fallback); }

  std::vector<int> degrees(std::vector<int> fallback) const {
    if (const auto d = opt_int("degree")) {
      if (*d < 1 || *d > 5) throw ConfigError("degree must be in [1,5]");
      return {*d};
    }
    return fallback;
  }

  /// base * 2^k for k < refinements.
  std::vector<int> meshes(int base, int default_refinements) const {
    const int r = integer("refinements", default_refinements);
    if (r < 1 || r > 10) throw ConfigError("refinements must be in [1,10]");
    std::vector<int> out;
    for (int k = 0; k < r; ++k) out.push_back(base << k);
    return out;
  }

  /// Nitsche variant from theta / gamma, starting from `base`.
  NitscheConfig nitsche(NitscheConfig base) const {
    if (const auto t = opt_double("theta")) {
      base.theta = *t;
      if (!values.has("gamma") && base.gamma.kind == nitsche::GammaKind::parameter_free && *t != -1.0) {
        base.gamma = GammaPolicy::eigen_scaled();
      }
    }
    if (values.has("gamma")) base.gamma = GammaPolicy::parse(values.get("gamma", ""));
    base.validate();
    return base;
  }

  bool overrides_nitsche() const { return values.has("theta") || values.has("gamma"); }
};

/// A finished benchmark run: the report and its CSV tables keyed by file stem.
struct CliRun {
  ExperimentReport report;
  std::map<std::string, CsvTable> tables;
  std::vector<std::string> notes;  // extra lines for the console summary
};

inline std::string file_stem(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

/// Per-variant convergence tables: h, dofs, errors, cond, Newton iterations, outliers, converged.
/// Absent values are written as nan.
inline void add_convergence_tables(CliRun& run) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto val = [nan](const auto& o) { return o ? static_cast<double>(*o) : nan; };
  std::map<std::string, CsvTable> tables;
  for (const auto& c : run.report.cells) {
    auto& t = tables[c.variant];
    t.header = {"h", "dofs", "l2", "energy", "cond", "newton_iters", "outliers", "converged"};
    t.rows.push_back({c.h, double(c.dofs), val(c.l2), val(c.energy), val(c.cond), val(c.newton_iters),
                      val(c.outliers), c.converged ? 1.0 : 0.0});
  }
  for (auto& [variant, t] : tables) run.tables["convergence_" + file_stem(variant.empty() ? "all" : variant)] = std::move(t);
}

inline CliRun cli_patch_test(const CliSettings& s) {
  s.values.require_known({"degree", "order", "refinements", "theta", "gamma", "L", "E", "nu", "tol"});
  PatchTestParams base;
  base.elements = 1 << s.integer("refinements", 2);
  base.L = s.num("L", base.L);
  base.material = Material{s.num("E", base.material.E), s.num("nu", base.material.nu)};
  base.tol = s.num("tol", base.tol);
  base.cfg = s.nitsche(base.cfg);
  std::vector<int> orders{1, 2, 3, 4};
  if (const auto o = s.opt_int("order")) {
    if (*o < 1 || *o > 4) throw ConfigError("order must be in [1,4]");
    orders = {*o};
  }
  CliRun run;
  run.report = patch_test_report(s.degrees({2, 3, 4}), orders, base);
  CsvTable t{{"degree", "order", "energy_error", "pass", "expected_pass"}, {}};
  for (const auto& c : run.report.cells) {
    const bool pass = c.extra["pass"].get<bool>(), expected = c.extra["expected_pass"].get<bool>();
    t.rows.push_back({c.extra["degree"].get<double>(), c.extra["order"].get<double>(), *c.energy, pass ? 1.0 : 0.0,
                      expected ? 1.0 : 0.0});
    run.notes.push_back(c.variant + ": " + (pass ? "pass" : "fail") + (pass == expected ? " (expected)" : " (UNEXPECTED)") +
                        ", energy error " + fmt(*c.energy));
  }
  run.tables["patch_table"] = std::move(t);
  return run;
}

inline CliRun cli_circle_test(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "R", "E", "nu", "geometry_file"});
  CircleTestParams prm;
  prm.degrees = s.degrees(prm.degrees);
  prm.meshes = s.meshes(2, 5);
  prm.R = s.num("R", prm.R);
  prm.material = Material{s.num("E", prm.material.E), s.num("nu", prm.material.nu)};
  prm.variants = {s.nitsche(prm.variants.front())};
  if (s.values.has("geometry_file")) prm.geometry = splines::load_patch(s.values.get("geometry_file", ""));
  CliRun run;
  run.report = run_circular_patch_test(prm);
  add_convergence_tables(run);
  return run;
}

inline CliRun cli_kirchhoff(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "E", "nu", "thickness", "q0"});
  PlateParams prm;
  prm.degrees = s.degrees(prm.degrees);
  prm.meshes = s.meshes(2, 4);
  prm.E = s.num("E", prm.E);
  prm.nu = s.num("nu", prm.nu);
  prm.thickness = s.num("thickness", prm.thickness);
  prm.q0 = s.num("q0", prm.q0);
  prm.cfg = s.nitsche(prm.cfg);
  CliRun run;
  run.report = run_kirchhoff_plate(prm);
  add_convergence_tables(run);
  return run;
}

inline CliRun cli_coupling(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "L", "E", "nu"});
  CouplingParams prm;
  prm.degrees = s.degrees(prm.degrees);
  prm.meshes = s.meshes(4, 4);
  prm.cond_meshes.assign(prm.meshes.begin(), prm.meshes.begin() + std::min<std::size_t>(3, prm.meshes.size()));
  prm.L = s.num("L", prm.L);
  prm.material = Material{s.num("E", prm.material.E), s.num("nu", prm.material.nu)};
  // A user variant replaces the coupled variant of the same family.
  if (s.overrides_nitsche()) {
    const NitscheConfig cfg = s.nitsche(prm.skew);
    (cfg.theta == -1.0 ? prm.skew : prm.standard) = cfg;
  }
  CliRun run;
  run.report = run_coupling_statics(prm);
  add_convergence_tables(run);
  return run;
}

inline CliRun cli_rod_modal(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "patches", "delta", "strong_ends"});
  RodModalParams prm;
  prm.degrees = s.degrees(prm.degrees);
  const int r = s.integer("refinements", 7);
  if (r < 1 || r > 10) throw ConfigError("refinements must be in [1,10]");
  prm.elements_per_patch = 1 << r;
  prm.patches = s.integer("patches", prm.patches);
  prm.delta = s.num("delta", prm.delta);
  prm.strong_ends = s.integer("strong_ends", prm.strong_ends ? 1 : 0) != 0;
  if (s.overrides_nitsche()) {
    const NitscheConfig cfg = s.nitsche(prm.skew);
    (cfg.theta == -1.0 ? prm.skew : prm.standard) = cfg;
  }
  CliRun run;
  auto modal = run_rod_modal(prm);
  run.report = std::move(modal.report);
  for (const auto& [variant, spec] : modal.spectra) {
    run.tables["spectrum_" + file_stem(variant)] = rod_spectrum_table(spec);
    if (spec.outliers.count > 0) run.tables["outlier_modes_" + file_stem(variant)] = rod_mode_table(spec, 4);
  }
  add_convergence_tables(run);
  return run;
}

inline CliRun cli_hertz(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "E", "nu", "r", "force", "reference_mesh", "max_iter",
                          "tol", "touch_start"});
  HertzParams prm;
  const auto deg = s.degrees({prm.degree});
  prm.degree = deg.front();
  prm.meshes = s.meshes(4, 5);
  prm.E = s.num("E", prm.E);
  prm.nu = s.num("nu", prm.nu);
  prm.r = s.num("r", prm.r);
  if (const auto f = s.opt_double("force")) prm.force = *f;
  prm.reference_mesh = s.integer("reference_mesh", prm.reference_mesh);
  prm.max_iter = s.integer("max_iter", prm.max_iter);
  prm.tol = s.num("tol", prm.tol);
  prm.touch_start = s.integer("touch_start", 1) != 0;
  if (const auto t = s.opt_double("theta")) prm.thetas = {*t};
  if (s.values.has("gamma")) {
    const auto g = GammaPolicy::parse(s.values.get("gamma", ""));
    if (g.kind == nitsche::GammaKind::parameter_free) throw ConfigError("hertz: contact needs gamma0 > 0");
    if (g.kind == nitsche::GammaKind::eigen_scaled) {
      if (!(g.value > 0.0)) throw ConfigError("hertz: gamma multiplier must be positive");
      prm.gamma_divisors = {2.0 / g.value};
    } else {
      prm.gamma_fixed = g.value;
    }
  }
  CliRun run;
  auto h = run_hertz(prm);
  run.report = std::move(h.report);
  for (auto& [name, t] : h.profiles) run.tables[file_stem(name)] = std::move(t);
  run.tables["newton_iterations"] = std::move(h.iterations);
  for (const auto& c : run.report.cells) {
    if (!c.converged) run.notes.push_back("not converged: " + c.variant + " on " + c.mesh + " after " +
                                          std::to_string(*c.newton_iters) + " iterations");
  }
  add_convergence_tables(run);
  return run;
}

inline CliRun cli_block(const CliSettings& s) {
  s.values.require_known({"degree", "refinements", "theta", "gamma", "E", "nu", "pressure", "samples"});
  BlockParams prm;
  prm.degree = s.degrees({prm.degree}).front();
  const int r = s.integer("refinements", 0);
  if (r < 0 || r > 5) throw ConfigError("block: refinements must be in [0,5]");
  for (auto* mesh : {&prm.lower_mesh, &prm.upper_mesh}) {
    for (int& n : *mesh) n <<= r;
  }
  prm.E = s.num("E", prm.E);
  prm.nu = s.num("nu", prm.nu);
  prm.pressure = s.num("pressure", prm.pressure);
  prm.samples = s.integer("samples", prm.samples);
  auto variants = block_variants();
  if (const auto t = s.opt_double("theta")) {
    variants = {{false, *t}, {true, *t}};
  }
  if (s.values.has("gamma")) {
    const auto g = GammaPolicy::parse(s.values.get("gamma", ""));
    if (g.kind == nitsche::GammaKind::parameter_free) throw ConfigError("block: contact needs gamma0 > 0");
    if (g.kind == nitsche::GammaKind::eigen_scaled) {
      prm.gamma_multiplier = g.value;
    } else {
      prm.gamma_fixed = g.value;
    }
  }
  CliRun run;
  auto b = run_block_contact(prm, variants);
  run.report = std::move(b.report);
  for (auto& [variant, t] : b.error_fields) run.tables["errors_" + file_stem(variant)] = std::move(t);
  run.tables["error_ranges"] = std::move(b.ranges);
  return run;
}

inline const std::map<std::string, std::function<CliRun(const CliSettings&)>>& cli_commands() {
  static const std::map<std::string, std::function<CliRun(const CliSettings&)>> commands{
      {"patch-test", cli_patch_test}, {"circle-test", cli_circle_test}, {"kirchhoff", cli_kirchhoff},
      {"coupling", cli_coupling},     {"rod-modal", cli_rod_modal},     {"hertz", cli_hertz},
      {"block", cli_block}};
  return commands;
}

/// Writes report.json and the CSV tables of a run into `dir`.
inline void write_run(const std::filesystem::path& dir, const CliRun& run) {
  std::filesystem::create_directories(dir);
  save_json(dir / "report.json", to_json(run.report));
  for (const auto& [name, t] : run.tables) save_csv(dir / (name + ".csv"), t);
}

/// Command-line front end. Exit codes: 0 success, 2 benchmark check failed, 1 solver error, 64 usage.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Isogeometric Nitsche benchmarks"};
  app.require_subcommand(1);
  struct Flags {
    std::optional<int> degree, order, refinements;
    std::optional<double> theta;
    std::optional<std::string> gamma, config, geometry;
    std::string out = "niga_out";
  };
  std::map<std::string, Flags> flags;
  for (const auto& [name, fn] : cli_commands()) {
    auto* sub = app.add_subcommand(name);
    auto& f = flags[name];
    sub->add_option("--degree", f.degree, "spline degree");
    if (name == "patch-test") sub->add_option("--order", f.order, "polynomial order of the imposed field (1..4)");
    sub->add_option("--refinements", f.refinements, "number of meshes (uniform halving)");
    sub->add_option("--theta", f.theta, "Nitsche parameter: 1 standard, -1 skew-symmetric");
    sub->add_option("--gamma", f.gamma, "free | eigen:<m> | fixed:<v> | fixed:tiny");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--config", f.config, "key = value settings file");
    if (name == "circle-test") sub->add_option("--geometry-file", f.geometry, "patch file replacing the disk");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Flags& f = flags.at(name);
  CliSettings settings;
  CliRun run;
  try {
    if (f.config) settings.values = KeyValueConfig::load(*f.config);
    if (f.degree) settings.values.set("degree", std::to_string(*f.degree));
    if (f.order) settings.values.set("order", std::to_string(*f.order));
    if (f.refinements) settings.values.set("refinements", std::to_string(*f.refinements));
    if (f.theta) settings.values.set("theta", fmt(*f.theta, 17));
    if (f.gamma) settings.values.set("gamma", *f.gamma);
    if (f.geometry) settings.values.set("geometry_file", *f.geometry);
    settings.out = f.out;
    run = cli_commands().at(name)(settings);
    run.report.config["settings"] = settings.values.to_json();
    write_run(settings.out, run);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  }

  out << run.report.benchmark << ": " << run.report.cells.size() << " cells in " << fmt(run.report.runtime_s, 3) << " s\n";
  for (const auto& n : run.notes) out << "  " << n << '\n';
  for (const auto& c : run.report.checks) out << (c.passed ? "  PASS " : "  FAIL ") << c.name << " (" << c.detail << ")\n";
  out << "report: " << (settings.out / "report.json").string() << '\n';
  return run.report.passed() ? kExitOk : kExitAssertionFailure;
}

}  // namespace niga::experiments
