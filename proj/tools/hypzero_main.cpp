// Command-line front end: check, realcase, region, curve, asym.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hypzero/errors.hpp"
#include "hypzero/verify.hpp"

namespace {

using namespace hypzero;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::map<std::string, std::string> settings;  // key -> raw value, CLI only
  std::string config_file;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  auto setting = [&f, cmd](const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&f, key](const std::string& v) { f.settings[key] = v; }, help);
  };
  setting("--alpha-re", "alpha_re", "Real part of alpha (eta > 0)");
  setting("--alpha-im", "alpha_im", "Imaginary part of alpha");
  setting("--n", "n", "Comma-separated, strictly increasing degrees");
  setting("--precision", "precision", "double | extended:<bits> | auto");
  setting("--out", "out", "Output directory");
  setting("--format", "format", "Comma-separated list of json, csv, svg");
  setting("--tol-residual", "tol_residual", "Residual tolerance of the root finder");
  setting("--tol-boundary", "tol_boundary", "Saddle distance that counts as the boundary of E");
  setting("--tol-quadrature", "tol_quadrature", "Relative tolerance of the contour integrals");
  setting("--grid", "grid", "z-grid re0:re1:im0:im1:steps");
  setting("--resolution", "resolution", "Arclength step of the level curve");
  setting("--threads", "threads", "Worker threads (0 = all cores)");
  cmd->add_option("--config", f.config_file, "Flat key = value file; command-line flags override it");
  cmd->add_flag("-q,--quiet", f.quiet, "Only print the final verdict");
}

ExperimentConfig build_config(const CommonFlags& f) {
  ExperimentConfig c;
  if (!f.config_file.empty()) {
    c = load_config_file(f.config_file, c);
  }
  for (const auto& [key, value] : f.settings) {
    apply_setting(c, key, value);
  }
  c.validate();
  return c;
}

void print_paths(const std::vector<std::filesystem::path>& paths, bool quiet) {
  if (quiet) return;
  for (const auto& p : paths) std::printf("wrote %s\n", p.string().c_str());
}

int report_verdict(const VerificationReport& r, bool quiet) {
  if (!quiet) {
    std::printf("alpha = %g%+gi  shift = %g  level constant = %.12g  config %s\n", r.config.alpha.eta(),
                r.config.alpha.zeta(), r.config.shift, r.curve.constant, r.config_hash.c_str());
    for (const NRecord& rec : r.records) {
      std::printf("n = %4d  %s  max dist %.4g  mean dist %.4g  Re<=0: %d  not_in_E: %d  boundary: %d\n",
                  rec.n, rec.ok ? "ok  " : "FAIL", rec.max_distance, rec.mean_distance,
                  rec.left_half_plane_zeros, rec.not_in_E_zeros, rec.boundary_zeros);
      for (const std::string& flag : rec.flags) std::printf("          ! %s\n", flag.c_str());
    }
    std::printf("converged: %s  zero-free: %s  distance trend: %s\n", r.summary.all_converged ? "yes" : "no",
                r.summary.zero_free ? "yes" : "no", r.summary.distance_trend ? "yes" : "no");
  }
  std::printf("%s\n", r.summary.passed ? "PASSED" : "FAILED");
  return r.summary.passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeros of hypergeometric polynomials and their limiting curves"};
  app.require_subcommand(1);

  CommonFlags check_f, real_f, region_f, curve_f, asym_f;
  auto* check = app.add_subcommand("check", "Zeros versus the limiting curve for a given alpha");
  add_common(check, check_f);
  auto* real = app.add_subcommand("realcase", "Cross-check for F(-n, kn + l + 1; kn + l + 2; z)");
  add_common(real, real_f);
  std::optional<double> k_opt;
  double l_value = 0.0;
  real->add_option("--k", k_opt, "k > 0 (defaults to --alpha-re)");
  real->add_option("--l", l_value, "l >= 0")->check(CLI::NonNegativeNumber);
  auto* region = app.add_subcommand("region", "Map of the region E over a grid");
  add_common(region, region_f);
  auto* curve = app.add_subcommand("curve", "Level curve and separatrices only");
  add_common(curve, curve_f);
  auto* asym = app.add_subcommand("asym", "Table of |I1| / saddle estimate");
  add_common(asym, asym_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (check->parsed()) {
      const ExperimentConfig c = build_config(check_f);
      const VerificationReport r = run_theorem_check(c);
      print_paths(emit_report(r), check_f.quiet);
      return report_verdict(r, check_f.quiet);
    }
    if (real->parsed()) {
      ExperimentConfig c = build_config(real_f);
      if (c.alpha.zeta() != 0.0 && !k_opt) {
        throw ConfigError("realcase needs a real alpha (use --k)");
      }
      const double k = k_opt.value_or(c.alpha.eta());
      const VerificationReport r = run_realcase_crosscheck(k, l_value, c);
      print_paths(emit_report(r), real_f.quiet);
      return report_verdict(r, real_f.quiet);
    }
    if (region->parsed()) {
      const ExperimentConfig c = build_config(region_f);
      const RegionMap m = run_region_map(c);
      print_paths(emit_region_map(m), region_f.quiet);
      int in = 0, out = 0, boundary = 0;
      for (const RegionPoint& p : m.points) {
        if (!p.label) continue;
        if (*p.label == Region::InE) ++in;
        else if (*p.label == Region::NotInE) ++out;
        else ++boundary;
      }
      std::printf("%zu points: in_E %d, not_in_E %d, boundary %d, unclassified %d\n", m.points.size(), in,
                  out, boundary, m.failures);
      return m.failures == 0 ? kExitPass : kExitFail;
    }
    if (curve->parsed()) {
      const ExperimentConfig c = build_config(curve_f);
      const LevelCurve lc = trace_level_curve(c.alpha, c.resolution);
      std::vector<PathTrace> seps;
      try {
        const auto s = separatrices(c.alpha);
        seps.assign(s.begin(), s.end());
      } catch (const Error& e) {
        std::fprintf(stderr, "separatrices unavailable: %s\n", e.what());
      }
      print_paths(emit_curve(lc, seps, c), curve_f.quiet);
      bool has_in_E = false;
      for (const LevelArc& a : lc.arcs) {
        if (!curve_f.quiet) {
          std::printf("arc: %zu points, %s%s%s\n", a.points.size(), to_string(a.label).c_str(),
                      a.closed ? ", closed" : "", a.truncated ? (", " + a.stop_reason).c_str() : "");
        }
        has_in_E = has_in_E || a.label == Region::InE;
      }
      std::printf("level constant %.15g, crossing point %.15g%+.15gi\n", lc.constant,
                  lc.crossing_point.real(), lc.crossing_point.imag());
      return has_in_E ? kExitPass : kExitFail;
    }
    if (asym->parsed()) {
      const ExperimentConfig c = build_config(asym_f);
      const AsymTable t = run_asym_table(c);
      print_paths(emit_asym_table(t), asym_f.quiet);
      if (!asym_f.quiet) {
        std::printf("%6s  %22s  %16s  %10s\n", "n", "z", "|I1|/asym", "6/n");
        for (const AsymRow& r : t.rows) {
          if (!r.error.empty()) {
            std::printf("%6d  %10.5f%+10.5fi  error: %s\n", r.n, r.z.real(), r.z.imag(), r.error.c_str());
            continue;
          }
          std::printf("%6d  %10.5f%+10.5fi  %16.12f  %10.4g %s\n", r.n, r.z.real(), r.z.imag(), r.ratio,
                      r.budget, r.within ? "" : " outside");
        }
      }
      std::printf("%s\n", t.passed ? "PASSED" : "FAILED");
      return t.passed ? kExitPass : kExitFail;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitConfig;
}
