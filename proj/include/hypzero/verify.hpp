#pragma once

// Experiment runs on top of the numerical modules: configuration, the
// theorem check, the real-parameter cross-check, region maps, I1 ratio
// tables and report emission.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypzero/flows.hpp"
#include "hypzero/kernel.hpp"
#include "hypzero/levelcurve.hpp"
#include "hypzero/roots.hpp"

namespace hypzero {

inline constexpr const char* kSchema = "hypzero/1";

struct Tolerances {
  double residual = 1e-10;
  double corrector = 1e-12;
  double boundary = 1e-6;
  double quadrature = 1e-10;
};

enum class OutputFormat { Json, Csv, Svg };
std::string to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s);

/// Rectangular z-grid "re0:re1:im0:im1:steps" with steps points per side.
struct GridSpec {
  double re0 = 0.0;
  double re1 = 0.0;
  double im0 = 0.0;
  double im1 = 0.0;
  int steps = 0;

  static GridSpec parse(const std::string& text);
  std::string str() const;
  std::vector<cplx> points() const;  ///< row-major, imaginary part outermost
};

struct ExperimentConfig {
  Alpha alpha{1.0, 0.0};
  std::vector<int> n_list{10, 20, 40};
  Precision precision = Precision::automatic();
  Tolerances tol;
  std::string out_dir = "hypzero-out";
  std::vector<OutputFormat> formats{OutputFormat::Json};
  std::optional<GridSpec> grid;
  /// l of the F(-n, kn + l + 1; kn + l + 2; z) family; 0 for the main family.
  double shift = 0.0;
  /// Level-curve arclength step; 0 picks the default.
  double resolution = 0.0;
  /// Worker threads for independent n; 0 uses the hardware count.
  unsigned threads = 0;

  /// Throws ConfigError on a violated invariant.
  void validate() const;
  /// FNV-1a over the canonical JSON of the fields that affect results.
  std::string hash() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Applies one "key = value" setting. Keys: alpha_re, alpha_im, n, precision,
/// out, format, tol_residual, tol_corrector, tol_boundary, tol_quadrature,
/// grid, shift (alias l), resolution, threads. Throws ConfigError.
void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value);

/// Reads a flat "key = value" file ('#' starts a comment) on top of `base`.
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

/// |I1|^(1/n), |I2|^(1/n) and the saddle ratio at one zero.
struct RootDiagnostic {
  cplx zero;
  double I1_root = 0.0;
  double I2_root = 0.0;
  double one_minus_z = 0.0;  ///< |1 - z|, the common limit of both roots
  double K_root = 0.0;       ///< |K(z)|^(1/n)
  double I1_ratio = 0.0;     ///< |integrate_I1| / |I1_asymptotic|
  std::string error;         ///< empty when all integrals succeeded
};

struct NRecord {
  int n = 0;
  std::string config_hash;
  bool ok = false;
  std::vector<std::string> flags;
  std::optional<ZeroSet> zeros;
  std::vector<Region> labels;
  std::vector<double> margins;
  std::vector<double> distances;
  double max_distance = 0.0;
  double mean_distance = 0.0;
  int left_half_plane_zeros = 0;
  int not_in_E_zeros = 0;
  int boundary_zeros = 0;
  std::vector<RootDiagnostic> diagnostics;
};

struct ReportSummary {
  bool all_converged = false;
  bool zero_free = false;
  bool distance_trend = false;
  bool passed = false;
};

struct VerificationReport {
  std::string kind = "check";  ///< "check" or "realcase"
  ExperimentConfig config;
  std::string config_hash;
  LevelCurve curve;
  std::vector<PathTrace> separatrices;
  std::vector<NRecord> records;
  ReportSummary summary;
};

void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

/// Zeros, distances to the in-E arcs, zero-free scan and integral diagnostics
/// for every n. Failures are recorded per n; the run always completes.
VerificationReport run_theorem_check(const ExperimentConfig& config);

/// The same pipeline for alpha = k real and shift l.
VerificationReport run_realcase_crosscheck(double k, double l, const ExperimentConfig& config);

struct RegionPoint {
  cplx z;
  std::optional<Region> label;  ///< empty when classification failed
  double margin = 0.0;
  std::string error;
};

struct RegionMap {
  ExperimentConfig config;
  std::string config_hash;
  GridSpec grid;
  std::vector<RegionPoint> points;
  int failures = 0;
};

RegionMap run_region_map(const ExperimentConfig& config);
void to_json(nlohmann::json& j, const RegionMap& m);

struct AsymRow {
  int n = 0;
  cplx z;
  double ratio = 0.0;
  double budget = 0.0;  ///< 6 / n
  bool within = false;
  std::string error;
};

struct AsymTable {
  ExperimentConfig config;
  std::string config_hash;
  std::vector<AsymRow> rows;
  bool passed = false;
};

/// Sample points for ratio tables: grid points in E when a grid is set,
/// otherwise five points on a small circle around the midpoint of w0 and 1.
std::vector<cplx> asym_sample_points(const ExperimentConfig& config);
AsymTable run_asym_table(const ExperimentConfig& config);
void to_json(nlohmann::json& j, const AsymTable& t);

/// Writes the report in the configured formats under config.out_dir and
/// returns the written paths. JSON: one file; CSV and SVG: one file per n.
/// Throws Error with the offending path on I/O failure.
std::vector<std::filesystem::path> emit_report(const VerificationReport& report);
std::vector<std::filesystem::path> emit_region_map(const RegionMap& map);
std::vector<std::filesystem::path> emit_curve(const LevelCurve& curve,
                                              const std::vector<PathTrace>& separatrices,
                                              const ExperimentConfig& config);
std::vector<std::filesystem::path> emit_asym_table(const AsymTable& table);

/// Standalone renderers, also used by the tests.
std::string report_csv(const NRecord& record);
std::string report_svg(const VerificationReport& report, const NRecord& record);

}  // namespace hypzero
