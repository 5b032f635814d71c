#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypzero/errors.hpp"
#include "hypzero/verify.hpp"

using namespace hypzero;
namespace fs = std::filesystem;

namespace {

size_t count(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hypzero_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.alpha = Alpha(1, 1);
  c.n_list = {8, 16};
  c.threads = 2;
  return c;
}

const VerificationReport& small_report() {
  static const VerificationReport r = run_theorem_check(small_config());
  return r;
}

}  // namespace

TEST_CASE("settings and validation") {
  ExperimentConfig c;
  apply_setting(c, "alpha-re", " 2 ");
  apply_setting(c, "alpha_im", "-1");
  apply_setting(c, "n", "5,10,20");
  apply_setting(c, "precision", "extended:300");
  apply_setting(c, "format", "json,csv,svg");
  apply_setting(c, "grid", "-0.5:2:-1:1:20");
  apply_setting(c, "l", "3");
  CHECK(c.alpha == Alpha(2, -1));
  CHECK(c.n_list == std::vector<int>{5, 10, 20});
  CHECK(c.precision == Precision::extended(300));
  CHECK(c.formats.size() == 3);
  REQUIRE(c.grid.has_value());
  CHECK(c.grid->steps == 20);
  CHECK(c.grid->points().size() == 400);
  CHECK(c.shift == 3.0);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "alpha_re", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "alpha_re", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "precision", "quad"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "format", "pdf"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "grid", "1:2:3"), ConfigError);

  ExperimentConfig bad;
  bad.n_list = {10, 10};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.n_list = {10, 20};
  bad.tol.residual = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("config file precedence: CLI over file over defaults") {
  const fs::path dir = scratch_dir("config");
  fs::create_directories(dir);
  const fs::path file = dir / "run.cfg";
  std::ofstream(file) << "# sample\nalpha_re = 2\nn = 4, 8\ntol_residual = 1e-9\n\n";
  ExperimentConfig c = load_config_file(file);
  CHECK(c.alpha.eta() == 2.0);
  CHECK(c.alpha.zeta() == 0.0);
  CHECK(c.n_list == std::vector<int>{4, 8});
  CHECK(c.tol.residual == 1e-9);
  CHECK(c.tol.boundary == Tolerances{}.boundary);
  apply_setting(c, "n", "6");  // as the CLI would
  CHECK(c.n_list == std::vector<int>{6});
  CHECK(c.alpha.eta() == 2.0);

  std::ofstream(dir / "broken.cfg") << "alpha_re 2\n";
  CHECK_THROWS_AS(load_config_file(dir / "broken.cfg"), ConfigError);
  CHECK_THROWS_AS(load_config_file(dir / "missing.cfg"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("config hash ignores output-only fields") {
  ExperimentConfig a = small_config();
  ExperimentConfig b = a;
  b.out_dir = "elsewhere";
  b.formats = {OutputFormat::Svg};
  b.threads = 7;
  CHECK(a.hash() == b.hash());
  b.n_list = {8, 17};
  CHECK(a.hash() != b.hash());
  const nlohmann::json j = a;
  CHECK(j.get<ExperimentConfig>().hash() == a.hash());
}

TEST_CASE("theorem check report") {
  const VerificationReport& r = small_report();
  REQUIRE(r.records.size() == 2);
  for (const NRecord& rec : r.records) {
    CHECK(rec.config_hash == r.config_hash);
    REQUIRE(rec.zeros.has_value());
    CHECK(static_cast<int>(rec.zeros->zeros.size()) == rec.n);
    CHECK(rec.labels.size() == static_cast<size_t>(rec.n));
    CHECK(rec.left_half_plane_zeros == 0);
    CHECK(rec.not_in_E_zeros == 0);
  }
  CHECK(r.summary.all_converged);
  CHECK(r.summary.zero_free);
}

TEST_CASE("report JSON round trip and determinism") {
  const VerificationReport& r = small_report();
  const nlohmann::json j = r;
  CHECK(j.at("schema") == kSchema);
  const VerificationReport back = j.get<VerificationReport>();
  CHECK(nlohmann::json(back).dump() == j.dump());

  // Worker count is recorded in the config but must not change any result.
  ExperimentConfig single = small_config();
  single.threads = 1;
  nlohmann::json again = run_theorem_check(single);
  again["config"]["threads"] = j["config"]["threads"];
  CHECK(again.dump() == j.dump());
  CHECK(nlohmann::json(run_theorem_check(small_config())).dump() == j.dump());

  nlohmann::json wrong = j;
  wrong["schema"] = "hypzero/0";
  CHECK_THROWS_AS(wrong.get<VerificationReport>(), Error);
}

TEST_CASE("CSV and SVG renderings") {
  const VerificationReport& r = small_report();
  for (const NRecord& rec : r.records) {
    std::istringstream csv(report_csv(rec));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "re,im,residual,distance,label,margin");
    int rows = 0;
    while (std::getline(csv, line)) rows += line.empty() ? 0 : 1;
    CHECK(rows == rec.n);

    const std::string svg = report_svg(r, rec);
    CHECK(count(svg, "<path ") == r.curve.arcs.size());
    CHECK(count(svg, "<circle class=\"zero\"") == static_cast<size_t>(rec.n));
  }
}

TEST_CASE("emitters write the configured formats") {
  VerificationReport r = small_report();
  r.config.out_dir = scratch_dir("emit").string();
  r.config.formats = {OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg};
  const auto paths = emit_report(r);
  CHECK(paths.size() == 1 + 2 * r.records.size());
  for (const fs::path& p : paths) CHECK(fs::exists(p));
  fs::remove_all(r.config.out_dir);
}

TEST_CASE("region map and ratio table") {
  ExperimentConfig c;
  c.alpha = Alpha(1, 0);
  c.grid = GridSpec::parse("0.1:1.6:-0.5:0.5:4");
  c.n_list = {20, 40};
  const RegionMap m = run_region_map(c);
  REQUIRE(m.points.size() == 16);
  CHECK(m.failures == 0);
  for (const RegionPoint& p : m.points) {
    REQUIRE(p.label.has_value());
    CHECK(*p.label == (p.z.real() > 0.5 ? Region::InE : Region::NotInE));
  }
  CHECK(nlohmann::json(m).at("schema") == kSchema);

  c.grid.reset();
  const AsymTable t = run_asym_table(c);
  CHECK(t.rows.size() == 2 * asym_sample_points(c).size());
  CHECK(t.passed);
  for (const AsymRow& row : t.rows) CHECK(row.error.empty());

  ExperimentConfig no_grid;
  CHECK_THROWS_AS(run_region_map(no_grid), ConfigError);
}
