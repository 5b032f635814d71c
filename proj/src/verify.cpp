#include "hypzero/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include "hypzero/errors.hpp"
#include "hypzero/hyperpoly.hpp"
#include "hypzero/quadrature.hpp"
#include "hypzero/saddle.hpp"

namespace hypzero {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    out.push_back(trim(item));
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) {
      throw ConfigError("");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': '" + text + "'");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size() || v < -1000000 || v > 1000000) {
      throw ConfigError("");
    }
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
  }
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

unsigned worker_count(const ExperimentConfig& c, size_t jobs) {
  unsigned t = c.threads > 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<size_t>(t, std::max<size_t>(jobs, 1)));
}

/// Runs f(i) for i in [0, count) on up to `workers` threads; results keep index order.
template <typename T, typename F>
std::vector<T> ordered_parallel(size_t count, unsigned workers, F f) {
  std::vector<T> out(count);
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) {
      out[i] = f(i);
    }
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        out[i] = f(i);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  return out;
}

RootDiagnostic diagnose(int n, const Alpha& alpha, cplx z, double quad_tol) {
  RootDiagnostic d;
  d.zero = z;
  d.one_minus_z = std::abs(1.0 - z);
  try {
    QuadOptions q;
    q.rel_tol = quad_tol;
    I2Options o2;
    o2.quad = q;
    o2.check_region = false;
    const I2Result i2 = integrate_I2(n, alpha, z, o2);
    I1Options o1;
    o1.quad = q;
    o1.check_region = false;
    o1.junction_arg_t = i2.junction_arg_t;
    const I1Result i1 = integrate_I1(n, alpha, z, 1e-3, o1);
    const I1Asymptotic as = I1_asymptotic(n, z, alpha, i1.direction_to_pole, false);
    const double nd = static_cast<double>(n);
    d.I1_root = std::exp(i1.integral.log_modulus / nd);
    d.I2_root = std::exp(i2.integral.log_modulus / nd);
    d.K_root = std::pow(std::abs(i2.K), 1.0 / nd);
    d.I1_ratio = std::exp(i1.integral.log_modulus - as.log_modulus);
  } catch (const Error& e) {
    d.error = e.what();
  }
  return d;
}

NRecord run_one(int n, const ExperimentConfig& config, const LevelCurve& curve,
                const std::string& hash) {
  NRecord rec;
  rec.n = n;
  rec.config_hash = hash;
  const Alpha& alpha = config.alpha;
  try {
    const Polynomial p = coefficients(n, alpha, config.shift);
    RootOptions ro;
    ro.residual_tol = config.tol.residual;
    rec.zeros = find_roots(p, config.precision, ro);
  } catch (const Error& e) {
    rec.flags.push_back(std::string("root finding failed: ") + e.what());
    return rec;
  }
  const ZeroSet& zs = *rec.zeros;
  if (!zs.converged) {
    rec.flags.push_back("some zeros did not meet the residual tolerance");
  }

  ClassifyOptions co;
  co.boundary_tol = config.tol.boundary;
  for (size_t i = 0; i < zs.zeros.size(); ++i) {
    const cplx z = zs.zeros[i];
    if (z.real() <= 0.0) {
      ++rec.left_half_plane_zeros;
    }
    try {
      const RegionLabel r = classify_region(z, alpha, co);
      rec.labels.push_back(r.label);
      rec.margins.push_back(r.margin);
    } catch (const Error& e) {
      rec.labels.push_back(Region::Boundary);
      rec.margins.push_back(0.0);
      rec.flags.push_back("classification failed at zero " + std::to_string(i) + ": " + e.what());
    }
    if (rec.labels.back() == Region::NotInE) ++rec.not_in_E_zeros;
    if (rec.labels.back() == Region::Boundary) ++rec.boundary_zeros;
  }
  if (rec.left_half_plane_zeros > 0) {
    rec.flags.push_back(std::to_string(rec.left_half_plane_zeros) + " zeros with Re z <= 0");
  }
  if (rec.not_in_E_zeros > 0) {
    rec.flags.push_back(std::to_string(rec.not_in_E_zeros) + " zeros labelled not_in_E");
  }

  bool have_distances = false;
  try {
    const DistanceSummary ds = distance_to_curve(zs.zeros, curve, true);
    rec.distances = ds.distances;
    rec.max_distance = ds.max;
    rec.mean_distance = ds.mean;
    have_distances = true;
  } catch (const Error& e) {
    rec.flags.push_back(std::string("distance computation failed: ") + e.what());
  }

  // Integral diagnostics at the three in-E zeros farthest from the boundary.
  // The contour integrals describe the shift-free family only.
  if (config.shift == 0.0) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < zs.zeros.size(); ++i) {
      if (rec.labels[i] == Region::InE) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return rec.margins[a] > rec.margins[b]; });
    idx.resize(std::min<size_t>(idx.size(), 3));
    for (size_t i : idx) {
      rec.diagnostics.push_back(diagnose(n, alpha, zs.zeros[i], config.tol.quadrature));
    }
  }

  rec.ok = zs.converged && rec.left_half_plane_zeros == 0 && rec.not_in_E_zeros == 0 &&
           have_distances;
  return rec;
}

VerificationReport run_pipeline(const std::string& kind, const ExperimentConfig& config) {
  config.validate();
  VerificationReport rep;
  rep.kind = kind;
  rep.config = config;
  rep.config_hash = config.hash();
  rep.curve = trace_level_curve(config.alpha, config.resolution);
  try {
    const auto seps = separatrices(config.alpha);
    rep.separatrices.assign(seps.begin(), seps.end());
  } catch (const Error&) {
    // Optional decoration for plots.
  }
  const auto& ns = config.n_list;
  rep.records = ordered_parallel<NRecord>(ns.size(), worker_count(config, ns.size()), [&](size_t i) {
    return run_one(ns[i], config, rep.curve, rep.config_hash);
  });

  ReportSummary& s = rep.summary;
  s.all_converged = true;
  s.zero_free = true;
  bool all_ok = true;
  for (const NRecord& r : rep.records) {
    s.all_converged = s.all_converged && r.zeros && r.zeros->converged;
    s.zero_free = s.zero_free && r.zeros && r.left_half_plane_zeros == 0 && r.not_in_E_zeros == 0;
    all_ok = all_ok && r.ok;
  }
  s.distance_trend = rep.records.size() < 2 ||
                     (rep.records.front().ok && rep.records.back().ok &&
                      rep.records.back().max_distance < rep.records.front().max_distance);
  s.passed = all_ok && s.all_converged && s.zero_free && s.distance_trend;
  return rep;
}

}  // namespace

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Svg: return "svg";
  }
  return "json";
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "svg") return OutputFormat::Svg;
  throw ConfigError("unknown output format '" + s + "' (expected json, csv or svg)");
}

GridSpec GridSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 5) {
    throw ConfigError("grid must look like re0:re1:im0:im1:steps, got '" + text + "'");
  }
  GridSpec g;
  g.re0 = parse_double("grid", parts[0]);
  g.re1 = parse_double("grid", parts[1]);
  g.im0 = parse_double("grid", parts[2]);
  g.im1 = parse_double("grid", parts[3]);
  g.steps = parse_int("grid", parts[4]);
  if (g.steps < 1 || g.re1 < g.re0 || g.im1 < g.im0) {
    throw ConfigError("grid needs re0 <= re1, im0 <= im1 and steps >= 1");
  }
  return g;
}

std::string GridSpec::str() const {
  std::ostringstream o;
  o.precision(17);
  o << re0 << ':' << re1 << ':' << im0 << ':' << im1 << ':' << steps;
  return o.str();
}

std::vector<cplx> GridSpec::points() const {
  std::vector<cplx> out;
  auto at = [this](double a, double b, int i) {
    return steps == 1 ? a : a + (b - a) * static_cast<double>(i) / (steps - 1);
  };
  for (int j = 0; j < steps; ++j) {
    for (int i = 0; i < steps; ++i) {
      out.emplace_back(at(re0, re1, i), at(im0, im1, j));
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) {
    throw ConfigError("n list is empty");
  }
  for (size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) {
      throw ConfigError("every n must be >= 1");
    }
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw ConfigError("n list must be strictly increasing");
    }
  }
  if (!(tol.residual > 0.0 && tol.corrector > 0.0 && tol.boundary > 0.0 && tol.quadrature > 0.0)) {
    throw ConfigError("all tolerances must be positive");
  }
  if (!(shift >= 0.0)) {
    throw ConfigError("shift (l) must be >= 0");
  }
  if (!(resolution >= 0.0)) {
    throw ConfigError("resolution must be >= 0");
  }
  if (formats.empty()) {
    throw ConfigError("at least one output format is required");
  }
}

std::string ExperimentConfig::hash() const {
  // Output location, formats and thread count do not change results.
  nlohmann::json j = *this;
  j.erase("out");
  j.erase("formats");
  j.erase("threads");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  std::vector<std::string> formats;
  for (OutputFormat f : c.formats) formats.push_back(to_string(f));
  j = {{"alpha", {c.alpha.eta(), c.alpha.zeta()}},
       {"n", c.n_list},
       {"precision", c.precision.str()},
       {"tolerances",
        {{"residual", c.tol.residual},
         {"corrector", c.tol.corrector},
         {"boundary", c.tol.boundary},
         {"quadrature", c.tol.quadrature}}},
       {"out", c.out_dir},
       {"formats", formats},
       {"grid", c.grid ? nlohmann::json(c.grid->str()) : nlohmann::json(nullptr)},
       {"shift", c.shift},
       {"resolution", c.resolution},
       {"threads", c.threads}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  const auto& a = j.at("alpha");
  c.alpha = Alpha(a.at(0).get<double>(), a.at(1).get<double>());
  c.n_list = j.at("n").get<std::vector<int>>();
  c.precision = Precision::parse(j.at("precision").get<std::string>());
  const auto& t = j.at("tolerances");
  c.tol.residual = t.at("residual").get<double>();
  c.tol.corrector = t.at("corrector").get<double>();
  c.tol.boundary = t.at("boundary").get<double>();
  c.tol.quadrature = t.at("quadrature").get<double>();
  c.out_dir = j.at("out").get<std::string>();
  c.formats.clear();
  for (const auto& f : j.at("formats")) c.formats.push_back(format_from_string(f.get<std::string>()));
  c.grid.reset();
  if (!j.at("grid").is_null()) c.grid = GridSpec::parse(j.at("grid").get<std::string>());
  c.shift = j.at("shift").get<double>();
  c.resolution = j.at("resolution").get<double>();
  c.threads = j.at("threads").get<unsigned>();
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);
  if (key == "alpha_re" || key == "alpha_im") {
    const double v = parse_double(key, value);
    try {
      c.alpha = key == "alpha_re" ? Alpha(v, c.alpha.zeta()) : Alpha(c.alpha.eta(), v);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "n") {
    c.n_list.clear();
    for (const std::string& item : split(value, ',')) {
      if (!item.empty()) c.n_list.push_back(parse_int(key, item));
    }
  } else if (key == "precision") {
    c.precision = Precision::parse(value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out must not be empty");
    c.out_dir = value;
  } else if (key == "format") {
    c.formats.clear();
    for (const std::string& item : split(value, ',')) {
      if (!item.empty()) c.formats.push_back(format_from_string(item));
    }
  } else if (key == "tol_residual") {
    c.tol.residual = parse_double(key, value);
  } else if (key == "tol_corrector") {
    c.tol.corrector = parse_double(key, value);
  } else if (key == "tol_boundary") {
    c.tol.boundary = parse_double(key, value);
  } else if (key == "tol_quadrature") {
    c.tol.quadrature = parse_double(key, value);
  } else if (key == "grid") {
    c.grid = GridSpec::parse(value);
  } else if (key == "shift" || key == "l") {
    c.shift = parse_double(key, value);
  } else if (key == "resolution") {
    c.resolution = parse_double(key, value);
  } else if (key == "threads") {
    const int t = parse_int(key, value);
    if (t < 0) throw ConfigError("threads must be >= 0");
    c.threads = static_cast<unsigned>(t);
  } else {
    throw ConfigError("unknown setting '" + trim(raw_key) + "'");
  }
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file " + path.string());
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

VerificationReport run_theorem_check(const ExperimentConfig& config) {
  return run_pipeline("check", config);
}

VerificationReport run_realcase_crosscheck(double k, double l, const ExperimentConfig& config) {
  if (!(k > 0.0) || !(l >= 0.0)) {
    throw ConfigError("realcase needs k > 0 and l >= 0");
  }
  ExperimentConfig c = config;
  c.alpha = Alpha(k, 0.0);
  c.shift = l;
  return run_pipeline("realcase", c);
}

RegionMap run_region_map(const ExperimentConfig& config) {
  config.validate();
  if (!config.grid) {
    throw ConfigError("region map needs a grid");
  }
  RegionMap m;
  m.config = config;
  m.config_hash = config.hash();
  m.grid = *config.grid;
  const std::vector<cplx> pts = m.grid.points();
  ClassifyOptions co;
  co.boundary_tol = config.tol.boundary;
  m.points = ordered_parallel<RegionPoint>(pts.size(), worker_count(config, pts.size()), [&](size_t i) {
    RegionPoint rp;
    rp.z = pts[i];
    try {
      const RegionLabel r = classify_region(pts[i], config.alpha, co);
      rp.label = r.label;
      rp.margin = r.margin;
    } catch (const Error& e) {
      rp.error = e.what();
    }
    return rp;
  });
  for (const RegionPoint& p : m.points) {
    if (!p.label) ++m.failures;
  }
  return m;
}

std::vector<cplx> asym_sample_points(const ExperimentConfig& config) {
  std::vector<cplx> out;
  if (config.grid) {
    for (const cplx& z : config.grid->points()) {
      try {
        if (classify_region(z, config.alpha).label == Region::InE) out.push_back(z);
      } catch (const Error&) {
      }
    }
    return out;
  }
  const cplx w0 = crossing_point(config.alpha);
  const cplx centre = 0.5 * (w0 + 1.0);
  const double radius = 0.25 * std::abs(1.0 - w0);
  for (int k = 0; k < 5; ++k) {
    out.push_back(centre + std::polar(radius, 0.1 + kTwoPi * k / 5.0));
  }
  return out;
}

AsymTable run_asym_table(const ExperimentConfig& config) {
  config.validate();
  AsymTable t;
  t.config = config;
  t.config_hash = config.hash();
  const std::vector<cplx> pts = asym_sample_points(config);
  std::vector<std::pair<int, cplx>> jobs;
  for (int n : config.n_list) {
    for (const cplx& z : pts) jobs.emplace_back(n, z);
  }
  t.rows = ordered_parallel<AsymRow>(jobs.size(), worker_count(config, jobs.size()), [&](size_t i) {
    AsymRow row;
    row.n = jobs[i].first;
    row.z = jobs[i].second;
    row.budget = 6.0 / row.n;
    try {
      I1Options o;
      o.quad.rel_tol = config.tol.quadrature;
      const I1Result r = integrate_I1(row.n, config.alpha, row.z, 1e-3, o);
      const I1Asymptotic a = I1_asymptotic(row.n, row.z, config.alpha, r.direction_to_pole, false);
      row.ratio = std::exp(r.integral.log_modulus - a.log_modulus);
      row.within = std::abs(row.ratio - 1.0) <= row.budget;
    } catch (const Error& e) {
      row.error = e.what();
    }
    return row;
  });
  t.passed = !t.rows.empty() && std::all_of(t.rows.begin(), t.rows.end(),
                                            [](const AsymRow& r) { return r.within; });
  return t;
}

}  // namespace hypzero
