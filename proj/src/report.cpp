#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hypzero/errors.hpp"
#include "hypzero/verify.hpp"

namespace hypzero {

namespace {

nlohmann::json cplx_json(cplx z) { return {z.real(), z.imag()}; }
cplx cplx_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw Error("write failed for " + path.string());
  }
}

bool wants(const ExperimentConfig& c, OutputFormat f) {
  return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// World-to-screen map for the SVG views; y grows upward in the world.
struct View {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
  double width = 640.0;

  double height() const { return width * (y1 - y0) / (x1 - x0); }
  double sx(double x) const { return (x - x0) / (x1 - x0) * width; }
  double sy(double y) const { return (y1 - y) / (y1 - y0) * height(); }
  bool inside(cplx p, double pad) const {
    const double w = (x1 - x0) * pad;
    const double h = (y1 - y0) * pad;
    return p.real() > x0 - w && p.real() < x1 + w && p.imag() > y0 - h && p.imag() < y1 + h;
  }

  static View around(const std::vector<cplx>& pts) {
    View v;
    double xa = std::numeric_limits<double>::infinity(), xb = -xa, ya = xa, yb = -xa;
    for (const cplx& p : pts) {
      xa = std::min(xa, p.real());
      xb = std::max(xb, p.real());
      ya = std::min(ya, p.imag());
      yb = std::max(yb, p.imag());
    }
    const double span = std::max({xb - xa, yb - ya, 1e-3});
    const double pad = 0.15 * span;
    v.x0 = xa - pad;
    v.x1 = xb + pad;
    v.y0 = ya - pad;
    v.y1 = yb + pad;
    return v;
  }
};

std::string svg_open(const View& v) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(v.width) << "\" height=\""
    << num(v.height()) << "\" viewBox=\"0 0 " << num(v.width) << ' ' << num(v.height()) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (v.y0 < 0.0 && v.y1 > 0.0) {
    o << "<line class=\"axis\" x1=\"0\" y1=\"" << num(v.sy(0.0)) << "\" x2=\"" << num(v.width)
      << "\" y2=\"" << num(v.sy(0.0)) << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  if (v.x0 < 0.0 && v.x1 > 0.0) {
    o << "<line class=\"axis\" x1=\"" << num(v.sx(0.0)) << "\" y1=\"0\" x2=\"" << num(v.sx(0.0))
      << "\" y2=\"" << num(v.height()) << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  return o.str();
}

/// One <path> per arc; vertices far outside the view are dropped and the
/// pen is lifted across the gap.
std::string svg_arcs(const LevelCurve& curve, const View& v) {
  std::ostringstream o;
  for (const LevelArc& a : curve.arcs) {
    const char* colour = a.label == Region::InE ? "#c0392b" : "#7f8c8d";
    o << "<path class=\"arc " << to_string(a.label) << "\" fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"1.2\" d=\"";
    bool pen = false;
    bool any = false;
    for (const cplx& p : a.points) {
      if (!v.inside(p, 0.5)) {
        pen = false;
        continue;
      }
      o << (pen ? " L" : (any ? " M" : "M")) << num(v.sx(p.real())) << ',' << num(v.sy(p.imag()));
      pen = true;
      any = true;
    }
    if (!any) {
      o << "M0,0";
    }
    o << "\"/>\n";
  }
  return o.str();
}

std::string svg_separatrices(const std::vector<PathTrace>& seps, const View& v) {
  std::ostringstream o;
  for (const PathTrace& s : seps) {
    o << "<polyline class=\"separatrix\" fill=\"none\" stroke=\"#2980b9\" stroke-dasharray=\"4 3\" "
         "stroke-width=\"0.8\" points=\"";
    bool first = true;
    for (const cplx& p : s.points) {
      if (!v.inside(p, 0.5)) continue;
      o << (first ? "" : " ") << num(v.sx(p.real())) << ',' << num(v.sy(p.imag()));
      first = false;
    }
    o << "\"/>\n";
  }
  return o.str();
}

nlohmann::json record_json(const NRecord& r) {
  std::vector<std::string> labels;
  for (Region l : r.labels) labels.push_back(to_string(l));
  nlohmann::json diags = nlohmann::json::array();
  for (const RootDiagnostic& d : r.diagnostics) {
    diags.push_back({{"zero", cplx_json(d.zero)},
                     {"I1_root", d.I1_root},
                     {"I2_root", d.I2_root},
                     {"one_minus_z", d.one_minus_z},
                     {"K_root", d.K_root},
                     {"I1_ratio", d.I1_ratio},
                     {"error", d.error}});
  }
  return {{"n", r.n},
          {"config_hash", r.config_hash},
          {"ok", r.ok},
          {"flags", r.flags},
          {"zeros", r.zeros ? nlohmann::json(*r.zeros) : nlohmann::json(nullptr)},
          {"labels", labels},
          {"margins", r.margins},
          {"distances", r.distances},
          {"max_distance", r.max_distance},
          {"mean_distance", r.mean_distance},
          {"left_half_plane_zeros", r.left_half_plane_zeros},
          {"not_in_E_zeros", r.not_in_E_zeros},
          {"boundary_zeros", r.boundary_zeros},
          {"diagnostics", diags}};
}

NRecord record_from(const nlohmann::json& j) {
  NRecord r;
  r.n = j.at("n").get<int>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.ok = j.at("ok").get<bool>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  if (!j.at("zeros").is_null()) r.zeros = j.at("zeros").get<ZeroSet>();
  for (const auto& l : j.at("labels")) r.labels.push_back(region_from_string(l.get<std::string>()));
  r.margins = j.at("margins").get<std::vector<double>>();
  r.distances = j.at("distances").get<std::vector<double>>();
  r.max_distance = j.at("max_distance").get<double>();
  r.mean_distance = j.at("mean_distance").get<double>();
  r.left_half_plane_zeros = j.at("left_half_plane_zeros").get<int>();
  r.not_in_E_zeros = j.at("not_in_E_zeros").get<int>();
  r.boundary_zeros = j.at("boundary_zeros").get<int>();
  for (const auto& d : j.at("diagnostics")) {
    RootDiagnostic x;
    x.zero = cplx_from(d.at("zero"));
    x.I1_root = d.at("I1_root").get<double>();
    x.I2_root = d.at("I2_root").get<double>();
    x.one_minus_z = d.at("one_minus_z").get<double>();
    x.K_root = d.at("K_root").get<double>();
    x.I1_ratio = d.at("I1_ratio").get<double>();
    x.error = d.at("error").get<std::string>();
    r.diagnostics.push_back(x);
  }
  return r;
}

std::string label_or_error(const RegionPoint& p) { return p.label ? to_string(*p.label) : "error"; }

}  // namespace

void to_json(nlohmann::json& j, const VerificationReport& r) {
  nlohmann::json recs = nlohmann::json::array();
  for (const NRecord& rec : r.records) recs.push_back(record_json(rec));
  nlohmann::json seps = nlohmann::json::array();
  for (const PathTrace& s : r.separatrices) seps.push_back(s);
  j = {{"schema", kSchema},
       {"kind", r.kind},
       {"config", r.config},
       {"config_hash", r.config_hash},
       {"curve", r.curve},
       {"separatrices", seps},
       {"records", recs},
       {"summary",
        {{"all_converged", r.summary.all_converged},
         {"zero_free", r.summary.zero_free},
         {"distance_trend", r.summary.distance_trend},
         {"passed", r.summary.passed}}}};
}

void from_json(const nlohmann::json& j, VerificationReport& r) {
  if (j.at("schema").get<std::string>() != kSchema) {
    throw Error("unsupported report schema '" + j.at("schema").get<std::string>() + "'");
  }
  r.kind = j.at("kind").get<std::string>();
  r.config = j.at("config").get<ExperimentConfig>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.curve = j.at("curve").get<LevelCurve>();
  r.separatrices.clear();
  for (const auto& s : j.at("separatrices")) r.separatrices.push_back(path_trace_from_json(s));
  r.records.clear();
  for (const auto& rec : j.at("records")) r.records.push_back(record_from(rec));
  const auto& s = j.at("summary");
  r.summary.all_converged = s.at("all_converged").get<bool>();
  r.summary.zero_free = s.at("zero_free").get<bool>();
  r.summary.distance_trend = s.at("distance_trend").get<bool>();
  r.summary.passed = s.at("passed").get<bool>();
}

void to_json(nlohmann::json& j, const RegionMap& m) {
  nlohmann::json pts = nlohmann::json::array();
  for (const RegionPoint& p : m.points) {
    pts.push_back({{"z", cplx_json(p.z)},
                   {"label", label_or_error(p)},
                   {"margin", p.margin},
                   {"error", p.error}});
  }
  j = {{"schema", kSchema},
       {"kind", "region"},
       {"config", m.config},
       {"config_hash", m.config_hash},
       {"grid", m.grid.str()},
       {"points", pts},
       {"failures", m.failures}};
}

void to_json(nlohmann::json& j, const AsymTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const AsymRow& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"z", cplx_json(r.z)},
                    {"ratio", r.ratio},
                    {"budget", r.budget},
                    {"within", r.within},
                    {"error", r.error}});
  }
  j = {{"schema", kSchema},
       {"kind", "asym"},
       {"config", t.config},
       {"config_hash", t.config_hash},
       {"rows", rows},
       {"passed", t.passed}};
}

std::string report_csv(const NRecord& r) {
  std::ostringstream o;
  o << "re,im,residual,distance,label,margin\n";
  if (!r.zeros) return o.str();
  char buf[160];
  for (size_t i = 0; i < r.zeros->zeros.size(); ++i) {
    const cplx z = r.zeros->zeros[i];
    const double dist = i < r.distances.size() ? r.distances[i] : std::nan("");
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.6e,%.9g,%s,%.6g\n", z.real(), z.imag(),
                  r.zeros->residuals[i], dist, to_string(r.labels[i]).c_str(), r.margins[i]);
    o << buf;
  }
  return o.str();
}

std::string report_svg(const VerificationReport& rep, const NRecord& r) {
  std::vector<cplx> frame{rep.curve.crossing_point, cplx(1.0, 0.0)};
  for (const LevelArc& a : rep.curve.arcs) {
    if (a.label == Region::InE) frame.insert(frame.end(), a.points.begin(), a.points.end());
  }
  if (r.zeros) frame.insert(frame.end(), r.zeros->zeros.begin(), r.zeros->zeros.end());
  const View v = View::around(frame);
  std::ostringstream o;
  o << svg_open(v);
  o << svg_arcs(rep.curve, v);
  o << svg_separatrices(rep.separatrices, v);
  if (r.zeros) {
    for (const cplx& z : r.zeros->zeros) {
      o << "<circle class=\"zero\" cx=\"" << num(v.sx(z.real())) << "\" cy=\"" << num(v.sy(z.imag()))
        << "\" r=\"2.2\" fill=\"#222\"/>\n";
    }
  }
  o << "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">alpha = "
    << num(rep.config.alpha.eta()) << (rep.config.alpha.zeta() < 0 ? " - " : " + ")
    << num(std::abs(rep.config.alpha.zeta())) << "i, n = " << r.n << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

std::vector<std::filesystem::path> emit_report(const VerificationReport& report) {
  const std::filesystem::path dir = report.config.out_dir;
  std::vector<std::filesystem::path> written;
  if (wants(report.config, OutputFormat::Json)) {
    const auto p = dir / (report.kind + "_report.json");
    write_file(p, nlohmann::json(report).dump(1) + "\n");
    written.push_back(p);
  }
  for (const NRecord& r : report.records) {
    const std::string stem = report.kind + "_n" + std::to_string(r.n);
    if (wants(report.config, OutputFormat::Csv)) {
      const auto p = dir / (stem + ".csv");
      write_file(p, report_csv(r));
      written.push_back(p);
    }
    if (wants(report.config, OutputFormat::Svg)) {
      const auto p = dir / (stem + ".svg");
      write_file(p, report_svg(report, r));
      written.push_back(p);
    }
  }
  return written;
}

std::vector<std::filesystem::path> emit_region_map(const RegionMap& map) {
  const std::filesystem::path dir = map.config.out_dir;
  std::vector<std::filesystem::path> written;
  if (wants(map.config, OutputFormat::Json)) {
    const auto p = dir / "region_map.json";
    write_file(p, nlohmann::json(map).dump(1) + "\n");
    written.push_back(p);
  }
  if (wants(map.config, OutputFormat::Csv)) {
    std::ostringstream o;
    o << "re,im,label,margin\n";
    char buf[128];
    for (const RegionPoint& pt : map.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.6g\n", pt.z.real(), pt.z.imag(),
                    label_or_error(pt).c_str(), pt.margin);
      o << buf;
    }
    const auto p = dir / "region_map.csv";
    write_file(p, o.str());
    written.push_back(p);
  }
  if (wants(map.config, OutputFormat::Svg)) {
    View v;
    v.x0 = map.grid.re0;
    v.x1 = std::max(map.grid.re1, map.grid.re0 + 1e-9);
    v.y0 = map.grid.im0;
    v.y1 = std::max(map.grid.im1, map.grid.im0 + 1e-9);
    const double cw = v.width / map.grid.steps;
    const double ch = v.height() / map.grid.steps;
    std::ostringstream o;
    o << svg_open(v);
    for (const RegionPoint& pt : map.points) {
      const char* fill = !pt.label ? "#f1c40f"
                         : *pt.label == Region::InE ? "#e6b0aa"
                         : *pt.label == Region::NotInE ? "#d5dbdb"
                                                       : "#2c3e50";
      o << "<rect x=\"" << num(v.sx(pt.z.real()) - 0.5 * cw) << "\" y=\"" << num(v.sy(pt.z.imag()) - 0.5 * ch)
        << "\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\"/>\n";
    }
    o << "</svg>\n";
    const auto p = dir / "region_map.svg";
    write_file(p, o.str());
    written.push_back(p);
  }
  return written;
}

std::vector<std::filesystem::path> emit_curve(const LevelCurve& curve,
                                              const std::vector<PathTrace>& seps,
                                              const ExperimentConfig& config) {
  const std::filesystem::path dir = config.out_dir;
  std::vector<std::filesystem::path> written;
  if (wants(config, OutputFormat::Json)) {
    nlohmann::json s = nlohmann::json::array();
    for (const PathTrace& t : seps) s.push_back(t);
    const nlohmann::json j = {{"schema", kSchema},
                              {"kind", "curve"},
                              {"config", config},
                              {"config_hash", config.hash()},
                              {"curve", curve},
                              {"separatrices", s}};
    const auto p = dir / "curve.json";
    write_file(p, j.dump(1) + "\n");
    written.push_back(p);
  }
  if (wants(config, OutputFormat::Csv)) {
    std::ostringstream o;
    o << "arc,label,re,im\n";
    char buf[128];
    for (size_t a = 0; a < curve.arcs.size(); ++a) {
      for (const cplx& pt : curve.arcs[a].points) {
        std::snprintf(buf, sizeof buf, "%zu,%s,%.17g,%.17g\n", a, to_string(curve.arcs[a].label).c_str(),
                      pt.real(), pt.imag());
        o << buf;
      }
    }
    const auto p = dir / "curve.csv";
    write_file(p, o.str());
    written.push_back(p);
  }
  if (wants(config, OutputFormat::Svg)) {
    std::vector<cplx> frame{curve.crossing_point, cplx(0.0, 0.0), cplx(1.0, 0.0)};
    for (const LevelArc& a : curve.arcs) {
      if (a.closed) frame.insert(frame.end(), a.points.begin(), a.points.end());
    }
    const View v = View::around(frame);
    const auto p = dir / "curve.svg";
    write_file(p, svg_open(v) + svg_arcs(curve, v) + svg_separatrices(seps, v) + "</svg>\n");
    written.push_back(p);
  }
  return written;
}

std::vector<std::filesystem::path> emit_asym_table(const AsymTable& table) {
  const std::filesystem::path dir = table.config.out_dir;
  std::vector<std::filesystem::path> written;
  if (wants(table.config, OutputFormat::Json)) {
    const auto p = dir / "asym_table.json";
    write_file(p, nlohmann::json(table).dump(1) + "\n");
    written.push_back(p);
  }
  if (wants(table.config, OutputFormat::Csv)) {
    std::ostringstream o;
    o << "n,re,im,ratio,budget,within\n";
    char buf[160];
    for (const AsymRow& r : table.rows) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.12g,%.6g,%d\n", r.n, r.z.real(), r.z.imag(),
                    r.ratio, r.budget, r.within ? 1 : 0);
      o << buf;
    }
    const auto p = dir / "asym_table.csv";
    write_file(p, o.str());
    written.push_back(p);
  }
  return written;
}

}  // namespace hypzero
