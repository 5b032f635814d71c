#include "hypzero/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypzero/errors.hpp"
#include "hypzero/saddle.hpp"

namespace hypzero {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kronrod 15-point abscissae (descending, last is the centre) and weights,
// with the embedded 7-point Gauss weights at the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  cplx value;
  double error = 0.0;
  double abs_value = 0.0;
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<cplx, 7> lo;
  std::array<cplx, 7> hi;
  const cplx fc = f(c);
  cplx k = fc * kWgk[7];
  cplx g = fc * kWg[3];
  double kabs = std::abs(fc) * kWgk[7];
  for (size_t j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    lo[j] = f(c - dx);
    hi[j] = f(c + dx);
    k += (lo[j] + hi[j]) * kWgk[j];
    kabs += (std::abs(lo[j]) + std::abs(hi[j])) * kWgk[j];
    if (j % 2 == 1) {
      g += (lo[j] + hi[j]) * kWg[j / 2];
    }
  }
  // Spread of f about its mean, for the QUADPACK error rescaling.
  const cplx mean = 0.5 * k;
  double asc = std::abs(fc - mean) * kWgk[7];
  for (size_t j = 0; j < 7; ++j) {
    asc += (std::abs(lo[j] - mean) + std::abs(hi[j] - mean)) * kWgk[j];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = k * h;
  const double raw = std::abs((k - g) * h);
  const double spread = asc * std::abs(h);
  p.error = spread > 0.0 && raw > 0.0 ? spread * std::min(1.0, std::pow(200.0 * raw / spread, 1.5)) : raw;
  p.abs_value = kabs * std::abs(h);
  return p;
}

double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

/// Log of exp(a) + exp(b) without overflow.
double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct PathSum {
  cplx value;
  double error = 0.0;
  double abs_sum = 0.0;

  PathSum& operator+=(const QuadResult& r) {
    value += r.value;
    error += r.error;
    abs_sum += r.abs_sum;
    return *this;
  }
};

/// int_a^b exp(n (phi(t) - ref)) dt on the straight segment, phase continued
/// from the state at a.
QuadResult segment_integral(cplx a, cplx b, const PhiState& from, cplx z, const Alpha& alpha, int n,
                            cplx ref, double abs_tol, double rel_tol) {
  const cplx dir = b - a;
  const double nd = static_cast<double>(n);
  auto f = [&](double u) {
    const PhiState s = phi(a + u * dir, z, alpha, from);
    return std::exp(nd * (s.value - ref)) * dir;
  };
  return adaptive_gauss_kronrod(f, 0.0, 1.0, abs_tol, rel_tol, 64);
}

PhiState saddle_state(cplx z, const Alpha& alpha) {
  const cplx w0 = crossing_point(alpha);
  const cplx t0 = w0 / z;
  PhiState s;
  s.log_t = {principal_log(t0), (principal_log(w0) - principal_log(z)).imag()};
  s.log_1mzt = track_log(1.0 - z * t0);
  s.value = alpha.value() * s.log_t.continued() + s.log_1mzt.continued();
  return s;
}

}  // namespace

cplx ContourIntegral::scaled(double ref_log) const {
  if (log_modulus == kNegInf) {
    return {0.0, 0.0};
  }
  return std::polar(std::exp(log_modulus - ref_log), phase);
}

double ContourIntegral::scaled_error(double ref_log) const {
  if (log_abs_error == kNegInf) {
    return 0.0;
  }
  return std::exp(log_abs_error - ref_log);
}

ContourIntegral ContourIntegral::from_scaled(cplx scaled_value, double scaled_error, double ref_log,
                                             std::string contour_id) {
  ContourIntegral c;
  const double m = std::abs(scaled_value);
  c.log_modulus = m > 0.0 ? ref_log + std::log(m) : kNegInf;
  c.phase = m > 0.0 ? std::arg(scaled_value) : 0.0;
  c.log_abs_error = scaled_error > 0.0 ? ref_log + std::log(scaled_error) : kNegInf;
  c.contour_id = std::move(contour_id);
  return c;
}

void to_json(nlohmann::json& j, const ContourIntegral& c) {
  auto finite_or_null = [](double x) -> nlohmann::json {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
  };
  j = {{"log_modulus", finite_or_null(c.log_modulus)},
       {"phase", c.phase},
       {"log_abs_error", finite_or_null(c.log_abs_error)},
       {"contour", c.contour_id}};
}

void from_json(const nlohmann::json& j, ContourIntegral& c) {
  auto read = [](const nlohmann::json& v) { return v.is_null() ? kNegInf : v.get<double>(); };
  c.log_modulus = read(j.at("log_modulus"));
  c.phase = j.at("phase").get<double>();
  c.log_abs_error = read(j.at("log_abs_error"));
  c.contour_id = j.at("contour").get<std::string>();
}

QuadResult adaptive_gauss_kronrod(const std::function<cplx(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_panels,
                                  std::span<const double> breakpoints) {
  std::vector<double> edges{a};
  for (double x : breakpoints) {
    if (x > edges.back() && x < b) {
      edges.push_back(x);
    }
  }
  edges.push_back(b);
  std::vector<Panel> panels;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(gk15(f, edges[i], edges[i + 1]));
  }

  QuadResult r;
  for (;;) {
    cplx total(0.0, 0.0);
    double err = 0.0;
    double abs_sum = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      abs_sum += panels[i].abs_value;
      if (panels[i].error > panels[worst].error) {
        worst = i;
      }
    }
    const double rounding = 10.0 * kEps * abs_sum;
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    r.value = total;
    r.error = err + rounding;
    r.abs_sum = abs_sum;
    r.panels = static_cast<int>(panels.size());
    r.converged = r.error <= target;
    if (err <= target || err <= rounding || static_cast<int>(panels.size()) >= max_panels) {
      break;
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      break;
    }
    panels[worst] = gk15(f, p.a, mid);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, gk15(f, mid, p.b));
  }
  return r;
}

ContourIntegral euler_integral(int n, const Alpha& alpha, cplx z, const QuadOptions& options,
                               double shift) {
  if (n < 0) {
    throw DomainError("euler_integral needs n >= 0");
  }
  const double nd = static_cast<double>(n);
  const cplx power = alpha.value() * nd + shift;  // exponent of t
  const double eta_eff = power.real();

  // Common scale: the largest |integrand| on a sample grid.
  double ref = kNegInf;
  for (int j = 1; j <= 128; ++j) {
    const double t = j / 128.0;
    const cplx w = 1.0 - z * t;
    const double m = eta_eff * std::log(t) + (n > 0 ? nd * safe_log(std::abs(w)) : 0.0);
    ref = std::max(ref, m);
  }
  if (!std::isfinite(ref)) {
    ref = 0.0;
  }

  auto log_one_minus = [&](cplx w) { return n > 0 ? nd * principal_log(w) : cplx(0.0, 0.0); };
  // Direct part on [t_a, 1].
  const double t_a = 0.5;
  auto direct = [&](double t) {
    const cplx w = 1.0 - z * t;
    if (n > 0 && w == cplx(0.0, 0.0)) {
      return cplx(0.0, 0.0);
    }
    return std::exp(power * std::log(t) + log_one_minus(w) - ref);
  };
  // t = exp(-u) on [0, t_a]; tames the exp(i zeta n log t) oscillation.
  const double u_a = -std::log(t_a);
  const double decay = eta_eff + 1.0;
  double u_max = (nd * std::log1p(std::abs(z)) - std::log(decay) - ref + 80.0) / decay;
  u_max = std::max(u_max, u_a + 1.0);
  auto substituted = [&](double u) {
    const double t = std::exp(-u);
    const cplx w = 1.0 - z * t;
    if (n > 0 && w == cplx(0.0, 0.0)) {
      return cplx(0.0, 0.0);
    }
    return std::exp(-power * u + log_one_minus(w) - u - ref);
  };
  const double log_tail =
      -u_max * decay + nd * std::log1p(std::abs(z) * std::exp(-u_max)) - std::log(decay) - ref;

  const double rel = options.rel_tol;
  // A first pass fixes the magnitude for the absolute tolerance.
  const QuadResult probe = adaptive_gauss_kronrod(direct, t_a, 1.0, 0.0, 1e-3, 8);
  const double abs_tol = 1e-2 * rel * std::max(std::abs(probe.value), 1e-300);
  std::vector<double> ubreaks;
  for (double u = u_a + 1.0; u < u_max; u *= 2.0) {
    ubreaks.push_back(u);
  }
  QuadResult ra = adaptive_gauss_kronrod(direct, t_a, 1.0, abs_tol, rel, options.max_panels);
  QuadResult rb =
      adaptive_gauss_kronrod(substituted, u_a, u_max, abs_tol, rel, options.max_panels, ubreaks);
  cplx total = ra.value + rb.value;
  double err = ra.error + rb.error + std::exp(log_tail);
  // The two parts can cancel; refine both against the size of the sum.
  for (int pass = 0; pass < 3 && !(err <= rel * std::abs(total)) && std::abs(total) > 0.0; ++pass) {
    const double share = 0.4 * rel * std::abs(total);
    ra = adaptive_gauss_kronrod(direct, t_a, 1.0, share, 0.0, options.max_panels);
    rb = adaptive_gauss_kronrod(substituted, u_a, u_max, share, 0.0, options.max_panels, ubreaks);
    total = ra.value + rb.value;
    err = ra.error + rb.error + std::exp(log_tail);
  }

  std::ostringstream id;
  id << "euler:[0,1] u-sub[0," << t_a << "]";
  ContourIntegral out = ContourIntegral::from_scaled(total, err, ref, id.str());
  if (!(err <= rel * std::abs(total))) {
    throw AccuracyError("euler_integral: relative tolerance " + std::to_string(rel) +
                            " not reached",
                        out.log_abs_error);
  }
  return out;
}

I1Result integrate_I1(int n, const Alpha& alpha, cplx z, double eps, const I1Options& options) {
  if (n < 1) {
    throw DomainError("integrate_I1 needs n >= 1");
  }
  if (z == cplx(0.0, 0.0)) {
    throw DomainError("integrate_I1 needs z != 0");
  }
  if (!(eps > 0.0)) {
    throw DomainError("integrate_I1 needs eps > 0");
  }
  if (options.check_region && classify_region(z, alpha).label != Region::InE) {
    throw RegionError("integrate_I1: z is not in the interior of E");
  }
  const double nd = static_cast<double>(n);
  const cplx pole = 1.0 / z;
  const cplx t0 = crossing_point(alpha) / z;
  const PhiState at_saddle = saddle_state(z, alpha);
  const SaddleDirections dirs = saddle_directions(z, alpha);
  const double scale = std::min(std::abs(t0), std::abs(pole - t0));
  const double offset = 1e-6 * scale;

  StopRule stop;
  stop.branch_radius = std::min(1e-9 * (1.0 + std::abs(pole)), 0.1 * eps);
  std::array<PathTrace, 2> traces;
  for (size_t i = 0; i < 2; ++i) {
    traces[i] = trace_flow(t0 + offset * dirs.descent[i], z, alpha, Direction::Descent, stop,
                           at_saddle);
  }
  int zero_idx = -1;
  int pole_idx = -1;
  for (int i = 0; i < 2; ++i) {
    if (traces[static_cast<size_t>(i)].terminal == Terminal::Endpoint0) zero_idx = i;
    if (traces[static_cast<size_t>(i)].terminal == Terminal::Endpoint1) pole_idx = i;
  }
  if (zero_idx < 0 || pole_idx < 0) {
    throw TracingError("integrate_I1: descent paths from t0 did not reach both 0 and 1/z (got " +
                       to_string(traces[0].terminal) + ", " + to_string(traces[1].terminal) + ")");
  }

  I1Result res;
  res.to_zero = std::move(traces[static_cast<size_t>(zero_idx)]);
  res.to_pole = std::move(traces[static_cast<size_t>(pole_idx)]);
  res.direction_to_pole = dirs.descent[static_cast<size_t>(pole_idx)];

  // Cut the spiral at the first point inside radius eps.
  {
    auto& pts = res.to_zero.points;
    auto& phs = res.to_zero.phases;
    size_t cut = pts.size();
    for (size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(pts[i]) < eps) {
        cut = i + 1;
        break;
      }
    }
    pts.resize(cut);
    phs.resize(cut);
  }

  // Match the branch of log t at 1/z with the junction value.
  const double end_arg = track_log(pole, res.to_pole.phases.back().log_t).imag_phase;
  const double junction = options.junction_arg_t.value_or(principal_log(pole).imag());
  res.branch_shift = static_cast<int>(std::lround((junction - end_arg) / kTwoPi));
  const cplx ref = at_saddle.value;
  const cplx ref_shifted = ref + cplx(0.0, kTwoPi * res.branch_shift) * alpha.value();

  const double rel = options.quad.rel_tol;
  const double seg_tol = 1e-3 * rel * std::sqrt(kTwoPi / (nd * std::abs(phi_second(t0, z, alpha))));
  auto polyline = [&](cplx from_saddle_start, const PathTrace& tr) {
    PathSum sum;
    sum += segment_integral(t0, from_saddle_start, at_saddle, z, alpha, n, ref, seg_tol * 1e-3, rel);
    for (size_t i = 0; i + 1 < tr.points.size(); ++i) {
      const double len = std::abs(tr.points[i + 1] - tr.points[i]);
      sum += segment_integral(tr.points[i], tr.points[i + 1], tr.phases[i], z, alpha, n, ref,
                              seg_tol * std::min(1.0, len), rel);
    }
    return sum;
  };
  const PathSum zero_side = polyline(res.to_zero.points.front(), res.to_zero);
  PathSum pole_side = polyline(res.to_pole.points.front(), res.to_pole);
  pole_side += segment_integral(res.to_pole.points.back(), pole, res.to_pole.phases.back(), z, alpha, n,
                                ref, seg_tol * 1e-3, rel);

  const cplx J = pole_side.value - zero_side.value;
  const double rounding = 10.0 * kEps * (pole_side.abs_sum + zero_side.abs_sum);

  // M eps^(eta+1)/(eta+1) with M = sup |g^n| / |t|^eta on the segment [0, w_eps].
  const double eta = alpha.eta();
  const double theta = res.to_zero.phases.back().log_t.imag_phase + kTwoPi * res.branch_shift;
  const double log_eps = std::log(eps);
  const double log_M =
      eta * (nd - 1.0) * log_eps - nd * alpha.zeta() * theta + nd * std::log1p(std::abs(z) * eps);
  res.log_truncation_bound = log_M + (eta + 1.0) * log_eps - std::log(eta + 1.0);

  const double ref_log = nd * ref_shifted.real();
  const double err_scaled = pole_side.error + zero_side.error + rounding +
                            std::exp(res.log_truncation_bound - ref_log);
  std::ostringstream id;
  id << "I1:segment[0,w_eps]+descent(t0->0)+descent(t0->1/z);eps=" << eps;
  res.integral = ContourIntegral::from_scaled(J, err_scaled, ref_log, id.str());
  res.integral.phase = wrap_phase(res.integral.phase + nd * ref_shifted.imag());
  return res;
}

namespace {

struct PathPoint {
  double s;
  cplx t;
  PhiState state;
};

/// Solves phi(t) = log s + Log(1 - z) near `seed` with the phase continued from `from`.
std::optional<std::pair<cplx, PhiState>> solve_level(double s, cplx seed, const PhiState& from,
                                                     cplx z, const Alpha& alpha, cplx log_1mz,
                                                     double max_move) {
  const cplx target(std::log(s) + log_1mz.real(), log_1mz.imag());
  cplx t = seed;
  for (int it = 0; it < 40; ++it) {
    PhiState ph;
    try {
      ph = phi(t, z, alpha, from);
    } catch (const SingularPointError&) {
      return std::nullopt;
    }
    const cplx F = ph.value - target;
    const cplx step = F / phi_prime(t, z, alpha);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
      return std::nullopt;
    }
    t -= step;
    if (std::abs(t - seed) > max_move) {
      return std::nullopt;
    }
    if (std::abs(step) <= 4.0 * kEps * std::abs(t)) {
      return std::make_pair(t, phi(t, z, alpha, from));
    }
  }
  return std::nullopt;
}

}  // namespace

I2Result integrate_I2(int n, const Alpha& alpha, cplx z, const I2Options& options) {
  if (n < 1) {
    throw DomainError("integrate_I2 needs n >= 1");
  }
  if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0)) {
    throw DomainError("integrate_I2 needs z not in {0, 1}");
  }
  if (options.check_region && classify_region(z, alpha).label != Region::InE) {
    throw RegionError("integrate_I2: z is not in the interior of E");
  }
  const cplx a = alpha.value();
  const cplx pole = 1.0 / z;
  const cplx t0 = crossing_point(alpha) / z;
  const cplx log_1mz = principal_log(1.0 - z);
  const cplx one_minus_z = 1.0 - z;

  auto dt_ds = [&](cplx t, const BranchTrackedValue& log_t) {
    // g'(t) dt = (1 - z) ds with g'(t) = t^(alpha-1) (alpha - (alpha+1) z t)
    return one_minus_z / (std::exp((a - 1.0) * log_t.continued()) * (a - (a + 1.0) * z * t));
  };

  // Continuation of t(s) from s = 1 (t = 1) down to s = 0 (t = 1/z).
  std::vector<PathPoint> path;
  path.push_back({1.0, cplx(1.0, 0.0), phi(cplx(1.0, 0.0), z, alpha)});
  double ds = 1e-3;
  for (;;) {
    const PathPoint& cur = path.back();
    const cplx v = dt_ds(cur.t, cur.state.log_t);
    const double rho = std::min(std::abs(cur.t), std::abs(cur.t - t0));
    const double cap = std::min(0.05, 0.05 * rho / std::max(std::abs(v), 1e-300));
    ds = std::min({1.5 * ds, cap, cur.s});
    if (ds < 1e-13) {
      throw ContinuationError("integrate_I2: continuation stalled at s = " + std::to_string(cur.s) +
                              " (path close to the saddle or to t = 0)");
    }
    const double s_new = cur.s - ds;
    if (s_new <= 1e-12 * std::max(cur.s, 1e-300) || s_new <= 0.0) {
      if (std::abs(cur.t - pole) > 0.5 * std::abs(cur.t)) {
        throw RegionError("integrate_I2: the implicit path does not end at 1/z (z outside E)");
      }
      PhiState end = cur.state;
      end.log_t = track_log(pole, cur.state.log_t);
      path.push_back({0.0, pole, end});
      break;
    }
    // Midpoint predictor.
    const cplx t_mid = cur.t - 0.5 * ds * v;
    cplx seed = cur.t - ds * v;
    try {
      const BranchTrackedValue lm = track_log(t_mid, cur.state.log_t);
      seed = cur.t - ds * dt_ds(t_mid, lm);
    } catch (const Error&) {
    }
    const auto sol = solve_level(s_new, seed, cur.state, z, alpha, log_1mz,
                                 0.25 * std::max(rho, std::abs(seed - cur.t)));
    if (!sol || std::abs(sol->first - seed) > 0.1 * std::abs(seed - cur.t) + 1e-12 * std::abs(seed)) {
      ds *= 0.25;
      continue;
    }
    path.push_back({s_new, sol->first, sol->second});
    if (path.size() > 200000) {
      throw ContinuationError("integrate_I2: too many continuation steps");
    }
  }

  I2Result res;
  res.junction_arg_t = path.back().state.log_t.imag_phase;
  for (const PathPoint& p : path) {
    res.s_nodes.push_back(p.s);
    res.path.push_back(p.t);
  }

  // K = int_0^1 f(s) s^(n-1) ds with f = t (1 - z t) / (alpha - (alpha+1) z t).
  const double nd = static_cast<double>(n);
  const cplx f1 = one_minus_z / (a - (a + 1.0) * z);
  const double k_scale = std::max(std::abs(f1) / nd, 1e-300);
  const double rel = options.quad.rel_tol;
  PathSum sum;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const PathPoint& hi = path[i];
    const PathPoint& lo = path[i + 1];
    const double width = hi.s - lo.s;
    auto integrand = [&](double s) -> cplx {
      const double frac = (s - lo.s) / width;
      const cplx seed = lo.t + frac * (hi.t - lo.t);
      const auto sol = solve_level(s, seed, hi.state, z, alpha, log_1mz,
                                   std::abs(hi.t - lo.t) + 1e-3 * std::abs(hi.t));
      if (!sol) {
        throw ContinuationError("integrate_I2: Newton failed inside a panel at s = " +
                                std::to_string(s));
      }
      const cplx t = sol->first;
      const cplx f = t * (1.0 - z * t) / (a - (a + 1.0) * z * t);
      return f * std::exp((nd - 1.0) * std::log(s));
    };
    sum += adaptive_gauss_kronrod(integrand, lo.s, hi.s, 1e-2 * rel * k_scale * width, rel, 64);
  }
  const double rounding = 10.0 * kEps * sum.abs_sum;
  res.K = sum.value;
  res.K_abs_error = sum.error + rounding;

  const double log_scale = nd * std::log(std::abs(one_minus_z));
  res.integral = ContourIntegral::from_scaled(res.K, res.K_abs_error, log_scale,
                                              "I2:implicit path g(t)=s(1-z), s in [0,1]");
  res.integral.phase = wrap_phase(res.integral.phase + nd * log_1mz.imag());
  return res;
}

ContourSplit contour_split(int n, const Alpha& alpha, cplx z, double eps, const QuadOptions& options) {
  ContourSplit out;
  I2Options o2;
  o2.quad = options;
  out.I2 = integrate_I2(n, alpha, z, o2);
  I1Options o1;
  o1.quad = options;
  o1.check_region = false;
  o1.junction_arg_t = out.I2.junction_arg_t;
  out.I1 = integrate_I1(n, alpha, z, eps, o1);
  out.euler = euler_integral(n, alpha, z, options);

  const double ref = std::max({out.euler.log_modulus, out.I1.integral.log_modulus,
                               out.I2.integral.log_modulus});
  const cplx diff =
      out.euler.scaled(ref) - (out.I1.integral.scaled(ref) + out.I2.integral.scaled(ref));
  out.log_discrepancy = safe_log(std::abs(diff)) + ref;
  out.log_budget = log_add(log_add(out.euler.log_abs_error, out.I1.integral.log_abs_error),
                           out.I2.integral.log_abs_error);
  return out;
}

std::vector<double> f_lemma_check(const std::function<cplx(double)>& f, std::span<const int> n_list,
                                  const QuadOptions& options) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 1) {
      throw DomainError("f_lemma_check needs n >= 1");
    }
    const double nd = static_cast<double>(n);
    auto integrand = [&](double s) { return f(s) * std::exp((nd - 1.0) * std::log(s)); };
    std::vector<double> breaks;
    for (double k : {64.0, 16.0, 4.0, 1.0}) {
      breaks.push_back(1.0 - k / nd);
    }
    std::sort(breaks.begin(), breaks.end());
    const QuadResult r =
        adaptive_gauss_kronrod(integrand, 0.0, 1.0, 0.0, options.rel_tol, options.max_panels, breaks);
    out.push_back(std::pow(std::abs(r.value), 1.0 / nd));
  }
  return out;
}

}  // namespace hypzero
