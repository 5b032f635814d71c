#include "hypzero/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "hypzero/errors.hpp"

namespace hypzero {

namespace {

struct Seeds {
  std::vector<cplx> points;
};

Seeds starting_circle(const Polynomial& p, std::uint64_t seed) {
  const int n = p.degree;
  // Centre on the mean of the zeros; radius is their geometric-mean distance
  // from it, |p(centre) / c_n|^(1/n).
  const cplx centre = -p.coeffs[static_cast<size_t>(n - 1)] / (static_cast<double>(n) * p.coeffs.back());
  double log_val = 0.0;
  {
    cplx acc(0.0, 0.0);
    for (size_t k = p.coeffs.size(); k-- > 0;) {
      acc = acc * centre + p.coeffs[k];
    }
    log_val = std::log(std::abs(acc)) - std::log(std::abs(p.coeffs.back()));
  }
  double radius = std::exp(log_val / n);
  if (!std::isfinite(radius) || radius <= 0.0) {
    double cmax = 0.0;
    for (const cplx& c : p.coeffs) {
      cmax = std::max(cmax, std::abs(c));
    }
    radius = 1.1 * std::pow(cmax / std::abs(p.coeffs.back()), 1.0 / n);
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Seeds s;
  const double offset = 0.4;
  for (int k = 0; k < n; ++k) {
    const double angle = kTwoPi * (k + offset + 0.25 * (uniform() - 0.5)) / n;
    s.points.push_back(centre + std::polar(radius, angle));
  }
  return s;
}

struct AberthRun {
  std::vector<cplx> zeros;
  std::vector<bool> done;
  int iterations = 0;
};

AberthRun aberth_double(const Polynomial& p, const std::vector<cplx>& start, int max_iter) {
  const size_t n = start.size();
  AberthRun run{start, std::vector<bool>(n, false), 0};
  std::vector<cplx> next(n);
  const double tol = 8.0 * std::numeric_limits<double>::epsilon();
  const double backward = 4.0 * static_cast<double>(p.coeffs.size()) * tol;
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (size_t i = 0; i < n; ++i) {
      const cplx z = run.zeros[i];
      if (run.done[i]) {
        next[i] = z;
        continue;
      }
      cplx v(0.0, 0.0);
      cplx d(0.0, 0.0);
      double mag = 0.0;
      const double az = std::abs(z);
      for (size_t k = p.coeffs.size(); k-- > 0;) {
        d = d * z + v;
        v = v * z + p.coeffs[k];
        mag = mag * az + std::abs(p.coeffs[k]);
      }
      const cplx ratio = v / d;
      cplx sum(0.0, 0.0);
      for (size_t j = 0; j < n; ++j) {
        if (j != i) {
          sum += 1.0 / (z - run.zeros[j]);
        }
      }
      const cplx w = ratio / (1.0 - ratio * sum);
      next[i] = z - w;
      if (std::isfinite(std::abs(w)) &&
          (std::abs(v) <= backward * mag || std::abs(w) <= tol * std::abs(z))) {
        run.done[i] = true;
      }
      all_done = all_done && run.done[i];
    }
    for (size_t i = 0; i < n; ++i) {
      if (std::isfinite(std::abs(next[i]))) {
        run.zeros[i] = next[i];
      }
    }
    run.iterations = it + 1;
    if (all_done) {
      break;
    }
  }
  return run;
}

AberthRun aberth_extended(const std::vector<XComplex>& coeffs, const std::vector<cplx>& start,
                          unsigned bits, int max_iter) {
  const size_t n = start.size();
  std::vector<XComplex> zs;
  zs.reserve(n);
  for (const cplx& s : start) {
    zs.emplace_back(s, bits);
  }
  std::vector<XComplex> next = zs;
  std::vector<char> done(n, 0);
  std::vector<XReal> abs_coeffs;
  for (const XComplex& c : coeffs) {
    abs_coeffs.push_back(abs(c));
  }
  // Stop a root once |p(z)| is at the rounding level of the Horner sum, or
  // once the correction is below 2^-(bits-16) |z|.
  const double log2_backward = -static_cast<double>(bits) + 8.0 + std::log2(4.0 * coeffs.size());
  const double log2_step = -static_cast<double>(bits) + 16.0;

  // One sweep over roots [lo, hi), reading only the previous snapshot `zs`.
  auto sweep = [&](size_t lo, size_t hi) {
    const XComplex one(XReal(1.0, bits), XReal(0.0, bits));
    XComplex v(bits);
    XComplex d(bits);
    for (size_t i = lo; i < hi; ++i) {
      if (done[i]) {
        next[i] = zs[i];
        continue;
      }
      horner_with_derivative(coeffs, zs[i], v, d);
      const double lv = 0.5 * norm(v).log2_abs();
      const XReal az = abs(zs[i]);
      XReal mag(bits);
      for (size_t k = abs_coeffs.size(); k-- > 0;) {
        mag *= az;
        mag += abs_coeffs[k];
      }
      if (lv - mag.log2_abs() <= log2_backward) {
        next[i] = zs[i];
        done[i] = 1;
        continue;
      }
      const XComplex ratio = v / d;
      XComplex sum(bits);
      for (size_t j = 0; j < n; ++j) {
        if (j != i) {
          sum += one / (zs[i] - zs[j]);
        }
      }
      const XComplex w = ratio / (one - ratio * sum);
      next[i] = zs[i] - w;
      if (0.5 * (norm(w).log2_abs() - norm(zs[i]).log2_abs()) <= log2_step) {
        done[i] = 1;
      }
    }
  };

  const size_t workers =
      n >= 48 ? std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), n / 16) : 1;
  int it = 0;
  while (it < max_iter) {
    if (workers <= 1) {
      sweep(0, n);
    } else {
      std::vector<std::thread> pool;
      for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back(sweep, n * w / workers, n * (w + 1) / workers);
      }
      for (std::thread& t : pool) {
        t.join();
      }
    }
    std::swap(zs, next);
    ++it;
    if (std::all_of(done.begin(), done.end(), [](char c) { return c != 0; })) {
      break;
    }
  }
  AberthRun run;
  run.iterations = it;
  for (size_t i = 0; i < n; ++i) {
    run.done.push_back(done[i] != 0);
    run.zeros.push_back(zs[i].to_complex());
  }
  return run;
}

struct Polished {
  cplx zero;
  double residual = 0.0;
  double forward = 0.0;
};

/// Newton steps in `bits` of precision; reports the residual and the size of
/// the last correction.
Polished polish(const std::vector<XComplex>& coeffs, cplx start, unsigned bits, int steps) {
  XComplex z(start, bits);
  XComplex v(bits);
  XComplex d(bits);
  double forward = 0.0;
  for (int s = 0; s < steps; ++s) {
    horner_with_derivative(coeffs, z, v, d);
    if (v.re.is_zero() && v.im.is_zero()) {
      forward = 0.0;
      break;
    }
    const XComplex step = v / d;
    forward = std::exp2(0.5 * (norm(step).log2_abs() - norm(z).log2_abs()));
    z -= step;
    if (forward < std::exp2(-static_cast<double>(bits) + 8.0)) {
      break;
    }
  }
  // Condition-scaled residual at the final point.
  horner_with_derivative(coeffs, z, v, d);
  const XReal az = abs(z);
  XReal mag(bits);
  for (size_t k = coeffs.size(); k-- > 0;) {
    mag *= az;
    mag += abs(coeffs[k]);
  }
  Polished out;
  out.zero = z.to_complex();
  const double lv = 0.5 * norm(v).log2_abs();
  out.residual = std::isfinite(lv) ? std::exp2(lv - mag.log2_abs()) : 0.0;
  out.forward = forward;
  return out;
}

ZeroSet assemble(const Polynomial& p, const AberthRun& run, const std::vector<XComplex>& coeffs,
                 unsigned polish_bits, const RootOptions& options) {
  ZeroSet zs;
  zs.n = p.degree;
  zs.alpha = p.alpha;
  zs.shift = p.shift;
  zs.iterations = run.iterations;
  std::vector<size_t> order(run.zeros.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Polished> pol;
  for (const cplx& z : run.zeros) {
    pol.push_back(polish(coeffs, z, polish_bits, 8));
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const cplx za = pol[a].zero;
    const cplx zb = pol[b].zero;
    return za.real() < zb.real() || (za.real() == zb.real() && za.imag() < zb.imag());
  });
  zs.converged = true;
  for (size_t i : order) {
    zs.zeros.push_back(pol[i].zero);
    zs.residuals.push_back(pol[i].residual);
    zs.forward_errors.push_back(pol[i].forward);
    const bool ok = run.done[i] && pol[i].residual <= options.residual_tol &&
                    pol[i].forward <= options.residual_tol;
    zs.root_converged.push_back(ok);
    zs.converged = zs.converged && ok;
  }
  return zs;
}

}  // namespace

double ZeroSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

ZeroSet find_roots(const Polynomial& p, Precision precision, const RootOptions& options) {
  if (p.degree < 1) {
    throw DomainError("find_roots needs degree >= 1");
  }
  if (static_cast<int>(p.coeffs.size()) != p.degree + 1 || p.coeffs.back() == cplx(0.0, 0.0)) {
    throw DomainError("find_roots: malformed polynomial");
  }
  const Seeds seeds = starting_circle(p, options.seed);
  auto extended_attempt = [&](unsigned bits, const std::vector<cplx>& start) {
    const AberthRun run =
        aberth_extended(coefficients_extended(p, bits), start, bits, options.max_iter);
    ZeroSet zs = assemble(p, run, coefficients_extended(p, bits + 64), bits + 64, options);
    zs.bits_used = bits;
    return zs;
  };

  if (precision.kind == Precision::Kind::Extended) {
    return extended_attempt(precision.bits, seeds.points);
  }

  unsigned bits = auto_bits(p.degree);
  bool escalated = false;
  if (precision.kind == Precision::Kind::Double) {
    const AberthRun run = aberth_double(p, seeds.points, options.max_iter);
    // Judge the double-precision zeros with an extended-precision Newton step:
    // the double residual alone is a backward error and hides ill-conditioning.
    const std::vector<XComplex> coeffs = coefficients_extended(p, bits);
    bool accept = true;
    for (size_t i = 0; i < run.zeros.size() && accept; ++i) {
      const Polished check = polish(coeffs, run.zeros[i], bits, 1);
      const Evaluation ev = evaluate(p, run.zeros[i]);
      accept = run.done[i] && ev.scaled_residual <= options.residual_tol &&
               check.forward <= options.residual_tol;
    }
    if (accept) {
      ZeroSet zs = assemble(p, run, coefficients_extended(p, bits + 64), bits + 64, options);
      zs.bits_used = 53;
      return zs;
    }
    escalated = true;
  }

  // Auto (and rejected double): widen the mantissa until every zero passes,
  // restarting from the previous estimates.
  ZeroSet zs = extended_attempt(bits, seeds.points);
  for (int retry = 0; retry < 3 && !zs.converged; ++retry) {
    bits += bits / 2;
    zs = extended_attempt(bits, zs.zeros);
  }
  zs.escalated = escalated;
  return zs;
}

void to_json(nlohmann::json& j, const ZeroSet& z) {
  nlohmann::json zeros = nlohmann::json::array();
  for (const cplx& c : z.zeros) {
    zeros.push_back({c.real(), c.imag()});
  }
  j = {{"n", z.n},
       {"alpha", {z.alpha.eta(), z.alpha.zeta()}},
       {"shift", z.shift},
       {"zeros", zeros},
       {"residuals", z.residuals},
       {"forward_errors", z.forward_errors},
       {"root_converged", z.root_converged},
       {"iterations", z.iterations},
       {"converged", z.converged},
       {"escalated", z.escalated},
       {"bits_used", z.bits_used}};
}

void from_json(const nlohmann::json& j, ZeroSet& z) {
  z.n = j.at("n").get<int>();
  const auto a = j.at("alpha");
  z.alpha = Alpha(a.at(0).get<double>(), a.at(1).get<double>());
  z.shift = j.value("shift", 0.0);
  z.zeros.clear();
  for (const auto& c : j.at("zeros")) {
    z.zeros.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  z.residuals = j.at("residuals").get<std::vector<double>>();
  z.forward_errors = j.at("forward_errors").get<std::vector<double>>();
  z.root_converged = j.at("root_converged").get<std::vector<bool>>();
  z.iterations = j.at("iterations").get<int>();
  z.converged = j.at("converged").get<bool>();
  z.escalated = j.at("escalated").get<bool>();
  z.bits_used = j.at("bits_used").get<unsigned>();
}

std::string to_csv(const ZeroSet& z) {
  std::ostringstream out;
  out << "re,im,residual\n";
  char buf[96];
  for (size_t i = 0; i < z.zeros.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.6e\n", z.zeros[i].real(), z.zeros[i].imag(),
                  z.residuals[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace hypzero
