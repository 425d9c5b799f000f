#include "wsq/runs.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "wsq/oracle.hpp"
#include "wsq/periodic.hpp"
#include "wsq/theory.hpp"

namespace wsq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  line += '\n';
  return line;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Periodic: return "periodic";
    case Family::PlanarHolder: return "planar-holder";
    case Family::PlanarSmooth: return "planar-smooth";
  }
  return "?";
}

// Built-in Holder corpus.  A function that is smooth away from finitely
// many points or lines converges faster than the class rate, so exhibiting
// the n^-alpha worst case needs roughness in every cell.  A truncated
// lacunary cosine series delivers that: below the grid scale each frequency
// doubles while its amplitude falls by 2^-alpha, and at the rule's own nodes
// every unresolved mode aliases to the constant one, so the error tracks
// the amplitude of the first unresolved mode.  Being a finite trig sum it
// stays smooth, which is what keeps the reference integrator fast.
constexpr int kModes = 10;  // frequencies 2^0 .. 2^9, covering n <= 64

struct LacunaryProfile {
  double amp[kModes];

  // g(u) = sum_j amp_j cos(2^j u) via the double angle cascade.
  double operator()(double u) const {
    double c = std::cos(u);
    double s = amp[0] * c;
    for (int j = 1; j < kModes; ++j) {
      c = 2.0 * c * c - 1.0;
      s += amp[j] * c;
    }
    return s;
  }

  // Amplitudes 2^-(j alpha) scaled so that |g(u) - g(v)| <= |s(u-v)|^alpha
  // exactly: the increment bound sum_j 2^-(j a) min(2^j th, 2) is piecewise
  // smooth in th with breakpoints at th = 2^(1-j), so its sup over th^alpha
  // is attained at a breakpoint or an interior stationary point.
  static LacunaryProfile make(double alpha, double scale) {
    double raw[kModes];
    for (int j = 0; j < kModes; ++j) raw[j] = std::pow(2.0, -j * alpha);
    // The last amplitude absorbs the tail of the infinite series, so the
    // unresolved mass at every grid scale matches the untruncated function
    // and the fitted order is free of truncation bias.
    raw[kModes - 1] /= 1.0 - std::pow(2.0, -alpha);
    auto ratio = [&](double th) {
      double s = 0.0;
      for (int j = 0; j < kModes; ++j)
        s += raw[j] * std::min(std::ldexp(th, j), 2.0);
      return s / std::pow(th, alpha);
    };
    double c_norm = ratio(2.0);
    for (int p = 0; p < kModes; ++p) {
      const double hi = std::ldexp(2.0, -p);
      const double lo = 0.5 * hi;
      const double mid = std::sqrt(lo * hi);
      double A = 0.0, B = 0.0;
      for (int j = 0; j < kModes; ++j) {
        if (std::ldexp(mid, j) >= 2.0)
          B += 2.0 * raw[j];
        else
          A += raw[j] * std::ldexp(1.0, j);
      }
      c_norm = std::max(c_norm, ratio(lo));
      c_norm = std::max(c_norm, ratio(hi));
      if (A > 0.0) {
        const double stat = alpha * B / ((1.0 - alpha) * A);
        if (stat > lo && stat < hi) c_norm = std::max(c_norm, ratio(stat));
      }
    }
    LacunaryProfile prof;
    for (int j = 0; j < kModes; ++j)
      prof.amp[j] = raw[j] / (c_norm * std::pow(scale, alpha));
    return prof;
  }
};

double smooth_corpus(double x, double y) { return std::cos(x) * std::cos(y); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double fit_order(const std::vector<int>& ns, const std::vector<double>& errs) {
  if (ns.size() != errs.size() || ns.size() < 2)
    throw std::invalid_argument("fit_order: need at least two points");
  const std::size_t K = ns.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(K), ys(K);
  for (std::size_t k = 0; k < K; ++k) {
    xs[k] = std::log(static_cast<double>(ns[k]));
    ys[k] = std::log(std::max(errs[k], 1e-300));
    mx += xs[k];
    my += ys[k];
  }
  mx /= K;
  my /= K;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return -sxy / sxx;
}

ConvergenceStudy convergence_study(const RunConfig& cfg) {
  require(!cfg.n_list.empty(), "convergence: no grid sizes given");
  require(cfg.lambda > 0.0 && cfg.lambda < 1.0,
          "convergence: lambda must be in (0, 1)");

  ConvergenceStudy study;
  study.family = cfg.family;
  study.lambda = cfg.lambda;

  const double tol = cfg.oracle_tol;
  OracleOptions oopt;
  oopt.tol = tol;
  // The corpus oscillates down to wavelength 2 pi / 2^9; higher-order panels
  // plus a larger budget keep the reference cheap at that resolution.
  oopt.panel_m = 14;
  oopt.max_evals = 400'000'000;

  if (cfg.family == Family::Periodic) {
    require(cfg.alpha > 0.0 && cfg.alpha <= 1.0,
            "convergence: alpha must be in (0, 1]");
    study.param = cfg.alpha;
    const double gamma = gamma_constant(cfg.lambda, 1e-6);
    // The reference value does not depend on the evaluation point: shifting
    // the integration variable makes the integrand s-free, so it is computed
    // once, anchored at (pi, pi).
    const LacunaryProfile prof = LacunaryProfile::make(cfg.alpha, 1.0);
    const double lambda = cfg.lambda;
    oopt.singular = {{std::numbers::pi, std::numbers::pi}};
    auto integrand = [prof, lambda](double x, double y) {
      const double u = std::sin(0.5 * (x - std::numbers::pi));
      const double v = std::sin(0.5 * (y - std::numbers::pi));
      return (prof(x - std::numbers::pi) + prof(y - std::numbers::pi)) *
             std::pow(u * u + v * v, -lambda);
    };
    const OracleResult ref =
        oracle_integrate(integrand, Rect{0.0, two_pi, 0.0, two_pi}, oopt);
    if (!ref.converged)
      throw std::runtime_error(
          "convergence: reference integration did not converge");
    for (int n : cfg.n_list) {
      const int i = cfg.i >= 0 ? cfg.i : n / 2;
      const int j = cfg.j >= 0 ? cfg.j : n / 2;
      PeriodicWeightTable table =
          periodic_weights(n, cfg.lambda, cfg.alpha, i, j, cfg.m_cap);
      const double s1 = table.midpoint(i);
      const double s2 = table.midpoint(j);
      auto f = [&](double x, double y) { return prof(x - s1) + prof(y - s2); };
      const double computed = eval_Kf(table, f, cfg.policy);
      BoundContext ctx;
      ctx.domain = Domain::Periodic;
      ctx.cls = FnClass::HolderAlpha;
      ctx.n = n;
      ctx.lambda = cfg.lambda;
      ctx.gamma = gamma;
      ctx.alpha = cfg.alpha;
      study.points.push_back({n, computed, ref.value,
                              std::abs(computed - ref.value),
                              predicted_error(ctx)});
    }
  } else {
    const double ghat = planar_gamma(cfg.lambda, 1e-6);
    const double t1 = cfg.t1, t2 = cfg.t2;
    oopt.singular = {{t1, t2}};
    const bool holder = cfg.family == Family::PlanarHolder;
    std::function<double(double, double)> f;
    if (holder) {
      require(cfg.alpha > 0.0 && cfg.alpha <= 1.0,
              "convergence: alpha must be in (0, 1]");
      study.param = cfg.alpha;
      // Frequencies pi 2^j alias to a constant on the lattice -1 + 2k/n;
      // the pi^alpha metric factor is folded into the amplitudes.
      const LacunaryProfile prof =
          LacunaryProfile::make(cfg.alpha, std::numbers::pi);
      f = [prof, t1, t2](double x, double y) {
        return prof(std::numbers::pi * (x - t1)) +
               prof(std::numbers::pi * (y - t2));
      };
    } else {
      require(cfg.r >= 1 && cfg.r <= 3, "convergence: r must be 1, 2 or 3");
      study.param = cfg.r;
      f = smooth_corpus;
    }
    auto integrand = [&](double x, double y) {
      const double u = x - t1, v = y - t2;
      return f(x, y) * std::pow(u * u + v * v, -cfg.lambda);
    };
    const OracleResult ref =
        oracle_integrate(integrand, Rect{-1.0, 1.0, -1.0, 1.0}, oopt);
    if (!ref.converged)
      throw std::runtime_error(
          "convergence: reference integration did not converge");
    for (int n : cfg.n_list) {
      double computed;
      BoundContext ctx;
      ctx.domain = Domain::Planar;
      ctx.n = n;
      ctx.lambda = cfg.lambda;
      ctx.gamma = ghat;
      if (holder) {
        PlanarWeightTable table = planar_weights(n, t1, t2, cfg.lambda,
                                                 cfg.alpha, cfg.near,
                                                 cfg.m_cap);
        computed = eval_Tf_holder(table, f, cfg.policy);
        ctx.cls = FnClass::HolderAlpha;
        ctx.alpha = cfg.alpha;
      } else {
        computed = eval_Tf_smooth(f, n, cfg.r, cfg.lambda, t1, t2, cfg.policy,
                                  cfg.m_cap);
        ctx.cls = FnClass::SobolevWrr;
        ctx.r = cfg.r;
      }
      study.points.push_back({n, computed, ref.value,
                              std::abs(computed - ref.value),
                              predicted_error(ctx)});
    }
  }

  if (study.points.size() >= 2) {
    std::vector<int> ns;
    std::vector<double> errs;
    for (const auto& p : study.points) {
      ns.push_back(p.n);
      errs.push_back(p.abs_error);
    }
    study.slope = fit_order(ns, errs);
    study.have_slope = true;
  }
  return study;
}

RunOutput run_capacitance(const RunConfig& cfg) {
  RunOutput out;
  std::string csv = "c,n,m,N,computed_C,exact_C,error,relative_error";
  if (!cfg.no_timing) csv += ",wall_seconds";
  csv += '\n';

  require(cfg.n_list.size() == cfg.m_list.size(),
          "capacitance: n and m lists must pair up");
  require(cfg.iters >= 0, "capacitance: iters must be >= 0");
  const bool is_table = cfg.shape.kind == ShapeSpec::Kind::Table;
  require(!is_table || cfg.c_list.empty(),
          "capacitance: c sweep applies to ellipsoids only");

  std::vector<double> cs = cfg.c_list;
  if (cs.empty() && !is_table) cs.push_back(cfg.shape.c);
  if (is_table) cs.push_back(std::nan(""));  // single pass, no c column

  std::unique_ptr<TabulatedBody> table_body;
  if (is_table) table_body = std::make_unique<TabulatedBody>(
                    TabulatedBody::load(cfg.shape.table_path));

  for (double c : cs) {
    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
      const int n = cfg.n_list[idx];
      const int m = cfg.m_list[idx];
      CapacitanceResult res;
      double exact = std::nan("");
      if (is_table) {
        res = capacitance_run(*table_body, n, m, cfg.iters, cfg.eps0,
                              cfg.policy, cfg.threads);
      } else {
        const Ellipsoid body(cfg.shape.a, cfg.shape.b, c);
        res = capacitance_run(body, n, m, cfg.iters, cfg.eps0, cfg.policy,
                              cfg.threads);
        if (cfg.shape.a == cfg.shape.b)
          exact = exact_spheroid_capacitance(cfg.shape.a, c, cfg.eps0);
      }
      const double computed = res.C.back();
      std::vector<std::string> cells;
      cells.push_back(is_table ? "" : format_double(c));
      cells.push_back(std::to_string(n));
      cells.push_back(std::to_string(m));
      cells.push_back(std::to_string(res.N));
      cells.push_back(format_double(computed));
      if (std::isnan(exact)) {
        cells.push_back("");
        cells.push_back("");
        cells.push_back("");
      } else {
        cells.push_back(format_double(exact));
        cells.push_back(format_double(computed - exact));
        cells.push_back(format_double(std::abs(computed - exact) /
                                      std::abs(exact)));
      }
      if (!cfg.no_timing) cells.push_back(format_double(res.wall_seconds));
      csv += join_row(cells);
    }
  }
  out.csv = std::move(csv);
  return out;
}

RunOutput run_convergence(const RunConfig& cfg) {
  RunOutput out;
  std::string csv =
      "family,lambda,param,n,computed,oracle,abs_error,predicted_bound,"
      "slope,note\n";
  ConvergenceStudy study;
  if (!cfg.n_list.empty()) study = convergence_study(cfg);
  else study.family = cfg.family, study.lambda = cfg.lambda;

  const std::string fam = family_name(study.family);
  const std::string lam = format_double(study.lambda);
  const std::string par = format_double(study.param);
  for (const auto& p : study.points) {
    csv += join_row({fam, lam, par, std::to_string(p.n),
                     format_double(p.computed), format_double(p.oracle),
                     format_double(p.abs_error), format_double(p.predicted),
                     "", ""});
  }
  if (study.have_slope) {
    csv += join_row({fam, lam, par, "", "", "", "", "",
                     format_double(study.slope), ""});
  } else {
    csv += join_row({fam, lam, par, "", "", "", "", "", "",
                     "insufficient points"});
  }
  out.csv = std::move(csv);
  return out;
}

RunOutput run_weights(const RunConfig& cfg) {
  RunOutput out;
  require(cfg.n_list.size() == 1, "weights: exactly one n required");
  const int n = cfg.n_list[0];
  std::string csv = "k,l,weight\n";
  if (cfg.family == Family::Periodic) {
    const int i = cfg.i >= 0 ? cfg.i : n / 2;
    const int j = cfg.j >= 0 ? cfg.j : n / 2;
    PeriodicWeightTable t =
        periodic_weights(n, cfg.lambda, cfg.alpha, i, j, cfg.m_cap);
    if (t.reg.clamped)
      out.notes.push_back("diagonal Gauss order clamped to " +
                          std::to_string(t.reg.m_gauss));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        csv += join_row({std::to_string(k), std::to_string(l),
                         format_double(t.at(k, l))});
  } else if (cfg.family == Family::PlanarHolder) {
    PlanarWeightTable t = planar_weights(n, cfg.t1, cfg.t2, cfg.lambda,
                                         cfg.alpha, cfg.near, cfg.m_cap);
    if (t.reg.clamped)
      out.notes.push_back("near-cell Gauss order clamped to " +
                          std::to_string(t.reg.m_gauss));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        csv += join_row({std::to_string(k), std::to_string(l),
                         format_double(t.at(k, l))});
  } else {
    throw std::invalid_argument("weights: family must be periodic or "
                                "planar-holder");
  }
  out.csv = std::move(csv);
  return out;
}

RunOutput run_constants(const RunConfig&) {
  RunOutput out;
  std::string csv = "name,param,value\n";
  for (int r = 0; r <= 4; ++r)
    csv += join_row({"favard", std::to_string(r),
                     format_double(favard_constant(r))});
  for (int r = 1; r <= 4; ++r)
    csv += join_row({"least_dev_L1", std::to_string(r),
                     format_double(least_dev_value(r, LNorm::One))});
  for (int r = 1; r <= 4; ++r)
    csv += join_row({"least_dev_sup", std::to_string(r),
                     format_double(least_dev_value(r, LNorm::Inf))});
  const double lambdas[3] = {0.25, 0.5, 0.75};
  for (double lam : lambdas)
    csv += join_row({"gamma", format_double(lam),
                     format_double(gamma_constant(lam, 1e-6))});
  for (double lam : lambdas)
    csv += join_row({"gamma_hat", format_double(lam),
                     format_double(planar_gamma(lam, 1e-6))});
  out.csv = std::move(csv);
  return out;
}

RunOutput run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Capacitance: return run_capacitance(cfg);
    case Command::Convergence: return run_convergence(cfg);
    case Command::Weights: return run_weights(cfg);
    case Command::Constants: return run_constants(cfg);
  }
  throw std::invalid_argument("run: unknown command");
}

}  // namespace wsq
