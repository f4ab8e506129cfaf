#include "ultrakit/approxconv.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <stdexcept>

#include "ultrakit/gsnorms.hpp"

namespace ultrakit {

namespace {

std::vector<GaussSum> ladder(const GaussSum& f, int alpha_max) {
  std::vector<GaussSum> d(static_cast<size_t>(alpha_max) + 1);
  d[0] = f;
  for (int a = 1; a <= alpha_max; ++a) d[a] = derivative(d[a - 1], 1);
  return d;
}

}  // namespace

void RiemannScheme::validate() const {
  if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("riemann scheme: m must be finite and nonnegative");
  if (n < 1) throw std::invalid_argument("riemann scheme: n must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0 / n)) throw std::invalid_argument("riemann scheme: gamma must lie in (0, 1/n)");
}

std::vector<double> RiemannScheme::nodes() const {
  const long J = static_cast<long>(std::floor(m * n + 1e-9));
  std::vector<double> t;
  t.reserve(static_cast<size_t>(2 * J + 1));
  for (long j = -J; j <= J; ++j) t.push_back(static_cast<double>(j) / n);
  return t;
}

std::pair<double, double> RiemannScheme::cell(double t) const {
  const double half = 0.5 * (1.0 / n - gamma);
  double lo = std::max(-m, t - half), hi = std::min(m, t + half);
  if (hi < lo) return {t, t};
  return {lo, hi};
}

double RiemannScheme::cell_measure(double t) const {
  auto [lo, hi] = cell(t);
  return hi - lo;
}

std::vector<std::pair<double, double>> RiemannScheme::gaps() const {
  std::vector<std::pair<double, double>> out;
  double cursor = -m;
  for (double t : nodes()) {
    auto [lo, hi] = cell(t);
    if (lo > cursor) out.emplace_back(cursor, lo);
    cursor = std::max(cursor, hi);
  }
  if (cursor < m) out.emplace_back(cursor, m);
  return out;
}

double RiemannScheme::gap_measure() const {
  std::vector<double> len;
  for (auto [lo, hi] : gaps()) len.push_back(hi - lo);
  return pairwise_sum(len);
}

GaussSum riemann_convolve(const GaussSum& phi, const GaussSum& psi, const RiemannScheme& scheme) {
  scheme.validate();
  GaussSum out;
  for (double t : scheme.nodes()) {
    double mu = scheme.cell_measure(t);
    cplx w = mu * psi(t);
    if (w != cplx(0.0)) out += scale(translate(phi, t), w);
  }
  return out;
}

double target_norm(const GaussSum& f, const RiemannParams& p) {
  const auto cond = check_conditions(p.M);
  const double H = cond.m2prime.H;
  const auto d = ladder(f, p.alpha_max);
  double best = 0.0;
  for (int a = 0; a <= p.alpha_max; ++a) {
    if (d[a].is_zero()) continue;
    for (double x : p.x_grid.nodes()) {
      double ln = associated_function(p.A, p.q * std::abs(x) / (2 * H * H)) - a * std::log(H * p.ell) - p.M.log_value(a);
      best = std::max(best, std::exp(log_abs_eval(d[a], x) + ln));
    }
  }
  return best;
}

ErrorSplit error_split(const GaussSum& phi, const GaussSum& psi, const RiemannScheme& scheme, const RiemannParams& p) {
  scheme.validate();
  if (p.alpha_max < 0 || p.alpha_max + 1 > p.M.order()) throw std::invalid_argument("error_split: alpha_max out of range");
  const auto cond = check_conditions(p.M);
  ErrorSplit r;
  r.C0 = cond.m2prime.C0;
  r.H = cond.m2prime.H;
  const double H = r.H;

  const GaussSum diff = convolve(phi, psi) - riemann_convolve(phi, psi, scheme);
  const auto dphi = ladder(phi, p.alpha_max);
  const auto ddiff = ladder(diff, p.alpha_max);

  NormParams np{p.M, p.A, p.ell, p.q, p.alpha_max + 1};
  const double n_psi = gs_sup_norm(psi, np).value;
  const double n_phi = gs_sup_norm(phi, np).value;
  const double s2_const =
      r.C0 * std::exp(p.M.log_value(0)) * p.ell * n_psi * n_phi * (2.0 * scheme.m / scheme.n);

  // Gauss-Kronrod 7-15 nodes on each gap with |psi| folded into both weight sets.
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G7 = boost::math::quadrature::gauss<double, 7>;
  struct GapNode {
    double u, wk, wg;
  };
  const auto gaps = scheme.gaps();
  std::vector<std::vector<GapNode>> gap_nodes(gaps.size());
  for (size_t g = 0; g < gaps.size(); ++g) {
    const double c = 0.5 * (gaps[g].first + gaps[g].second), h = 0.5 * (gaps[g].second - gaps[g].first);
    const auto& xs = GK::abscissa();
    for (size_t i = 0; i < xs.size(); ++i) {
      const double wg = i % 2 == 0 ? G7::weights()[i / 2] : 0.0;
      for (double sgn : {1.0, -1.0}) {
        if (i == 0 && sgn < 0) continue;
        const double u = c + sgn * h * xs[i];
        const double ap = std::abs(psi(u));
        gap_nodes[g].push_back({u, h * GK::weights()[i] * ap, h * wg * ap});
      }
    }
  }

  const int nx = p.x_grid.size();
  const int total_pts = (p.alpha_max + 1) * nx;
  r.points.resize(static_cast<size_t>(total_pts));
  parallel_for(total_pts, [&](int idx) {
    const int a = idx / nx;
    const double x = p.x_grid.node(idx % nx);
    const double ln = associated_function(p.A, p.q * std::abs(x) / (2 * H * H)) - a * std::log(H * p.ell) - p.M.log_value(a);
    const double w = std::exp(ln);
    const GaussSum& da = dphi[a];

    boost::math::quadrature::exp_sinh<double> es;
    auto product = [&](double u, double v) {
      double l = log_abs_eval(psi, u) + log_abs_eval(da, v);
      return std::isfinite(l) ? std::exp(l) : 0.0;
    };
    auto right = [&](double u) { return product(u, x - u); };
    auto left = [&](double u) { return product(-u, x + u); };
    double s1 = es.integrate(right, scheme.m, std::numeric_limits<double>::infinity(), 1e-12) +
                es.integrate(left, scheme.m, std::numeric_limits<double>::infinity(), 1e-12);

    auto inner = [&](double u) { return std::abs(psi(u)) * std::abs(da(x - u)); };
    std::vector<double> parts(gaps.size());
    for (size_t g = 0; g < gaps.size(); ++g) {
      double k = 0.0, gs = 0.0;
      for (const auto& nd : gap_nodes[g]) {
        const double v = std::abs(da(x - nd.u));
        k += nd.wk * v;
        gs += nd.wg * v;
      }
      parts[g] = std::abs(k - gs) <= 1e-11 * k ? k : GK::integrate(inner, gaps[g].first, gaps[g].second, 12, 1e-12);
    }
    double s3 = pairwise_sum(parts);

    SplitPoint pt;
    pt.alpha = a;
    pt.x = x;
    pt.S1 = s1 * w;
    pt.S2 = s2_const * std::exp(associated_function(p.A, p.q * std::abs(x) / (2 * H * H)) -
                                associated_function(p.A, p.q * std::abs(x) / 2));
    pt.S3 = s3 * w;
    pt.total = ddiff[a].is_zero() ? 0.0 : std::exp(log_abs_eval(ddiff[a], x) + ln);
    r.points[idx] = pt;
  });
  for (const auto& pt : r.points) {
    r.S1 = std::max(r.S1, pt.S1);
    r.S2 = std::max(r.S2, pt.S2);
    r.S3 = std::max(r.S3, pt.S3);
    r.total = std::max(r.total, pt.total);
    r.bound_holds = r.bound_holds && pt.total <= pt.S1 + pt.S2 + pt.S3 + 1e-9;
  }
  return r;
}

ConvergenceStudy convergence_study(const GaussSum& phi, const GaussSum& psi, const std::vector<RiemannScheme>& schedule,
                                   const RiemannParams& p) {
  if (schedule.empty()) throw std::invalid_argument("convergence_study: empty schedule");
  ConvergenceStudy s;
  s.reference_norm = target_norm(convolve(phi, psi), p);
  int k = 0;
  for (const auto& sc : schedule) {
    auto e = error_split(phi, psi, sc, p);
    s.rows.push_back({++k, sc, e.S1, e.S2, e.S3, e.total, e.bound_holds});
    if (s.rows.size() > 1 && e.total > s.rows[s.rows.size() - 2].total) {
      s.monotone = false;
      s.non_monotone_steps.push_back(k);
    }
  }
  s.final_ok = s.rows.back().total <= 1e-3 * s.reference_norm;
  return s;
}

std::vector<RiemannScheme> default_schedule(int steps) {
  std::vector<RiemannScheme> out;
  for (int k = 1; k <= steps; ++k) {
    RiemannScheme s;
    s.m = 2.0 + k;
    s.n = 4 << k;
    s.gamma = std::ldexp(1.0, -k) / (4.0 * s.m * s.n);
    out.push_back(s);
  }
  return out;
}

std::vector<RiemannScheme> doubling_schedule(double m, int n0, int steps, double c) {
  std::vector<RiemannScheme> out;
  for (int k = 0; k < steps; ++k) {
    RiemannScheme s;
    s.m = m;
    s.n = n0 << k;
    s.gamma = c / (static_cast<double>(s.n) * s.n);
    s.validate();
    out.push_back(s);
  }
  return out;
}

}  // namespace ultrakit
