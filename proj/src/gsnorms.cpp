#include "ultrakit/gsnorms.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <stdexcept>

namespace ultrakit {

namespace {

struct Scan {
  double value = 0.0;
  int node = -1;
};

std::vector<GaussSum> derivative_ladder(const GaussSum& f, int alpha_max) {
  std::vector<GaussSum> d(static_cast<size_t>(alpha_max) + 1);
  d[0] = f;
  for (int k = 1; k <= alpha_max; ++k) d[k] = derivative(d[k - 1], 1);
  return d;
}

std::vector<double> log_weights(const WeightSequence& A, double q, const Grid& g) {
  std::vector<double> lw(static_cast<size_t>(g.size()));
  for (int j = 0; j < g.size(); ++j) lw[j] = associated_function(A, q * std::abs(g.node(j)));
  return lw;
}

// Breakpoints of t -> omega(t) strictly between t0 and t1, given the maximizing
// indices at both ends.
void omega_breaks(const WeightSequence& A, double t0, double t1, int p0, int p1, std::vector<double>& out,
                  int depth = 0) {
  if (p0 == p1 || depth > 64) return;
  const auto& L = A.log_values();
  double t = std::exp((L[p1] - L[p0]) / (p1 - p0));
  if (!(t > t0 && t < t1)) return;
  int pm = associated_function_detail(A, t).index;
  if (pm == p0 || pm == p1) {
    out.push_back(t);
    return;
  }
  omega_breaks(A, t0, t, p0, pm, out, depth + 1);
  omega_breaks(A, t, t1, pm, p1, out, depth + 1);
}

// L1 over the grid with kinks of |d| and of the weight resolved.
double weighted_l1_integral(const GaussSum& d, const std::vector<double>& v, double norm, const WeightSequence& A,
                            double q, const Grid& g) {
  std::vector<cplx> cv(v.size());
  std::vector<int> idx(v.size());
  for (int j = 0; j < g.size(); ++j) {
    cv[j] = d(g.node(j));
    idx[j] = associated_function_detail(A, q * std::abs(g.node(j))).index;
  }
  auto breaks = [&](int i) -> std::optional<std::vector<double>> {
    int l = 2 * i, m = l + 1, r = l + 2;
    double xl = g.node(l), xr = g.node(r);
    bool zero_inside = xl < 0.0 && xr > 0.0;
    bool weight_kink = idx[l] != idx[m] || idx[m] != idx[r];
    bool phase_flip = std::real(cv[l] * std::conj(cv[m])) < 0.0 || std::real(cv[m] * std::conj(cv[r])) < 0.0;
    if (!zero_inside && !weight_kink && !phase_flip) return std::nullopt;
    std::vector<double> pts = omega_kinks(A, q, xl, xr);
    if (phase_flip) {
      for (double x : modulus_kinks(d, xl, xr)) pts.push_back(x);
    }
    if (zero_inside) pts.push_back(0.0);
    return pts;
  };
  auto integrand = [&](double x) {
    return std::exp(log_abs_eval(d, x) + associated_function(A, q * std::abs(x)) - norm);
  };
  return simpson_with_breaks(g, v, breaks, integrand);
}

// Weighted samples exp(log|d(x_j)| + lw_j - norm).
std::vector<double> weighted_samples(const GaussSum& d, const std::vector<double>& lw, double norm,
                                     const Grid& g) {
  std::vector<double> v(lw.size());
  for (int j = 0; j < g.size(); ++j) v[j] = std::exp(log_abs_eval(d, g.node(j)) + lw[j] - norm);
  return v;
}

// Shared driver for the sup and L1 families; norms[alpha] is the log normalizer.
NormValue norm_family(const std::vector<GaussSum>& derivs, const std::vector<double>& norms,
                      const WeightSequence& A, double q, const Grid& g, bool sup) {
  const auto lw = log_weights(A, q, g);
  const WeightEnvelope env = assoc_envelope(A, q);
  const int n_alpha = static_cast<int>(derivs.size());
  std::vector<Scan> scans(derivs.size());
  std::vector<double> tails(derivs.size(), -INFINITY);
  parallel_for(n_alpha, [&](int a) {
    if (derivs[a].is_zero()) return;
    auto v = weighted_samples(derivs[a], lw, norms[a], g);
    if (sup) {
      for (int j = 0; j < g.size(); ++j) {
        if (v[j] > scans[a].value) scans[a] = {v[j], j};
      }
    } else {
      scans[a].value = weighted_l1_integral(derivs[a], v, norms[a], A, q, g);
    }
    tails[a] = tail_log_bound(derivs[a], g.extent, env, sup ? INFINITY : 1.0) - norms[a];
  });

  NormValue out;
  out.per_alpha.resize(derivs.size());
  for (int a = 0; a < n_alpha; ++a) {
    out.per_alpha[a] = scans[a].value;
    if (scans[a].value > out.value) {
      out.value = scans[a].value;
      out.alpha = a;
      out.x = scans[a].node >= 0 ? g.node(scans[a].node) : 0.0;
    }
    out.log_tail = std::max(out.log_tail, tails[a]);
  }
  out.certified = tail_certified(out.log_tail, out.value);
  return out;
}

std::vector<double> gs_normalizers(const NormParams& p) {
  std::vector<double> n(static_cast<size_t>(p.alpha_max) + 1);
  for (int a = 0; a <= p.alpha_max; ++a) n[a] = a * std::log(p.ell) + p.M.log_value(a);
  return n;
}

}  // namespace

void NormParams::validate() const {
  if (!(ell > 0.0) || !(q > 0.0)) throw std::invalid_argument("norm parameters: ell and q must be positive");
  if (alpha_max < 0) throw std::invalid_argument("norm parameters: alpha_max must be nonnegative");
  if (alpha_max > M.order()) throw std::invalid_argument("norm parameters: alpha_max exceeds the order of M");
  if (alpha_max > kDegreeCap) throw std::invalid_argument("norm parameters: alpha_max exceeds the degree cap");
  if (!(x_grid.extent > 0.0) || x_grid.intervals <= 0 || x_grid.intervals % 2)
    throw std::invalid_argument("norm parameters: invalid x grid");
}

double log_abs_eval(const GaussSum& f, double x) {
  const auto& terms = f.terms();
  if (terms.empty()) return -INFINITY;
  std::vector<cplx> ex(terms.size());
  double m = -INFINITY;
  for (size_t t = 0; t < terms.size(); ++t) {
    ex[t] = -terms[t].a() * x * x + terms[t].b() * x + terms[t].c();
    m = std::max(m, ex[t].real());
  }
  cplx s = 0.0;
  for (size_t t = 0; t < terms.size(); ++t) {
    const auto& c = terms[t].coeffs();
    cplx poly = 0.0;
    for (size_t k = c.size(); k-- > 0;) poly = poly * x + c[k];
    s += poly * std::exp(ex[t] - m);
  }
  return std::log(std::abs(s)) + m;
}

std::vector<double> omega_kinks(const WeightSequence& A, double q, double l, double r) {
  std::vector<double> out;
  auto side = [&](double u0, double u1, double sign) {
    if (!(u1 > u0)) return;
    std::vector<double> ts;
    double t0 = q * u0, t1 = q * u1;
    omega_breaks(A, t0, t1, associated_function_detail(A, t0).index, associated_function_detail(A, t1).index, ts);
    for (double t : ts) out.push_back(sign * t / q);
  };
  if (l >= 0.0) {
    side(l, r, 1.0);
  } else if (r <= 0.0) {
    side(-r, -l, -1.0);
  } else {
    side(0.0, r, 1.0);
    side(0.0, -l, -1.0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> modulus_kinks(const GaussSum& f, double l, double r) {
  std::vector<double> out;
  const double m = 0.5 * (l + r);
  const cplx fl = f(l), fm = f(m), fr = f(r);
  auto search = [&](double a, double b) {
    auto obj = [&](double x) { return log_abs_eval(f, x); };
    out.push_back(boost::math::tools::brent_find_minima(obj, a, b, 52).first);
  };
  if (std::real(fl * std::conj(fm)) < 0.0) search(l, m);
  if (std::real(fm * std::conj(fr)) < 0.0) search(m, r);
  return out;
}

WeightEnvelope assoc_envelope(const WeightSequence& A, double q) {
  return {[A, q](double u) { return associated_function(A, q * u); }, 0.0, static_cast<double>(A.order())};
}

NormValue gs_sup_norm(const GaussSum& f, const NormParams& p) {
  p.validate();
  return norm_family(derivative_ladder(f, p.alpha_max), gs_normalizers(p), p.A, p.q, p.x_grid, true);
}

NormValue gs_l1_norm(const GaussSum& f, const NormParams& p) {
  p.validate();
  return norm_family(derivative_ladder(f, p.alpha_max), gs_normalizers(p), p.A, p.q, p.x_grid, false);
}

NormValue weighted_l1_norm(const GaussSum& f, const WeightSequence& A, double q, const Grid& grid) {
  return norm_family({f}, {0.0}, A, q, grid, false);
}

std::vector<NormRow> gs_sup_table(const GaussSum& f, const NormParams& p) {
  p.validate();
  const auto derivs = derivative_ladder(f, p.alpha_max);
  const auto norms = gs_normalizers(p);
  const auto lw = log_weights(p.A, p.q, p.x_grid);
  std::vector<NormRow> rows;
  rows.reserve(derivs.size() * lw.size());
  for (int a = 0; a <= p.alpha_max; ++a) {
    for (int j = 0; j < p.x_grid.size(); ++j) {
      double x = p.x_grid.node(j);
      double la = log_abs_eval(derivs[a], x);
      rows.push_back({a, x, std::exp(la), std::exp(la + lw[j] - norms[a])});
    }
  }
  return rows;
}

ConvEstimateReport conv_estimate_check(const GaussSum& phi, const GaussSum& psi, const NormParams& p,
                                       double rhs_scale) {
  NormParams half = p;
  half.q = p.q / 2.0;
  auto left = gs_sup_norm(convolve(phi, psi), half);
  auto right_phi = gs_sup_norm(phi, p);
  auto right_psi = weighted_l1_norm(psi, p.A, p.q, p.x_grid);
  ConvEstimateReport r;
  r.lhs = left.value;
  r.rhs = right_phi.value * right_psi.value * rhs_scale;
  r.alpha = left.alpha;
  r.x = left.x;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-6);
  r.certified = left.certified && right_phi.certified && right_psi.certified;
  return r;
}

double cw_seminorm(std::span<const double> values, const FreqGrid& grid, const std::function<double(double)>& w) {
  if (static_cast<int>(values.size()) != grid.size()) throw std::invalid_argument("cw_seminorm: grid mismatch");
  double best = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    if (values[j] < 0.0) throw std::invalid_argument("cw_seminorm: values must be nonnegative");
    best = std::max(best, w(grid.node(j)) * values[j]);
  }
  return best;
}

cplx freq_pair(std::span<const cplx> left, std::span<const cplx> right, const FreqGrid& grid) {
  if (static_cast<int>(left.size()) != grid.size() || static_cast<int>(right.size()) != grid.size())
    throw std::invalid_argument("freq_pair: grid mismatch");
  const int n = grid.size();
  std::vector<cplx> prod(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) prod[j] = left[j] * right[n - 1 - j];
  return simpson(grid, std::span<const cplx>(prod));
}

}  // namespace ultrakit
