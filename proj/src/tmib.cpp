#include "ultrakit/tmib.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace ultrakit {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view s, const char* what) {
  if (s == "inf") return INFINITY;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct PowerIntegral {
  double value = 0.0;
  double log_tail = -INFINITY;
};

// int (|g| w)^p over the grid with kinks resolved, plus the tail bound.
PowerIntegral weighted_power_integral(const GaussSum& g, const WeightFunction& w, double p, const Grid& grid) {
  if (g.is_zero()) return {};
  const int n = grid.size();
  std::vector<double> v(static_cast<size_t>(n));
  std::vector<cplx> cv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double x = grid.node(j);
    v[j] = std::exp(p * (log_abs_eval(g, x) + w.log_value(x)));
    cv[j] = g(x);
  }
  auto breaks = [&](int i) -> std::optional<std::vector<double>> {
    int l = 2 * i, m = l + 1, r = l + 2;
    double xl = grid.node(l), xr = grid.node(r);
    bool zero_inside = xl < 0.0 && xr > 0.0;
    bool phase_flip = std::real(cv[l] * std::conj(cv[m])) < 0.0 || std::real(cv[m] * std::conj(cv[r])) < 0.0;
    auto pts = w.kinks(xl, xr);
    if (!zero_inside && !phase_flip && pts.empty()) return std::nullopt;
    if (phase_flip) {
      for (double x : modulus_kinks(g, xl, xr)) pts.push_back(x);
    }
    if (zero_inside) pts.push_back(0.0);
    return pts;
  };
  auto integrand = [&](double x) { return std::exp(p * (log_abs_eval(g, x) + w.log_value(x))); };
  PowerIntegral out;
  out.value = simpson_with_breaks(grid, v, breaks, integrand);
  out.log_tail = tail_log_bound(g, grid.extent, w.envelope(), p);
  return out;
}

struct SupValue {
  double value = 0.0;
  double log_tail = -INFINITY;
};

// sup |g| / w over the grid plus the tail bound.
SupValue weighted_sup(const GaussSum& g, const WeightFunction& w, const Grid& grid) {
  if (g.is_zero()) return {};
  SupValue out;
  for (int j = 0; j < grid.size(); ++j) {
    double x = grid.node(j);
    out.value = std::max(out.value, std::exp(log_abs_eval(g, x) - w.log_value(x)));
  }
  out.log_tail = tail_log_bound(g, grid.extent, w.envelope(true), INFINITY);
  return out;
}

// log sup_u w(u + x)/w(u) over grid nodes u, or log sup_u w(u)/w(u + x).
double log_ratio_sup_grid(const WeightFunction& w, const Grid& grid, double x, bool inverse) {
  double best = -INFINITY;
  for (int j = 0; j < grid.size(); ++j) {
    double u = grid.node(j);
    double d = w.log_value(u + x) - w.log_value(u);
    best = std::max(best, inverse ? -d : d);
  }
  return best;
}

// sup over all real u of log w(u + x) - log w(u). Between consecutive breakpoints
// of the weight the difference is a log|u + x| - b log|u| + c, which has at most
// one critical point, so the supremum is attained on a finite candidate set or
// equals the limit 0 as |u| -> inf.
double log_ratio_sup_exact(const WeightFunction& w, double x) {
  switch (w.kind()) {
    case WeightFunction::Kind::constant:
      return 0.0;
    case WeightFunction::Kind::polynomial:
      return std::abs(w.k()) * std::log1p(std::abs(x));
    default:
      break;
  }
  const auto& A = w.sequence();
  const double q = w.q();
  std::vector<double> cand{0.0, -x};
  const auto& ratios = A.log_ratios();
  for (size_t p = 1; p < ratios.size(); ++p) {
    double b = std::exp(ratios[p]) / q;
    for (double u : {b, -b, b - x, -b - x}) cand.push_back(u);
  }
  std::sort(cand.begin(), cand.end());
  const size_t base = cand.size();
  for (size_t k = 0; k + 1 < base; ++k) {
    double lo = cand[k], hi = cand[k + 1];
    if (!(hi > lo)) continue;
    double mid = 0.5 * (lo + hi);
    int p0 = associated_function_detail(A, q * std::abs(mid)).index;
    int p1 = associated_function_detail(A, q * std::abs(mid + x)).index;
    if (p0 == p1) continue;
    double u = p0 * x / (p1 - p0);
    if (u > lo && u < hi) cand.push_back(u);
  }
  double best = 0.0;
  for (double u : cand) best = std::max(best, w.log_value(u + x) - w.log_value(u));
  return best;
}

bool exact_ratio_available(const WeightFunction& w) {
  switch (w.kind()) {
    case WeightFunction::Kind::constant:
    case WeightFunction::Kind::polynomial:
      return true;
    case WeightFunction::Kind::exp_assoc:
      return w.sequence().log_convex();
    case WeightFunction::Kind::tabulated:
      return false;
  }
  return false;
}

// The inverse form sup_u w(u)/w(u + x) equals the direct form at -x.
double log_ratio_sup(const WeightFunction& w, const Grid& grid, double x, bool inverse) {
  if (exact_ratio_available(w)) return log_ratio_sup_exact(w, inverse ? -x : x);
  return log_ratio_sup_grid(w, grid, x, inverse);
}

// log w on the nodes of the grid of doubled extent and equal spacing, so that
// node(i) + node(j) of `grid` is node(i + j) of the doubled grid.
std::vector<double> doubled_log_table(const WeightFunction& w, const Grid& grid) {
  const int n = grid.intervals;
  std::vector<double> t(static_cast<size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) t[k] = w.log_value(2.0 * grid.extent * (k - n) / n);
  return t;
}

bool translation_acts_on_weight(const TmibSpace& E) { return E.kind() != TmibSpace::Kind::fourier_lp; }

}  // namespace

WeightFunction WeightFunction::exp_assoc(WeightSequence A, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("exp_assoc weight: q must be positive");
  WeightFunction w;
  w.kind_ = Kind::exp_assoc;
  w.A_ = std::move(A);
  w.q_ = q;
  return w;
}

WeightFunction WeightFunction::polynomial(double k) {
  if (!std::isfinite(k)) throw std::invalid_argument("polynomial weight: exponent must be finite");
  WeightFunction w;
  w.kind_ = Kind::polynomial;
  w.k_ = k;
  return w;
}

WeightFunction WeightFunction::constant() { return WeightFunction(); }

WeightFunction WeightFunction::tabulated(const Grid& grid, std::vector<double> log_values) {
  if (static_cast<int>(log_values.size()) != grid.size()) throw std::invalid_argument("tabulated weight: grid mismatch");
  WeightFunction w;
  w.kind_ = Kind::tabulated;
  w.grid_ = grid;
  double b = 0.0;
  for (double v : log_values) b = std::max(b, std::abs(v));
  w.table_log_bound_ = b;
  w.table_ = std::make_shared<const std::vector<double>>(std::move(log_values));
  return w;
}

double WeightFunction::log_value(double x) const {
  switch (kind_) {
    case Kind::exp_assoc:
      return associated_function(*A_, q_ * std::abs(x));
    case Kind::polynomial:
      return k_ * std::log1p(std::abs(x));
    case Kind::constant:
      return 0.0;
    case Kind::tabulated: {
      const double R = grid_.extent;
      if (std::abs(x) > R) return (std::abs(x) / R + 1.0) * table_log_bound_;
      double s = (x + R) / grid_.step();
      int j = std::clamp(static_cast<int>(std::floor(s)), 0, grid_.intervals - 1);
      double frac = s - j;
      const auto& t = *table_;
      return t[j] + frac * (t[j + 1] - t[j]);
    }
  }
  return 0.0;
}

std::vector<double> WeightFunction::kinks(double l, double r) const {
  if (kind_ != Kind::exp_assoc) return {};
  auto k = omega_kinks(*A_, q_, l, r);
  k.erase(std::remove(k.begin(), k.end(), 0.0), k.end());
  return k;
}

WeightEnvelope WeightFunction::envelope(bool inverse) const {
  const double sign = inverse ? -1.0 : 1.0;
  switch (kind_) {
    case Kind::exp_assoc:
      if (inverse) return {[A = *A_, q = q_](double u) { return -associated_function(A, q * u); }, 0.0, 0.0};
      return assoc_envelope(*A_, q_);
    case Kind::polynomial:
      return {[k = sign * k_](double u) { return k * std::log1p(u); }, 0.0, std::max(0.0, sign * k_)};
    case Kind::constant:
      return {[](double) { return 0.0; }, 0.0, 0.0};
    case Kind::tabulated: {
      WeightFunction self = *this;
      auto lw = [self, sign](double u) {
        if (u > self.grid_.extent) return self.log_value(u);
        return std::max(sign * self.log_value(u), sign * self.log_value(-u));
      };
      return {lw, table_log_bound_ / grid_.extent, 0.0};
    }
  }
  return {};
}

std::string WeightFunction::spec() const {
  switch (kind_) {
    case Kind::exp_assoc: {
      const std::string& label = A_->label();
      if (label.rfind("gevrey:", 0) == 0) return "exp:" + label.substr(7) + ":" + fmt(q_);
      return "exp[" + label + "]:" + fmt(q_);
    }
    case Kind::polynomial:
      return "poly:" + fmt(k_);
    case Kind::constant:
      return "const";
    case Kind::tabulated:
      return "tabulated";
  }
  return "";
}

const WeightSequence& WeightFunction::sequence() const {
  if (!A_) throw std::logic_error("weight function has no weight sequence");
  return *A_;
}

WeightFunction parse_weight(std::string_view spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "const" && parts.size() == 1) return WeightFunction::constant();
  if (parts[0] == "poly" && parts.size() == 2) return WeightFunction::polynomial(parse_number(parts[1], "polynomial exponent"));
  if (parts[0] == "exp" && parts.size() == 3) {
    return WeightFunction::exp_assoc(gevrey(parse_number(parts[1], "Gevrey order"), 64),
                                     parse_number(parts[2], "weight scale q"));
  }
  throw std::invalid_argument("unknown weight spec '" + std::string(spec) + "'");
}

TmibSpace TmibSpace::weighted_lp(double p, WeightFunction w, Grid grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("weighted L^p: p must be >= 1");
  return TmibSpace(Kind::weighted_lp, p, std::move(w), grid);
}

TmibSpace TmibSpace::fourier_lp(double p, WeightFunction w, Grid grid, const WeightSequence* M) {
  if (!(p >= 1.0)) throw std::invalid_argument("Fourier L^p: p must be >= 1");
  TmibSpace E(Kind::fourier_lp, p, std::move(w), grid);
  switch (E.w_.kind()) {
    case WeightFunction::Kind::polynomial:
    case WeightFunction::Kind::constant:
      E.fourier_condition_ = "F.I";
      break;
    case WeightFunction::Kind::exp_assoc:
      if (!check_conditions(M ? *M : E.w_.sequence()).m2.holds)
        throw std::invalid_argument("Fourier L^p: weight is not polynomial and M fails (M.2)");
      E.fourier_condition_ = "F.II";
      break;
    case WeightFunction::Kind::tabulated:
      throw std::invalid_argument("Fourier L^p: tabulated weights are not supported");
  }
  return E;
}

TmibSpace TmibSpace::c0w(WeightFunction w, Grid grid) { return TmibSpace(Kind::c0w, INFINITY, std::move(w), grid); }

std::string TmibSpace::spec() const {
  std::string p = std::isinf(p_) ? "inf" : fmt(p_);
  switch (kind_) {
    case Kind::weighted_lp:
      return "lp:" + p + ":" + w_.spec();
    case Kind::fourier_lp:
      return "flp:" + p + ":" + w_.spec();
    case Kind::c0w:
      return "c0w:" + w_.spec();
  }
  return "";
}

TmibSpace parse_space(std::string_view spec, Grid grid) {
  size_t c1 = spec.find(':');
  if (c1 == std::string_view::npos) throw std::invalid_argument("space spec needs a kind prefix: '" + std::string(spec) + "'");
  std::string_view kind = spec.substr(0, c1), rest = spec.substr(c1 + 1);
  if (kind == "c0w") return TmibSpace::c0w(parse_weight(rest), grid);
  size_t c2 = rest.find(':');
  if (c2 == std::string_view::npos) throw std::invalid_argument("space spec needs p and a weight: '" + std::string(spec) + "'");
  double p = parse_number(rest.substr(0, c2), "exponent p");
  auto w = parse_weight(rest.substr(c2 + 1));
  if (kind == "lp") return TmibSpace::weighted_lp(p, std::move(w), grid);
  if (kind == "flp") return TmibSpace::fourier_lp(p, std::move(w), grid);
  throw std::invalid_argument("unknown space kind '" + std::string(kind) + "'");
}

SpaceNorm space_norm(const TmibSpace& E, const GaussSum& f) {
  const GaussSum g = E.kind() == TmibSpace::Kind::fourier_lp ? fourier(f) : f;
  SpaceNorm out;
  if (std::isfinite(E.p())) {
    auto I = weighted_power_integral(g, E.weight(), E.p(), E.grid());
    out.value = std::pow(I.value, 1.0 / E.p());
    out.log_tail = I.log_tail;
    out.certified = tail_certified(I.log_tail, I.value);
  } else {
    auto s = weighted_sup(g, E.weight(), E.grid());
    out.value = s.value;
    out.log_tail = s.log_tail;
    out.certified = tail_certified(s.log_tail, s.value);
  }
  if (E.kind() == TmibSpace::Kind::c0w && !g.is_zero()) {
    const double R = E.grid().extent;
    double edge = std::max(std::exp(log_abs_eval(g, R) - E.weight().log_value(R)),
                           std::exp(log_abs_eval(g, -R) - E.weight().log_value(-R)));
    out.decays = edge <= 1e-6 * out.value;
  }
  return out;
}

double translation_weight(const TmibSpace& E, double x) {
  if (!translation_acts_on_weight(E)) return 1.0;
  return std::exp(log_ratio_sup(E.weight(), E.grid(), x, E.inverse_weight()));
}

double modulation_weight(const TmibSpace& E, double xi) {
  if (translation_acts_on_weight(E)) return 1.0;
  return std::exp(log_ratio_sup(E.weight(), E.grid(), xi, E.inverse_weight()));
}

std::vector<double> translation_weight_table(const TmibSpace& E) {
  const Grid& g = E.grid();
  const int N = g.size(), n = g.intervals;
  std::vector<double> out(static_cast<size_t>(N), 0.0);
  if (!translation_acts_on_weight(E)) return out;
  const bool inv = E.inverse_weight();
  if (exact_ratio_available(E.weight())) {
    parallel_for(N, [&](int i) { out[i] = log_ratio_sup_exact(E.weight(), inv ? -g.node(i) : g.node(i)); });
    return out;
  }
  const auto t = doubled_log_table(E.weight(), g);
  parallel_for(N, [&](int i) {
    double best = -INFINITY;
    for (int j = 0; j < N; ++j) {
      // u_j = node(j) is entry j + n/2 of the doubled table; u_j + x_i is entry i + j.
      double d = t[i + j] - t[j + n / 2];
      best = std::max(best, inv ? -d : d);
    }
    out[i] = best;
  });
  return out;
}

WeightFunction operator_weight(const TmibSpace& E) {
  if (!translation_acts_on_weight(E)) return WeightFunction::constant();
  return WeightFunction::tabulated(E.grid(), translation_weight_table(E));
}

AdmissibilityReport check_admissible(const WeightFunction& w, const WeightSequence& N, double q, const Grid& grid) {
  struct Worst {
    double logC = -INFINITY;
    double x = 0.0, t = 0.0;
  };
  auto scan = [&](const Grid& g) {
    const int n = g.intervals, size = g.size();
    const auto tab = doubled_log_table(w, g);
    std::vector<double> om(static_cast<size_t>(size));
    for (int j = 0; j < size; ++j) om[j] = associated_function(N, q * std::abs(g.node(j)));
    Worst best;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        double v = tab[i + j] - tab[i + n / 2] - om[j];
        if (v > best.logC) best = {v, g.node(i), g.node(j)};
      }
    }
    return best;
  };
  auto inner = scan(grid);
  auto outer = scan(Grid{2.0 * grid.extent, 2 * grid.intervals});
  AdmissibilityReport r;
  r.C_min = std::exp(inner.logC);
  r.C_min_extended = std::exp(outer.logC);
  r.q_used = q;
  r.worst_x = inner.x;
  r.worst_t = inner.t;
  r.holds = std::isfinite(r.C_min_extended) && r.C_min_extended <= 1.05 * r.C_min;
  return r;
}

AxiomsReport check_tmib_axioms(const TmibSpace& E, const WeightSequence& M, const WeightSequence& A,
                               const std::vector<double>& q_grid, const Grid& check_grid) {
  const Grid ext{2.0 * check_grid.extent, 2 * check_grid.intervals};
  const int size = ext.size();
  std::vector<double> x(static_cast<size_t>(size)), log_omega(x.size()), log_nu(x.size());
  for (int k = 0; k < size; ++k) x[k] = ext.node(k);
  parallel_for(size, [&](int k) {
    log_omega[k] = std::log(translation_weight(E, x[k]));
    log_nu[k] = std::log(modulation_weight(E, x[k]));
  });
  const double R = check_grid.extent * (1.0 + 1e-12);

  // max over inner and over all nodes of f(k).
  auto sup_pair = [&](auto&& f) {
    double in = -INFINITY, all = -INFINITY;
    for (int k = 0; k < size; ++k) {
      double v = f(k);
      all = std::max(all, v);
      if (std::abs(x[k]) <= R) in = std::max(in, v);
    }
    return std::pair{in, all};
  };
  auto row = [](double q, std::pair<double, double> s) {
    AxiomRow r{q, std::exp(s.first), std::exp(s.second), false};
    r.stable = std::isfinite(r.C_extended) && r.C_extended <= 1.05 * r.C;
    return r;
  };

  AxiomsReport rep;
  std::vector<double> qs = q_grid;
  std::sort(qs.begin(), qs.end());
  auto omega_at = [&](const WeightSequence& S, double q) {
    std::vector<double> v(static_cast<size_t>(size));
    for (int k = 0; k < size; ++k) v[k] = associated_function(S, q * std::abs(x[k]));
    return v;
  };
  std::vector<std::vector<double>> omA, omM;
  for (double q : qs) {
    omA.push_back(omega_at(A, q));
    omM.push_back(omega_at(M, q));
  }
  for (size_t i = 0; i < qs.size(); ++i) {
    rep.translation.push_back(row(qs[i], sup_pair([&](int k) { return log_omega[k] - omA[i][k]; })));
    rep.modulation.push_back(row(qs[i], sup_pair([&](int k) { return log_nu[k] - omM[i][k]; })));
  }
  rep.growth_verified = !qs.empty();
  for (size_t i = 0; i < qs.size(); ++i) {
    GrowthRow g{qs[i], std::nullopt, 0.0, false};
    for (size_t j = 0; j < qs.size(); ++j) {
      auto r = row(qs[j], sup_pair([&](int k) { return log_nu[k] + omM[i][k] - omM[j][k]; }));
      if (r.stable) {
        g = {qs[i], qs[j], r.C, true};
        break;
      }
    }
    rep.growth_verified = rep.growth_verified && g.verified;
    rep.growth.push_back(g);
  }
  return rep;
}

ModuleConvReport module_conv_check(const TmibSpace& E, const GaussSum& f, const GaussSum& g,
                                   const WeightFunction* omega_E) {
  ModuleConvReport r;
  auto lhs = space_norm(E, convolve(f, g));
  auto nf = space_norm(E, f);
  const WeightFunction W = omega_E ? *omega_E : operator_weight(E);
  auto ng = weighted_power_integral(g, W, 1.0, E.grid());
  r.lhs = lhs.value;
  r.rhs = nf.value * ng.value;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-6);
  r.certified = lhs.certified && nf.certified && tail_certified(ng.log_tail, ng.value);
  return r;
}

DeNorm de_norm(const GaussSum& f, const TmibSpace& E, const WeightSequence& M, double ell, int alpha_max) {
  if (alpha_max < 0 || alpha_max > M.order()) throw std::invalid_argument("de_norm: alpha_max outside the order of M");
  if (!(ell > 0.0)) throw std::invalid_argument("de_norm: ell must be positive");
  std::vector<GaussSum> d(static_cast<size_t>(alpha_max) + 1);
  d[0] = f;
  for (int a = 1; a <= alpha_max; ++a) d[a] = derivative(d[a - 1], 1);
  DeNorm out;
  out.per_alpha.resize(d.size());
  std::vector<char> cert(d.size(), 1);
  parallel_for(alpha_max + 1, [&](int a) {
    auto n = space_norm(E, d[a]);
    out.per_alpha[a] = n.value / std::exp(a * std::log(ell) + M.log_value(a));
    cert[a] = n.certified;
  });
  for (int a = 0; a <= alpha_max; ++a) {
    if (out.per_alpha[a] > out.value) {
      out.value = out.per_alpha[a];
      out.alpha = a;
    }
    out.certified = out.certified && cert[a];
  }
  out.saturated = out.value > 0.0 && out.alpha == alpha_max;
  return out;
}

DeNorm de_norm(const FiniteDistribution& f, const TmibSpace& E, const WeightSequence& M, double ell, int alpha_max) {
  return de_norm(to_function(f), E, M, ell, alpha_max);
}

double operator_weight_constant(const TmibSpace& E, const WeightSequence& A, double q) {
  const auto t = translation_weight_table(E);
  double best = -INFINITY;
  for (int j = 0; j < E.grid().size(); ++j) best = std::max(best, t[j] - associated_function(A, q * std::abs(E.grid().node(j))));
  return std::exp(best);
}

ConvDeReport conv_E_to_DE_check(const GaussSum& f, const GaussSum& psi, const TmibSpace& E,
                                const WeightSequence& M, const WeightSequence& A, double ell, double q,
                                int alpha_max) {
  ConvDeReport r;
  r.C_Eq = operator_weight_constant(E, A, q);
  auto lhs = de_norm(convolve(f, psi), E, M, ell, alpha_max);
  auto nf = space_norm(E, f);
  auto npsi = gs_l1_norm(psi, NormParams{M, A, ell, q, alpha_max, E.grid()});
  r.lhs = lhs.value;
  r.alpha = lhs.alpha;
  r.rhs = r.C_Eq * nf.value * npsi.value;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-6);
  r.certified = lhs.certified && nf.certified && npsi.certified;
  return r;
}

MollifierReport mollifier_study(const GaussSum& chi, const GaussSum& phi, const TmibSpace& E,
                                const std::vector<int>& n_list, bool literal) {
  if (std::abs(integrate(chi) - 1.0) > 1e-10) throw std::invalid_argument("mollifier: chi must integrate to 1");
  if (n_list.empty()) throw std::invalid_argument("mollifier: empty n list");
  MollifierReport r;
  r.norm = space_norm(E, phi).value;
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("mollifier: n must be >= 1");
    GaussSum chi_n = scale(dilate(chi, n), static_cast<double>(n));
    GaussSum psi_n = literal ? convolve(chi, chi_n) : convolve(chi_n, chi_n);
    r.n.push_back(n);
    r.integral.push_back(integrate(psi_n).real());
    r.error.push_back(space_norm(E, phi - convolve(phi, psi_n)).value);
  }
  for (size_t k = 1; k < r.error.size(); ++k) r.monotone = r.monotone && r.error[k] < r.error[k - 1];
  r.final_ok = r.error.back() <= 1e-3 * r.norm;
  return r;
}

}  // namespace ultrakit
