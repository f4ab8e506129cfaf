#include "ultrakit/weightseq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ultrakit {

namespace {

double rel_tol(double a, double b) { return 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); }

bool check_log_convex(const std::vector<double>& L) {
  for (size_t p = 1; p + 1 < L.size(); ++p) {
    if (2.0 * L[p] > L[p - 1] + L[p + 1] + rel_tol(L[p - 1], L[p + 1])) return false;
  }
  return true;
}

// Smallest H >= 1 with L[p+1] - L[p] - logC0 <= p log H for 1 <= p < upto.
double m2prime_log_h(const std::vector<double>& L, double logC0, int upto) {
  double lh = 0.0;
  for (int p = 1; p < upto; ++p) {
    lh = std::max(lh, (L[p + 1] - L[p] - logC0) / p);
  }
  return lh;
}

// Smallest H >= 1 with L[n] - L[p] - L[n-p] - logC0 <= n log H for 1 <= n <= upto.
double m2_log_h(const std::vector<double>& L, double logC0, int upto, bool convex) {
  double lh = 0.0;
  for (int n = 1; n <= upto; ++n) {
    double worst = -INFINITY;
    if (convex) {
      // L_p + L_{n-p} is convex and symmetric in p, so its minimum sits at the centre.
      for (int p : {n / 2, (n + 1) / 2}) worst = std::max(worst, L[n] - L[p] - L[n - p]);
    } else {
      for (int p = 0; p <= n; ++p) worst = std::max(worst, L[n] - L[p] - L[n - p]);
    }
    lh = std::max(lh, (worst - logC0) / n);
  }
  return lh;
}

bool stable_growth(double lh_full, double lh_half) { return lh_full <= 1.1 * lh_half + 1e-12; }

}  // namespace

WeightSequence WeightSequence::from_log_values(std::vector<double> log_values, std::string label,
                                               bool declared_weight) {
  if (log_values.size() < 9) throw std::invalid_argument("weight sequence needs P >= 8");
  for (double v : log_values) {
    if (!std::isfinite(v)) throw std::invalid_argument("weight sequence values must be positive and finite");
  }
  WeightSequence w;
  w.log_values_ = std::move(log_values);
  w.label_ = std::move(label);
  w.log_ratios_.assign(w.log_values_.size(), 0.0);
  for (size_t p = 1; p < w.log_values_.size(); ++p) {
    w.log_ratios_[p] = w.log_values_[p] - w.log_values_[p - 1];
  }
  w.log_convex_ = check_log_convex(w.log_values_);
  if (declared_weight && !w.eventually_increasing()) {
    throw std::invalid_argument("sequence " + w.label_ + " is not eventually increasing in (M_p/M_0)^{1/p}");
  }
  return w;
}

WeightSequence WeightSequence::from_values(const std::vector<double>& values, std::string label,
                                           bool declared_weight) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weight sequence values must be positive and finite");
    logs.push_back(std::log(v));
  }
  return from_log_values(std::move(logs), std::move(label), declared_weight);
}

double WeightSequence::value(int p) const { return std::exp(log_value(p)); }

bool WeightSequence::eventually_increasing() const {
  const int P = order();
  double prev = -INFINITY;
  for (int p = std::max(1, P / 2); p <= P; ++p) {
    double g = (log_values_[p] - log_values_[0]) / p;
    if (g < prev - 1e-12 * (1.0 + std::abs(prev))) return false;
    prev = g;
  }
  return true;
}

WeightSequence gevrey(double s, int P) {
  if (!(s > 0.0)) throw std::invalid_argument("gevrey: s must be positive");
  if (P < 8) throw std::invalid_argument("gevrey: P must be at least 8");
  std::vector<double> logs(static_cast<size_t>(P) + 1);
  for (int p = 0; p <= P; ++p) logs[p] = s * std::lgamma(p + 1.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "gevrey:%g", s);
  return WeightSequence::from_log_values(std::move(logs), buf);
}

ConditionReport check_conditions(const WeightSequence& M) {
  const auto& L = M.log_values();
  const int P = M.order();
  const int half = P / 2;
  ConditionReport r;
  r.P = P;
  r.m1 = M.log_convex();

  // p = 0 forces C0 >= M_1/M_0; H then absorbs the rest.
  double logC0 = std::max(0.0, L[1] - L[0]);
  double lh_full = m2prime_log_h(L, logC0, P);
  double lh_half = m2prime_log_h(L, logC0, half);
  r.m2prime = {stable_growth(lh_full, lh_half), std::exp(logC0), std::exp(lh_full)};

  // p = q = 0 forces C0 >= 1/M_0; the (M.2)' requirement is folded in.
  double logC0_2 = std::max({0.0, -L[0], logC0});
  double lh2_full = std::max(m2prime_log_h(L, logC0_2, P), m2_log_h(L, logC0_2, P, r.m1));
  double lh2_half = std::max(m2prime_log_h(L, logC0_2, half), m2_log_h(L, logC0_2, half, r.m1));
  r.m2 = {stable_growth(lh2_full, lh2_half), std::exp(logC0_2), std::exp(lh2_full)};
  if (r.m2.holds && !r.m2prime.holds) r.m2prime = r.m2;

  double s_half = 0.0, s_full = 0.0;
  for (int p = 1; p <= P; ++p) {
    s_full += std::exp(L[p - 1] - L[p]);
    if (p == half) s_half = s_full;
  }
  r.m3prime_partial_sum = s_full;
  r.m3prime_diverges = s_full >= s_half * (1.0 + 0.5 * std::log(2.0) / std::log(static_cast<double>(P)));
  return r;
}

double associated_function_bruteforce(const WeightSequence& M, double t) {
  if (t < 0.0) throw std::invalid_argument("associated function needs t >= 0");
  if (t == 0.0) return 0.0;
  const auto& L = M.log_values();
  const double lt = std::log(t);
  double best = 0.0;
  for (int p = 1; p <= M.order(); ++p) best = std::max(best, p * lt - (L[p] - L[0]));
  return best;
}

OmegaValue associated_function_detail(const WeightSequence& M, double t) {
  if (t < 0.0) throw std::invalid_argument("associated function needs t >= 0");
  OmegaValue out;
  if (t == 0.0) return out;
  const auto& L = M.log_values();
  const int P = M.order();
  const double lt = std::log(t);
  int idx = 0;
  if (M.log_convex()) {
    const auto& R = M.log_ratios();
    idx = static_cast<int>(std::upper_bound(R.begin() + 1, R.end(), lt) - (R.begin() + 1));
  } else {
    double best = 0.0;
    for (int p = 1; p <= P; ++p) {
      double v = p * lt - (L[p] - L[0]);
      if (v > best) best = v, idx = p;
    }
  }
  out.index = idx;
  out.value = std::max(0.0, idx * lt - (L[idx] - L[0]));
  out.saturated = idx >= P - 2;
  return out;
}

double associated_function(const WeightSequence& M, double t) {
  return associated_function_detail(M, t).value;
}

OmegaInequalityReport check_omega_inequalities(const WeightSequence& M,
                                               std::span<const double> sample_points,
                                               std::span<const double> k_values) {
  OmegaInequalityReport rep;
  ConditionReport cond = check_conditions(M);
  rep.C0 = cond.m2prime.C0;
  rep.H = cond.m2prime.H;
  auto om = [&](double t) {
    OmegaValue v = associated_function_detail(M, std::abs(t));
    rep.saturated = rep.saturated || v.saturated;
    return v.value;
  };

  rep.max_sum_excess = -INFINITY;
  for (size_t i = 0; i + 1 < sample_points.size(); i += 2) {
    double x = sample_points[i], y = sample_points[i + 1];
    double lhs = om(x + y);
    double a = om(2 * x), b = om(2 * y);
    double excess = lhs - (a + b);
    ++rep.sum_checks;
    rep.max_sum_excess = std::max(rep.max_sum_excess, excess);
    if (excess > 1e-12 * (1.0 + a + b)) rep.violations.push_back({"sum", x, y, excess});
  }

  rep.max_dilation_excess = -INFINITY;
  const double logH = std::log(rep.H);
  if (logH > 0.0) {
    for (double s : sample_points) {
      double t = std::abs(s);
      if (t == 0.0) continue;
      for (double k : k_values) {
        if (!(k > 1.0)) throw std::invalid_argument("dilation factors must exceed 1");
        double wt = om(t), wkt = om(k * t);
        double rhs = -std::log(t / rep.C0) * std::log(k) / logH;
        double excess = (wt - wkt) - rhs;
        ++rep.dilation_checks;
        rep.max_dilation_excess = std::max(rep.max_dilation_excess, excess);
        if (excess > 1e-12 * (1.0 + wt + wkt)) rep.violations.push_back({"dilation", t, k, excess});
      }
    }
  }
  return rep;
}

SubordinationResult subordinate(const WeightSequence& M, const WeightSequence& N, double L_cap) {
  if (M.order() != N.order()) throw std::invalid_argument("subordinate: sequences need the same order");
  const int P = M.order();
  const int h = P / 2;
  std::vector<double> r(static_cast<size_t>(P) + 1);
  for (int p = 0; p <= P; ++p) r[p] = M.log_value(p) - N.log_value(p);

  // log(M_p/N_p) must grow at most linearly; a steeper second half signals unbounded L.
  double head = (r[h] - r[0]) / h;
  double tail = -INFINITY;
  for (int p = h + 1; p <= P; ++p) tail = std::max(tail, (r[p] - r[h]) / (p - h));
  SubordinationResult out;
  out.growth_ok = tail <= head + 0.05;

  for (int j = -160;; ++j) {
    double L = std::exp2(j / 8.0);
    if (L > L_cap) break;
    double lL = std::log(L);
    double best = -INFINITY;
    int arg = 0;
    for (int p = 0; p <= P; ++p) {
      double v = r[p] - p * lL;
      if (v > best) best = v, arg = p;
    }
    if (arg <= h) {
      out.L = L;
      out.C = std::exp(best);
      out.holds = out.growth_ok;
      return out;
    }
  }
  return out;
}

RSequence::RSequence(std::vector<double> r) : r_(std::move(r)) {
  if (r_.empty()) throw std::invalid_argument("RSequence must be nonempty");
  for (size_t j = 0; j < r_.size(); ++j) {
    if (!(r_[j] > 0.0)) throw std::invalid_argument("RSequence entries must be positive");
    if (j > 0 && r_[j] < r_[j - 1]) throw std::invalid_argument("RSequence must be nondecreasing");
  }
  degenerate_ = !(r_.back() > r_.front());
}

WeightSequence r_modulate(const WeightSequence& M, const RSequence& r) {
  const int P = M.order();
  if (r.values().size() < static_cast<size_t>(P) + 1) throw std::invalid_argument("r_modulate: r shorter than P+1");
  std::vector<double> logs(static_cast<size_t>(P) + 1);
  double acc = 0.0;
  for (int p = 0; p <= P; ++p) {
    acc += std::log(r.values()[p]);
    logs[p] = M.log_value(p) + acc;
  }
  return WeightSequence::from_log_values(std::move(logs), M.label() + "*r", M.eventually_increasing());
}

}  // namespace ultrakit
