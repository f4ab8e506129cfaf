#include "ultrakit/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ultrakit {

namespace {

template <class T>
T pairwise(std::span<const T> v) {
  if (v.size() <= 8) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  size_t mid = v.size() / 2;
  return pairwise(v.subspan(0, mid)) + pairwise(v.subspan(mid));
}

template <class T>
T simpson_impl(const Grid& g, std::span<const T> values) {
  if (static_cast<int>(values.size()) != g.size()) throw std::invalid_argument("simpson: value count does not match grid");
  std::vector<T> w(values.size());
  const int n = g.intervals;
  for (int j = 0; j <= n; ++j) {
    double c = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    w[j] = values[j] * c;
  }
  return pairwise(std::span<const T>(w)) * (g.step() / 3.0);
}

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

struct TermEnvelope {
  double a, beta, rc;
  std::vector<double> log_abs;  // log |p_k|
  int degree;
};

// log sum_{t,k} |p_k| u_poly^k exp(exponent_t)
double log_envelope(const std::vector<TermEnvelope>& terms, double u_poly, const std::vector<double>& exponent) {
  double acc = -INFINITY;
  const double lu = std::log(u_poly);
  for (size_t t = 0; t < terms.size(); ++t) {
    for (int k = 0; k <= terms[t].degree; ++k) {
      if (terms[t].log_abs[k] == -INFINITY) continue;
      acc = log_add(acc, terms[t].log_abs[k] + k * lu + exponent[t] + terms[t].rc);
    }
  }
  return acc;
}

std::atomic<int> g_threads{1};

}  // namespace

Grid Grid::make(double extent, double spacing) {
  if (!(extent > 0.0) || !(spacing > 0.0)) throw std::invalid_argument("grid extent and spacing must be positive");
  if (spacing > extent) throw std::invalid_argument("grid spacing must not exceed the extent");
  int n = static_cast<int>(std::ceil(2.0 * extent / spacing - 1e-9));
  if (n % 2) ++n;
  return Grid{extent, n};
}

std::vector<double> Grid::nodes() const {
  std::vector<double> v(static_cast<size_t>(size()));
  for (int j = 0; j < size(); ++j) v[j] = node(j);
  return v;
}

double pairwise_sum(std::span<const double> v) { return pairwise(v); }
cplx pairwise_sum(std::span<const cplx> v) { return pairwise(v); }
double simpson(const Grid& g, std::span<const double> values) { return simpson_impl(g, values); }
cplx simpson(const Grid& g, std::span<const cplx> values) { return simpson_impl(g, values); }

double simpson_with_breaks(const Grid& g, std::span<const double> values,
                           const std::function<std::optional<std::vector<double>>(int)>& breaks,
                           const std::function<double(double)>& integrand) {
  if (static_cast<int>(values.size()) != g.size()) throw std::invalid_argument("simpson: value count does not match grid");
  const int panels = g.intervals / 2;
  const double h = g.step();
  std::vector<double> parts(static_cast<size_t>(panels));
  for (int i = 0; i < panels; ++i) {
    auto pts = breaks(i);
    if (!pts) {
      parts[i] = h / 3.0 * (values[2 * i] + 4.0 * values[2 * i + 1] + values[2 * i + 2]);
      continue;
    }
    double lo = g.node(2 * i), hi = g.node(2 * i + 2);
    std::vector<double> cuts{lo};
    for (double x : *pts) {
      if (x > lo && x < hi) cuts.push_back(x);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      s += boost::math::quadrature::gauss<double, 15>::integrate(integrand, cuts[k], cuts[k + 1]);
    }
    parts[i] = s;
  }
  return pairwise(std::span<const double>(parts));
}

double tail_log_bound(const GaussSum& f, double R, const WeightEnvelope& w, double power) {
  const bool sup = std::isinf(power);
  double total = -INFINITY;
  for (int side : {1, -1}) {
    std::vector<TermEnvelope> terms;
    double U = R;
    for (const auto& t : f.terms()) {
      TermEnvelope e{t.a(), side * t.b().real(), t.c().real(), {}, t.degree()};
      for (const auto& c : t.coeffs()) e.log_abs.push_back(std::log(std::abs(c)));
      double B = e.beta + w.slope_const;
      double K = e.degree + w.slope_inv;
      U = std::max(U, (B + std::sqrt(B * B + 8.0 * e.a * K)) / (4.0 * e.a));
      terms.push_back(std::move(e));
    }
    if (terms.empty()) continue;
    U += 1.0;

    const int steps = std::max(1, static_cast<int>(std::ceil((U - R) / 0.05)));
    const double du = (U - R) / steps;
    std::vector<double> ex(terms.size());
    double side_acc = -INFINITY;
    for (int i = 0; i < steps; ++i) {
      double u0 = R + i * du, u1 = R + (i + 1) * du;
      for (size_t t = 0; t < terms.size(); ++t) {
        double us = std::clamp(terms[t].beta / (2.0 * terms[t].a), u0, u1);
        ex[t] = -terms[t].a * us * us + terms[t].beta * us;
      }
      double lg = log_envelope(terms, u1, ex) + std::max(w.log_weight(u0), w.log_weight(u1));
      side_acc = sup ? std::max(side_acc, lg) : log_add(side_acc, std::log(du) + power * lg);
    }

    // Beyond U the weighted envelope is log-decreasing with slope at most -kappa.
    for (size_t t = 0; t < terms.size(); ++t) ex[t] = -terms[t].a * U * U + terms[t].beta * U;
    double lgU = log_envelope(terms, U, ex) + w.log_weight(U);
    double kappa = INFINITY;
    for (const auto& e : terms) {
      double d = (e.degree + w.slope_inv) / U - 2.0 * e.a * U + e.beta + w.slope_const;
      kappa = std::min(kappa, -d);
    }
    if (sup) {
      side_acc = std::max(side_acc, lgU);
    } else {
      side_acc = log_add(side_acc, power * lgU - std::log(power * kappa));
    }
    total = sup ? std::max(total, side_acc) : log_add(total, side_acc);
  }
  return total;
}

bool tail_certified(double log_tail, double reference, double rel) {
  if (log_tail < -700.0) return true;
  if (!(reference > 0.0)) return false;
  return log_tail <= std::log(rel * reference);
}

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int threads = std::min(thread_count(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ultrakit
