#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ultrakit/gaussalg.hpp"

namespace ultrakit {

// Symmetric uniform grid on [-extent, extent] with an even number of intervals,
// so the node count is odd and 0 is a node.
struct Grid {
  double extent = 0.0;
  int intervals = 0;

  // Rounds the requested spacing down so that 2*extent/spacing is an even integer.
  static Grid make(double extent, double spacing);
  int size() const { return intervals + 1; }
  double step() const { return 2.0 * extent / intervals; }
  double node(int j) const { return extent * (2.0 * j - intervals) / intervals; }
  std::vector<double> nodes() const;
};

using FreqGrid = Grid;

double pairwise_sum(std::span<const double> v);
cplx pairwise_sum(std::span<const cplx> v);

// Composite Simpson rule over the grid nodes.
double simpson(const Grid& g, std::span<const double> values);
cplx simpson(const Grid& g, std::span<const cplx> values);

// Composite Simpson where panel i = [node(2i), node(2i+2)] is replaced by
// Gauss-Legendre pieces of `integrand` whenever breaks(i) returns a value; the
// returned points are the interior breakpoints of that panel (possibly none).
double simpson_with_breaks(const Grid& g, std::span<const double> values,
                           const std::function<std::optional<std::vector<double>>(int)>& breaks,
                           const std::function<double(double)>& integrand);

// Radial weight w(|x|), monotone in |x|, with |d/du log w(u)| <= slope_const + slope_inv/u.
struct WeightEnvelope {
  std::function<double(double)> log_weight;
  double slope_const = 0.0;
  double slope_inv = 0.0;
};

// Log of an upper bound for sup_{|x| >= R} |f(x)| w(x) (power = inf) or for
// int_{|x| >= R} (|f(x)| w(x))^power dx. Uses the per-term majorant
// sum_k |p_k| |x|^k exp(-a x^2 + Re(b) x + Re(c)).
double tail_log_bound(const GaussSum& f, double R, const WeightEnvelope& w, double power);

// Certificate test shared by all norm routines: the tail is below rel * reference,
// or is numerically invisible.
bool tail_certified(double log_tail, double reference, double rel = 1e-9);

void set_thread_count(int n);
int thread_count();
// Runs fn(i) for i in [0, n); each index is handled exactly once.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace ultrakit
