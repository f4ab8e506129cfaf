#pragma once

#include <utility>
#include <vector>

#include "ultrakit/gaussalg.hpp"
#include "ultrakit/quadrature.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

// Nodes t = j/n in [-m, m]; cells K_t = (t + [-1/(2n) + gamma/2, 1/(2n) - gamma/2]) clipped to [-m, m].
struct RiemannScheme {
  double m = 1.0;
  int n = 1;
  double gamma = 0.5;

  void validate() const;
  std::vector<double> nodes() const;
  std::pair<double, double> cell(double t) const;
  double cell_measure(double t) const;
  // [-m, m] minus the union of the cells, as disjoint intervals.
  std::vector<std::pair<double, double>> gaps() const;
  double gap_measure() const;
};

// sum_t mu(K_t) psi(t) phi(x - t), exactly.
GaussSum riemann_convolve(const GaussSum& phi, const GaussSum& psi, const RiemannScheme& scheme);

// Target norm S^{M, H ell}_{A, q/(2H^2)}, evaluated for alpha <= alpha_max on x_grid.
struct RiemannParams {
  WeightSequence M = gevrey(1, 64);
  WeightSequence A = gevrey(1, 64);
  double ell = 1.0;
  double q = 1.0;
  int alpha_max = 8;
  Grid x_grid = Grid::make(4.0, 0.1);
};

struct SplitPoint {
  int alpha = 0;
  double x = 0.0;
  double S1 = 0.0, S2 = 0.0, S3 = 0.0, total = 0.0;
};

struct ErrorSplit {
  std::vector<SplitPoint> points;
  double S1 = 0.0, S2 = 0.0, S3 = 0.0, total = 0.0;  // suprema over the tested points
  double C0 = 1.0, H = 1.0;
  // total <= S1 + S2 + S3 + 1e-9 at every point.
  bool bound_holds = true;
};

// S1: outside-box integral; S2: closed-form majorant of the lattice Taylor term;
// S3: integral over the gap region; total: measured |d^alpha(phi * psi - L)|.
ErrorSplit error_split(const GaussSum& phi, const GaussSum& psi, const RiemannScheme& scheme, const RiemannParams& p);

// Weighted sup of d^alpha(phi * psi) in the target norm.
double target_norm(const GaussSum& f, const RiemannParams& p);

struct StudyRow {
  int k = 0;
  RiemannScheme scheme;
  double S1 = 0.0, S2 = 0.0, S3 = 0.0, total = 0.0;
  bool bound_holds = true;
};

struct ConvergenceStudy {
  std::vector<StudyRow> rows;
  double reference_norm = 0.0;
  bool monotone = true;
  std::vector<int> non_monotone_steps;
  bool final_ok = false;  // last total <= 1e-3 reference_norm
};

ConvergenceStudy convergence_study(const GaussSum& phi, const GaussSum& psi, const std::vector<RiemannScheme>& schedule,
                                   const RiemannParams& p);

// k = 1..steps: m = 2 + k, n = 4 * 2^k, gamma = 2^-k / (4 m n), so mu(K^2) = 2^-(k+1).
std::vector<RiemannScheme> default_schedule(int steps = 6);
// Fixed m, n doubling from n0, gamma = c / n^2.
std::vector<RiemannScheme> doubling_schedule(double m, int n0, int steps, double c);

}  // namespace ultrakit
