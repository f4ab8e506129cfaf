#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ultrakit/gaussalg.hpp"
#include "ultrakit/quadrature.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

struct NormParams {
  WeightSequence M;
  WeightSequence A;
  double ell = 1.0;
  double q = 1.0;
  int alpha_max = 16;
  Grid x_grid = Grid::make(12.0, 0.01);

  void validate() const;
};

struct NormValue {
  double value = 0.0;
  int alpha = 0;  // witness
  double x = 0.0;
  // Largest normalized tail bound over alpha (log scale) and whether it is
  // below 1e-9 of value.
  double log_tail = -INFINITY;
  bool certified = true;
  std::vector<double> per_alpha;
};

// log |f(x)|, robust against underflow of the individual exponentials.
double log_abs_eval(const GaussSum& f, double x);

// Interior points of [l, r] where x -> omega_A(q|x|) is not differentiable.
std::vector<double> omega_kinks(const WeightSequence& A, double q, double l, double r);
// Minimizers of |f| on [l, r] where the phase of f flips between the end and
// midpoint samples; |f| has a kink at a real zero of f.
std::vector<double> modulus_kinks(const GaussSum& f, double l, double r);

// log e^{omega_A(q|x|)} as a tail envelope.
WeightEnvelope assoc_envelope(const WeightSequence& A, double q);

NormValue gs_sup_norm(const GaussSum& f, const NormParams& p);
NormValue gs_l1_norm(const GaussSum& f, const NormParams& p);

// int |f| e^{omega_A(q|x|)} dx, Simpson plus tail bound.
NormValue weighted_l1_norm(const GaussSum& f, const WeightSequence& A, double q, const Grid& grid);

struct NormRow {
  int alpha;
  double x;
  double raw;
  double weighted;
};

// Full (alpha, x) table behind gs_sup_norm.
std::vector<NormRow> gs_sup_table(const GaussSum& f, const NormParams& p);

struct ConvEstimateReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  int alpha = 0;
  double x = 0.0;
  bool certified = true;
};

// ||phi * psi|| at q/2 against ||phi|| at q times the weighted L1 norm of psi.
ConvEstimateReport conv_estimate_check(const GaussSum& phi, const GaussSum& psi, const NormParams& p,
                                       double rhs_scale = 1.0);

double cw_seminorm(std::span<const double> values, const FreqGrid& grid,
                   const std::function<double(double)>& w);

// Simpson over xi of left(xi) * right(-xi).
cplx freq_pair(std::span<const cplx> left, std::span<const cplx> right, const FreqGrid& grid);

}  // namespace ultrakit
