#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultrakit/gaussalg.hpp"
#include "ultrakit/gsnorms.hpp"
#include "ultrakit/quadrature.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

class WeightFunction {
 public:
  enum class Kind { exp_assoc, polynomial, constant, tabulated };

  // e^{omega_A(q|x|)}.
  static WeightFunction exp_assoc(WeightSequence A, double q);
  // (1 + |x|)^k.
  static WeightFunction polynomial(double k);
  static WeightFunction constant();
  // Linear interpolation of log w between grid nodes; beyond the grid
  // log w(x) <= (|x|/extent + 1) * max|log w|, the submultiplicative envelope.
  static WeightFunction tabulated(const Grid& grid, std::vector<double> log_values);

  Kind kind() const { return kind_; }
  double log_value(double x) const;
  double operator()(double x) const { return std::exp(log_value(x)); }
  // Interior points of (l, r) where log w is not differentiable, x = 0 excluded.
  std::vector<double> kinks(double l, double r) const;
  // Tail envelope for w (or 1/w when inverse is set).
  WeightEnvelope envelope(bool inverse = false) const;
  std::string spec() const;

  const WeightSequence& sequence() const;
  double q() const { return q_; }
  double k() const { return k_; }

 private:
  WeightFunction() = default;
  Kind kind_ = Kind::constant;
  std::optional<WeightSequence> A_;
  double q_ = 1.0;
  double k_ = 0.0;
  Grid grid_;
  std::shared_ptr<const std::vector<double>> table_;
  double table_log_bound_ = 0.0;
};

// weight-spec: const | poly:<k> | exp:<s>:<q> (Gevrey sequence of order s, 64 terms).
WeightFunction parse_weight(std::string_view spec);

class TmibSpace {
 public:
  enum class Kind { weighted_lp, fourier_lp, c0w };

  static TmibSpace weighted_lp(double p, WeightFunction w, Grid grid = Grid::make(12.0, 0.01));
  // The Fourier condition is (F.I) for polynomial or constant weights and (F.II)
  // otherwise, checked against M (defaulting to the weight's own sequence).
  static TmibSpace fourier_lp(double p, WeightFunction w, Grid grid = Grid::make(12.0, 0.01),
                              const WeightSequence* M = nullptr);
  static TmibSpace c0w(WeightFunction w, Grid grid = Grid::make(12.0, 0.01));

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const WeightFunction& weight() const { return w_; }
  const Grid& grid() const { return grid_; }
  const std::string& fourier_condition() const { return fourier_condition_; }
  // The weight enters as 1/w (p = inf and C0w).
  bool inverse_weight() const { return std::isinf(p_); }
  std::string spec() const;

 private:
  TmibSpace(Kind kind, double p, WeightFunction w, Grid grid)
      : kind_(kind), p_(p), w_(std::move(w)), grid_(grid) {}
  Kind kind_;
  double p_;
  WeightFunction w_;
  Grid grid_;
  std::string fourier_condition_;
};

// lp:<p>:<weight-spec> | flp:<p>:<weight-spec> | c0w:<weight-spec>; p may be "inf".
TmibSpace parse_space(std::string_view spec, Grid grid = Grid::make(12.0, 0.01));

struct SpaceNorm {
  double value = 0.0;
  double log_tail = -INFINITY;
  bool certified = true;
  // C0w only: |f|/w at both grid edges is below 1e-6 of the norm.
  bool decays = true;
};

SpaceNorm space_norm(const TmibSpace& E, const GaussSum& f);

// Operator norms of T_x and M_xi: suprema over all u of weight ratios, exact for
// polynomial, constant and log-convex exp weights, grid suprema for tabulated ones.
double translation_weight(const TmibSpace& E, double x);
double modulation_weight(const TmibSpace& E, double xi);
// log omega_E at every node of E.grid().
std::vector<double> translation_weight_table(const TmibSpace& E);
// omega_E as a tabulated weight, for L1_{omega_E}.
WeightFunction operator_weight(const TmibSpace& E);

struct AdmissibilityReport {
  bool holds = false;
  double C_min = 0.0;
  double C_min_extended = 0.0;
  double q_used = 0.0;
  double worst_x = 0.0;
  double worst_t = 0.0;
};

// C_min = max over grid pairs of w(x+t) / (w(x) e^{omega_N(q|t|)}), with a
// stability check against the grid of doubled extent.
AdmissibilityReport check_admissible(const WeightFunction& w, const WeightSequence& N, double q,
                                     const Grid& grid = Grid::make(12.0, 0.1));

struct AxiomRow {
  double q = 0.0;
  double C = 0.0;
  double C_extended = 0.0;
  bool stable = false;
};

struct GrowthRow {
  double q0 = 0.0;
  std::optional<double> q1;
  double C = 0.0;
  bool verified = false;
};

struct AxiomsReport {
  std::vector<AxiomRow> translation;  // C_{E,q} = sup omega_E / e^{omega_A(q.)}
  std::vector<AxiomRow> modulation;   // sup nu_E / e^{omega_M(q.)}
  std::vector<GrowthRow> growth;      // nu_E e^{omega_M(q0.)} <= C e^{omega_M(q1.)}
  bool growth_verified = false;
};

AxiomsReport check_tmib_axioms(const TmibSpace& E, const WeightSequence& M, const WeightSequence& A,
                               const std::vector<double>& q_grid, const Grid& check_grid = Grid::make(12.0, 0.1));

struct ModuleConvReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  bool certified = true;
};

// ||f * g||_E <= ||f||_E ||g||_{L1_{omega_E}}. omega_E may be passed in to
// avoid recomputing the table.
ModuleConvReport module_conv_check(const TmibSpace& E, const GaussSum& f, const GaussSum& g,
                                   const WeightFunction* omega_E = nullptr);

struct DeNorm {
  double value = 0.0;
  int alpha = 0;
  std::vector<double> per_alpha;
  bool saturated = false;
  bool certified = true;
};

DeNorm de_norm(const GaussSum& f, const TmibSpace& E, const WeightSequence& M, double ell, int alpha_max);
DeNorm de_norm(const FiniteDistribution& f, const TmibSpace& E, const WeightSequence& M, double ell, int alpha_max);

// sup over the E grid of omega_E / e^{omega_A(q|x|)}.
double operator_weight_constant(const TmibSpace& E, const WeightSequence& A, double q);

struct ConvDeReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double C_Eq = 0.0;
  bool holds = true;
  int alpha = 0;
  bool certified = true;
};

// de_norm(f * psi) <= C_{E,q} ||f||_E gs_l1_norm(psi; ell, q).
ConvDeReport conv_E_to_DE_check(const GaussSum& f, const GaussSum& psi, const TmibSpace& E,
                                const WeightSequence& M, const WeightSequence& A, double ell, double q,
                                int alpha_max = 16);

struct MollifierReport {
  std::vector<int> n;
  std::vector<double> error;
  std::vector<double> integral;  // int psi_n
  double norm = 0.0;             // ||phi||_E
  bool monotone = true;
  bool final_ok = true;  // last error <= 1e-3 ||phi||_E
};

// psi_n = chi_n * chi_n with chi_n = n chi(n .); the literal form chi * chi_n
// is available but converges to phi * chi rather than phi.
MollifierReport mollifier_study(const GaussSum& chi, const GaussSum& phi, const TmibSpace& E,
                                const std::vector<int>& n_list, bool literal = false);

}  // namespace ultrakit
