#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ultrakit/gaussalg.hpp"
#include "ultrakit/quadrature.hpp"
#include "ultrakit/tmib.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

// x -> V_psi f(xi_j) at every frequency node.
struct StftField {
  FreqGrid grid;
  std::vector<GaussSum> samples;
};

// xi_j -> ||V_psi f(xi_j)||_E.
struct StftProfile {
  FreqGrid grid;
  std::vector<double> values;
};

struct WindowPair {
  ExpPoly psi0 = ExpPoly::gaussian(1.0);
  GaussSum psi;  // psi0 * psi0
  double l2_norm_sq = 0.0;
};

inline FreqGrid default_freq_grid() { return Grid::make(8.0, 0.02); }

bool is_even(const ExpPoly& f);

// psi0 = lambda^{-1/4} phi with lambda = (phi * phi, phi * phi); an odd or
// asymmetric seed is replaced by phi * reflect(phi) first.
WindowPair build_window(const ExpPoly& phi);

// V_psi f(xi) = (M_{-xi} f) * conj(reflect(psi)).
GaussSum stft(const GaussSum& f, const GaussSum& psi, double xi);
// Same for sum_alpha d^alpha g_alpha, via M_{-xi}[sum g_alpha * d^alpha(M_xi conj(reflect(psi)))].
GaussSum stft(const FiniteDistribution& f, const GaussSum& psi, double xi);

StftField sample_stft(const GaussSum& f, const GaussSum& psi, const FreqGrid& grid);
StftField sample_stft(const FiniteDistribution& f, const GaussSum& psi, const FreqGrid& grid);

struct AdjointResult {
  std::vector<cplx> values;
  // Simpson over xi of |(Phi(xi) * gamma)(x)|, per point.
  std::vector<double> abs_integral;
  // Extrapolated contribution of |xi| > extent, per point.
  std::vector<double> tail_estimate;
};

// V*_gamma Phi (x) = int e^{2 pi i xi x} (Phi(xi) * gamma)(x) dxi by Simpson over the field's grid.
AdjointResult adjoint_stft(const StftField& field, const GaussSum& gamma, std::span<const double> xs);

struct ReconstructReport {
  double error = 0.0;  // max |V*V phi - phi| / max |phi| over the probes
  double tail_estimate = 0.0;
};

ReconstructReport reconstruct_check(const GaussSum& phi, const WindowPair& window, const FreqGrid& grid,
                                    std::span<const double> probes);

struct DesingularizeReport {
  cplx value = 0.0;
  cplx exact = 0.0;
  double rel_error = 0.0;  // absolute when the exact pairing vanishes
  double tail_estimate = 0.0;
};

// (1/(gamma, psi)) Simpson_xi <V_psi f(xi), V_conj(gamma) phi(-xi)>, against pair(f, phi).
// gamma defaults to the window itself.
DesingularizeReport desingularize(const FiniteDistribution& f, const GaussSum& phi, const WindowPair& window,
                                  const FreqGrid& grid = default_freq_grid(),
                                  const std::optional<GaussSum>& gamma = std::nullopt);

StftProfile decay_profile(const GaussSum& f, const GaussSum& psi, const TmibSpace& E, const FreqGrid& grid);
StftProfile decay_profile(const FiniteDistribution& f, const GaussSum& psi, const TmibSpace& E,
                          const FreqGrid& grid);

struct DecayRow {
  double q = 0.0;
  double sup_full = 0.0;  // sup over [-extent, extent] of e^{omega_M(q|xi|)} profile
  double sup_half = 0.0;  // same over [-extent/2, extent/2]
  bool stabilized = false;
};

struct DecayFit {
  std::vector<DecayRow> rows;
  // Largest q in the grid below which every q is stabilized; 0 if the first fails.
  double threshold = 0.0;
};

// Stabilized iff sup_full <= 1.05 sup_half.
DecayFit fit_decay(const StftProfile& profile, const WeightSequence& M, const std::vector<double>& q_grid);

// e^{omega_M(q|xi|)} profile(xi) at every node.
std::vector<double> weighted_profile(const StftProfile& profile, const WeightSequence& M, double q);

}  // namespace ultrakit
