#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultrakit/gaussalg.hpp"
#include "ultrakit/stft.hpp"
#include "ultrakit/tmib.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

// Finitely supported sequence (f_alpha) in E.
struct SeqRep {
  std::map<int, GaussSum> entries;
  TmibSpace E;
};

// Text form: a "space=<space-spec>" line, then one "alpha=<k> <term>" line per
// ExpPoly term; '#' comments and blank lines are skipped.
std::string format_seqrep(const SeqRep& s);
SeqRep parse_seqrep(std::string_view text);

// Random sequence with support in [0, max_alpha] and ell^alpha M_alpha ||f_alpha||_E in [1/4, 1].
SeqRep random_seqrep(std::uint64_t seed, const TmibSpace& E, const WeightSequence& M, double ell,
                     int max_alpha = 6);

// max over the support of ell^alpha M_alpha ||f_alpha||, in E or in `over` when given.
double lambda_norm(const SeqRep& s, const WeightSequence& M, double ell, const TmibSpace* over = nullptr);

FiniteDistribution synthesize(const SeqRep& s);

// sum_alpha f_alpha * phi^(alpha).
GaussSum apply_to_test(const SeqRep& s, const GaussSum& phi);

// beta -> (-1)^beta reflect(g_beta), so that synthesize(reflect(g)) is the reflection of synthesize(g).
SeqRep reflect_seq(const SeqRep& s);

// L1 with the tabulated operator weight of E.
TmibSpace l1_operator_space(const TmibSpace& E);

struct TermBound {
  int alpha = 0;
  double lhs = 0.0;         // ||f_alpha * phi^(alpha)||_E
  double rhs = 0.0;         // C_{E,q} (ell/2)^alpha M_alpha ||f_alpha||_E ||phi||
  double geometric = 0.0;   // C_{E,q} lambda ||phi|| / 2^alpha
  double normalized = 0.0;  // lhs / (C_{E,q} lambda ||phi||)
  bool holds = true;
};

struct ConvTestReport {
  GaussSum result;
  std::vector<TermBound> terms;
  double C_Eq = 0.0;
  double lambda = 0.0;
  double phi_norm = 0.0;  // gs_l1_norm(phi; ell/2, q)
  // max over alpha >= 1 of normalized^{1/alpha}.
  double geometric_ratio = 0.0;
  bool holds = true;
  std::optional<int> witness;
  bool certified = true;
};

ConvTestReport conv_with_test(const SeqRep& s, const GaussSum& phi, const WeightSequence& M, const WeightSequence& A,
                              double ell, double q);

inline constexpr const char* kReverseDirectionNote =
    "forward direction verified; the converse is replaced by the STFT membership detector";

inline double membership_threshold(double ell) { return std::numbers::pi / ell; }

struct MembershipReport {
  DecayFit fit;
  double predicted_threshold = 0.0;
  // Every q <= predicted_threshold in the grid is stabilized.
  bool consistent = true;
  std::string note = kReverseDirectionNote;
};

MembershipReport membership_test(const FiniteDistribution& f, const WindowPair& window, const TmibSpace& E,
                                 const WeightSequence& M, const std::vector<double>& q_grid, const FreqGrid& grid,
                                 double ell);

struct SmoothReport {
  GaussSum result;
  double lhs = 0.0;  // de_norm(result; E, ell)
  double rhs = 0.0;  // 2 C0 lambda(s; 2 ell) de_norm(psi; L1_{omega_E}, ell/H)
  double C0 = 1.0;
  double H = 1.0;
  int gamma = 0;
  bool holds = true;
  std::optional<int> witness;
  bool identity = true;  // result equals apply_to_test(s, psi) term by term
  bool certified = true;
};

SmoothReport conv_smooth(const SeqRep& s, const GaussSum& psi, const WeightSequence& M, double ell,
                         int alpha_max = 16);

// <synthesize(f), synthesize(reflect(g)) * phi>.
cplx conv_pairing(const SeqRep& fseq, const SeqRep& gseq, const GaussSum& phi);

struct CauchyRow {
  int gamma = 0;
  double lhs = 0.0;  // ||h_gamma||_E
  double rhs = 0.0;  // C0 lambda(f; 2 ell H) lambda_{L1}(g; 2 ell H) / (ell^gamma M_gamma)
  bool holds = true;
};

struct CauchyReport {
  SeqRep result;
  std::vector<CauchyRow> rows{};
  double C0 = 1.0;
  double H = 1.0;
  bool holds = true;
  std::optional<int> witness{};
  double consistency_error = 0.0;  // max relative gap of the nested pairing over the probes
  bool consistent = true;
};

// h_gamma = sum_{alpha + beta = gamma} f_alpha * g_beta, with g measured in L1_{omega_E}.
CauchyReport conv_cauchy(const SeqRep& fseq, const SeqRep& gseq, const WeightSequence& M, double ell,
                         const std::vector<GaussSum>& probes = {});

}  // namespace ultrakit
