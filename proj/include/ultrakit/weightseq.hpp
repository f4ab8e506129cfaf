#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ultrakit {

// Positive sequence M_0..M_P stored as log M_p.
class WeightSequence {
 public:
  static WeightSequence from_log_values(std::vector<double> log_values, std::string label,
                                        bool declared_weight = true);
  static WeightSequence from_values(const std::vector<double>& values, std::string label,
                                    bool declared_weight = true);

  int order() const { return static_cast<int>(log_values_.size()) - 1; }
  double value(int p) const;
  double log_value(int p) const { return log_values_.at(static_cast<size_t>(p)); }
  const std::vector<double>& log_values() const { return log_values_; }
  const std::string& label() const { return label_; }

  // M_p^2 <= M_{p-1} M_{p+1} on the whole prefix.
  bool log_convex() const { return log_convex_; }
  // (M_p/M_0)^{1/p} nondecreasing for p in [P/2, P].
  bool eventually_increasing() const;

  // log(M_p / M_{p-1}), p >= 1. Entry 0 is unused.
  const std::vector<double>& log_ratios() const { return log_ratios_; }

 private:
  WeightSequence() = default;
  std::vector<double> log_values_;
  std::vector<double> log_ratios_;
  std::string label_;
  bool log_convex_ = false;
};

WeightSequence gevrey(double s, int P);

struct ConstantPair {
  bool holds = false;
  double C0 = 1.0;
  double H = 1.0;
};

struct ConditionReport {
  int P = 0;
  bool m1 = false;
  ConstantPair m2prime;
  ConstantPair m2;
  double m3prime_partial_sum = 0.0;
  bool m3prime_diverges = false;
};

// Constants are minimal on the stored prefix; "holds" additionally requires the
// constant needed on [0, P] to stay within 10% (in log H) of the one needed on [0, P/2].
// The m2 constants are computed jointly so that they also satisfy (M.2)'.
ConditionReport check_conditions(const WeightSequence& M);

struct OmegaValue {
  double value = 0.0;
  int index = 0;
  bool saturated = false;  // maximizing index within 2 of P
};

OmegaValue associated_function_detail(const WeightSequence& M, double t);
double associated_function(const WeightSequence& M, double t);
// Full scan over every p <= P.
double associated_function_bruteforce(const WeightSequence& M, double t);

struct OmegaViolation {
  std::string inequality;  // "sum" or "dilation"
  double x = 0.0;
  double y = 0.0;
  double excess = 0.0;
};

struct OmegaInequalityReport {
  size_t sum_checks = 0;
  size_t dilation_checks = 0;
  double max_sum_excess = 0.0;
  double max_dilation_excess = 0.0;
  double C0 = 1.0;
  double H = 1.0;
  bool saturated = false;
  std::vector<OmegaViolation> violations;
};

// Consecutive entries (s[2i], s[2i+1]) of sample_points form the pairs for
// w(x+y) <= w(2x) + w(2y); every |s| is used as t in
// w(t) - w(kt) <= -log(t/C0) log k / log H with (C0, H) from the (M.2)' report.
OmegaInequalityReport check_omega_inequalities(const WeightSequence& M,
                                               std::span<const double> sample_points,
                                               std::span<const double> k_values);

struct SubordinationResult {
  bool holds = false;
  double C = 0.0;
  double L = 0.0;
  bool growth_ok = false;
};

SubordinationResult subordinate(const WeightSequence& M, const WeightSequence& N,
                                double L_cap = 1e6);

class RSequence {
 public:
  explicit RSequence(std::vector<double> r);
  const std::vector<double>& values() const { return r_; }
  // True when the prefix is constant (last == first).
  bool degenerate() const { return degenerate_; }

 private:
  std::vector<double> r_;
  bool degenerate_ = false;
};

WeightSequence r_modulate(const WeightSequence& M, const RSequence& r);

}  // namespace ultrakit
