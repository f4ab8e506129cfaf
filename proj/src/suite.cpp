#include "ultrakit/suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ultrakit/approxconv.hpp"
#include "ultrakit/convolutor.hpp"
#include "ultrakit/fixtures.hpp"
#include "ultrakit/gsnorms.hpp"
#include "ultrakit/stft.hpp"
#include "ultrakit/tmib.hpp"
#include "ultrakit/weightseq.hpp"

namespace ultrakit {

using nlohmann::json;
using std::numbers::pi;

void Recorder::violation(const std::string& check, const std::string& paper_ref, json witness) {
  violations.push_back({{"check", check}, {"paper_ref", paper_ref}, {"witness", std::move(witness)}});
}

void Recorder::certificates(const std::string& check, int checked, int failed) {
  tail_certificates.push_back({{"check", check}, {"checked", checked}, {"failed", failed}});
}

bool Recorder::has_certificate_failures() const {
  for (const auto& c : tail_certificates) {
    if (c.at("failed").get<int>() > 0) return true;
  }
  return false;
}

json to_json(const CriterionOutcome& c) {
  return {{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"metrics", c.metrics}};
}

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  cplx unit() { return {uniform(-1, 1), uniform(-1, 1)}; }

  ExpPoly term(int max_degree, double a_lo, double a_hi) {
    std::vector<cplx> c(static_cast<size_t>(integer(0, max_degree)) + 1);
    for (auto& v : c) v = unit();
    c.back() += 0.5;
    return ExpPoly(std::move(c), uniform(a_lo, a_hi), unit(), cplx(uniform(-0.5, 0.5), uniform(-1, 1)));
  }
  GaussSum sum(int terms, int max_degree, double a_lo, double a_hi) {
    GaussSum s;
    for (int k = 0; k < terms; ++k) s.add(term(max_degree, a_lo, a_hi));
    return s;
  }
};

std::uint64_t sub_seed(std::uint64_t seed, int id) { return seed * 1000003ULL + static_cast<std::uint64_t>(id); }

std::string format_z(cplx z) { return format_complex(z); }

CriterionOutcome window_identity(Recorder& rec) {
  CriterionOutcome c{1, "window identity"};
  const ExpPoly phi = ExpPoly::gaussian(pi);
  auto w = build_window(phi);
  double dev = 0.0, dev0 = 0.0;
  for (int j = -40; j <= 40; ++j) {
    double x = 0.1 * j;
    dev = std::max(dev, std::abs(w.psi(x) - std::exp(-pi * x * x / 2)));
    dev0 = std::max(dev0, std::abs(w.psi0(x) - std::pow(2.0, 0.25) * std::exp(-pi * x * x)));
  }
  const GaussSum g(phi);
  const GaussSum pp = convolve(g, g);
  const double lambda = inner_l2(pp, pp).real();
  const double norm_sq = inner_l2(w.psi, w.psi).real();
  c.metrics = {{"psi_deviation", dev}, {"psi0_deviation", dev0}, {"lambda", lambda}, {"psi_l2_norm_sq", norm_sq}};
  c.passed = std::abs(norm_sq - 1.0) <= 1e-10 && std::abs(lambda - 0.5) <= 1e-12 && dev <= 1e-12 && dev0 <= 1e-12;
  if (!c.passed) rec.violation("window identity", "adequate-window", c.metrics);
  return c;
}

CriterionOutcome reconstruction(Recorder& rec) {
  CriterionOutcome c{2, "STFT reconstruction"};
  const auto start = std::chrono::steady_clock::now();
  auto w = build_window(ExpPoly::gaussian(pi));
  std::vector<double> probes;
  for (int j = -16; j <= 16; ++j) probes.push_back(0.25 * j);
  const std::vector<double> steps{0.08, 0.04, 0.02, 0.01};
  double worst = 0.0;
  bool refine_ok = true;
  json rows = json::array();
  for (const auto& fx : standard_fixtures()) {
    std::vector<double> err;
    for (double d : steps) err.push_back(reconstruct_check(fx.f, w, Grid::make(8.0, d), probes).error);
    const double at_default = err[2];
    worst = std::max(worst, at_default);
    bool ok = true;
    for (size_t k = 1; k < err.size(); ++k) ok = ok && (err[k] <= 1e-9 || err[k - 1] >= 4.0 * err[k]);
    refine_ok = refine_ok && ok;
    rows.push_back({{"fixture", fx.name}, {"errors", err}, {"refinement_ok", ok}});
    if (at_default > 1e-6 || !ok) rec.violation("reconstruction", "stft-reconstruction", {{"fixture", fx.name}, {"errors", err}});
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.metrics = {{"max_error", worst}, {"deltas", steps}, {"fixtures", rows}, {"within_30s", seconds <= 30.0}};
  c.passed = worst <= 1e-6 && refine_ok && seconds <= 30.0;
  return c;
}

CriterionOutcome desingularization(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{3, "desingularization"};
  Rng rng(sub_seed(seed, 3));
  auto w = build_window(ExpPoly::gaussian(pi));
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    FiniteDistribution f;
    const int parts = rng.integer(1, 3);
    for (int i = 0; i < parts; ++i) f.parts[rng.integer(0, 4)] += GaussSum(rng.term(2, 0.6, 2.5));
    GaussSum test = rng.term(2, 0.6, 2.0);
    auto r = desingularize(f, test, w);
    worst = std::max(worst, r.rel_error);
    if (r.rel_error > 1e-6)
      rec.violation("desingularization", "stft-desingularization",
                    {{"trial", k}, {"value", format_z(r.value)}, {"exact", format_z(r.exact)}, {"rel_error", r.rel_error}});
  }
  c.metrics = {{"trials", 10}, {"max_rel_error", worst}};
  c.passed = worst <= 1e-6;
  return c;
}

CriterionOutcome module_inequality(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{4, "Banach-module inequality"};
  Rng rng(sub_seed(seed, 4));
  int checks = 0, violations = 0, cert_fail = 0;
  double worst = 0.0;
  for (const char* spec : {"lp:1:poly:1", "lp:2:poly:1", "lp:4:poly:1", "lp:1:exp:1:1", "lp:2:exp:1:1", "lp:4:exp:1:1"}) {
    auto E = parse_space(spec);
    auto W = operator_weight(E);
    for (int k = 0; k < 100; ++k) {
      auto r = module_conv_check(E, rng.sum(2, 3, 0.5, 3.0), rng.sum(2, 3, 0.5, 3.0), &W);
      ++checks;
      cert_fail += !r.certified;
      if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
      if (!r.holds) {
        ++violations;
        rec.violation("module inequality", "banach-module-convolution",
                      {{"space", spec}, {"trial", k}, {"lhs", r.lhs}, {"rhs", r.rhs}});
      }
    }
  }
  rec.certificates("module inequality", checks, cert_fail);
  c.metrics = {{"checks", checks}, {"violations", violations}, {"uncertified", cert_fail}, {"max_ratio", worst}};
  c.passed = violations == 0 && cert_fail == 0;
  return c;
}

CriterionOutcome associated_function_checks(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{5, "associated-function inequalities"};
  Rng rng(sub_seed(seed, 5));
  std::vector<double> sample(10000);
  for (auto& v : sample) v = rng.uniform(0.0, 50.0);
  const std::vector<double> kv{1.5, 2.0, 4.0, 10.0};
  size_t violations = 0;
  double scan_dev = 0.0;
  json per = json::array();
  for (double s : {0.5, 1.0, 2.0}) {
    auto M = gevrey(s, 4096);
    auto r = check_omega_inequalities(M, sample, kv);
    violations += r.violations.size();
    for (const auto& v : r.violations)
      rec.violation("omega " + v.inequality, v.inequality == "sum" ? "omega-m1" : "omega-m2prime",
                    {{"s", s}, {"x", v.x}, {"y", v.y}, {"excess", v.excess}});
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double t = sample[static_cast<size_t>(i)];
      double a = associated_function(M, t), b = associated_function_bruteforce(M, t);
      dev = std::max(dev, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    scan_dev = std::max(scan_dev, dev);
    per.push_back({{"s", s},
                   {"sum_checks", r.sum_checks},
                   {"dilation_checks", r.dilation_checks},
                   {"violations", r.violations.size()},
                   {"C0", r.C0},
                   {"H", r.H},
                   {"scan_deviation", dev}});
  }
  if (scan_dev > 1e-12) rec.violation("ratio scan", "associated-function", {{"deviation", scan_dev}});
  c.metrics = {{"sequences", per}, {"violations", violations}, {"max_scan_deviation", scan_dev}};
  c.passed = violations == 0 && scan_dev <= 1e-12;
  return c;
}

CriterionOutcome convolution_estimate(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{6, "Gelfand-Shilov convolution estimate"};
  Rng rng(sub_seed(seed, 6));
  const auto M = gevrey(1, 64);
  std::vector<std::pair<GaussSum, GaussSum>> pairs;
  for (int k = 0; k < 50; ++k) pairs.emplace_back(rng.sum(2, 3, 0.5, 3.0), rng.sum(2, 3, 0.5, 3.0));
  int checks = 0, violations = 0, cert_fail = 0;
  double worst = 0.0;
  for (double ell : {0.5, 1.0, 2.0}) {
    for (double q : {0.5, 1.0, 2.0}) {
      NormParams p{M, M, ell, q, 16, Grid::make(20.0, 0.01)};
      for (size_t k = 0; k < pairs.size(); ++k) {
        auto r = conv_estimate_check(pairs[k].first, pairs[k].second, p);
        ++checks;
        cert_fail += !r.certified;
        if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
        if (!r.holds) {
          ++violations;
          rec.violation("convolution estimate", "gs-convolution-estimate",
                        {{"ell", ell}, {"q", q}, {"pair", k}, {"alpha", r.alpha}, {"x", r.x}, {"lhs", r.lhs}, {"rhs", r.rhs}});
        }
      }
    }
  }
  rec.certificates("convolution estimate", checks, cert_fail);
  c.metrics = {{"checks", checks}, {"violations", violations}, {"uncertified", cert_fail}, {"max_ratio", worst}};
  c.passed = violations == 0 && cert_fail == 0;
  return c;
}

std::vector<SeqRep> criterion_seqreps(std::uint64_t seed, const TmibSpace& E, const WeightSequence& M) {
  std::vector<SeqRep> out;
  for (int k = 0; k < 10; ++k) out.push_back(random_seqrep(sub_seed(seed, 7) + static_cast<std::uint64_t>(k), E, M, 1.0, 6));
  return out;
}

CriterionOutcome structural_bound(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{7, "structural forward bound"};
  const auto M = gevrey(1, 64);
  const auto E = parse_space("lp:2:poly:1");
  int checks = 0, failures = 0, cert_fail = 0;
  double worst_ratio = 0.0;
  const auto reps = criterion_seqreps(seed, E, M);
  for (size_t i = 0; i < reps.size(); ++i) {
    for (const auto& fx : standard_fixtures()) {
      auto r = conv_with_test(reps[i], fx.f, M, M, 1.0, 1.0);
      ++checks;
      cert_fail += !r.certified;
      worst_ratio = std::max(worst_ratio, r.geometric_ratio);
      if (!r.holds || r.geometric_ratio > 0.55) {
        ++failures;
        rec.violation("per-term structural bound", "structural-forward-bound",
                      {{"seqrep", i}, {"fixture", fx.name}, {"alpha", r.witness.value_or(-1)}, {"ratio", r.geometric_ratio}});
      }
    }
  }
  rec.certificates("structural bound", checks, cert_fail);
  c.metrics = {{"checks", checks}, {"failures", failures}, {"uncertified", cert_fail}, {"max_geometric_ratio", worst_ratio}};
  c.passed = failures == 0 && cert_fail == 0;
  return c;
}

CriterionOutcome membership(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{8, "membership detector"};
  const auto M = gevrey(1, 64);
  const auto E = parse_space("lp:2:const");
  const double ell = 1.0;
  auto w = build_window(ExpPoly::gaussian(pi));
  const auto grid = Grid::make(16.0, 0.05);
  const std::vector<double> qs{0.5, 1.0, 2.0, membership_threshold(ell)};
  int inconsistent = 0;
  json rows = json::array();
  const auto reps = criterion_seqreps(seed, parse_space("lp:2:poly:1"), M);
  for (size_t i = 0; i < reps.size(); ++i) {
    auto r = membership_test(synthesize(reps[i]), w, E, M, qs, grid, ell);
    double worst = 0.0;
    for (const auto& row : r.fit.rows) {
      if (row.sup_half > 0.0) worst = std::max(worst, row.sup_full / row.sup_half);
    }
    rows.push_back({{"seqrep", i}, {"max_extension_ratio", worst}, {"consistent", r.consistent}});
    if (!r.consistent) {
      ++inconsistent;
      rec.violation("membership stabilization", "stft-decay-membership", {{"seqrep", i}, {"max_extension_ratio", worst}});
    }
  }
  c.metrics = {{"threshold", membership_threshold(ell)}, {"q_grid", qs}, {"rows", rows}, {"note", kReverseDirectionNote}};
  c.passed = inconsistent == 0;
  return c;
}

CriterionOutcome riemann(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{9, "Riemann scheme"};
  const GaussSum g = ExpPoly::gaussian(pi);
  const RiemannParams p;
  int bound_fail = 0;
  auto study = convergence_study(g, g, default_schedule(), p);
  for (const auto& row : study.rows) {
    if (!row.bound_holds) {
      ++bound_fail;
      rec.violation("Riemann error split", "riemann-error-split", {{"schedule_step", row.k}});
    }
  }
  Rng rng(sub_seed(seed, 9));
  for (int k = 0; k < 3; ++k) {
    GaussSum phi = rng.term(2, 0.8, 2.5), psi = rng.term(2, 0.8, 2.5);
    RiemannScheme s{rng.uniform(1.0, 4.0), rng.integer(4, 32), 0.0};
    s.gamma = rng.uniform(0.05, 0.8) / s.n;
    auto e = error_split(phi, psi, s, p);
    if (!e.bound_holds) {
      ++bound_fail;
      rec.violation("Riemann error split", "riemann-error-split", {{"random_trial", k}});
    }
  }
  auto doubling = convergence_study(g, g, doubling_schedule(5.0, 8, 5, 0.5), p);
  std::vector<double> ratios;
  bool ratios_ok = true;
  for (size_t k = 1; k < doubling.rows.size(); ++k) {
    double r = doubling.rows[k].total / doubling.rows[k - 1].total;
    ratios.push_back(r);
    ratios_ok = ratios_ok && r >= 0.3 && r <= 0.7;
  }
  if (!ratios_ok) rec.violation("n-doubling ratio", "riemann-convergence", {{"ratios", ratios}});
  if (!study.final_ok || !study.monotone)
    rec.violation("Riemann convergence", "riemann-convergence",
                  {{"final_total", study.rows.back().total}, {"reference_norm", study.reference_norm}});
  json table = json::array();
  for (const auto& row : study.rows)
    table.push_back({{"k", row.k}, {"m", row.scheme.m}, {"n", row.scheme.n}, {"gamma", row.scheme.gamma},
                     {"S1", row.S1}, {"S2", row.S2}, {"S3", row.S3}, {"total", row.total}});
  c.metrics = {{"schedule", table},
               {"reference_norm", study.reference_norm},
               {"final_relative_error", study.rows.back().total / study.reference_norm},
               {"monotone", study.monotone},
               {"doubling_ratios", ratios}};
  c.passed = bound_fail == 0 && study.final_ok && study.monotone && ratios_ok;
  return c;
}

CriterionOutcome extension_consistency(std::uint64_t seed, Recorder& rec) {
  CriterionOutcome c{10, "extension consistency"};
  const auto M = gevrey(1, 64);
  const auto E = parse_space("lp:2:poly:1");
  Rng rng(sub_seed(seed, 10));
  const GaussSum psi = ExpPoly({1.0, 0.5}, 1.2);
  int failures = 0;

  bool identical = true;
  for (int k = 0; k < 5; ++k) {
    auto s = random_seqrep(sub_seed(seed, 10) + static_cast<std::uint64_t>(k), E, M, 1.0);
    auto a = conv_smooth(s, psi, M, 1.0);
    auto b = conv_with_test(s, psi, M, M, 1.0, 1.0);
    if (format_gauss_sum(a.result) != format_gauss_sum(b.result)) {
      identical = false;
      ++failures;
      rec.violation("smooth extension identity", "smooth-extension", {{"trial", k}});
    }
  }

  double kernel_gap = 0.0;
  for (int alpha : {0, 1, 3}) {
    GaussSum g = rng.term(2, 0.6, 2.5);
    auto a = conv_smooth(SeqRep{{{alpha, derivative(g, 1)}}, E}, psi, M, 1.0);
    auto b = conv_smooth(SeqRep{{{alpha + 1, g}}, E}, psi, M, 1.0);
    for (int k = 0; k < 10; ++k) {
      double x = -3.0 + 0.6 * k;
      kernel_gap = std::max(kernel_gap, std::abs(a.result(x) - b.result(x)) / (1.0 + std::abs(b.result(x))));
    }
  }
  if (kernel_gap > 1e-8) {
    ++failures;
    rec.violation("kernel pair", "smooth-extension", {{"gap", kernel_gap}});
  }

  std::vector<GaussSum> probes;
  for (int k = 0; k < 5; ++k) probes.push_back(rng.term(2, 0.6, 2.5));
  double cauchy_gap = 0.0;
  for (int t = 0; t < 5; ++t) {
    SeqRep fs{{}, E}, gs{{}, E};
    for (int a : {0, 1, 3}) fs.entries[a] = scale(GaussSum(rng.term(2, 0.6, 2.5)), std::exp(-M.log_value(a)));
    for (int b : {0, 2, 3}) gs.entries[b] = scale(GaussSum(rng.term(2, 0.6, 2.5)), std::exp(-M.log_value(b)));
    auto r = conv_cauchy(fs, gs, M, 1.0, probes);
    cauchy_gap = std::max(cauchy_gap, r.consistency_error);
    if (!r.consistent || !r.holds) {
      ++failures;
      rec.violation("Cauchy product", "cauchy-extension",
                    {{"trial", t}, {"consistency_error", r.consistency_error}, {"gamma", r.witness.value_or(-1)}});
    }
  }
  c.metrics = {{"smooth_identity", identical}, {"kernel_pair_gap", kernel_gap}, {"cauchy_consistency", cauchy_gap}};
  c.passed = failures == 0;
  return c;
}

}  // namespace

CriterionOutcome run_criterion(int id, std::uint64_t seed, Recorder& rec) {
  switch (id) {
    case 1: return window_identity(rec);
    case 2: return reconstruction(rec);
    case 3: return desingularization(seed, rec);
    case 4: return module_inequality(seed, rec);
    case 5: return associated_function_checks(seed, rec);
    case 6: return convolution_estimate(seed, rec);
    case 7: return structural_bound(seed, rec);
    case 8: return membership(seed, rec);
    case 9: return riemann(seed, rec);
    case 10: return extension_consistency(seed, rec);
    default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
  }
}

}  // namespace ultrakit
