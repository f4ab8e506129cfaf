#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultrakit/weightseq.hpp"

using namespace ultrakit;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sup_p (t^p M_0/M_p) by direct products in long double, p <= P.
double omega_direct(double s, int P, double t) {
  long double best = 1.0L, term = 1.0L;
  for (int p = 1; p <= P; ++p) {
    term *= static_cast<long double>(t) / std::pow(static_cast<long double>(p), static_cast<long double>(s));
    best = std::max(best, term);
  }
  return static_cast<double>(std::log(best));
}

}  // namespace

TEST_CASE("gevrey values") {
  CHECK(gevrey(1, 8).value(3) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(gevrey(0.5, 8).value(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(gevrey(2, 8).value(4) == doctest::Approx(24.0 * 24.0).epsilon(1e-13));
  CHECK(gevrey(1, 200).log_value(200) == doctest::Approx(std::lgamma(201.0)));
  CHECK_THROWS_AS(gevrey(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(gevrey(-1, 8), std::invalid_argument);
  CHECK_THROWS_AS(gevrey(1, 7), std::invalid_argument);
}

TEST_CASE("invalid sequences") {
  CHECK_THROWS_AS(WeightSequence::from_values({1, 2, 0, 4, 5, 6, 7, 8, 9}, "z"), std::invalid_argument);
  CHECK_THROWS_AS(WeightSequence::from_values({1, 2, 3}, "short"), std::invalid_argument);
  // (M_p/M_0)^{1/p} decreasing in the second half.
  std::vector<double> flat{1, 10, 100, 1000, 1e4, 1e4, 1e4, 1e4, 1e4, 1e4};
  CHECK_THROWS_AS(WeightSequence::from_values(flat, "flat"), std::invalid_argument);
  CHECK_NOTHROW(WeightSequence::from_values(flat, "flat", false));
}

TEST_CASE("condition report for gevrey(1)") {
  auto M = gevrey(1, 64);
  auto r = check_conditions(M);
  CHECK(r.P == 64);
  CHECK(r.m1);
  CHECK(r.m2.holds);
  CHECK(r.m2prime.holds);
  CHECK(r.m2.C0 == doctest::Approx(1.0));
  CHECK(r.m2.H == doctest::Approx(2.0));
  // (p+q)! <= 2^{p+q} p! q! by direct factorials.
  for (int p = 0; p <= 20; ++p) {
    for (int q = 0; p + q <= 20; ++q) CHECK(factorial(p + q) <= std::pow(2.0, p + q) * factorial(p) * factorial(q));
  }
  CHECK(r.m3prime_diverges);
}

TEST_CASE("condition report for other Gevrey orders") {
  auto r2 = check_conditions(gevrey(2, 64));
  CHECK_FALSE(r2.m3prime_diverges);
  double basel = 0.0;
  for (int p = 1; p <= 64; ++p) basel += 1.0 / (double(p) * p);
  CHECK(r2.m3prime_partial_sum == doctest::Approx(basel).epsilon(1e-12));
  CHECK(r2.m2.H == doctest::Approx(4.0));
  auto rh = check_conditions(gevrey(0.5, 64));
  CHECK(rh.m3prime_diverges);
  CHECK(rh.m2prime.H == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("non-(M.2) sequence is rejected") {
  std::vector<double> logs(41);
  for (int p = 0; p <= 40; ++p) logs[p] = double(p) * p;
  auto M = WeightSequence::from_log_values(logs, "exp(p^2)");
  auto r = check_conditions(M);
  CHECK(r.m1);
  CHECK(r.m2prime.holds);
  CHECK_FALSE(r.m2.holds);
}

TEST_CASE("reported constants satisfy their inequalities") {
  for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    auto M = gevrey(s, 48);
    auto r = check_conditions(M);
    const auto& L = M.log_values();
    auto tol = [](double v) { return 1e-12 * (1.0 + std::abs(v)); };
    for (int p = 0; p < 48; ++p) {
      double rhs = std::log(r.m2prime.C0) + p * std::log(r.m2prime.H) + L[p];
      CHECK(L[p + 1] <= rhs + tol(rhs));
      // m2 constants satisfy (M.2)' as well.
      double rhs2 = std::log(r.m2.C0) + p * std::log(r.m2.H) + L[p];
      CHECK(L[p + 1] <= rhs2 + tol(rhs2));
    }
    for (int p = 0; p <= 48; ++p) {
      for (int q = 0; p + q <= 48; ++q) {
        double rhs = std::log(r.m2.C0) + (p + q) * std::log(r.m2.H) + L[p] + L[q];
        CHECK(L[p + q] <= rhs + tol(rhs));
      }
    }
    CHECK((!r.m2.holds || r.m2prime.holds));
  }
}

TEST_CASE("log-convex sequences satisfy M_p M_q <= M_0 M_{p+q}") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    // Random convex log-sequence: cumulative sums of increasing increments.
    std::vector<double> inc(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : inc) v = u(rng);
    std::sort(inc.begin(), inc.end());
    std::vector<double> logs(33, 0.0);
    logs[0] = u(rng) - 0.5;
    for (int p = 1; p <= 32; ++p) logs[p] = logs[p - 1] + inc[p] * 3.0 - 1.0;
    auto M = WeightSequence::from_log_values(logs, "random", false);
    REQUIRE(check_conditions(M).m1);
    for (int p = 0; p <= 32; ++p) {
      for (int q = 0; p + q <= 32; ++q) CHECK(logs[p] + logs[q] <= logs[0] + logs[p + q] + 1e-12);
    }
  }
}

TEST_CASE("associated function examples") {
  auto M = gevrey(1, 64);
  CHECK(associated_function(M, 0.0) == 0.0);
  CHECK(associated_function(M, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(associated_function(M, 2.0) == doctest::Approx(omega_direct(1.0, 50, 2.0)).epsilon(1e-14));
  for (double t : {0.1, 0.5, 0.999, 1.0}) CHECK(associated_function(M, t) == 0.0);
  CHECK_THROWS_AS(associated_function(M, -1.0), std::invalid_argument);
  auto sat = associated_function_detail(gevrey(1, 8), 100.0);
  CHECK(sat.saturated);
  CHECK_FALSE(associated_function_detail(M, 10.0).saturated);
}

TEST_CASE("ratio scan agrees with direct products and full scan") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (double s : {0.5, 1.0, 2.0}) {
    auto M = gevrey(s, 400);
    for (int i = 0; i < 300; ++i) {
      double t = u(rng);
      double fast = associated_function(M, t);
      CHECK(std::abs(fast - associated_function_bruteforce(M, t)) <= 1e-12);
      CHECK(fast == doctest::Approx(omega_direct(s, 400, t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("associated function is nondecreasing") {
  for (double s : {0.5, 1.0, 2.0}) {
    auto M = gevrey(s, 256);
    double prev = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      double v = associated_function(M, i * 0.01);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("associated function inequalities") {
  auto M = gevrey(1, 256);
  std::vector<double> pts{1.0, 1.0};
  std::vector<double> ks{2.0};
  auto r = check_omega_inequalities(M, pts, ks);
  CHECK(r.violations.empty());
  // t = 10, k = 2 with (C0, H) = (1, 2).
  CHECK(r.C0 == doctest::Approx(1.0));
  CHECK(r.H == doctest::Approx(2.0));
  CHECK(omega_direct(1, 256, 10) - omega_direct(1, 256, 20) <= -std::log(10.0));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::vector<double> sample(2000);
  for (auto& v : sample) v = u(rng);
  std::vector<double> kv{1.5, 2.0, 4.0, 10.0};
  for (double s : {0.5, 1.0, 2.0}) {
    auto rep = check_omega_inequalities(gevrey(s, 4096), sample, kv);
    CHECK(rep.violations.empty());
    CHECK(rep.sum_checks == 1000);
    CHECK(rep.dilation_checks == 8000);
  }
}

TEST_CASE("subordination") {
  auto M = gevrey(1, 40);
  auto self = subordinate(M, M);
  CHECK(self.holds);
  CHECK(self.C == doctest::Approx(1.0));
  CHECK(self.L == doctest::Approx(1.0));
  CHECK(subordinate(gevrey(1, 40), gevrey(2, 40)).holds);
  CHECK_FALSE(subordinate(gevrey(2, 40), gevrey(1, 40)).holds);
  CHECK_FALSE(subordinate(gevrey(1.1, 40), gevrey(1, 40)).holds);
  // M_p = 3^p N_p.
  std::vector<double> logs(41);
  for (int p = 0; p <= 40; ++p) logs[p] = std::lgamma(p + 1.0) + p * std::log(3.0);
  auto geo = subordinate(WeightSequence::from_log_values(logs, "3^p p!"), M);
  CHECK(geo.holds);
  CHECK(geo.L <= 3.0 * std::exp2(1.0 / 8) + 1e-12);
  CHECK(geo.L >= 3.0);
  CHECK_THROWS_AS(subordinate(gevrey(1, 40), gevrey(1, 41)), std::invalid_argument);
}

TEST_CASE("r-modulated sequences") {
  auto M = gevrey(1, 20);
  RSequence ones(std::vector<double>(21, 1.0));
  CHECK(ones.degenerate());
  auto same = r_modulate(M, ones);
  for (int p = 0; p <= 20; ++p) CHECK(same.log_value(p) == doctest::Approx(M.log_value(p)));

  std::vector<double> r(21);
  for (int j = 0; j <= 20; ++j) r[j] = j + 1.0;
  RSequence rs(r);
  CHECK_FALSE(rs.degenerate());
  auto Mr = r_modulate(M, rs);
  for (int p = 0; p <= 10; ++p) CHECK(Mr.value(p) == doctest::Approx(factorial(p) * factorial(p + 1)).epsilon(1e-12));
  double prev = 0.0;
  for (int p = 0; p <= 20; ++p) {
    double ratio = Mr.log_value(p) - M.log_value(p);
    CHECK(ratio >= prev);
    prev = ratio;
  }
  CHECK_THROWS_AS(r_modulate(M, RSequence(std::vector<double>(5, 1.0))), std::invalid_argument);
  CHECK_THROWS_AS(RSequence({2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RSequence({0.0, 1.0}), std::invalid_argument);
}
