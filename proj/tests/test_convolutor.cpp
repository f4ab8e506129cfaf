#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "ultrakit/convolutor.hpp"
#include "ultrakit/fixtures.hpp"

using namespace ultrakit;
using std::numbers::pi;

namespace {

const GaussSum kGauss = ExpPoly::gaussian(pi);
const WeightSequence kM = gevrey(1, 64);

GaussSum random_term(oracle::Gen& gen) { return gen.exp_poly(2, 0.6, 2.5); }

SeqRep random_small(oracle::Gen& gen, const TmibSpace& E, int max_alpha = 2, int size = 3) {
  SeqRep s{{}, E};
  while (static_cast<int>(s.entries.size()) < size) s.entries[gen.integer(0, max_alpha)] = random_term(gen);
  return s;
}

cplx line_integral(const std::function<cplx(double)>& f) { return oracle::integrate_line(f, 0, 12); }

double l2_norm_oracle(const GaussSum& f) {
  return std::sqrt(line_integral([&](double x) { return cplx(std::norm(f(x))); }).real());
}

}  // namespace

TEST_CASE("sequence text round trip") {
  auto s = random_seqrep(3, parse_space("lp:2:poly:1"), kM, 1.0);
  auto t = parse_seqrep("# comment\n" + format_seqrep(s));
  CHECK(t.E.spec() == s.E.spec());
  CHECK(format_seqrep(t) == format_seqrep(s));
  CHECK_THROWS_AS(parse_seqrep("alpha=0 a=1 b=0 c=0 coeffs=[1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seqrep("space=lp:2:const\nalpha=-1 a=1 b=0 c=0 coeffs=[1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seqrep("space=lp:2:const\nbeta=1\n"), std::invalid_argument);
}

TEST_CASE("lambda norm") {
  auto E = parse_space("lp:2:const");
  CHECK(lambda_norm(SeqRep{{}, E}, kM, 1.0) == 0.0);
  SeqRep one{{{0, kGauss}}, E};
  CHECK(lambda_norm(one, kM, 3.0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-10));
  SeqRep two{{{0, kGauss}, {2, kGauss}}, E};
  // max(1, (1/2)^2 2!) ||g||_2 against a direct scan.
  double scan = 0.0;
  for (int a : {0, 2}) scan = std::max(scan, std::pow(0.5, a) * std::tgamma(a + 1.0) * l2_norm_oracle(kGauss));
  CHECK(lambda_norm(two, kM, 0.5) == doctest::Approx(scan).epsilon(1e-10));
  CHECK(lambda_norm(two, kM, 0.5) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-10));
}

TEST_CASE("lambda norm is nondecreasing in ell") {
  auto E = parse_space("lp:1:poly:1");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = random_seqrep(seed, E, kM, 1.0);
    double prev = 0.0;
    for (double ell : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
      double v = lambda_norm(s, kM, ell);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("random sequences are Lambda-normalized") {
  auto E = parse_space("lp:2:poly:1");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = random_seqrep(seed, E, kM, 0.5);
    CHECK(!s.entries.empty());
    CHECK(s.entries.rbegin()->first <= 6);
    double v = lambda_norm(s, kM, 0.5);
    CHECK(v >= 0.25 - 1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("synthesis") {
  auto E = parse_space("lp:2:const");
  GaussSum f = ExpPoly({1.0, 0.2}, 1.3);
  auto d = synthesize(SeqRep{{{0, f}}, E});
  REQUIRE(d.parts.size() == 1);
  CHECK(format_gauss_sum(d.parts.at(0)) == format_gauss_sum(f));

  GaussSum phi = ExpPoly({1.0, 0.0, 0.4}, 1.1, cplx(0.1, 0.3));
  auto dphi = derivative(phi, 1);
  GaussSum g = ExpPoly({0.5, 1.0}, 0.9);
  cplx ref = -line_integral([&](double x) { return g(x) * dphi(x); });
  CHECK(std::abs(pair(synthesize(SeqRep{{{1, g}}, E}), phi) - ref) <= 1e-10);

  oracle::Gen gen(21);
  auto s = random_small(gen, E, 3, 3);
  cplx sum = 0.0;
  for (const auto& [a, fa] : s.entries) {
    auto da = derivative(phi, a);
    cplx v = line_integral([&](double x) { return fa(x) * da(x); });
    sum += (a % 2) ? -v : v;
  }
  CHECK(std::abs(pair(synthesize(s), phi) - sum) <= 1e-9 * (1 + std::abs(sum)));
}

TEST_CASE("convolution with a test function") {
  auto E = parse_space("lp:2:poly:1");
  GaussSum f = ExpPoly({1.0, -0.3}, 1.4, 0.2);
  auto r = conv_with_test(SeqRep{{{0, f}}, E}, kGauss, kM, kM, 1.0, 1.0);
  auto direct = convolve(f, kGauss);
  for (double x : {-1.0, 0.0, 0.7}) CHECK(std::abs(r.result(x) - direct(x)) <= 1e-14);
  CHECK(r.holds);

  // <S(s), reflect(phi) * eta> = int (sum f_alpha * phi^(alpha)) eta.
  oracle::Gen gen(22);
  for (int k = 0; k < 5; ++k) {
    auto s = random_small(gen, E, 3, 3);
    GaussSum phi = random_term(gen), eta = random_term(gen);
    cplx lhs = pair(synthesize(s), convolve(reflect(phi), eta));
    cplx rhs = bilinear(conv_with_test(s, phi, kM, kM, 1.0, 1.0).result, eta);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
  }
}

TEST_CASE("per-term structural bound and geometric decay") {
  auto E = parse_space("lp:2:poly:1");
  for (double ell : {0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto s = random_seqrep(100 + seed, E, kM, ell);
      for (const auto& fx : standard_fixtures()) {
        INFO(fx.name << " seed " << seed << " ell " << ell);
        auto r = conv_with_test(s, fx.f, kM, kM, ell, 1.0);
        CHECK(r.holds);
        CHECK(r.certified);
        CHECK(r.geometric_ratio <= 0.55);
        for (const auto& t : r.terms) CHECK(t.normalized <= std::ldexp(1.0, -t.alpha) * (1 + 1e-6));
      }
    }
  }
}

TEST_CASE("membership detector") {
  auto E = parse_space("lp:2:const");
  auto w = build_window(ExpPoly::gaussian(pi));
  auto grid = Grid::make(16.0, 0.05);
  const std::vector<double> qs{0.5, 1.0, 2.0, 4.0};
  auto g = membership_test(FiniteDistribution{{{0, kGauss}}}, w, E, kM, qs, grid, 1.0);
  for (const auto& row : g.fit.rows) CHECK(row.stabilized);
  CHECK(g.consistent);
  CHECK(g.note == std::string(kReverseDirectionNote));

  auto z = membership_test(FiniteDistribution{}, w, E, kM, qs, grid, 1.0);
  for (const auto& row : z.fit.rows) {
    CHECK(row.sup_full == 0.0);
    CHECK(row.stabilized);
  }

  // A high-order entry with amplitude 1 / (ell^8 M_8) in Lambda_{M, ell}.
  const double ell = 0.5;
  GaussSum g8 = scale(GaussSum(ExpPoly::gaussian(1.5)), std::exp(-8 * std::log(ell) - kM.log_value(8)));
  auto h = membership_test(synthesize(SeqRep{{{8, g8}}, E}), w, E, kM, {0.5, 1.0, 2.0, 4.0, 6.0}, grid, ell);
  CHECK(h.predicted_threshold == doctest::Approx(2 * pi));
  CHECK(h.consistent);
}

TEST_CASE("smooth extension") {
  auto E = parse_space("lp:2:poly:1");
  GaussSum psi = ExpPoly({1.0, 0.5}, 1.2);
  GaussSum f = ExpPoly({0.7}, 0.9, 0.4);
  auto single = conv_smooth(SeqRep{{{0, f}}, E}, psi, kM, 1.0);
  auto direct = convolve(f, psi);
  for (double x : {-0.5, 0.0, 1.3}) CHECK(std::abs(single.result(x) - direct(x)) <= 1e-14);
  CHECK(single.holds);
  CHECK(single.identity);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = random_seqrep(200 + seed, E, kM, 1.0);
    auto r = conv_smooth(s, psi, kM, 1.0);
    CHECK(r.holds);
    CHECK(r.identity);
    auto t = conv_with_test(s, psi, kM, kM, 1.0, 1.0);
    CHECK(format_gauss_sum(r.result) == format_gauss_sum(t.result));
  }

  // {alpha: g'} and {alpha + 1: g} synthesize to the same distribution.
  oracle::Gen gen(23);
  for (int alpha : {0, 1, 3}) {
    GaussSum g = random_term(gen);
    auto a = conv_smooth(SeqRep{{{alpha, derivative(g, 1)}}, E}, psi, kM, 1.0);
    auto b = conv_smooth(SeqRep{{{alpha + 1, g}}, E}, psi, kM, 1.0);
    for (int k = 0; k < 10; ++k) {
      double x = -3.0 + 0.6 * k;
      CHECK(std::abs(a.result(x) - b.result(x)) <= 1e-8 * (1 + std::abs(b.result(x))));
    }
  }
}

TEST_CASE("convolution pairing") {
  auto E = parse_space("lp:2:const");
  GaussSum f0 = ExpPoly({1.0, 0.3}, 1.1, 0.2), g0 = ExpPoly({0.5}, 2.0, cplx(0, 0.5));
  GaussSum phi = ExpPoly({1.0, 0.0, -0.2}, 0.8);
  SeqRep fs{{{0, f0}}, E}, gs{{{0, g0}}, E};
  CHECK(std::abs(conv_pairing(fs, gs, phi) - bilinear(convolve(f0, g0), phi)) <= 1e-12);
  CHECK(conv_pairing(fs, gs, GaussSum{}) == cplx(0.0));

  SeqRep f2{{{0, f0}, {2, g0}}, E};
  const cplx target = pair(synthesize(f2), phi);
  double prev = INFINITY;
  for (int n : {2, 4, 8}) {
    GaussSum delta = scale(GaussSum(ExpPoly::gaussian(pi * n * n)), static_cast<double>(n));
    double err = std::abs(conv_pairing(f2, SeqRep{{{0, delta}}, E}, phi) - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 0.05 * std::abs(target));
}

TEST_CASE("Cauchy-product extension") {
  auto E = parse_space("lp:2:poly:1");
  GaussSum f = ExpPoly({1.0, 0.3}, 1.1, 0.2), g = ExpPoly({0.5}, 2.0, cplx(0, 0.5));
  auto r0 = conv_cauchy(SeqRep{{{0, f}}, E}, SeqRep{{{0, g}}, E}, kM, 1.0);
  REQUIRE(r0.result.entries.size() == 1);
  CHECK(format_gauss_sum(r0.result.entries.at(0)) == format_gauss_sum(convolve(f, g)));
  auto r1 = conv_cauchy(SeqRep{{{1, f}}, E}, SeqRep{{{1, g}}, E}, kM, 1.0);
  REQUIRE(r1.result.entries.size() == 1);
  CHECK(format_gauss_sum(r1.result.entries.at(2)) == format_gauss_sum(convolve(f, g)));

  oracle::Gen gen(24);
  std::vector<GaussSum> probes;
  for (int k = 0; k < 5; ++k) probes.push_back(random_term(gen));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SeqRep fs{{}, E}, gs{{}, E};
    for (int a : {0, 1, 3}) fs.entries[a] = scale(random_term(gen), std::exp(-kM.log_value(a)));
    for (int b : {0, 2, 3}) gs.entries[b] = scale(random_term(gen), std::exp(-kM.log_value(b)));
    auto r = conv_cauchy(fs, gs, kM, 1.0, probes);
    CHECK(r.holds);
    CHECK(r.consistent);
    CHECK(r.consistency_error <= 1e-8);
    std::set<int> expect;
    for (int a : {0, 1, 3})
      for (int b : {0, 2, 3}) expect.insert(a + b);
    std::set<int> got;
    for (const auto& [c, h] : r.result.entries) got.insert(c);
    CHECK(got == expect);
  }

  // Kernel pairs give equal pairings.
  SeqRep gs{{{0, g}, {1, f}}, E};
  for (int alpha : {0, 2}) {
    GaussSum h = random_term(gen);
    auto a = conv_cauchy(SeqRep{{{alpha, derivative(h, 1)}}, E}, gs, kM, 1.0);
    auto b = conv_cauchy(SeqRep{{{alpha + 1, h}}, E}, gs, kM, 1.0);
    for (int k = 0; k < 10; ++k) {
      GaussSum phi = random_term(gen);
      cplx pa = pair(synthesize(a.result), phi), pb = pair(synthesize(b.result), phi);
      CHECK(std::abs(pa - pb) <= 1e-8 * std::max(1.0, std::abs(pb)));
    }
  }
}
