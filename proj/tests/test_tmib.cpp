#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ultrakit/tmib.hpp"

using namespace ultrakit;
using std::numbers::pi;

namespace {

const GaussSum kGauss = ExpPoly::gaussian(pi);

GaussSum random_sum(oracle::Gen& gen, int terms = 2) {
  GaussSum s;
  for (int k = 0; k < terms; ++k) s.add(gen.exp_poly(3, 0.5, 3.0));
  return s;
}

double gauss_derivative(int n, double x) {
  double y = std::sqrt(pi) * x;
  double h0 = 1.0, h1 = 2.0 * y;
  double h = n == 0 ? h0 : h1;
  for (int k = 1; k < n; ++k) {
    h = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h;
  }
  return std::pow(-std::sqrt(pi), n) * h * std::exp(-pi * x * x);
}

std::vector<TmibSpace> all_kinds() {
  return {parse_space("lp:1:const"),        parse_space("lp:2:poly:1"),  parse_space("lp:4:exp:1:1"),
          parse_space("lp:inf:poly:2"),     parse_space("flp:2:poly:1"), parse_space("flp:1:exp:1:0.5"),
          parse_space("flp:inf:const"),     parse_space("c0w:poly:1"),   parse_space("c0w:exp:1:1")};
}

}  // namespace

TEST_CASE("space spec round trip and errors") {
  for (const auto& E : all_kinds()) CHECK(parse_space(E.spec()).spec() == E.spec());
  CHECK(parse_space("flp:2:poly:1").fourier_condition() == "F.I");
  CHECK(parse_space("flp:2:exp:1:1").fourier_condition() == "F.II");
  CHECK_THROWS_AS(parse_space("lp:0.5:const"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("lp:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("xx:2:const"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("lp:2:poly"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("lp:two:const"), std::invalid_argument);
}

TEST_CASE("norms of the standard Gaussian") {
  auto l2 = space_norm(parse_space("lp:2:const"), kGauss);
  CHECK(l2.certified);
  CHECK(std::abs(l2.value - std::sqrt(inner_l2(kGauss, kGauss).real())) <= 1e-10);
  CHECK(std::abs(l2.value - std::pow(2.0, -0.25)) <= 1e-10);
  auto l1 = space_norm(parse_space("lp:1:const"), kGauss);
  CHECK(std::abs(l1.value - 1.0) <= 1e-10);
  auto linf = space_norm(parse_space("lp:inf:poly:2"), kGauss);
  CHECK(linf.value == doctest::Approx(1.0).epsilon(1e-15));
  // Parseval.
  CHECK(std::abs(space_norm(parse_space("flp:2:const"), kGauss).value - l2.value) <= 1e-10);
  // Weighted L1 against quadrature.
  auto w = space_norm(parse_space("lp:1:poly:3", Grid::make(12.0, 0.0025)), kGauss);
  auto ref = oracle::integrate_line([](double x) { return cplx(std::exp(-pi * x * x) * std::pow(1 + std::abs(x), 3)); }, 0, 8);
  CHECK(ref.real() == doctest::Approx(1.0 + 4.5 / pi + 1.0 / (pi * pi)).epsilon(1e-13));
  CHECK(w.value == doctest::Approx(ref.real()).epsilon(1e-9));
}

TEST_CASE("norms are homogeneous and vanish on zero") {
  oracle::Gen gen(4);
  for (const auto& E : all_kinds()) {
    auto f = random_sum(gen);
    double v = space_norm(E, f).value;
    CHECK(space_norm(E, scale(f, 2.0)).value == doctest::Approx(2.0 * v).epsilon(1e-13));
    CHECK(space_norm(E, scale(f, cplx(0, -3))).value == doctest::Approx(3.0 * v).epsilon(1e-13));
    CHECK(space_norm(E, GaussSum{}).value == 0.0);
  }
}

TEST_CASE("certificates and edge decay") {
  GaussSum wide = ExpPoly::gaussian(0.05);
  auto small = Grid::make(2.0, 0.01);
  CHECK_FALSE(space_norm(TmibSpace::weighted_lp(2, WeightFunction::constant(), small), wide).certified);
  auto c0 = space_norm(TmibSpace::c0w(WeightFunction::constant(), small), wide);
  CHECK_FALSE(c0.decays);
  auto ok = space_norm(parse_space("c0w:poly:1"), kGauss);
  CHECK(ok.decays);
  CHECK(ok.certified);
}

TEST_CASE("operator weights") {
  for (const auto& E : all_kinds()) {
    CHECK(translation_weight(E, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(modulation_weight(E, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double x : {-3.0, 0.7, 5.0}) {
      if (E.kind() == TmibSpace::Kind::fourier_lp) {
        CHECK(translation_weight(E, x) == 1.0);
      } else {
        CHECK(modulation_weight(E, x) == 1.0);
      }
    }
  }
  // (1+|u+x|)^k / (1+|u|)^k is maximal at u = 0.
  auto E = parse_space("lp:2:poly:3");
  for (double x : {-4.0, -0.5, 2.0, 7.5}) CHECK(translation_weight(E, x) == doctest::Approx(std::pow(1 + std::abs(x), 3)).epsilon(1e-12));
  auto F = parse_space("flp:2:poly:2");
  CHECK(modulation_weight(F, 3.0) == doctest::Approx(16.0).epsilon(1e-12));
  // L^inf_w uses 1/w: for w = (1+|x|)^{-2} the ratio w(u)/w(u+x) peaks at u = -x.
  auto I = parse_space("lp:inf:poly:-2");
  CHECK(translation_weight(I, 2.0) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("operator weight table matches pointwise evaluation") {
  auto E = TmibSpace::weighted_lp(2, parse_weight("exp:1:1"), Grid::make(6.0, 0.05));
  auto t = translation_weight_table(E);
  for (int j = 0; j < E.grid().size(); j += 17) {
    CHECK(t[j] == doctest::Approx(std::log(translation_weight(E, E.grid().node(j)))).epsilon(1e-12));
  }
  auto W = operator_weight(E);
  CHECK(W.kind() == WeightFunction::Kind::tabulated);
  CHECK(W.log_value(E.grid().node(40)) == doctest::Approx(t[40]).epsilon(1e-14));
}

TEST_CASE("operator weight is submultiplicative on grid pairs") {
  for (const char* spec : {"lp:2:poly:2", "lp:1:exp:1:1", "lp:inf:exp:2:1", "flp:2:poly:1"}) {
    auto E = parse_space(spec);
    std::vector<double> pts;
    for (int k = -12; k <= 12; ++k) pts.push_back(0.5 * k);
    for (double x : pts) {
      for (double y : pts) {
        double lhs = translation_weight(E, x + y);
        double rhs = translation_weight(E, x) * translation_weight(E, y);
        CHECK(lhs <= rhs * (1.0 + 1e-9));
        CHECK(modulation_weight(E, x + y) <= modulation_weight(E, x) * modulation_weight(E, y) * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("operator weight stable under grid refinement") {
  for (const char* w : {"exp:1:1", "poly:2", "exp:2:1.5"}) {
    auto coarse = TmibSpace::weighted_lp(2, parse_weight(w), Grid::make(12.0, 0.01));
    auto fine = TmibSpace::weighted_lp(2, parse_weight(w), Grid::make(24.0, 0.005));
    for (double x : {-6.0, -1.3, 0.4, 3.0, 9.0}) {
      CHECK(translation_weight(coarse, x) == doctest::Approx(translation_weight(fine, x)).epsilon(1e-2));
    }
  }
}

TEST_CASE("operator weight matches a dense scan over all u") {
  for (const char* s : {"lp:2:exp:1:1", "lp:inf:exp:1:2", "lp:1:exp:2:1.5", "lp:2:poly:-2"}) {
    auto E = parse_space(s);
    const auto& w = E.weight();
    double reach = 20.0;
    if (w.kind() == WeightFunction::Kind::exp_assoc) reach += std::exp(w.sequence().log_ratios().back()) / w.q();
    for (double x : {-6.0, -1.3, 0.4, 3.0, 9.0}) {
      double best = 0.0;
      auto scan = [&](double lo, double hi, double h) {
        for (double u = lo; u <= hi; u += h) {
          double d = w.log_value(u + x) - w.log_value(u);
          best = std::max(best, E.inverse_weight() ? -d : d);
        }
      };
      scan(-reach, reach, 0.01);
      scan(-20.0, 20.0, 1e-4);
      INFO(std::string(s) << " x=" << x);
      double exact = std::log(translation_weight(E, x));
      CHECK(exact >= best - 1e-12);
      CHECK(std::exp(exact - best) <= 1.0 + 1e-4);
    }
  }
}

TEST_CASE("admissibility") {
  const auto A = gevrey(1, 64);
  auto c = check_admissible(WeightFunction::constant(), A, 1.0);
  CHECK(c.C_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.holds);

  auto e = check_admissible(WeightFunction::exp_assoc(A, 1.0), A, 2.0);
  // Independent scan over the same pairs.
  auto g = Grid::make(12.0, 0.1);
  double best = 0.0;
  for (double x : g.nodes()) {
    for (double t : g.nodes()) {
      best = std::max(best, std::exp(associated_function_bruteforce(A, std::abs(x + t)) - associated_function_bruteforce(A, std::abs(x)) -
                                     associated_function_bruteforce(A, 2.0 * std::abs(t))));
    }
  }
  CHECK(e.C_min == doctest::Approx(best).epsilon(1e-12));
  CHECK(e.C_min >= 1.0);
  CHECK(e.holds);

  for (double k : {1.0, 2.5}) {
    for (double q : {0.5, 2.0}) {
      auto p = check_admissible(WeightFunction::polynomial(k), A, q);
      double analytic = 0.0;
      for (double t : Grid::make(24.0, 0.1).nodes()) {
        analytic = std::max(analytic, std::pow(1 + std::abs(t), k) * std::exp(-associated_function(A, q * std::abs(t))));
      }
      CHECK(p.C_min <= analytic * (1 + 1e-12));
      CHECK(p.holds);
    }
  }
  // A weight growing faster than any e^{omega_N(q.)} allows.
  auto bad = check_admissible(WeightFunction::exp_assoc(gevrey(0.5, 64), 1.0), A, 1.0);
  CHECK_FALSE(bad.holds);
}

TEST_CASE("axioms") {
  const auto M = gevrey(1, 64), A = gevrey(1, 64);
  std::vector<double> qs{0.5, 1.0, 2.0, 4.0};
  auto flat = check_tmib_axioms(parse_space("lp:2:const"), M, A, qs);
  for (const auto& r : flat.translation) CHECK(r.C == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& g : flat.growth) {
    CHECK(g.verified);
    CHECK(*g.q1 == g.q0);
    CHECK(g.C == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(flat.growth_verified);

  auto four = check_tmib_axioms(parse_space("flp:2:poly:2"), M, A, qs);
  for (size_t i = 0; i + 1 < qs.size(); ++i) {
    CHECK(four.growth[i].verified);
    CHECK(*four.growth[i].q1 > four.growth[i].q0);
  }
  // Polynomial nu_E needs q1 > q0; the largest q0 has no candidate.
  CHECK_FALSE(four.growth.back().verified);
  CHECK_FALSE(four.growth_verified);
}

TEST_CASE("Banach-module inequality") {
  auto E = parse_space("lp:2:const");
  auto r = module_conv_check(E, kGauss, kGauss);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  auto z = module_conv_check(E, kGauss, GaussSum{});
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);

  oracle::Gen gen(2024);
  for (const char* spec : {"lp:1:poly:1", "lp:2:poly:2", "lp:4:poly:1"}) {
    auto S = parse_space(spec);
    auto W = operator_weight(S);
    int violations = 0;
    for (int k = 0; k < 100; ++k) {
      auto rep = module_conv_check(S, random_sum(gen), random_sum(gen), &W);
      violations += !rep.holds;
      CHECK(rep.certified);
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("D_E norm") {
  const auto M = gevrey(1, 64);
  auto E = parse_space("lp:2:const");
  CHECK(de_norm(GaussSum{}, E, M, 1.0, 12).value == 0.0);
  auto d = de_norm(kGauss, E, M, 1.0, 12);
  double best = 0.0;
  for (int a = 0; a <= 12; ++a) {
    auto sq = oracle::integrate_line([a](double x) { return cplx(std::pow(gauss_derivative(a, x), 2)); }, 0.0, 8.0);
    best = std::max(best, std::sqrt(sq.real()) / std::tgamma(a + 1.0));
  }
  CHECK(d.value == doctest::Approx(best).epsilon(1e-8));
  double prev = INFINITY;
  for (double ell : {0.5, 1.0, 2.0, 4.0}) {
    double v = de_norm(kGauss, E, M, ell, 12).value;
    CHECK(v <= prev);
    prev = v;
  }
  // Small ell pushes the maximum to the last index.
  CHECK(de_norm(kGauss, E, M, 0.05, 8).saturated);

  // Differentiation shifts the index: ||(f')^(a)|| / (l^a M_a) = l (M_{a+1}/M_a) [||f^(a+1)|| / (l^{a+1} M_{a+1})].
  oracle::Gen gen(6);
  auto f = random_sum(gen);
  const double ell = 0.7;
  auto df = de_norm(derivative(f, 1), E, M, ell, 10);
  auto ff = de_norm(f, E, M, ell, 11);
  for (int a = 0; a <= 10; ++a) {
    CHECK(df.per_alpha[a] == doctest::Approx(ell * std::exp(M.log_value(a + 1) - M.log_value(a)) * ff.per_alpha[a + 1]).epsilon(1e-12));
  }
  FiniteDistribution fd;
  fd.parts[1] = f;
  CHECK(de_norm(fd, E, M, ell, 10).value == doctest::Approx(df.value).epsilon(1e-14));
}

TEST_CASE("convolution lands in D_E") {
  const auto M = gevrey(1, 64), A = gevrey(1, 64);
  auto E = parse_space("lp:2:const");
  auto z = conv_E_to_DE_check(kGauss, GaussSum{}, E, M, A, 1.0, 1.0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  auto r = conv_E_to_DE_check(kGauss, kGauss, E, M, A, 1.0, 1.0);
  CHECK(r.holds);
  CHECK(r.C_Eq == doctest::Approx(1.0));
  auto r3 = conv_E_to_DE_check(scale(kGauss, 3.0), kGauss, E, M, A, 1.0, 1.0);
  CHECK(r3.lhs == doctest::Approx(3 * r.lhs).epsilon(1e-12));
  CHECK(r3.rhs == doctest::Approx(3 * r.rhs).epsilon(1e-12));

  oracle::Gen gen(31);
  for (const char* spec : {"lp:1:poly:1", "lp:2:exp:1:0.5", "flp:2:poly:1"}) {
    auto S = parse_space(spec);
    for (int k = 0; k < 5; ++k) CHECK(conv_E_to_DE_check(random_sum(gen), random_sum(gen), S, M, A, 1.0, 1.0, 8).holds);
  }
}

TEST_CASE("mollifier") {
  auto E = parse_space("lp:2:const");
  std::vector<int> ns{1, 2, 4, 8, 16, 32};
  auto r = mollifier_study(kGauss, kGauss, E, ns);
  CHECK(r.monotone);
  CHECK(r.final_ok);
  for (double I : r.integral) CHECK(I == doctest::Approx(1.0).epsilon(1e-12));
  auto r2 = mollifier_study(kGauss, scale(kGauss, 2.0), E, ns);
  for (size_t k = 0; k < ns.size(); ++k) CHECK(r2.error[k] == doctest::Approx(2.0 * r.error[k]).epsilon(1e-9));
  // chi * chi_n tends to chi, so phi * psi_n does not approach phi.
  auto lit = mollifier_study(kGauss, kGauss, E, ns, true);
  CHECK_FALSE(lit.final_ok);
  CHECK_THROWS_AS(mollifier_study(scale(kGauss, 2.0), kGauss, E, ns), std::invalid_argument);
}
