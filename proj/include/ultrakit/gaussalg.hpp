#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ultrakit {

using cplx = std::complex<double>;

inline constexpr int kDegreeCap = 64;

class DegreeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// (sum_k coeffs[k] x^k) * exp(-a x^2 + b x + c), a > 0.
class ExpPoly {
 public:
  ExpPoly(std::vector<cplx> coeffs, double a, cplx b = 0.0, cplx c = 0.0);
  static ExpPoly gaussian(double a, cplx b = 0.0, cplx c = 0.0) { return ExpPoly({1.0}, a, b, c); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  double a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  cplx operator()(double x) const;

 private:
  std::vector<cplx> coeffs_;
  double a_;
  cplx b_, c_;
};

// Formal sum of ExpPoly terms; terms whose (a, b) agree bitwise are merged.
class GaussSum {
 public:
  GaussSum() = default;
  GaussSum(ExpPoly term);  // NOLINT(google-explicit-constructor)

  const std::vector<ExpPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const;
  double min_rate() const;

  void add(const ExpPoly& term);
  GaussSum& operator+=(const GaussSum& other);
  friend GaussSum operator+(GaussSum lhs, const GaussSum& rhs) { return lhs += rhs; }
  friend GaussSum operator-(GaussSum lhs, const GaussSum& rhs);

  cplx operator()(double x) const;

 private:
  using Key = std::array<std::uint64_t, 3>;
  std::vector<ExpPoly> terms_;
  std::map<Key, size_t> index_;
};

// f = sum_alpha d^alpha g_alpha.
struct FiniteDistribution {
  std::map<int, GaussSum> parts;
};

ExpPoly derivative(const ExpPoly& f, int order, int degree_cap = kDegreeCap);
GaussSum derivative(const GaussSum& f, int order, int degree_cap = kDegreeCap);

ExpPoly translate(const ExpPoly& f, double x0);
ExpPoly modulate(const ExpPoly& f, double xi);
ExpPoly reflect(const ExpPoly& f);
ExpPoly conj(const ExpPoly& f);
ExpPoly scale(const ExpPoly& f, cplx z);
// x -> f(s x).
ExpPoly dilate(const ExpPoly& f, double s);
ExpPoly multiply(const ExpPoly& f, const ExpPoly& g, int degree_cap = kDegreeCap);

GaussSum translate(const GaussSum& f, double x0);
GaussSum modulate(const GaussSum& f, double xi);
GaussSum reflect(const GaussSum& f);
GaussSum conj(const GaussSum& f);
GaussSum scale(const GaussSum& f, cplx z);
GaussSum dilate(const GaussSum& f, double s);
GaussSum multiply(const GaussSum& f, const GaussSum& g, int degree_cap = kDegreeCap);

// (f * g)(t) = int g(x) f(t - x) dx.
ExpPoly convolve(const ExpPoly& f, const ExpPoly& g, int degree_cap = kDegreeCap);
GaussSum convolve(const GaussSum& f, const GaussSum& g, int degree_cap = kDegreeCap);

// f^(xi) = int f(x) exp(-2 pi i x xi) dx.
ExpPoly fourier(const ExpPoly& f);
GaussSum fourier(const GaussSum& f);

// int_R f(x) dx.
cplx integrate(const ExpPoly& f);
cplx integrate(const GaussSum& f);
// int f conj(g).
cplx inner_l2(const GaussSum& f, const GaussSum& g);
// int f g.
cplx bilinear(const GaussSum& f, const GaussSum& g);

// sum_alpha (-1)^alpha int g_alpha phi^(alpha).
cplx pair(const FiniteDistribution& f, const GaussSum& phi);
// The smooth function sum_alpha d^alpha g_alpha.
GaussSum to_function(const FiniteDistribution& f);
int max_order(const FiniteDistribution& f);

std::string format_term(const ExpPoly& f);
ExpPoly parse_term(std::string_view line);
std::string format_gauss_sum(const GaussSum& f);
// One term per line; blank lines and lines starting with '#' are skipped.
GaussSum parse_gauss_sum(std::string_view text);
std::string format_complex(cplx z);
cplx parse_complex(std::string_view s);

}  // namespace ultrakit
