#include "ultrakit/gaussalg.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace ultrakit {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::vector<double>>& binomials() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(2 * kDegreeCap + 3);
    for (size_t n = 0; n < t.size(); ++n) {
      t[n].assign(n + 1, 1.0);
      for (size_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

double binom(int n, int k) {
  const auto& t = binomials();
  if (static_cast<size_t>(n) < t.size()) return t[n][k];
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

void trim(std::vector<cplx>& p) {
  while (!p.empty() && p.back() == cplx(0.0)) p.pop_back();
}

std::vector<cplx> poly_mul(const std::vector<cplx>& p, const std::vector<cplx>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<cplx> r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

void check_degree(size_t ncoeffs, int cap) {
  if (static_cast<int>(ncoeffs) - 1 > cap) {
    throw DegreeOverflow("polynomial degree " + std::to_string(ncoeffs - 1) + " exceeds cap " + std::to_string(cap));
  }
}

// rows[i] is a polynomial in x multiplying t^i. Returns R(t) with
//   int sum_i t^i rows[i](x) exp(-alpha x^2 + beta(t) x) dx
//     = R(t) sqrt(pi/alpha) exp(beta(t)^2 / (4 alpha)),   beta(t)/(2 alpha) = mu0 + mu1 t.
// G_j(t) = E[(Y + mu0 + mu1 t)^j] with Y ~ N(0, 1/(2 alpha)).
std::vector<cplx> gaussian_marginal(const std::vector<std::vector<cplx>>& rows, double alpha, cplx mu0, cplx mu1) {
  size_t J = 0;
  for (const auto& r : rows) J = std::max(J, r.size());
  const double var = 0.5 / alpha;
  std::vector<std::vector<cplx>> G(J);
  if (J > 0) G[0] = {1.0};
  if (J > 1) G[1] = {mu0, mu1};
  for (size_t j = 1; j + 1 < J; ++j) {
    std::vector<cplx> next(j + 2, 0.0);
    for (size_t k = 0; k < G[j].size(); ++k) {
      next[k] += mu0 * G[j][k];
      next[k + 1] += mu1 * G[j][k];
    }
    for (size_t k = 0; k < G[j - 1].size(); ++k) next[k] += static_cast<double>(j) * var * G[j - 1][k];
    G[j + 1] = std::move(next);
  }
  std::vector<cplx> R;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] == cplx(0.0)) continue;
      if (R.size() < i + G[j].size()) R.resize(i + G[j].size(), 0.0);
      for (size_t k = 0; k < G[j].size(); ++k) R[i + k] += rows[i][j] * G[j][k];
    }
  }
  trim(R);
  return R;
}

std::uint64_t key_bits(double v) { return std::bit_cast<std::uint64_t>(v + 0.0); }

}  // namespace

ExpPoly::ExpPoly(std::vector<cplx> coeffs, double a, cplx b, cplx c)
    : coeffs_(std::move(coeffs)), a_(a), b_(b), c_(c) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("ExpPoly: rate a must be positive");
  trim(coeffs_);
}

cplx ExpPoly::operator()(double x) const {
  if (coeffs_.empty()) return 0.0;
  cplx p = coeffs_.back();
  for (size_t k = coeffs_.size() - 1; k-- > 0;) p = p * x + coeffs_[k];
  return p * std::exp(-a_ * x * x + b_ * x + c_);
}

GaussSum::GaussSum(ExpPoly term) { add(term); }

int GaussSum::max_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

double GaussSum::min_rate() const {
  double r = INFINITY;
  for (const auto& t : terms_) r = std::min(r, t.a());
  return r;
}

void GaussSum::add(const ExpPoly& term) {
  if (term.is_zero()) return;
  Key key{key_bits(term.a()), key_bits(term.b().real()), key_bits(term.b().imag())};
  auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(key, terms_.size());
    terms_.push_back(term);
    return;
  }
  const ExpPoly& old = terms_[it->second];
  const bool keep_old = old.c().real() >= term.c().real();
  const ExpPoly& base = keep_old ? old : term;
  const ExpPoly& other = keep_old ? term : old;
  cplx factor = std::exp(other.c() - base.c());
  std::vector<cplx> merged = base.coeffs();
  merged.resize(std::max(merged.size(), other.coeffs().size()), 0.0);
  for (size_t k = 0; k < other.coeffs().size(); ++k) merged[k] += factor * other.coeffs()[k];
  ExpPoly combined(std::move(merged), base.a(), base.b(), base.c());
  if (!combined.is_zero()) {
    terms_[it->second] = std::move(combined);
    return;
  }
  terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(it->second));
  index_.clear();
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    index_.emplace(Key{key_bits(t.a()), key_bits(t.b().real()), key_bits(t.b().imag())}, i);
  }
}

GaussSum& GaussSum::operator+=(const GaussSum& other) {
  for (const auto& t : other.terms_) add(t);
  return *this;
}

GaussSum operator-(GaussSum lhs, const GaussSum& rhs) { return lhs += scale(rhs, -1.0); }

cplx GaussSum::operator()(double x) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t(x);
  return s;
}

ExpPoly derivative(const ExpPoly& f, int order, int degree_cap) {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  std::vector<cplx> p = f.coeffs();
  for (int step = 0; step < order && !p.empty(); ++step) {
    check_degree(p.size() + 1, degree_cap);
    std::vector<cplx> q(p.size() + 1, 0.0);
    for (size_t k = 0; k < p.size(); ++k) {
      if (k > 0) q[k - 1] += static_cast<double>(k) * p[k];
      q[k] += f.b() * p[k];
      q[k + 1] += -2.0 * f.a() * p[k];
    }
    trim(q);
    p = std::move(q);
  }
  return ExpPoly(std::move(p), f.a(), f.b(), f.c());
}

ExpPoly translate(const ExpPoly& f, double x0) {
  // Taylor shift p(x - x0) by repeated synthetic division.
  std::vector<cplx> p = f.coeffs();
  const double s = -x0;
  const size_t n = p.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t k = n - 1; k > i; --k) p[k - 1] += s * p[k];
  }
  const double a = f.a();
  return ExpPoly(std::move(p), a, f.b() + 2.0 * a * x0, f.c() - a * x0 * x0 - f.b() * x0);
}

ExpPoly modulate(const ExpPoly& f, double xi) {
  return ExpPoly(f.coeffs(), f.a(), f.b() + cplx(0.0, 2.0 * kPi * xi), f.c());
}

ExpPoly reflect(const ExpPoly& f) {
  std::vector<cplx> p = f.coeffs();
  for (size_t k = 1; k < p.size(); k += 2) p[k] = -p[k];
  return ExpPoly(std::move(p), f.a(), -f.b(), f.c());
}

ExpPoly conj(const ExpPoly& f) {
  std::vector<cplx> p = f.coeffs();
  for (auto& v : p) v = std::conj(v);
  return ExpPoly(std::move(p), f.a(), std::conj(f.b()), std::conj(f.c()));
}

ExpPoly scale(const ExpPoly& f, cplx z) {
  std::vector<cplx> p = f.coeffs();
  for (auto& v : p) v *= z;
  return ExpPoly(std::move(p), f.a(), f.b(), f.c());
}

ExpPoly dilate(const ExpPoly& f, double s) {
  if (s == 0.0) throw std::invalid_argument("dilate: factor must be nonzero");
  std::vector<cplx> p = f.coeffs();
  double sk = 1.0;
  for (auto& v : p) v *= sk, sk *= s;
  return ExpPoly(std::move(p), f.a() * s * s, f.b() * s, f.c());
}

ExpPoly multiply(const ExpPoly& f, const ExpPoly& g, int degree_cap) {
  std::vector<cplx> p = poly_mul(f.coeffs(), g.coeffs());
  check_degree(p.size(), degree_cap);
  return ExpPoly(std::move(p), f.a() + g.a(), f.b() + g.b(), f.c() + g.c());
}

ExpPoly convolve(const ExpPoly& f, const ExpPoly& g, int degree_cap) {
  const double af = f.a(), ag = g.a();
  const double alpha = af + ag;
  const cplx beta0 = g.b() - f.b();
  const double rate = af * ag / alpha;
  const cplx b = (f.b() * ag + af * g.b()) / alpha;
  const cplx c = f.c() + g.c() + beta0 * beta0 / (4.0 * alpha) + 0.5 * std::log(kPi / alpha);
  if (f.is_zero() || g.is_zero()) return ExpPoly({}, rate, b, c);
  check_degree(f.coeffs().size() + g.coeffs().size() - 1, degree_cap);

  // p(t - x) q(x) as rows in powers of t.
  const auto& p = f.coeffs();
  const int n = f.degree();
  std::vector<std::vector<cplx>> rows(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<cplx> row(static_cast<size_t>(n - i) + 1, 0.0);
    for (int k = i; k <= n; ++k) row[k - i] = p[k] * binom(k, i) * (((k - i) % 2) ? -1.0 : 1.0);
    rows[i] = poly_mul(row, g.coeffs());
  }
  std::vector<cplx> R = gaussian_marginal(rows, alpha, beta0 / (2.0 * alpha), af / alpha);
  return ExpPoly(std::move(R), rate, b, c);
}

ExpPoly fourier(const ExpPoly& f) {
  const double a = f.a();
  const cplx b = f.b();
  const double rate = kPi * kPi / a;
  const cplx nb = cplx(0.0, -kPi) * b / a;
  const cplx nc = f.c() + b * b / (4.0 * a) + 0.5 * std::log(kPi / a);
  std::vector<cplx> R = gaussian_marginal({f.coeffs()}, a, b / (2.0 * a), cplx(0.0, -kPi / a));
  return ExpPoly(std::move(R), rate, nb, nc);
}

cplx integrate(const ExpPoly& f) {
  if (f.is_zero()) return 0.0;
  const double a = f.a();
  const cplx b = f.b();
  std::vector<cplx> R = gaussian_marginal({f.coeffs()}, a, b / (2.0 * a), 0.0);
  if (R.empty()) return 0.0;
  return R[0] * std::exp(f.c() + b * b / (4.0 * a) + 0.5 * std::log(kPi / a));
}

namespace {
template <class Op>
GaussSum map_terms(const GaussSum& f, Op op) {
  GaussSum out;
  for (const auto& t : f.terms()) out.add(op(t));
  return out;
}
}  // namespace

GaussSum derivative(const GaussSum& f, int order, int degree_cap) {
  return map_terms(f, [&](const ExpPoly& t) { return derivative(t, order, degree_cap); });
}
GaussSum translate(const GaussSum& f, double x0) {
  return map_terms(f, [&](const ExpPoly& t) { return translate(t, x0); });
}
GaussSum modulate(const GaussSum& f, double xi) {
  return map_terms(f, [&](const ExpPoly& t) { return modulate(t, xi); });
}
GaussSum reflect(const GaussSum& f) {
  return map_terms(f, [](const ExpPoly& t) { return reflect(t); });
}
GaussSum conj(const GaussSum& f) {
  return map_terms(f, [](const ExpPoly& t) { return conj(t); });
}
GaussSum scale(const GaussSum& f, cplx z) {
  return map_terms(f, [&](const ExpPoly& t) { return scale(t, z); });
}
GaussSum dilate(const GaussSum& f, double s) {
  return map_terms(f, [&](const ExpPoly& t) { return dilate(t, s); });
}
GaussSum fourier(const GaussSum& f) {
  return map_terms(f, [](const ExpPoly& t) { return fourier(t); });
}

GaussSum multiply(const GaussSum& f, const GaussSum& g, int degree_cap) {
  GaussSum out;
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) out.add(multiply(s, t, degree_cap));
  }
  return out;
}

GaussSum convolve(const GaussSum& f, const GaussSum& g, int degree_cap) {
  GaussSum out;
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) out.add(convolve(s, t, degree_cap));
  }
  return out;
}

cplx integrate(const GaussSum& f) {
  cplx s = 0.0;
  for (const auto& t : f.terms()) s += integrate(t);
  return s;
}

cplx bilinear(const GaussSum& f, const GaussSum& g) {
  cplx s = 0.0;
  for (const auto& u : f.terms()) {
    for (const auto& v : g.terms()) s += integrate(multiply(u, v, 4 * kDegreeCap));
  }
  return s;
}

cplx inner_l2(const GaussSum& f, const GaussSum& g) { return bilinear(f, conj(g)); }

cplx pair(const FiniteDistribution& f, const GaussSum& phi) {
  cplx s = 0.0;
  for (const auto& [alpha, g] : f.parts) {
    if (alpha < 0) throw std::invalid_argument("distribution orders must be nonnegative");
    cplx v = bilinear(g, derivative(phi, alpha));
    s += (alpha % 2) ? -v : v;
  }
  return s;
}

GaussSum to_function(const FiniteDistribution& f) {
  GaussSum out;
  for (const auto& [alpha, g] : f.parts) out += derivative(g, alpha);
  return out;
}

int max_order(const FiniteDistribution& f) { return f.parts.empty() ? 0 : f.parts.rbegin()->first; }

std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g+%.17gi", z.real(), z.imag());
  return buf;
}

cplx parse_complex(std::string_view s) {
  std::string str(s);
  const char* begin = str.c_str();
  char* end = nullptr;
  double re = std::strtod(begin, &end);
  if (end == begin) throw std::invalid_argument("bad complex literal '" + str + "'");
  if (*end == '\0') return {re, 0.0};
  if (*end != '+') throw std::invalid_argument("bad complex literal '" + str + "'");
  const char* im_begin = end + 1;
  double im = std::strtod(im_begin, &end);
  if (end == im_begin || *end != 'i' || end[1] != '\0') throw std::invalid_argument("bad complex literal '" + str + "'");
  return {re, im};
}

std::string format_term(const ExpPoly& f) {
  std::ostringstream os;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", f.a());
  os << "a=" << buf << " b=" << format_complex(f.b()) << " c=" << format_complex(f.c()) << " coeffs=[";
  for (size_t k = 0; k < f.coeffs().size(); ++k) os << (k ? "," : "") << format_complex(f.coeffs()[k]);
  os << "]";
  return os.str();
}

ExpPoly parse_term(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string tok;
  double a = 0.0;
  cplx b = 0.0, c = 0.0;
  std::vector<cplx> coeffs;
  bool have_a = false, have_coeffs = false;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad term token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "a") {
      char* end = nullptr;
      a = std::strtod(val.c_str(), &end);
      if (end == val.c_str() || *end != '\0') throw std::invalid_argument("bad rate '" + val + "'");
      have_a = true;
    } else if (key == "b") {
      b = parse_complex(val);
    } else if (key == "c") {
      c = parse_complex(val);
    } else if (key == "coeffs") {
      if (val.size() < 2 || val.front() != '[' || val.back() != ']') throw std::invalid_argument("coeffs must be bracketed");
      std::string body = val.substr(1, val.size() - 2);
      size_t pos = 0;
      while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        coeffs.push_back(parse_complex(std::string_view(body).substr(pos, comma - pos)));
        pos = comma + 1;
      }
      have_coeffs = true;
    } else {
      throw std::invalid_argument("unknown term key '" + key + "'");
    }
  }
  if (!have_a || !have_coeffs) throw std::invalid_argument("term needs a= and coeffs=");
  return ExpPoly(std::move(coeffs), a, b, c);
}

std::string format_gauss_sum(const GaussSum& f) {
  std::string out;
  for (const auto& t : f.terms()) out += format_term(t) + "\n";
  return out;
}

GaussSum parse_gauss_sum(std::string_view text) {
  GaussSum out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.add(parse_term(line));
  }
  return out;
}

}  // namespace ultrakit
