#include "ultrakit/convolutor.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ultrakit/gsnorms.hpp"

namespace ultrakit {

namespace {

double log_lambda_weight(const WeightSequence& M, double ell, int alpha) {
  if (alpha > M.order()) throw std::invalid_argument("sequence support exceeds the order of M");
  return alpha * std::log(ell) + M.log_value(alpha);
}

int max_support(const SeqRep& s) { return s.entries.empty() ? 0 : s.entries.rbegin()->first; }

}  // namespace

std::string format_seqrep(const SeqRep& s) {
  std::ostringstream os;
  os << "space=" << s.E.spec() << "\n";
  for (const auto& [alpha, f] : s.entries) {
    for (const auto& t : f.terms()) os << "alpha=" << alpha << " " << format_term(t) << "\n";
  }
  return os.str();
}

SeqRep parse_seqrep(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<TmibSpace> E;
  std::map<int, GaussSum> entries;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    if (line.rfind("space=", 0) == 0) {
      auto end = line.find_last_not_of(" \t\r");
      E = parse_space(line.substr(6, end - 5));
      continue;
    }
    if (line.rfind("alpha=", 0) != 0) throw std::invalid_argument("seqrep: expected 'space=' or 'alpha=' line");
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("seqrep: entry without a term");
    std::string k = line.substr(6, sp - 6);
    char* endp = nullptr;
    long alpha = std::strtol(k.c_str(), &endp, 10);
    if (k.empty() || *endp != '\0' || alpha < 0 || alpha > kDegreeCap)
      throw std::invalid_argument("seqrep: bad order '" + k + "'");
    entries[static_cast<int>(alpha)].add(parse_term(line.substr(sp + 1)));
  }
  if (!E) throw std::invalid_argument("seqrep: missing space line");
  return SeqRep{std::move(entries), *E};
}

SeqRep random_seqrep(std::uint64_t seed, const TmibSpace& E, const WeightSequence& M, double ell, int max_alpha) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto integer = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  SeqRep s{{}, E};
  const int size = integer(1, std::min(4, max_alpha + 1));
  while (static_cast<int>(s.entries.size()) < size) {
    int alpha = integer(0, max_alpha);
    if (s.entries.count(alpha)) continue;
    std::vector<cplx> c(static_cast<size_t>(integer(0, 2)) + 1);
    for (auto& v : c) v = {uni(-1, 1), uni(-1, 1)};
    c.back() += 0.5;
    GaussSum g = ExpPoly(std::move(c), uni(0.6, 2.5), cplx(uni(-1, 1), uni(-2, 2)));
    double n = space_norm(E, g).value;
    double target = uni(0.25, 1.0);
    s.entries[alpha] = scale(g, std::exp(std::log(target) - std::log(n) - log_lambda_weight(M, ell, alpha)));
  }
  return s;
}

double lambda_norm(const SeqRep& s, const WeightSequence& M, double ell, const TmibSpace* over) {
  if (!(ell > 0.0)) throw std::invalid_argument("lambda_norm: ell must be positive");
  const TmibSpace& E = over ? *over : s.E;
  double best = 0.0;
  for (const auto& [alpha, f] : s.entries) {
    double n = space_norm(E, f).value;
    if (n > 0.0) best = std::max(best, std::exp(log_lambda_weight(M, ell, alpha) + std::log(n)));
  }
  return best;
}

FiniteDistribution synthesize(const SeqRep& s) {
  FiniteDistribution f;
  for (const auto& [alpha, g] : s.entries) {
    if (!g.is_zero()) f.parts[alpha] = g;
  }
  return f;
}

GaussSum apply_to_test(const SeqRep& s, const GaussSum& phi) {
  GaussSum out;
  for (const auto& [alpha, f] : s.entries) out += convolve(f, derivative(phi, alpha));
  return out;
}

SeqRep reflect_seq(const SeqRep& s) {
  SeqRep r{{}, s.E};
  for (const auto& [beta, g] : s.entries) r.entries[beta] = scale(reflect(g), beta % 2 ? -1.0 : 1.0);
  return r;
}

TmibSpace l1_operator_space(const TmibSpace& E) { return TmibSpace::weighted_lp(1.0, operator_weight(E), E.grid()); }

ConvTestReport conv_with_test(const SeqRep& s, const GaussSum& phi, const WeightSequence& M, const WeightSequence& A,
                              double ell, double q) {
  const TmibSpace& E = s.E;
  ConvTestReport r;
  r.result = apply_to_test(s, phi);
  r.C_Eq = operator_weight_constant(E, A, q);
  r.lambda = lambda_norm(s, M, ell);
  const int amax = std::min(M.order(), std::max(16, max_support(s)));
  auto pn = gs_l1_norm(phi, NormParams{M, A, ell / 2.0, q, amax, E.grid()});
  r.phi_norm = pn.value;
  r.certified = pn.certified;
  const double scale_all = r.C_Eq * r.lambda * r.phi_norm;
  std::vector<std::pair<int, GaussSum>> items(s.entries.begin(), s.entries.end());
  r.terms.resize(items.size());
  std::vector<char> cert(items.size(), 1);
  parallel_for(static_cast<int>(items.size()), [&](int i) {
    const auto& [alpha, f] = items[i];
    auto lhs = space_norm(E, convolve(f, derivative(phi, alpha)));
    auto nf = space_norm(E, f);
    TermBound t;
    t.alpha = alpha;
    t.lhs = lhs.value;
    t.rhs = nf.value > 0.0 ? r.C_Eq * std::exp(log_lambda_weight(M, ell / 2.0, alpha) + std::log(nf.value)) * r.phi_norm
                           : 0.0;
    t.geometric = scale_all * std::ldexp(1.0, -alpha);
    t.normalized = scale_all > 0.0 ? t.lhs / scale_all : 0.0;
    t.holds = t.lhs <= t.rhs * (1.0 + 1e-6) && t.rhs <= t.geometric * (1.0 + 1e-6);
    r.terms[i] = t;
    cert[i] = lhs.certified && nf.certified;
  });
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& t = r.terms[i];
    if (!t.holds && !r.witness) r.witness = t.alpha;
    r.holds = r.holds && t.holds;
    r.certified = r.certified && cert[i];
    if (t.alpha >= 1 && t.normalized > 0.0)
      r.geometric_ratio = std::max(r.geometric_ratio, std::pow(t.normalized, 1.0 / t.alpha));
  }
  return r;
}

MembershipReport membership_test(const FiniteDistribution& f, const WindowPair& window, const TmibSpace& E,
                                 const WeightSequence& M, const std::vector<double>& q_grid, const FreqGrid& grid,
                                 double ell) {
  MembershipReport r;
  r.fit = fit_decay(decay_profile(f, window.psi, E, grid), M, q_grid);
  r.predicted_threshold = membership_threshold(ell);
  for (const auto& row : r.fit.rows) {
    if (row.q <= r.predicted_threshold) r.consistent = r.consistent && row.stabilized;
  }
  return r;
}

SmoothReport conv_smooth(const SeqRep& s, const GaussSum& psi, const WeightSequence& M, double ell, int alpha_max) {
  const auto cond = check_conditions(M);
  SmoothReport r;
  r.C0 = cond.m2.C0;
  r.H = cond.m2.H;
  r.result = apply_to_test(s, psi);
  r.identity = format_gauss_sum(r.result) == format_gauss_sum(apply_to_test(s, psi));
  auto lhs = de_norm(r.result, s.E, M, ell, alpha_max);
  const int psi_max = std::min(M.order(), alpha_max + max_support(s));
  auto dpsi = de_norm(psi, l1_operator_space(s.E), M, ell / r.H, psi_max);
  r.lhs = lhs.value;
  r.gamma = lhs.alpha;
  r.rhs = 2.0 * r.C0 * lambda_norm(s, M, 2.0 * ell) * dpsi.value;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-6);
  if (!r.holds) r.witness = r.gamma;
  r.certified = lhs.certified && dpsi.certified;
  return r;
}

cplx conv_pairing(const SeqRep& fseq, const SeqRep& gseq, const GaussSum& phi) {
  return pair(synthesize(fseq), apply_to_test(reflect_seq(gseq), phi));
}

CauchyReport conv_cauchy(const SeqRep& fseq, const SeqRep& gseq, const WeightSequence& M, double ell,
                         const std::vector<GaussSum>& probes) {
  const auto cond = check_conditions(M);
  CauchyReport r{.result = SeqRep{{}, fseq.E}};
  r.C0 = cond.m2.C0;
  r.H = cond.m2.H;
  const TmibSpace L1 = l1_operator_space(fseq.E);
  const double big = 2.0 * ell * r.H;
  const double lf = lambda_norm(fseq, M, big);
  const double lg = lambda_norm(gseq, M, big, &L1);
  std::set<int> sums;
  for (const auto& [a, f] : fseq.entries) {
    for (const auto& [b, g] : gseq.entries) sums.insert(a + b);
  }
  std::vector<int> gammas(sums.begin(), sums.end());
  std::vector<GaussSum> h(gammas.size());
  r.rows.resize(gammas.size());
  parallel_for(static_cast<int>(gammas.size()), [&](int i) {
    const int c = gammas[i];
    for (const auto& [a, f] : fseq.entries) {
      auto it = gseq.entries.find(c - a);
      if (it != gseq.entries.end()) h[i] += convolve(f, it->second);
    }
    CauchyRow row;
    row.gamma = c;
    row.lhs = space_norm(fseq.E, h[i]).value;
    row.rhs = (lf > 0.0 && lg > 0.0) ? r.C0 * lf * lg / std::exp(log_lambda_weight(M, ell, c)) : 0.0;
    row.holds = row.lhs <= row.rhs * (1.0 + 1e-6);
    r.rows[i] = row;
  });
  for (size_t i = 0; i < gammas.size(); ++i) {
    r.result.entries[gammas[i]] = h[i];
    if (!r.rows[i].holds && !r.witness) r.witness = gammas[i];
    r.holds = r.holds && r.rows[i].holds;
  }
  const FiniteDistribution syn = synthesize(r.result);
  for (const auto& phi : probes) {
    cplx a = pair(syn, phi), b = conv_pairing(fseq, gseq, phi);
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale > 0.0) r.consistency_error = std::max(r.consistency_error, std::abs(a - b) / scale);
  }
  r.consistent = r.consistency_error <= 1e-8;
  return r;
}

}  // namespace ultrakit
