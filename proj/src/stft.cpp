#include "ultrakit/stft.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace ultrakit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Integral over |xi| > extent of an exponentially decaying magnitude, using the
// decay rate between the edge node and the node one unit inside.
double edge_tail(const std::vector<double>& m, const FreqGrid& grid) {
  const int N = grid.size();
  const int k = std::clamp(static_cast<int>(std::lround(1.0 / grid.step())), 1, std::max(1, (N - 1) / 4));
  auto side = [&](int edge, int inner) -> double {
    double e = m[edge], in = m[inner];
    if (e == 0.0) return 0.0;
    if (!(in > e)) return INFINITY;
    double rate = std::log(in / e) / (k * grid.step());
    return e / rate;
  };
  return side(0, k) + side(N - 1, N - 1 - k);
}

template <class F>
StftField sample_field(const F& f, const GaussSum& psi, const FreqGrid& grid) {
  StftField field{grid, std::vector<GaussSum>(static_cast<size_t>(grid.size()))};
  parallel_for(grid.size(), [&](int j) { field.samples[j] = stft(f, psi, grid.node(j)); });
  return field;
}

template <class F>
StftProfile profile_of(const F& f, const GaussSum& psi, const TmibSpace& E, const FreqGrid& grid) {
  StftProfile prof{grid, std::vector<double>(static_cast<size_t>(grid.size()), 0.0)};
  parallel_for(grid.size(), [&](int j) { prof.values[j] = space_norm(E, stft(f, psi, grid.node(j))).value; });
  return prof;
}

}  // namespace

bool is_even(const ExpPoly& f) {
  if (f.b() != cplx(0.0)) return false;
  const auto& c = f.coeffs();
  for (size_t k = 1; k < c.size(); k += 2) {
    if (c[k] != cplx(0.0)) return false;
  }
  return true;
}

WindowPair build_window(const ExpPoly& seed) {
  if (seed.is_zero() || seed(0.0) == cplx(0.0)) throw std::invalid_argument("build_window: seed must not vanish at 0");
  const ExpPoly phi = is_even(seed) ? seed : multiply(seed, reflect(seed));
  const ExpPoly pp = convolve(phi, phi);
  const double lambda = inner_l2(GaussSum(pp), GaussSum(pp)).real();
  const ExpPoly psi0 = scale(phi, std::pow(lambda, -0.25));
  WindowPair w{psi0, GaussSum(convolve(psi0, psi0))};
  w.l2_norm_sq = inner_l2(w.psi, w.psi).real();
  if (std::abs(w.l2_norm_sq - 1.0) > 1e-10) throw std::runtime_error("build_window: window norm check failed");
  return w;
}

GaussSum stft(const GaussSum& f, const GaussSum& psi, double xi) {
  return convolve(modulate(f, -xi), conj(reflect(psi)));
}

GaussSum stft(const FiniteDistribution& f, const GaussSum& psi, double xi) {
  const GaussSum mh = modulate(conj(reflect(psi)), xi);
  GaussSum acc;
  for (const auto& [alpha, g] : f.parts) {
    if (alpha < 0) throw std::invalid_argument("distribution orders must be nonnegative");
    acc += convolve(g, derivative(mh, alpha));
  }
  return modulate(acc, -xi);
}

StftField sample_stft(const GaussSum& f, const GaussSum& psi, const FreqGrid& grid) {
  return sample_field(f, psi, grid);
}

StftField sample_stft(const FiniteDistribution& f, const GaussSum& psi, const FreqGrid& grid) {
  return sample_field(f, psi, grid);
}

AdjointResult adjoint_stft(const StftField& field, const GaussSum& gamma, std::span<const double> xs) {
  const FreqGrid& grid = field.grid;
  const int N = grid.size();
  if (static_cast<int>(field.samples.size()) != N) throw std::invalid_argument("adjoint_stft: grid mismatch");
  const size_t P = xs.size();
  std::vector<std::vector<cplx>> vals(P, std::vector<cplx>(static_cast<size_t>(N)));
  parallel_for(N, [&](int j) {
    const double xi = grid.node(j);
    const GaussSum c = convolve(field.samples[j], gamma);
    for (size_t i = 0; i < P; ++i) vals[i][j] = std::polar(1.0, kTwoPi * xi * xs[i]) * c(xs[i]);
  });
  AdjointResult out;
  for (size_t i = 0; i < P; ++i) {
    std::vector<double> mag(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) mag[j] = std::abs(vals[i][j]);
    out.values.push_back(simpson(grid, std::span<const cplx>(vals[i])));
    out.abs_integral.push_back(simpson(grid, std::span<const double>(mag)));
    out.tail_estimate.push_back(edge_tail(mag, grid));
  }
  return out;
}

ReconstructReport reconstruct_check(const GaussSum& phi, const WindowPair& window, const FreqGrid& grid,
                                    std::span<const double> probes) {
  auto field = sample_stft(phi, window.psi, grid);
  auto adj = adjoint_stft(field, window.psi, probes);
  double peak = 0.0, err = 0.0;
  ReconstructReport r;
  for (size_t i = 0; i < probes.size(); ++i) {
    peak = std::max(peak, std::abs(phi(probes[i])));
    err = std::max(err, std::abs(adj.values[i] - phi(probes[i])));
    r.tail_estimate = std::max(r.tail_estimate, adj.tail_estimate[i]);
  }
  r.error = peak > 0.0 ? err / peak : err;
  if (peak > 0.0) r.tail_estimate /= peak;
  return r;
}

DesingularizeReport desingularize(const FiniteDistribution& f, const GaussSum& phi, const WindowPair& window,
                                  const FreqGrid& grid, const std::optional<GaussSum>& gamma) {
  const GaussSum& psi = window.psi;
  const GaussSum g = gamma ? *gamma : psi;
  const cplx gp = inner_l2(g, psi);
  if (std::abs(gp) == 0.0) throw std::invalid_argument("desingularize: (gamma, psi) must not vanish");
  const GaussSum gbar = conj(g);
  const int N = grid.size();
  std::vector<cplx> v(static_cast<size_t>(N));
  parallel_for(N, [&](int j) {
    const double xi = grid.node(j);
    v[j] = bilinear(stft(f, psi, xi), stft(phi, gbar, -xi));
  });
  std::vector<double> mag(v.size());
  for (size_t j = 0; j < v.size(); ++j) mag[j] = std::abs(v[j]);
  DesingularizeReport r;
  r.value = simpson(grid, std::span<const cplx>(v)) / gp;
  r.exact = pair(f, phi);
  r.tail_estimate = edge_tail(mag, grid) / std::abs(gp);
  double d = std::abs(r.value - r.exact);
  r.rel_error = std::abs(r.exact) > 0.0 ? d / std::abs(r.exact) : d;
  return r;
}

StftProfile decay_profile(const GaussSum& f, const GaussSum& psi, const TmibSpace& E, const FreqGrid& grid) {
  return profile_of(f, psi, E, grid);
}

StftProfile decay_profile(const FiniteDistribution& f, const GaussSum& psi, const TmibSpace& E,
                          const FreqGrid& grid) {
  return profile_of(f, psi, E, grid);
}

std::vector<double> weighted_profile(const StftProfile& profile, const WeightSequence& M, double q) {
  std::vector<double> out(profile.values.size());
  for (size_t j = 0; j < out.size(); ++j) {
    double v = profile.values[j];
    out[j] = v == 0.0 ? 0.0 : std::exp(std::log(v) + associated_function(M, q * std::abs(profile.grid.node(j))));
  }
  return out;
}

DecayFit fit_decay(const StftProfile& profile, const WeightSequence& M, const std::vector<double>& q_grid) {
  if (static_cast<int>(profile.values.size()) != profile.grid.size())
    throw std::invalid_argument("fit_decay: grid mismatch");
  std::vector<double> qs = q_grid;
  std::sort(qs.begin(), qs.end());
  DecayFit fit;
  bool all_ok = true;
  const double half = 0.5 * profile.grid.extent * (1.0 + 1e-12);
  for (double q : qs) {
    auto w = weighted_profile(profile, M, q);
    DecayRow row{q, 0.0, 0.0, false};
    for (size_t j = 0; j < w.size(); ++j) {
      row.sup_full = std::max(row.sup_full, w[j]);
      if (std::abs(profile.grid.node(static_cast<int>(j))) <= half) row.sup_half = std::max(row.sup_half, w[j]);
    }
    row.stabilized = row.sup_full <= 1.05 * row.sup_half;
    all_ok = all_ok && row.stabilized;
    if (all_ok) fit.threshold = q;
    fit.rows.push_back(row);
  }
  return fit;
}

}  // namespace ultrakit
