#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "ultrakit/approxconv.hpp"
#include "ultrakit/convolutor.hpp"
#include "ultrakit/fixtures.hpp"
#include "ultrakit/gsnorms.hpp"
#include "ultrakit/stft.hpp"
#include "ultrakit/suite.hpp"
#include "ultrakit/tmib.hpp"
#include "ultrakit/weightseq.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ultrakit;

namespace {

constexpr const char* kSchema = "ultrakit-report/1";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 7;
  bool seed_given = false;
  int threads = 0;
  bool timings = false;

  std::string sequence;
  int order = 0;
  std::vector<std::string> fixtures;
  std::vector<double> ell;
  std::vector<double> q;
  int alpha_max = 0;
  std::vector<std::string> spaces;
  std::string seqrep;
  std::string schedule;
  std::string out;
  double rhs_scale = 0.0;
  int pairs = 0;
  int trials = 0;
  std::vector<int> criteria;
};

// Flags override config-file keys; the merged object is echoed into the report.
class Config {
 public:
  Config(const Options& o, const std::string& sub) : opts_(o) {
    if (!o.config_path.empty()) {
      std::ifstream in(o.config_path);
      if (!in) throw ConfigError("cannot open config " + o.config_path);
      try {
        file_ = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!file_.is_object()) throw ConfigError("config must be a JSON object");
      if (file_.contains("subcommand") && file_["subcommand"] != sub)
        throw ConfigError("config subcommand does not match the command line");
    }
    echo_ = file_;
    echo_["subcommand"] = sub;
    echo_["seed"] = seed();
  }

  std::uint64_t seed() const {
    if (opts_.seed_given || !file_.contains("seed")) return opts_.seed;
    return get<std::uint64_t>("seed");
  }

  template <class T>
  T get(const std::string& key) const {
    try {
      return file_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }

  template <class T>
  std::vector<T> list(const std::string& key, const std::vector<T>& flag, std::vector<T> fallback) {
    std::vector<T> v = fallback;
    if (!flag.empty()) {
      v = flag;
    } else if (file_.contains(key)) {
      v = get<std::vector<T>>(key);
      if (v.empty()) throw ConfigError("config list '" + key + "' must be nonempty");
    }
    echo_[key] = v;
    return v;
  }

  template <class T>
  T scalar(const std::string& key, T flag, T unset, T fallback) {
    T v = fallback;
    if (flag != unset) {
      v = flag;
    } else if (file_.contains(key)) {
      v = get<T>(key);
    }
    echo_[key] = v;
    return v;
  }

  // Fixture entries: a standard name, {"name", "terms": [...]}, or "file:<path>".
  std::vector<NamedFixture> fixtures() {
    std::vector<json> entries;
    if (!opts_.fixtures.empty()) {
      for (const auto& f : opts_.fixtures) entries.emplace_back(f);
    } else if (file_.contains("fixtures")) {
      if (!file_["fixtures"].is_array()) throw ConfigError("config key 'fixtures' must be a list");
      for (const auto& f : file_["fixtures"]) entries.push_back(f);
      if (entries.empty()) throw ConfigError("fixture list is empty");
    } else {
      for (const auto& fx : standard_fixtures()) entries.emplace_back(fx.name);
    }
    echo_["fixtures"] = entries;
    std::vector<NamedFixture> out;
    const auto standard = standard_fixtures();
    for (const auto& e : entries) {
      if (e.is_string()) {
        const std::string s = e.get<std::string>();
        if (s.rfind("file:", 0) == 0) {
          std::ifstream in(s.substr(5));
          if (!in) throw ConfigError("cannot open fixture file " + s.substr(5));
          std::stringstream buf;
          buf << in.rdbuf();
          out.push_back({fs::path(s.substr(5)).stem().string(), parse_or_config(buf.str())});
          continue;
        }
        auto it = std::find_if(standard.begin(), standard.end(), [&](const NamedFixture& f) { return f.name == s; });
        if (it == standard.end()) throw ConfigError("unknown fixture '" + s + "'");
        out.push_back(*it);
      } else if (e.is_object() && e.contains("terms") && e["terms"].is_array()) {
        std::string text;
        for (const auto& t : e["terms"]) text += t.get<std::string>() + "\n";
        out.push_back({e.value("name", "custom"), parse_or_config(text)});
      } else {
        throw ConfigError("bad fixture entry " + e.dump());
      }
    }
    return out;
  }

  Grid grid(const std::string& key, double extent, double step) {
    if (file_.contains(key)) {
      extent = file_[key].value("extent", extent);
      step = file_[key].value("step", step);
    }
    echo_[key] = {{"extent", extent}, {"step", step}};
    try {
      return Grid::make(extent, step);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("grid '") + key + "': " + e.what());
    }
  }

  const json& file() const { return file_; }
  json& echo() { return echo_; }

 private:
  static GaussSum parse_or_config(const std::string& text) {
    try {
      return parse_gauss_sum(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("fixture: ") + e.what());
    }
  }

  const Options& opts_;
  json file_ = json::object();
  json echo_;
};

WeightSequence parse_sequence(const std::string& spec, int order) {
  if (spec.rfind("gevrey:", 0) != 0) throw ConfigError("sequence must be 'gevrey:<s>'");
  try {
    size_t used = 0;
    double s = std::stod(spec.substr(7), &used);
    if (used != spec.size() - 7) throw std::invalid_argument("trailing characters");
    return gevrey(s, order);
  } catch (const std::exception& e) {
    throw ConfigError("bad sequence '" + spec + "': " + e.what());
  }
}

TmibSpace space_or_config(const std::string& spec) {
  try {
    return parse_space(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
}

std::string csv_path(Config& cfg, const Options& o, const std::string& stem, const std::string& fixture, bool many) {
  std::string base = o.out.empty() ? (fs::path(o.out_dir) / (stem + ".csv")).string() : o.out;
  if (many) {
    fs::path p(base);
    base = (p.parent_path() / (p.stem().string() + "_" + fixture + p.extension().string())).string();
  }
  cfg.echo()["outputs"].push_back(fs::path(base).filename().string());
  return base;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out.precision(17);
  return out;
}

struct Run {
  Recorder rec;
  json results = json::object();
  json timings = json::object();
  bool timed = false;

  template <class F>
  void step(const std::string& name, F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    timings[name] = timed ? s : 0.0;
  }
};

void cmd_weights(const Options& o, Config& cfg, Run& run) {
  const auto spec = cfg.scalar<std::string>("sequence", o.sequence, "", "gevrey:1");
  const int order = cfg.scalar<int>("order", o.order, 0, 64);
  if (order < 2) throw ConfigError("order must be >= 2");
  run.step("weights", [&] {
    auto M = parse_sequence(spec, order);
    auto c = check_conditions(M);
    std::mt19937_64 rng(cfg.seed());
    std::uniform_real_distribution<double> u(0.0, 20.0);
    std::vector<double> pts(1000);
    for (auto& v : pts) v = u(rng);
    const std::vector<double> kv{1.5, 2.0, 4.0};
    auto om = check_omega_inequalities(M, pts, kv);
    for (const auto& v : om.violations)
      run.rec.violation("omega " + v.inequality, v.inequality == "sum" ? "omega-m1" : "omega-m2prime",
                        {{"x", v.x}, {"y", v.y}, {"excess", v.excess}});
    json omega = json::array();
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) omega.push_back({{"t", t}, {"omega", associated_function(M, t)}});
    run.results = {{"sequence", M.label()},
                   {"order", c.P},
                   {"log_convex", M.log_convex()},
                   {"m1", c.m1},
                   {"m2prime", {{"holds", c.m2prime.holds}, {"C0", c.m2prime.C0}, {"H", c.m2prime.H}}},
                   {"m2", {{"holds", c.m2.holds}, {"C0", c.m2.C0}, {"H", c.m2.H}}},
                   {"m3prime_partial_sum", c.m3prime_partial_sum},
                   {"m3prime_diverges", c.m3prime_diverges},
                   {"omega_samples", omega},
                   {"omega_checks", {{"sum", om.sum_checks}, {"dilation", om.dilation_checks}}}};
  });
}

void cmd_algebra(const Options& o, Config& cfg, Run& run) {
  const int trials = cfg.scalar<int>("trials", o.trials, 0, 50);
  if (trials < 1) throw ConfigError("trials must be positive");
  run.step("algebra-selfcheck", [&] {
    std::mt19937_64 rng(cfg.seed());
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto term = [&] {
      std::vector<cplx> c(static_cast<size_t>(uni(0, 3)) + 1);
      for (auto& v : c) v = {uni(-1, 1), uni(-1, 1)};
      c.back() += 0.5;
      return GaussSum(ExpPoly(std::move(c), uni(0.5, 2.5), cplx(uni(-1, 1), uni(-1, 1)), cplx(uni(-0.5, 0.5), uni(-1, 1))));
    };
    double conv_thm = 0.0, parseval = 0.0, roundtrip = 0.0, covariance = 0.0;
    for (int k = 0; k < trials; ++k) {
      GaussSum f = term(), g = term();
      auto lhs = fourier(convolve(f, g));
      auto rhs = multiply(fourier(f), fourier(g));
      for (double xi : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        cplx a = lhs(xi), b = rhs(xi);
        conv_thm = std::max(conv_thm, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
      cplx ip = inner_l2(f, g), fp = inner_l2(fourier(f), fourier(g));
      parseval = std::max(parseval, std::abs(ip - fp) / std::max(1.0, std::abs(ip)));
      auto back = parse_gauss_sum(format_gauss_sum(f));
      roundtrip = std::max(roundtrip, std::abs(back(0.3) - f(0.3)));
      const double x0 = uni(-1, 1);
      auto tf = fourier(translate(f, x0)), mf = modulate(fourier(f), -x0);
      covariance = std::max(covariance, std::abs(tf(0.7) - mf(0.7)) / std::max(1.0, std::abs(mf(0.7))));
    }
    const json metrics = {{"convolution_theorem", conv_thm},
                          {"parseval", parseval},
                          {"text_round_trip", roundtrip},
                          {"translation_covariance", covariance}};
    for (const auto& [name, v] : metrics.items()) {
      if (v.get<double>() > 1e-10) run.rec.violation(name, "gaussian-algebra", {{"deviation", v}});
    }
    run.results = {{"trials", trials}, {"max_deviation", metrics}};
  });
}

NormParams norm_params(const WeightSequence& M, double ell, double q, int alpha_max, const Grid& grid) {
  NormParams p{M, M, ell, q, alpha_max, grid};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("norm parameters: ") + e.what());
  }
  return p;
}

void cmd_norms(const Options& o, Config& cfg, Run& run) {
  auto fixtures = cfg.fixtures();
  const auto ells = cfg.list<double>("ell", o.ell, {1.0});
  const auto qs = cfg.list<double>("q", o.q, {1.0});
  const int amax = cfg.scalar<int>("alpha_max", o.alpha_max, 0, 16);
  const double rhs_scale = cfg.scalar<double>("rhs_scale", o.rhs_scale, 0.0, 1.0);
  const auto grid = cfg.grid("grid", 12.0, 0.01);
  const auto M = parse_sequence(cfg.scalar<std::string>("sequence", o.sequence, "", "gevrey:1"), 64);
  run.step("norms", [&] {
    json rows = json::array();
    int checked = 0, failed = 0;
    for (const auto& fx : fixtures) {
      auto p0 = norm_params(M, ells.front(), qs.front(), amax, grid);
      auto out = open_csv(csv_path(cfg, o, "norms", fx.name, fixtures.size() > 1));
      out << "alpha,x_or_xi,raw,weighted\n";
      for (const auto& r : gs_sup_table(fx.f, p0)) out << r.alpha << "," << r.x << "," << r.raw << "," << r.weighted << "\n";
      for (double ell : ells) {
        for (double q : qs) {
          auto p = norm_params(M, ell, q, amax, grid);
          auto sup = gs_sup_norm(fx.f, p);
          auto l1 = gs_l1_norm(fx.f, p);
          auto est = conv_estimate_check(fx.f, fx.f, p, rhs_scale);
          checked += 3;
          failed += !sup.certified + !l1.certified + !est.certified;
          if (!est.holds)
            run.rec.violation("convolution estimate", "gs-convolution-estimate",
                              {{"fixture", fx.name}, {"ell", ell}, {"q", q}, {"alpha", est.alpha}, {"x", est.x},
                               {"lhs", est.lhs}, {"rhs", est.rhs}});
          rows.push_back({{"fixture", fx.name}, {"ell", ell}, {"q", q}, {"sup_norm", sup.value},
                          {"sup_witness", {{"alpha", sup.alpha}, {"x", sup.x}}}, {"l1_norm", l1.value},
                          {"conv_estimate", {{"lhs", est.lhs}, {"rhs", est.rhs}, {"holds", est.holds}}}});
        }
      }
    }
    run.rec.certificates("norms", checked, failed);
    run.results = {{"rows", rows}};
  });
}

void cmd_tmib(const Options& o, Config& cfg, Run& run) {
  auto fixtures = cfg.fixtures();
  const auto specs = cfg.list<std::string>("spaces", o.spaces, {"lp:1:poly:1", "lp:2:exp:1:1", "flp:2:poly:1", "c0w:poly:1"});
  const int pairs = cfg.scalar<int>("pairs", o.pairs, 0, 20);
  if (pairs < 0) throw ConfigError("pairs must be nonnegative");
  std::vector<TmibSpace> spaces;
  for (const auto& s : specs) spaces.push_back(space_or_config(s));
  run.step("tmib", [&] {
    json rows = json::array();
    int checked = 0, failed = 0;
    std::mt19937_64 rng(cfg.seed());
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    for (const auto& E : spaces) {
      json norms = json::object();
      for (const auto& fx : fixtures) {
        auto n = space_norm(E, fx.f);
        ++checked;
        failed += !n.certified;
        norms[fx.name] = n.value;
      }
      json weights = json::array();
      for (double x : {0.0, 1.0, 2.0, 4.0}) weights.push_back({{"x", x}, {"omega_E", translation_weight(E, x)}, {"nu_E", modulation_weight(E, x)}});
      auto W = operator_weight(E);
      int viol = 0;
      for (int k = 0; k < pairs; ++k) {
        GaussSum f = ExpPoly({cplx(uni(-1, 1), uni(-1, 1)) + 0.5}, uni(0.5, 3.0), cplx(uni(-1, 1), uni(-1, 1)));
        GaussSum g = ExpPoly({cplx(uni(-1, 1), uni(-1, 1)) + 0.5, cplx(uni(-1, 1), 0.0)}, uni(0.5, 3.0), cplx(uni(-1, 1), 0.0));
        auto r = module_conv_check(E, f, g, &W);
        ++checked;
        failed += !r.certified;
        if (!r.holds) {
          ++viol;
          run.rec.violation("module inequality", "banach-module-convolution",
                            {{"space", E.spec()}, {"trial", k}, {"lhs", r.lhs}, {"rhs", r.rhs}});
        }
      }
      rows.push_back({{"space", E.spec()}, {"norms", norms}, {"weights", weights}, {"module_checks", pairs}, {"module_violations", viol}});
    }
    run.rec.certificates("tmib", checked, failed);
    run.results = {{"spaces", rows}};
  });
}

void cmd_stft(const Options& o, Config& cfg, Run& run) {
  auto fixtures = cfg.fixtures();
  const auto qs = cfg.list<double>("q", o.q, {0.5, 1.0, 2.0});
  const auto grid = cfg.grid("freq_grid", 8.0, 0.02);
  const auto spec = cfg.list<std::string>("spaces", o.spaces, {"lp:2:const"});
  const auto E = space_or_config(spec.front());
  const auto M = gevrey(1, 64);
  run.step("stft", [&] {
    auto w = build_window(ExpPoly::gaussian(std::numbers::pi));
    std::vector<double> probes;
    for (int j = -16; j <= 16; ++j) probes.push_back(0.25 * j);
    json rows = json::array();
    for (const auto& fx : fixtures) {
      auto profile = decay_profile(fx.f, w.psi, E, grid);
      std::vector<std::vector<double>> weighted;
      for (double q : qs) weighted.push_back(weighted_profile(profile, M, q));
      auto out = open_csv(csv_path(cfg, o, "stft", fx.name, fixtures.size() > 1));
      out << "xi,norm";
      for (double q : qs) out << ",weighted_norm_q" << q;
      out << "\n";
      for (int j = 0; j < grid.size(); ++j) {
        out << grid.node(j) << "," << profile.values[j];
        for (const auto& wv : weighted) out << "," << wv[j];
        out << "\n";
      }
      auto fit = fit_decay(profile, M, qs);
      auto rec = reconstruct_check(fx.f, w, grid, probes);
      json fit_rows = json::array();
      for (const auto& r : fit.rows) fit_rows.push_back({{"q", r.q}, {"sup_full", r.sup_full}, {"sup_half", r.sup_half}, {"stabilized", r.stabilized}});
      rows.push_back({{"fixture", fx.name}, {"reconstruction_error", rec.error}, {"tail_estimate", rec.tail_estimate},
                      {"decay_fit", fit_rows}, {"threshold", fit.threshold}});
      if (rec.error > 1e-6)
        run.rec.violation("reconstruction", "stft-reconstruction", {{"fixture", fx.name}, {"error", rec.error}});
    }
    run.results = {{"space", E.spec()}, {"window", "gaussian"}, {"fixtures", rows}};
  });
}

void cmd_convolutor(const Options& o, Config& cfg, Run& run) {
  auto fixtures = cfg.fixtures();
  const auto ells = cfg.list<double>("ell", o.ell, {1.0});
  const auto qs = cfg.list<double>("q", o.q, {1.0});
  const auto M = gevrey(1, 64);
  const std::string path = cfg.scalar<std::string>("seqrep", o.seqrep, "", "");
  const SeqRep s = [&] {
    if (path.empty()) {
      const auto spec = cfg.list<std::string>("spaces", o.spaces, {"lp:2:poly:1"});
      return random_seqrep(cfg.seed(), space_or_config(spec.front()), M, ells.front());
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open seqrep " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_seqrep(buf.str());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("seqrep: ") + e.what());
    }
  }();
  run.step("convolutor", [&] {
    json rows = json::array();
    int checked = 0, failed = 0;
    for (double ell : ells) {
      for (const auto& fx : fixtures) {
        auto r = conv_with_test(s, fx.f, M, M, ell, qs.front());
        ++checked;
        failed += !r.certified;
        if (!r.holds)
          run.rec.violation("per-term structural bound", "structural-forward-bound",
                            {{"fixture", fx.name}, {"ell", ell}, {"alpha", r.witness.value_or(-1)}});
        json terms = json::array();
        for (const auto& t : r.terms) terms.push_back({{"alpha", t.alpha}, {"lhs", t.lhs}, {"rhs", t.rhs}, {"normalized", t.normalized}});
        rows.push_back({{"fixture", fx.name}, {"ell", ell}, {"lambda", r.lambda}, {"C_Eq", r.C_Eq},
                        {"geometric_ratio", r.geometric_ratio}, {"holds", r.holds}, {"terms", terms}});
      }
    }
    auto w = build_window(ExpPoly::gaussian(std::numbers::pi));
    auto mem = membership_test(synthesize(s), w, parse_space("lp:2:const"), M, {0.5, 1.0, 2.0, membership_threshold(ells.front())},
                               Grid::make(16.0, 0.05), ells.front());
    json fit_rows = json::array();
    for (const auto& r : mem.fit.rows) fit_rows.push_back({{"q", r.q}, {"stabilized", r.stabilized}});
    run.rec.certificates("convolutor", checked, failed);
    run.results = {{"seqrep", format_seqrep(s)},
                   {"tests", rows},
                   {"membership", {{"threshold", mem.predicted_threshold}, {"consistent", mem.consistent}, {"rows", fit_rows}, {"note", mem.note}}}};
  });
}

std::vector<RiemannScheme> parse_schedule(const std::string& text) {
  json j;
  try {
    if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
      j = json::parse(text);
    } else {
      std::ifstream in(text);
      if (!in) throw ConfigError("cannot open schedule " + text);
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ConfigError("schedule must be a nonempty list");
  std::vector<RiemannScheme> out;
  for (const auto& r : j) {
    try {
      RiemannScheme s{r.at("m").get<double>(), r.at("n").get<int>(), r.at("gamma").get<double>()};
      s.validate();
      out.push_back(s);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("schedule row ") + r.dump() + ": " + e.what());
    }
  }
  return out;
}

void cmd_riemann(const Options& o, Config& cfg, Run& run) {
  auto fixtures = cfg.fixtures();
  std::vector<RiemannScheme> schedule = default_schedule();
  if (!o.schedule.empty()) {
    schedule = parse_schedule(o.schedule);
  } else if (cfg.file().contains("schedule")) {
    schedule = parse_schedule(cfg.file()["schedule"].dump());
  }
  json sched = json::array();
  for (const auto& s : schedule) sched.push_back({{"m", s.m}, {"n", s.n}, {"gamma", s.gamma}});
  cfg.echo()["schedule"] = sched;
  RiemannParams p;
  p.ell = cfg.list<double>("ell", o.ell, {1.0}).front();
  p.q = cfg.list<double>("q", o.q, {1.0}).front();
  p.alpha_max = cfg.scalar<int>("alpha_max", o.alpha_max, 0, 8);
  p.x_grid = cfg.grid("grid", 4.0, 0.1);
  run.step("riemann", [&] {
    json rows = json::array();
    for (const auto& fx : fixtures) {
      auto study = convergence_study(fx.f, fx.f, schedule, p);
      auto out = open_csv(csv_path(cfg, o, "riemann", fx.name, fixtures.size() > 1));
      out << "k,m,n,gamma,S1,S2,S3,total_measured\n";
      json table = json::array();
      for (const auto& r : study.rows) {
        out << r.k << "," << r.scheme.m << "," << r.scheme.n << "," << r.scheme.gamma << "," << r.S1 << "," << r.S2
            << "," << r.S3 << "," << r.total << "\n";
        table.push_back({{"k", r.k}, {"S1", r.S1}, {"S2", r.S2}, {"S3", r.S3}, {"total", r.total}, {"bound_holds", r.bound_holds}});
        if (!r.bound_holds) run.rec.violation("Riemann error split", "riemann-error-split", {{"fixture", fx.name}, {"k", r.k}});
      }
      if (!study.monotone)
        run.rec.violation("Riemann convergence", "riemann-convergence",
                          {{"fixture", fx.name}, {"non_monotone_steps", study.non_monotone_steps}});
      rows.push_back({{"fixture", fx.name}, {"reference_norm", study.reference_norm}, {"final_ok", study.final_ok},
                      {"monotone", study.monotone}, {"rows", table}});
    }
    run.results = {{"fixtures", rows}};
  });
}

void cmd_all(const Options& o, Config& cfg, Run& run) {
  std::vector<int> ids = cfg.list<int>("criteria", o.criteria, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  for (int id : ids) {
    if (id < 1 || id > kInProcessCriteria) throw ConfigError("criterion ids run from 1 to 10");
  }
  json crit = json::array();
  for (int id : ids) {
    run.step("criterion_" + std::to_string(id), [&] {
      auto c = run_criterion(id, cfg.seed(), run.rec);
      std::cout << "criterion " << id << " (" << c.name << "): " << (c.passed ? "PASS" : "FAIL") << "\n";
      crit.push_back(to_json(c));
    });
  }
  run.results = {{"criteria", crit}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultrakit: ultradistribution convolutor verification toolkit"};
  Options o;
  app.option_defaults()->always_capture_default();
  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--out-dir", o.out_dir, "directory for report.json and CSV outputs");
  app.add_option("--seed", o.seed, "seed for randomized sweeps");
  app.add_option("--threads", o.threads, "worker threads (0 = hardware)");
  app.add_flag("--timings", o.timings, "record wall-clock timings in the report");
  app.require_subcommand(1);
  app.fallthrough();

  using Handler = std::function<void(const Options&, Config&, Run&)>;
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.emplace_back(s, std::move(h));
    return s;
  };

  auto* weights = sub("weights", "weight-sequence conditions and associated function", cmd_weights);
  weights->add_option("--sequence", o.sequence, "gevrey:<s>");
  weights->add_option("--order", o.order, "number of stored terms minus one");

  auto* algebra = sub("algebra-selfcheck", "exact Gaussian-algebra identities on seeded inputs", cmd_algebra);
  algebra->add_option("--trials", o.trials);

  auto* norms = sub("norms", "Gelfand-Shilov norms and the convolution estimate", cmd_norms);
  norms->add_option("--fixture", o.fixtures);
  norms->add_option("--ell", o.ell);
  norms->add_option("--q", o.q);
  norms->add_option("--alpha-max", o.alpha_max);
  norms->add_option("--sequence", o.sequence);
  norms->add_option("--rhs-scale", o.rhs_scale, "multiplies the estimate's right side");
  norms->add_option("--out", o.out, "CSV path");

  auto* tmib = sub("tmib", "TMIB space norms, operator weights, module inequality", cmd_tmib);
  tmib->add_option("--space", o.spaces);
  tmib->add_option("--fixture", o.fixtures);
  tmib->add_option("--pairs", o.pairs);

  auto* stftc = sub("stft", "STFT decay profiles and reconstruction", cmd_stft);
  stftc->add_option("--fixture", o.fixtures);
  stftc->add_option("--q", o.q);
  stftc->add_option("--space", o.spaces);
  stftc->add_option("--out", o.out, "CSV path");

  auto* conv = sub("convolutor", "structural bound and membership for a sequence representation", cmd_convolutor);
  conv->add_option("--seqrep", o.seqrep, "sequence representation file");
  conv->add_option("--fixture", o.fixtures);
  conv->add_option("--ell", o.ell);
  conv->add_option("--q", o.q);
  conv->add_option("--space", o.spaces);

  auto* riem = sub("riemann", "Riemann-sum convolution schedule", cmd_riemann);
  riem->add_option("--fixture", o.fixtures);
  riem->add_option("--schedule", o.schedule, "JSON list of {m, n, gamma} or a path to one");
  riem->add_option("--ell", o.ell);
  riem->add_option("--q", o.q);
  riem->add_option("--alpha-max", o.alpha_max);
  riem->add_option("--out", o.out, "CSV path");

  auto* all = sub("all", "acceptance suite", cmd_all);
  all->add_option("--criteria", o.criteria, "subset of criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  o.seed_given = app.get_option("--seed")->count() > 0;
  CLI::App* chosen = nullptr;
  Handler handler;
  for (auto& [s, h] : subs) {
    if (s->parsed()) {
      chosen = s;
      handler = h;
    }
  }

  Run run;
  run.timed = o.timings;
  json echo;
  try {
    if (o.threads < 0) throw ConfigError("threads must be nonnegative");
    if (o.threads > 0) set_thread_count(o.threads);
    Config cfg(o, chosen->get_name());
    if (cfg.file().contains("threads") && o.threads == 0) set_thread_count(cfg.get<int>("threads"));
    if (o.out_dir.empty()) throw ConfigError("out-dir must be nonempty");
    fs::create_directories(o.out_dir);
    cfg.echo()["outputs"] = json::array();
    handler(o, cfg, run);
    echo = cfg.echo();
  } catch (const ConfigError& e) {
    std::cerr << "ultrakit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ultrakit: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ultrakit: " << e.what() << "\n";
    return 3;
  }

  json report = {{"schema", kSchema},
                 {"config_echo", echo},
                 {"results", run.results},
                 {"violations", run.rec.violations},
                 {"tail_certificates", run.rec.tail_certificates},
                 {"timings", run.timings}};
  const fs::path path = fs::path(o.out_dir) / "report.json";
  std::ofstream out(path);
  out << report.dump(2) << "\n";
  if (!out) {
    std::cerr << "ultrakit: cannot write " << path << "\n";
    return 2;
  }
  std::cout << "report: " << path.string() << " (" << run.rec.violations.size() << " violations)\n";
  if (run.rec.has_violations()) return 1;
  if (run.rec.has_certificate_failures()) return 3;
  return 0;
}
