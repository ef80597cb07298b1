// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
//   acceptance [--cache-dir DIR]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "spectral_indep/spectral_indep.hpp"

using namespace spectral_indep;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const BasisKind kTensorKinds[] = {BasisKind::Legendre, BasisKind::Fourier, BasisKind::Walsh, BasisKind::Haar};

struct Config {
  BasisKind basis;
  StatisticKind stat;
};

std::vector<Config> all_configs() {
  std::vector<Config> out;
  for (BasisKind k : kTensorKinds)
    for (StatisticKind s : {StatisticKind::MaxCoeff, StatisticKind::TopSingularValue}) out.push_back({k, s});
  out.push_back({BasisKind::NonstandardHaar2D, StatisticKind::NonstandardMax});
  return out;
}

std::string name(const Config& c) {
  return std::string(to_string(c.basis)) + "-" + std::string(to_string(c.stat));
}

// ---------------------------------------------------------------- 1

Outcome orthonormality() {
  double worst = 0;
  const auto [nodes, weights] = oracle::gauss_rule(64);
  for (BasisKind kind : kTensorKinds)
    for (std::size_t k = 1; k <= 15; ++k) {
      if (is_dyadic(kind) && ((k + 1) & k) != 0) continue;
      const BasisSpec spec = BasisSpec::make(kind, k);
      std::vector<std::vector<long double>> vals;
      std::vector<long double> w;
      if (is_dyadic(kind)) {
        for (std::size_t c = 0; c < k + 1; ++c) {
          const auto v = basis_eval_vector(spec, (c + 0.5) / static_cast<double>(k + 1));
          vals.emplace_back(v.begin(), v.end());
          w.push_back(1.0L / static_cast<long double>(k + 1));
        }
      } else {
        for (std::size_t q = 0; q < nodes.size(); ++q) {
          const auto v = basis_eval_vector(spec, static_cast<double>(nodes[q]));
          vals.emplace_back(v.begin(), v.end());
          w.push_back(weights[q]);
        }
      }
      for (std::size_t a = 0; a <= k; ++a)
        for (std::size_t b = 0; b <= k; ++b) {
          long double s = 0;
          for (std::size_t q = 0; q < vals.size(); ++q) s += w[q] * vals[q][a] * vals[q][b];
          worst = std::max(worst, std::abs(static_cast<double>(s) - (a == b ? 1.0 : 0.0)));
        }
    }
  for (unsigned L = 0; L <= 3; ++L) {
    const auto idx = nonstandard_indices(L);
    const std::size_t cells = std::size_t{1} << std::max(L, 1U);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) {
        double s = 0;
        for (std::size_t cy = 0; cy < cells; ++cy)
          for (std::size_t cx = 0; cx < cells; ++cx) {
            const double x = (cx + 0.5) / cells, y = (cy + 0.5) / cells;
            s += nonstandard_haar_eval(idx[a], x, y) * nonstandard_haar_eval(idx[b], x, y);
          }
        worst = std::max(worst, std::abs(s / static_cast<double>(cells * cells) - (a == b ? 1.0 : 0.0)));
      }
  }
  return {worst <= 1e-10, "max Gram deviation " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 2

Outcome fast_paths() {
  double worst_dyadic = 0, worst_ns = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(derive_seed(2, seed));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(10000));
    SampleSet s;
    for (std::size_t i = 0; i < n; ++i) {
      s.x.push_back(rng.uniform());
      s.y.push_back(rng.uniform());
    }
    const std::size_t size = std::size_t{1} << (1 + rng.below(6));
    for (BasisKind kind : {BasisKind::Walsh, BasisKind::Haar}) {
      const BasisSpec spec = BasisSpec::make(kind, size - 1);
      const Matrix d = coeff_matrix(s, spec, CoeffMethod::Direct).entries;
      const Matrix f = coeff_matrix(s, spec, CoeffMethod::FastDyadic).entries;
      worst_dyadic = std::max(worst_dyadic, (d - f).max_abs());
    }
    const auto L = static_cast<unsigned>(rng.below(5));
    const NSCoefficients q = nonstandard_coeffs(s, L);
    for (std::size_t k = 0; k < q.size(); ++k) {
      double sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += nonstandard_haar_eval(q.index[k], s.x[i], s.y[i]);
      worst_ns = std::max(worst_ns, std::abs(sum / static_cast<double>(n) - q.value[k]));
    }
  }
  return {worst_dyadic <= 1e-12 && worst_ns <= 1e-12,
          "dyadic " + fmt("%.3g", worst_dyadic) + ", quadtree " + fmt("%.3g", worst_ns)};
}

// ---------------------------------------------------------------- 3

Outcome type_one(NullCache& cache) {
  Outcome o;
  const double grid[] = {0.0};
  for (const Config& c : all_configs()) {
    TestConfig cfg;
    cfg.basis = c.basis;
    cfg.statistic = c.stat;
    cfg.seed = 20240101;
    PowerOptions opt;
    opt.seed = 77;
    const PowerCurve curve = power_experiment(GeneratorId{Generator::IndependentUniform}, grid, cfg, opt, cache);
    const double r = curve.rate[0];
    const bool ok = r >= 0.03 && r <= 0.07;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + name(c) + " " + fmt("%.3f", r) + (ok ? "" : "!");
  }
  return o;
}

// ---------------------------------------------------------------- 4

Outcome power_sanity(NullCache& cache) {
  Outcome o;
  {
    TestConfig cfg;
    cfg.seed = 20240101;
    PowerOptions opt;
    opt.trials = 200;
    opt.seed = 4;
    const double l1[] = {1.0};
    const double p = power_experiment(GeneratorId{Generator::Linear}, l1, cfg, opt, cache).rate[0];
    o.pass = p >= 0.95;
    o.detail = "linear legendre-svd l=1 " + fmt("%.3f", p);
  }
  const double grid[] = {1, 20, 40, 70, 100};
  for (const Config& c : all_configs()) {
    TestConfig cfg;
    cfg.basis = c.basis;
    cfg.statistic = c.stat;
    cfg.seed = 20240101;
    PowerOptions opt;
    opt.trials = 200;
    opt.seed = 4;
    const PowerCurve curve = power_experiment(GeneratorId{Generator::Linear}, grid, cfg, opt, cache);
    bool ok = curve.rate.back() <= 0.5;
    for (std::size_t i = 1; i < curve.rate.size(); ++i) ok = ok && curve.rate[i] <= curve.rate[i - 1] + 0.1;
    o.pass = o.pass && ok;
    o.detail += "; " + name(c);
    for (double r : curve.rate) o.detail += " " + fmt("%.2f", r);
    if (!ok) o.detail += "!";
  }
  return o;
}

// ---------------------------------------------------------------- 5

Outcome uniformity() {
  Outcome o;
  const std::size_t trials = 1000, perms = 200;
  for (const Config& c : all_configs()) {
    TestConfig cfg;
    cfg.basis = c.basis;
    cfg.statistic = c.stat;
    cfg.permutations = perms;
    std::vector<double> p(trials);
    parallel_for(trials, [&](std::size_t t) {
      const SampleSet data = generate(Generator::IndependentUniform, GenConfig{256, 0, derive_seed(77, t)});
      TestConfig local = cfg;
      local.seed = derive_seed(99, t);
      p[t] = independence_test(data, local).p_value;
    });
    std::sort(p.begin(), p.end());
    // p-values live on {j/(P+1)}; compare the CDFs at those grid points
    double ks = 0;
    for (std::size_t j = 1; j <= perms + 1; ++j) {
      const double g = static_cast<double>(j) / static_cast<double>(perms + 1);
      const auto below = std::upper_bound(p.begin(), p.end(), g + 1e-12) - p.begin();
      ks = std::max(ks, std::abs(static_cast<double>(below) / static_cast<double>(trials) - g));
    }
    const bool ok = ks <= 0.05;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + name(c) + " " + fmt("%.3f", ks) + (ok ? "" : "!");
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome bumps() {
  Outcome o;
  const BasisSpec spec = BasisSpec::legendre(8);
  for (Generator g : {Generator::BumpLinear, Generator::BumpParabolic, Generator::BumpSine, Generator::BumpCubic}) {
    const SampleSet raw = generate(g, GenConfig{256, 5, 6});
    const BumpModel m = bump_hunt(raw, spec);
    const auto bins = oracle::binned_means(oracle::copula_column(raw.x), oracle::copula_column(raw.y));
    double sq = 0;
    for (const auto& [x, mean] : bins) sq += (m(x) - mean) * (m(x) - mean);
    const double rms = std::sqrt(sq / static_cast<double>(bins.size()));
    const bool ok = rms <= 0.1;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + std::string(to_string(g)) + " rms " + fmt("%.3f", rms) + (ok ? "" : "!");
  }
  const BumpModel flat = bump_hunt(generate(Generator::IndependentUniform, GenConfig{256, 0, 6}), spec);
  double sup = 0;
  for (int i = 0; i <= 100; ++i) sup = std::max(sup, std::abs(flat(i / 100.0) - 0.5));
  const bool ok = sup <= 3 / std::sqrt(256.0);
  o.pass = o.pass && ok;
  o.detail += ", independent sup|H-1/2| " + fmt("%.3f", sup) + " (bound 0.1875)" + (ok ? "" : "!");
  return o;
}

// ---------------------------------------------------------------- 7

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Outcome circle() {
  const SampleSet raw = generate(Generator::CircleHG, GenConfig{1024, 0, 3});
  const BasisSpec spec = BasisSpec::legendre(4);
  LdsOptions svd, cca;
  svd.domain = cca.domain = FitDomain::Raw;
  cca.method = LdsMethod::Cca;
  const CurveModel a = lds_fit(raw, spec, svd), b = lds_fit(raw, spec, cca);
  const double ratio = a.residual_rms / a.signal_rms;
  std::vector<std::pair<double, double>> pts, truth;
  for (const Segment& s : curve_contour(a, 256)) {
    pts.push_back({a.x_to_data(s.x0), a.y_to_data(s.y0)});
    pts.push_back({a.x_to_data(s.x1), a.y_to_data(s.y1)});
  }
  for (int i = 0; i < 4000; ++i) {
    const double th = 2 * std::numbers::pi * i / 4000;
    truth.push_back({2 * std::cos(th), 2 * std::sin(th)});
  }
  const double haus = pts.empty() ? INFINITY : oracle::hausdorff(pts, truth);
  const double cos_c = std::abs(dot(a.c, b.c)), cos_d = std::abs(dot(a.d, b.d));
  const bool ok = ratio <= 0.02 && haus <= 0.1 && cos_c >= 1 - 1e-6 && cos_d >= 1 - 1e-6;
  return {ok, "residual/signal " + fmt("%.3g", ratio) + ", Hausdorff " + fmt("%.3g", haus) + ", |cos c| " +
                  fmt("%.12f", cos_c) + ", |cos d| " + fmt("%.12f", cos_d)};
}

// ---------------------------------------------------------------- 8

Outcome optimality() {
  double margin = INFINITY;
  Rng rng(8);
  const Generator sets[] = {Generator::CircleHG, Generator::LemniscateHG, Generator::HyperbolaHG, Generator::CrossHG};
  for (std::size_t k = 1; k <= 4; ++k)
    for (Generator g : sets) {
      const BasisSpec spec = BasisSpec::legendre(k);
      const SampleSet raw = generate(g, GenConfig{512, 3, 10 + k});
      const CurveModel m = lds_fit(raw, spec);
      const Whitening w = whiten(to_fit_domain(raw, spec, FitDomain::Copula), spec);
      Matrix a = w.m.transpose() * w.m;
      for (std::size_t i = 0; i < k; ++i) a(i, i) -= 1;
      auto objective = [&](const std::vector<double>& c) {
        const std::vector<double> r = a * std::span<const double>(c);
        return std::sqrt(dot(r, r));
      };
      const double best = objective(m.d);
      for (int t = 0; t < 10000; ++t) {
        std::vector<double> c(k);
        for (double& v : c) v = rng.normal();
        const double n = std::sqrt(dot(c, c));
        for (double& v : c) v /= n;
        margin = std::min(margin, objective(c) - best);
      }
    }
  return {margin >= -1e-6, "smallest random-minus-returned gap " + fmt("%.3g", margin)};
}

// ---------------------------------------------------------------- 9

std::string run_cli(std::vector<std::string> args, const fs::path& out_file = {}) {
  args.insert(args.begin(), "spectral-indep");
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  std::string text = std::to_string(code) + "\n" + out.str();
  if (!out_file.empty()) {
    std::ifstream in(out_file, std::ios::binary);
    text += std::string(std::istreambuf_iterator<char>(in), {});
  }
  return text;
}

Outcome determinism(const fs::path& cache_dir) {
  const fs::path dir = cache_dir / "cli";
  fs::create_directories(dir);
  const std::string data = (dir / "data.csv").string(), contour = (dir / "contour.csv").string();
  const std::string cache = (dir / "nulls").string();
  const std::vector<std::vector<std::string>> commands = {
      {"gen", "--example", "lemniscate", "--n", "512", "--noise", "2", "--seed", "3"},
      {"transform", "--in", data, "--basis", "walsh", "--K", "7", "--what", "variance"},
      {"transform", "--in", data, "--basis", "nonstandard-haar", "--K", "7"},
      {"test", "--in", data, "--basis", "fourier", "--stat", "svd", "--seed", "9", "--cache-dir", cache},
      {"test", "--in", data, "--basis", "haar", "--stat", "max", "--seed", "9", "--no-cache"},
      {"power", "--example", "parabolic", "--noise-grid", "1,50", "--trials", "50", "--seed", "2", "--cache-dir", cache},
      {"bump", "--in", data, "--basis", "legendre", "--K", "6", "--axis", "x-on-y"},
      {"lds", "--in", data, "--method", "cca", "--orientation", "h-on-g", "--contour", contour, "--units", "data"},
      {"null-cache", "build", "--n", "200", "--basis", "walsh", "--stat", "svd", "--seed", "1", "--cache-dir", cache},
  };
  if (run_cli({"gen", "--example", "lemniscate", "--n", "512", "--noise", "2", "--seed", "3", "--out", data}) != "0\n")
    return {false, "gen failed"};
  std::size_t same = 0;
  std::string bad;
  for (const auto& cmd : commands) {
    const fs::path extra = cmd[0] == "lds" ? fs::path(contour) : fs::path();
    const std::string first = run_cli(cmd, extra), second = run_cli(cmd, extra);
    if (first == second && first.rfind("0\n", 0) == 0)
      ++same;
    else
      bad += " " + cmd[0];
  }
  return {same == commands.size(),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path cache_dir = default_cache_dir();
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cache-dir") cache_dir = argv[i + 1];
  NullCache cache(cache_dir);

  struct Criterion {
    const char* label;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"orthonormality", orthonormality},
      {"fast-path oracle equivalence", fast_paths},
      {"type I error", [&] { return type_one(cache); }},
      {"power sanity", [&] { return power_sanity(cache); }},
      {"p-value uniformity", uniformity},
      {"bump hunting", bumps},
      {"LDS circle recovery", circle},
      {"direction optimality certificate", optimality},
      {"CLI determinism", [&] { return determinism(cache_dir); }},
  };
  int failures = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::cout << "criterion " << index << " " << (o.pass ? "PASS" : "FAIL") << " " << c.label << ": " << o.detail
              << " [" << fmt("%.1f", secs) << " s]" << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
