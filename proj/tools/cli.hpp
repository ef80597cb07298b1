#pragma once

// Command-line front end. run() never calls exit(); it returns
// 0 on success, 2 on usage/configuration errors and 3 on data errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_indep/spectral_indep.hpp"

namespace spectral_indep::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "NaN" : (v > 0 ? "Infinity" : "-Infinity");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Compact JSON with every floating value at 17 significant digits.
inline void write_json(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << '\n' << pad << '}';
      return;
    }
    case json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty()) {
        os << "[]";
      } else if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent + 1);
        }
        os << ']';
      } else {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ",\n";
          os << inner;
          write_json(os, j[i], indent + 1);
        }
        os << '\n' << pad << ']';
      }
      return;
    }
    case json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

// ------------------------------------------------------------------- CSV I/O

inline std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(trim(f));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
}

/// Two-column CSV with header "x,y".
inline SampleSet read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  const auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "x" || header[1] != "y")
    throw DataError("expected a CSV header 'x,y' on line " + std::to_string(lineno));
  SampleSet s;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw DataError("line " + std::to_string(lineno) + ": expected two columns");
    s.x.push_back(parse_number(fields[0], lineno));
    s.y.push_back(parse_number(fields[1], lineno));
  }
  if (s.empty()) throw DataError("no data rows");
  check_finite(s);
  return s;
}

inline SampleSet read_csv_file(const std::string& path) {
  if (path == "-") return read_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_csv(in);
}

inline void write_csv(std::ostream& os, const SampleSet& s) {
  os << "x,y\n";
  for (std::size_t i = 0; i < s.size(); ++i) os << format_double(s.x[i]) << ',' << format_double(s.y[i]) << '\n';
}

// -------------------------------------------------------------------- parsing

inline BasisKind basis_arg(const std::string& name) {
  const auto kind = parse_basis_kind(name);
  if (!kind) throw ConfigError("unknown basis '" + name + "'");
  return *kind;
}

inline StatisticKind statistic_arg(const std::string& name) {
  const auto stat = parse_statistic(name);
  if (!stat) throw ConfigError("unknown statistic '" + name + "'");
  return *stat;
}

inline Generator generator_arg(const std::string& name) {
  const auto g = parse_generator(name);
  if (!g) throw ConfigError("unknown example '" + name + "'");
  return *g;
}

/// "auto" or a non-negative integer.
inline std::optional<std::size_t> order_arg(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ConfigError("K must be 'auto' or a non-negative integer");
}

/// "a:b:step" (inclusive of b up to rounding) or a comma list.
inline std::vector<double> noise_grid_arg(const std::string& text) {
  std::vector<double> grid;
  auto number = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad number '" + s + "' in noise grid");
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError("noise grid must be a:b:step");
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError("noise grid needs step > 0 and b >= a");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(a + step * static_cast<double>(i));
  } else {
    for (const auto& f : split_csv(text)) grid.push_back(number(f));
  }
  for (double l : grid)
    if (!(l >= 0.0)) throw ConfigError("noise levels must be >= 0");
  if (grid.empty()) throw ConfigError("empty noise grid");
  return grid;
}

inline BasisSpec spec_for(BasisKind kind, const std::optional<std::size_t>& order, std::size_t n) {
  return BasisSpec::make(kind, order ? *order : auto_order(n, kind));
}

/// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() {
    if (path_.empty() || path_ == "-") return fallback_;
    if (!file_.is_open()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw DataError("cannot write " + path_);
    }
    return file_;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

// ------------------------------------------------------------------ commands

struct Options {
  std::string in, out, example = "linear", basis = "legendre", order = "auto", stat = "svd";
  std::string method, orientation = "g-on-h", domain = "copula", axis = "y-on-x", what = "coeff";
  std::string noise_grid = "1:100:10", noise_side = "y", cache_dir, contour, units = "native";
  std::size_t n = 256, perms = 200, trials = 1000, resolution = 256, grid = 101;
  double noise = 0.0, alpha = 0.05;
  std::optional<double> ridge;
  std::uint64_t seed = 0;
  bool no_cache = false;
};

inline NullCache make_cache(const Options& o, std::ostream& err) {
  auto warn = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
  if (o.no_cache) return NullCache(std::nullopt, kNullFormatVersion, warn);
  return NullCache(o.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(o.cache_dir),
                   kNullFormatVersion, warn);
}

inline json report_json(const TestReport& r, std::uint64_t seed) {
  json j;
  j["z"] = r.z;
  j["p_value"] = r.p_value;
  j["basis"] = std::string(to_string(r.basis));
  j["K"] = r.order;
  j["N"] = r.n;
  j["statistic"] = std::string(to_string(r.statistic));
  j["permutations"] = r.permutations;
  j["seed"] = seed;
  return j;
}

inline void cmd_gen(const Options& o, std::ostream& out) {
  GeneratorId id{generator_arg(o.example)};
  if (o.noise_side != "x" && o.noise_side != "y") throw ConfigError("--noise-on must be x or y");
  id.side = o.noise_side == "x" ? NoiseSide::X : NoiseSide::Y;
  const SampleSet s = generate(id, GenConfig{o.n, o.noise, o.seed});
  Sink sink(o.out, out);
  write_csv(sink.stream(), s);
}

inline void cmd_transform(const Options& o, std::ostream& out) {
  const SampleSet raw = read_csv_file(o.in);
  const BasisKind kind = basis_arg(o.basis);
  const BasisSpec spec = spec_for(kind, order_arg(o.order), raw.size());
  const SampleSet native = domain_map(copula_transform(raw), spec);
  json j;
  j["basis"] = std::string(to_string(kind));
  j["N"] = raw.size();
  if (!spec.tensor()) {
    if (o.what != "coeff" && o.what != "nonstandard") throw ConfigError("nonstandard Haar supports --what coeff only");
    j["L"] = spec.level();
    const NSCoefficients d = nonstandard_coeffs(native, spec.level());
    json list = json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
      json e;
      e["level"] = d.index[i].level;
      e["type"] = std::string(to_string(d.index[i].type));
      e["jx"] = d.index[i].jx;
      e["jy"] = d.index[i].jy;
      e["value"] = d.value[i];
      list.push_back(std::move(e));
    }
    j["coefficients"] = std::move(list);
  } else {
    j["K"] = spec.order();
    CoeffMethod method = is_dyadic(kind) ? CoeffMethod::FastDyadic : CoeffMethod::Direct;
    if (o.method == "direct") method = CoeffMethod::Direct;
    else if (o.method == "fast") method = CoeffMethod::FastDyadic;
    else if (!o.method.empty()) throw ConfigError("--method must be direct or fast");
    if (o.what == "coeff") {
      j["coefficients"] = to_json(coeff_matrix(native, spec, method).entries);
    } else if (o.what == "moments") {
      const MomentSet m = moment_matrices(native, spec);
      j["sigma_xx"] = to_json(m.sigma_xx);
      j["sigma_yy"] = to_json(m.sigma_yy);
      j["sigma_xy"] = to_json(m.sigma_xy);
    } else if (o.what == "variance") {
      j["variance"] = to_json(variance_grid(native, spec));
    } else {
      throw ConfigError("--what must be coeff, moments or variance");
    }
  }
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  sink.stream() << '\n';
}

inline void cmd_test(const Options& o, std::ostream& out, std::ostream& err) {
  const SampleSet raw = read_csv_file(o.in);
  TestConfig config{basis_arg(o.basis), order_arg(o.order), statistic_arg(o.stat), o.perms, o.seed};
  if (raw.size() < kMinStatisticalSamples) throw DataError("independence test needs N >= 8");
  resolve_null_key(raw.size(), config);  // validate before any compute
  NullCache cache = make_cache(o, err);
  const TestReport r = independence_test(raw, config, cache);
  Sink sink(o.out, out);
  write_json(sink.stream(), report_json(r, o.seed));
  sink.stream() << '\n';
}

inline void cmd_power(const Options& o, std::ostream& out, std::ostream& err) {
  GeneratorId id{generator_arg(o.example)};
  id.side = o.noise_side == "x" ? NoiseSide::X : NoiseSide::Y;
  const std::vector<double> grid = noise_grid_arg(o.noise_grid);
  TestConfig config{basis_arg(o.basis), order_arg(o.order), statistic_arg(o.stat), o.perms, o.seed};
  resolve_null_key(o.n, config);
  NullCache cache = make_cache(o, err);
  const PowerCurve curve = power_experiment(id, grid, config, PowerOptions{o.n, o.trials, o.alpha, o.seed}, cache);
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << "noise,power\n";
  for (std::size_t i = 0; i < curve.noise.size(); ++i)
    os << format_double(curve.noise[i]) << ',' << format_double(curve.rate[i]) << '\n';
}

inline void cmd_bump(const Options& o, std::ostream& out) {
  const SampleSet raw = read_csv_file(o.in);
  if (o.axis != "y-on-x" && o.axis != "x-on-y") throw ConfigError("--axis must be y-on-x or x-on-y");
  const BumpAxis axis = o.axis == "y-on-x" ? BumpAxis::YonX : BumpAxis::XonY;
  const BasisKind kind = basis_arg(o.basis);
  const BasisSpec spec = spec_for(kind, order_arg(o.order), raw.size());
  if (o.grid < 2) throw ConfigError("--grid must be at least 2");
  const BumpModel m = bump_hunt(raw, spec, axis);
  const QuantileMap cond(axis == BumpAxis::YonX ? raw.x : raw.y);
  const QuantileMap resp(axis == BumpAxis::YonX ? raw.y : raw.x);
  json j;
  j["basis"] = std::string(to_string(kind));
  j["K"] = spec.order();
  j["N"] = raw.size();
  j["axis"] = o.axis;
  j["coefficients"] = to_json(m.h);
  json curve = json::array();
  for (std::size_t i = 0; i < o.grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(o.grid - 1);
    const double h = m(t);
    json row;
    row["t"] = t;
    row["h"] = h;
    row["data_t"] = cond(t);
    row["data_h"] = resp(std::clamp(h, 0.0, 1.0));
    curve.push_back(std::move(row));
  }
  j["curve"] = std::move(curve);
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  sink.stream() << '\n';
}

inline void cmd_lds(const Options& o, std::ostream& out) {
  const SampleSet raw = read_csv_file(o.in);
  const BasisKind kind = basis_arg(o.basis);
  const BasisSpec spec = spec_for(kind, order_arg(o.order), raw.size());
  LdsOptions opts;
  if (o.method.empty() || o.method == "svd") opts.method = LdsMethod::Svd;
  else if (o.method == "cca") opts.method = LdsMethod::Cca;
  else throw ConfigError("--method must be svd or cca");
  if (o.orientation == "g-on-h") opts.orientation = Orientation::GonH;
  else if (o.orientation == "h-on-g") opts.orientation = Orientation::HonG;
  else throw ConfigError("--orientation must be g-on-h or h-on-g");
  if (o.domain == "copula") opts.domain = FitDomain::Copula;
  else if (o.domain == "raw") opts.domain = FitDomain::Raw;
  else throw ConfigError("--domain must be copula or raw");
  if (o.units != "native" && o.units != "data") throw ConfigError("--units must be native or data");
  if (o.ridge && !(*o.ridge >= 0.0)) throw ConfigError("--ridge must be >= 0");
  if (o.resolution < 1 || o.resolution > kMaxContourResolution)
    throw ConfigError("--resolution must be in [1, 2048]");
  opts.ridge = o.ridge;
  const CurveModel m = lds_fit(raw, spec, opts);
  json j;
  j["basis"] = std::string(to_string(kind));
  j["K"] = spec.order();
  j["N"] = raw.size();
  j["method"] = std::string(to_string(opts.method));
  j["orientation"] = std::string(to_string(opts.orientation));
  j["domain"] = std::string(to_string(opts.domain));
  j["omega"] = to_json(m.omega);
  j["beta"] = to_json(m.beta);
  j["c"] = to_json(m.c);
  j["d"] = to_json(m.d);
  j["lambda"] = m.lambda;
  j["gamma"] = m.gamma;
  j["sigma"] = m.sigma;
  j["rho"] = m.rho;
  j["residual_rms"] = m.residual_rms;
  j["signal_rms"] = m.signal_rms;
  j["warnings"] = m.warnings;
  if (!o.contour.empty()) {
    const auto segs = curve_contour(m, o.resolution);
    std::ofstream f(o.contour, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + o.contour);
    const bool data = o.units == "data";
    f << "segment,x,y\n";
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      const double x0 = data ? m.x_to_data(s.x0) : s.x0, y0 = data ? m.y_to_data(s.y0) : s.y0;
      const double x1 = data ? m.x_to_data(s.x1) : s.x1, y1 = data ? m.y_to_data(s.y1) : s.y1;
      f << i << ',' << format_double(x0) << ',' << format_double(y0) << '\n';
      f << i << ',' << format_double(x1) << ',' << format_double(y1) << '\n';
    }
    j["contour_segments"] = segs.size();
  }
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  sink.stream() << '\n';
}

inline void cmd_null_cache(const Options& o, const std::string& action, std::ostream& out, std::ostream& err) {
  json j;
  const std::filesystem::path dir = o.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(o.cache_dir);
  if (action == "clear") {
    std::size_t removed = 0;
    if (std::filesystem::is_directory(dir))
      for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().filename().string().rfind("null-v", 0) == 0) removed += std::filesystem::remove(e.path());
    j["removed"] = removed;
  } else {
    TestConfig config{basis_arg(o.basis), order_arg(o.order), statistic_arg(o.stat), o.perms, o.seed};
    const NullKey key = resolve_null_key(o.n, config);
    NullCache cache(dir, kNullFormatVersion, [&err](const std::string& msg) { err << "warning: " << msg << '\n'; });
    const NullModel& null = cache.get(key);
    const auto& s = null.samples;
    j["file"] = null_file_name(key);
    j["N"] = key.n;
    j["basis"] = std::string(to_string(key.basis));
    j["K"] = key.order;
    j["statistic"] = std::string(to_string(key.statistic));
    j["permutations"] = key.permutations;
    j["seed"] = key.seed;
    j["min"] = s.front();
    j["median"] = s[s.size() / 2];
    j["q95"] = s[std::min(s.size() - 1, static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(s.size()))) - 1)];
    j["max"] = s.back();
  }
  Sink sink(o.out, out);
  write_json(sink.stream(), j);
  sink.stream() << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-domain independence tests and structure extraction", "spectral-indep"};
  app.require_subcommand(1);
  Options o;
  std::string ns_action = "build";

  auto add_input = [&](CLI::App* c) { c->add_option("--in", o.in, "input CSV with header x,y ('-' for stdin)")->required(); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default stdout)"); };
  auto add_basis = [&](CLI::App* c) {
    c->add_option("--basis", o.basis, "legendre | fourier | walsh | haar | nonstandard-haar");
    c->add_option("--K", o.order, "truncation order or 'auto'");
  };
  auto add_test = [&](CLI::App* c) {
    add_basis(c);
    c->add_option("--stat", o.stat, "max | svd | nsmax");
    c->add_option("--perms", o.perms, "permutations in the null");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--cache-dir", o.cache_dir, "null cache directory");
    c->add_flag("--no-cache", o.no_cache, "keep nulls in memory only");
  };

  auto* gen = app.add_subcommand("gen", "generate a manufactured data set");
  gen->add_option("--example", o.example, "generator name")->required();
  gen->add_option("--n", o.n, "sample count");
  gen->add_option("--noise", o.noise, "noise level l");
  gen->add_option("--noise-on", o.noise_side, "x | y (curve family)");
  gen->add_option("--seed", o.seed, "random seed");
  add_out(gen);

  auto* tr = app.add_subcommand("transform", "coefficient / moment / variance matrices of copula data");
  add_input(tr);
  add_basis(tr);
  tr->add_option("--what", o.what, "coeff | moments | variance");
  tr->add_option("--method", o.method, "direct | fast");
  add_out(tr);

  auto* test = app.add_subcommand("test", "permutation independence test");
  add_input(test);
  add_test(test);
  add_out(test);

  auto* power = app.add_subcommand("power", "Monte Carlo power over a noise grid (CSV)");
  power->add_option("--example", o.example, "generator name")->required();
  power->add_option("--noise-grid", o.noise_grid, "a:b:step or comma list");
  power->add_option("--noise-on", o.noise_side, "x | y (curve family)");
  power->add_option("--trials", o.trials, "data sets per noise level");
  power->add_option("--n", o.n, "sample count");
  power->add_option("--alpha", o.alpha, "significance level");
  add_test(power);
  add_out(power);

  auto* bump = app.add_subcommand("bump", "bump hunting (conditional mean curve)");
  add_input(bump);
  add_basis(bump);
  bump->add_option("--axis", o.axis, "y-on-x | x-on-y");
  bump->add_option("--grid", o.grid, "evaluation points");
  add_out(bump);

  auto* lds = app.add_subcommand("lds", "separable relation H(x) = G(y)");
  add_input(lds);
  add_basis(lds);
  lds->add_option("--method", o.method, "svd | cca");
  lds->add_option("--orientation", o.orientation, "g-on-h | h-on-g");
  lds->add_option("--domain", o.domain, "copula | raw");
  lds->add_option("--ridge", o.ridge, "whitening ridge (default 1e-8 trace/K)");
  lds->add_option("--contour", o.contour, "write the zero set as CSV (segment,x,y)");
  lds->add_option("--resolution", o.resolution, "contour grid cells per axis");
  lds->add_option("--units", o.units, "native | data (contour coordinates)");
  add_out(lds);

  auto* nc = app.add_subcommand("null-cache", "build, inspect or clear cached nulls");
  nc->add_option("action", ns_action, "build | clear")->check(CLI::IsMember({"build", "clear"}));
  nc->add_option("--n", o.n, "sample count");
  add_test(nc);
  add_out(nc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) cmd_gen(o, out);
    else if (tr->parsed()) cmd_transform(o, out);
    else if (test->parsed()) cmd_test(o, out, err);
    else if (power->parsed()) cmd_power(o, out, err);
    else if (bump->parsed()) cmd_bump(o, out);
    else if (lds->parsed()) cmd_lds(o, out);
    else if (nc->parsed()) cmd_null_cache(o, ns_action, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace spectral_indep::cli
