#include "cli_app.hpp"

#include <cauchy/cauchy.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace cauchy::cli {

namespace {

using nlohmann::json;

/// Bad flag combinations; exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input and output files; exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + "]";
}

bool is_unitary(const RunConfig& c) { return c.group == "unitary"; }

GroupType half_group(const RunConfig& c) {
  try {
    return parse_group(c.group);
  } catch (const InvalidArgument&) {
    throw UsageError("unknown group '" + c.group + "'");
  }
}

std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (const char* dir = std::getenv("CAUCHY_OUTPUT_DIR"); dir != nullptr && *dir != '\0' && p.is_relative()) {
    p = std::filesystem::path(dir) / p;
  }
  return p;
}

/// Output goes to --output when given, else to `out`.
class Sink {
public:
  Sink(const RunConfig& c, std::ostream& out) : out_(&out) {
    if (c.output.empty()) return;
    path_ = output_path(c.output);
    file_.open(path_);
    if (!file_) throw DataError("cannot open output file " + path_.string());
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw DataError("error writing " + path_.string());
  }

private:
  std::ostream* out_;
  std::ofstream file_;
  std::filesystem::path path_;
};

void require_seed(const RunConfig& c, const char* why) {
  if (!c.seed) throw UsageError(std::string("--seed is required ") + why);
}

// ---------------------------------------------------------------------------
// verify / kernel

struct Point {
  std::vector<double> x, y;
};

std::vector<Point> grid_points(const RunConfig& c) {
  std::vector<Point> pts;
  if (c.random_points > 0) {
    if (!c.angles_x.empty() || !c.angles_y.empty()) throw UsageError("--random excludes explicit angles");
    if (c.m < 1) throw UsageError("--random needs --m >= 1");
    require_seed(c, "with --random");
    RngStream rng(*c.seed, 0);
    for (int i = 0; i < c.random_points; ++i) {
      Point p;
      if (is_unitary(c)) {
        p.x = sample_unitary_spectrum(c.m, rng).angles();
        p.y = sample_unitary_spectrum(c.m, rng).angles();
      } else {
        const GroupType g = half_group(c);
        p.x = sample_generic_spectrum(g, c.m, rng, 0.1, 0.05, c.det_x).angles();
        p.y = sample_generic_spectrum(g, c.m, rng, 0.1, 0.05, c.det_y).angles();
      }
      pts.push_back(std::move(p));
    }
    return pts;
  }
  if (c.angles_x.empty() || c.angles_y.empty()) throw UsageError("give --angles-x and --angles-y, or --random N");
  if (c.angles_x.size() != c.angles_y.size()) throw UsageError("--angles-x and --angles-y differ in length");
  if (c.m != 0 && static_cast<std::size_t>(c.m) != c.angles_x.size()) {
    throw UsageError("--m does not match the number of angles");
  }
  pts.push_back({c.angles_x, c.angles_y});
  return pts;
}

TruncationPolicy oracle_policy(const RunConfig& c) {
  if (c.max_weight) return TruncationPolicy::fixed(*c.max_weight);
  return TruncationPolicy::automatic(c.oracle_tolerance);
}

struct Evaluation {
  double closed = 0.0;
  double oracle = 0.0;
  double tail = 0.0;
  int max_weight = 0;
  double diff = 0.0;
  std::optional<double> fitted_normalization;
};

Evaluation evaluate(const RunConfig& c, const Point& pt, bool with_oracle) {
  const KernelParams p(c.z);
  Evaluation e;
  if (is_unitary(c)) {
    const UnitarySpectrum a(pt.x), b(pt.y);
    const auto closed = kernel_unitary(a, b, p, c.conjugate);
    e.closed = closed.real();
    if (with_oracle) {
      const auto s = truncated_kernel(a, b, p, c.conjugate, oracle_policy(c));
      e.oracle = s.value.real();
      e.tail = s.tail_bound;
      e.max_weight = s.max_weight;
      e.diff = std::abs(closed - s.value);
    }
    return e;
  }
  const GroupType g = half_group(c);
  const HalfSpectrum x(pt.x, g, g == GroupType::OOdd ? c.det_x : 1);
  const HalfSpectrum y(pt.y, g, g == GroupType::OOdd ? c.det_y : 1);
  e.closed = g == GroupType::SoEven ? kernel_so_even(x, y, p, c.normalization) : kernel(x, y, p);
  if (with_oracle) {
    const auto s = truncated_kernel(x, y, p, oracle_policy(c));
    e.oracle = s.value;
    e.tail = s.tail_bound;
    e.max_weight = s.max_weight;
    e.diff = std::abs(e.closed - s.value);
    if (g == GroupType::SoEven) e.fitted_normalization = kernel_so_even(x, y, p, 1.0) / s.value;
  }
  return e;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto pts = grid_points(c);
  Sink sink(c, out);
  std::ostream& os = sink.stream();
  const bool so_even = !is_unitary(c) && half_group(c) == GroupType::SoEven;
  json rows = json::array();
  int passed = 0;
  if (c.format == "csv") {
    os << "point,closed_form,oracle,tail_bound,max_weight,abs_diff,status" << (so_even ? ",fitted_normalization" : "")
       << "\n";
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Evaluation e;
    try {
      e = evaluate(c, pts[i], true);
    } catch (const DegenerateSpectrum& ex) {
      throw DegenerateSpectrum(std::string(ex.what()) + "; x = " + join(pts[i].x) + ", y = " + join(pts[i].y));
    }
    const bool pass = e.diff <= e.tail + c.tolerance;
    passed += pass;
    if (c.format == "csv") {
      os << i << "," << num(e.closed) << "," << num(e.oracle) << "," << num(e.tail) << "," << e.max_weight << ","
         << num(e.diff) << "," << (pass ? "PASS" : "FAIL");
      if (e.fitted_normalization) os << "," << num(*e.fitted_normalization);
      os << "\n";
    } else {
      json row = {{"angles_x", pts[i].x}, {"angles_y", pts[i].y}, {"closed_form", e.closed}, {"oracle", e.oracle},
                  {"tail_bound", e.tail}, {"max_weight", e.max_weight}, {"abs_diff", e.diff}, {"pass", pass}};
      if (e.fitted_normalization) row["fitted_normalization"] = *e.fitted_normalization;
      rows.push_back(std::move(row));
    }
  }
  if (c.format == "json") {
    os << json{{"config", c}, {"points", rows}, {"passed", passed}, {"total", pts.size()}}.dump(2) << "\n";
  }
  sink.close();
  err << passed << "/" << pts.size() << " PASS\n";
  return passed == static_cast<int>(pts.size()) ? ok : verify_failed;
}

int cmd_kernel(const RunConfig& c, std::ostream& out) {
  if (c.random_points > 0) throw UsageError("kernel takes explicit angles");
  const auto pts = grid_points(c);
  Evaluation e;
  try {
    e = evaluate(c, pts[0], c.check);
  } catch (const DegenerateSpectrum& ex) {
    throw DegenerateSpectrum(std::string(ex.what()) + "; x = " + join(pts[0].x) + ", y = " + join(pts[0].y));
  }
  double imag = 0.0;
  if (is_unitary(c)) imag = kernel_unitary(UnitarySpectrum(pts[0].x), UnitarySpectrum(pts[0].y), KernelParams(c.z), c.conjugate).imag();
  Sink sink(c, out);
  std::ostream& os = sink.stream();
  if (c.format == "json") {
    json j = {{"config", c}, {"value", e.closed}};
    if (is_unitary(c)) j["value_imag"] = imag;
    if (c.check) {
      j["oracle"] = e.oracle;
      j["tail_bound"] = e.tail;
    }
    os << j.dump(2) << "\n";
  } else {
    os << "value" << (is_unitary(c) ? ",value_imag" : "") << (c.check ? ",oracle,tail_bound" : "") << "\n";
    os << num(e.closed);
    if (is_unitary(c)) os << "," << num(imag);
    if (c.check) os << "," << num(e.oracle) << "," << num(e.tail);
    os << "\n";
  }
  sink.close();
  return ok;
}

// ---------------------------------------------------------------------------
// limit

int cmd_limit(const RunConfig& c, std::ostream& out) {
  if (half_group(c) != GroupType::SoOdd) throw UsageError("limit is defined for --group so-odd");
  const auto pts = grid_points(c);
  const HalfSpectrum x(pts[0].x, GroupType::SoOdd), y(pts[0].y, GroupType::SoOdd);
  const double limit = limit_kernel_so_odd(x, y);
  std::vector<std::pair<double, std::optional<double>>> derivs;
  if (c.check) {
    DerivativeOptions opts;
    opts.relative_tolerance = 1e-4;
    double fact = 1.0;
    for (int k = 2; k <= x.rank(); ++k) fact *= k;
    for (double z : {0.99, 0.999}) {
      try {
        derivs.emplace_back(z, kernel_derivative_so_odd(x, y, z, x.rank(), opts).value / fact);
      } catch (const StepUnderflow&) {
        derivs.emplace_back(z, std::nullopt);
      }
    }
  }
  Sink sink(c, out);
  std::ostream& os = sink.stream();
  if (c.format == "json") {
    json d = json::array();
    for (const auto& [z, v] : derivs) d.push_back({{"z", z}, {"derivative_over_m_factorial", v ? json(*v) : json()}});
    os << json{{"config", c}, {"limit", limit}, {"check", d}}.dump(2) << "\n";
  } else {
    os << "quantity,z,value\n";
    os << "limit,1," << num(limit) << "\n";
    for (const auto& [z, v] : derivs) os << "derivative_over_m_factorial," << num(z) << "," << (v ? num(*v) : "nan") << "\n";
  }
  sink.close();
  return ok;
}

// ---------------------------------------------------------------------------
// sample

struct Sample {
  std::vector<Rotation3> rotations;
  std::vector<std::vector<double>> spectra;
  bool unitary = false;
};

Sample draw_sample(const RunConfig& c) {
  if (c.n < 1) throw UsageError("--n must be at least 1");
  require_seed(c, "for sampling");
  RngStream rng(*c.seed, 0);
  Sample s;
  const auto count = static_cast<std::size_t>(c.n);
  if (c.sampler == "haar-so3" || c.sampler == "naive-so3") {
    NaiveAngleRange range = NaiveAngleRange::FullTurn;
    if (c.naive_range == "half") {
      range = NaiveAngleRange::HalfTurn;
    } else if (c.naive_range != "full") {
      throw UsageError("--naive-range must be full or half");
    }
    for (std::size_t i = 0; i < count; ++i) {
      s.rotations.push_back(c.sampler == "haar-so3" ? sample_haar_so3(rng) : sample_naive_so3(rng, range));
    }
  } else if (c.sampler == "haar-spectrum" || c.sampler == "uniform-spectrum") {
    const GroupType g = half_group(c);
    if (c.m < 1) throw UsageError("--m must be at least 1");
    for (std::size_t i = 0; i < count; ++i) {
      if (c.sampler == "haar-spectrum") {
        s.spectra.push_back(sample_haar_spectrum(g, c.m, rng).angles());
      } else {
        // Angles i.i.d. uniform on (0, pi): a non-Haar alternative.
        s.spectra.push_back(sample_generic_spectrum(g, c.m, rng, 1e-8, 1e-8).angles());
      }
    }
  } else if (c.sampler == "haar-unitary") {
    if (c.m < 1) throw UsageError("--m must be at least 1");
    s.unitary = true;
    for (std::size_t i = 0; i < count; ++i) s.spectra.push_back(sample_unitary_spectrum(c.m, rng).angles());
  } else {
    throw UsageError("unknown sampler '" + c.sampler + "'");
  }
  return s;
}

void write_histogram(const Sample& s, std::ostream& os) {
  constexpr int bins = 50;
  constexpr double pi = std::numbers::pi;
  std::vector<long> counts(bins, 0);
  auto add = [&](double t) {
    counts[static_cast<std::size_t>(std::clamp(static_cast<int>(t / pi * bins), 0, bins - 1))]++;
  };
  for (const auto& r : s.rotations) add(rotation_angle(r));
  for (const auto& sp : s.spectra) {
    for (double t : sp) add(s.unitary ? std::min(t, 2 * pi - t) : t);
  }
  os << "bin_lo,bin_hi,count\n";
  for (int b = 0; b < bins; ++b) {
    os << num(b * pi / bins) << "," << num((b + 1) * pi / bins) << "," << counts[static_cast<std::size_t>(b)] << "\n";
  }
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Sample s = draw_sample(c);
  Sink sink(c, out);
  std::ostream& os = sink.stream();
  if (!s.rotations.empty()) {
    os << "axis_x,axis_y,axis_z,angle,r11,r12,r13,r21,r22,r23,r31,r32,r33\n";
    for (const auto& r : s.rotations) {
      const Eigen::Vector3d u = rotation_axis(r);
      os << num(u.x()) << "," << num(u.y()) << "," << num(u.z()) << "," << num(rotation_angle(r));
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) os << "," << num(r(i, j));
      }
      os << "\n";
    }
  } else {
    const char* prefix = s.unitary ? "phi_" : "theta_";
    const std::size_t width = s.spectra.front().size();
    for (std::size_t k = 0; k < width; ++k) os << (k ? "," : "") << prefix << k + 1;
    os << "\n";
    for (const auto& sp : s.spectra) {
      for (std::size_t k = 0; k < width; ++k) os << (k ? "," : "") << num(sp[k]);
      os << "\n";
    }
  }
  sink.close();
  if (c.hist) write_histogram(s, c.output.empty() ? err : out);
  return ok;
}

// ---------------------------------------------------------------------------
// test

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t row, const std::string& column) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DataError("row " + std::to_string(row) + ", column " + column + ": malformed number '" + text + "'");
  }
  return v;
}

Sample read_sample(const RunConfig& c) {
  std::ifstream in(c.input);
  if (!in) throw DataError("cannot open input file " + c.input);
  std::string line;
  if (!std::getline(in, line)) throw DataError("input file " + c.input + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };

  Sample s;
  std::vector<std::size_t> cols;
  const bool rayleigh = c.statistic == "rayleigh";
  if (rayleigh) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const std::string name = "r" + std::to_string(i) + std::to_string(j);
        const auto col = find(name);
        if (!col) throw DataError("input header lacks column " + name);
        cols.push_back(*col);
      }
    }
  } else {
    s.unitary = c.statistic == "sobolev-unitary";
    const std::string prefix = s.unitary ? "phi_" : "theta_";
    for (int k = 1;; ++k) {
      const auto col = find(prefix + std::to_string(k));
      if (!col) break;
      cols.push_back(*col);
    }
    if (cols.empty()) throw DataError("input header has no " + prefix + "1 column");
  }

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    std::vector<double> values;
    for (std::size_t col : cols) {
      if (col >= cells.size()) throw DataError("row " + std::to_string(row) + ": too few columns");
      values.push_back(parse_number(cells[col], row, header[col]));
    }
    try {
      if (rayleigh) {
        Eigen::Matrix3d m;
        for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = values[static_cast<std::size_t>(k)];
        s.rotations.emplace_back(m);
      } else if (s.unitary) {
        s.spectra.push_back(UnitarySpectrum(values).angles());
      } else {
        s.spectra.push_back(HalfSpectrum(values, GroupType::SoOdd).angles());
      }
    } catch (const Error& e) {
      throw DataError("row " + std::to_string(row) + ": " + e.what());
    }
  }
  if (s.rotations.empty() && s.spectra.empty()) throw DataError("input file " + c.input + " has no data rows");
  return s;
}

int cmd_test(const RunConfig& c, std::ostream& out) {
  if (c.statistic != "rayleigh" && c.statistic != "sobolev-so-odd" && c.statistic != "sobolev-unitary") {
    throw UsageError("unknown statistic '" + c.statistic + "'");
  }
  const bool rayleigh = c.statistic == "rayleigh";
  std::string method = c.method.empty() ? (rayleigh ? "asymptotic" : "monte-carlo") : c.method;
  if (method != "asymptotic" && method != "monte-carlo") throw UsageError("--method must be asymptotic or monte-carlo");
  if (method == "asymptotic" && !rayleigh) throw UsageError("no asymptotic p-value for " + c.statistic);
  if (method == "monte-carlo") {
    if (c.sims < 1) throw UsageError("--sims must be at least 1");
    require_seed(c, "for Monte Carlo p-values");
  }
  if (c.input.empty() == c.sampler.empty()) throw UsageError("give exactly one of --input and --sampler");
  if (c.statistic == "sobolev-so-odd" && !c.sampler.empty() && c.group != "so-odd") {
    throw UsageError("sobolev-so-odd needs --group so-odd");
  }

  const Sample s = c.input.empty() ? draw_sample(c) : read_sample(c);
  if (rayleigh && s.rotations.empty()) throw UsageError("rayleigh needs an SO(3) sample");
  if (!rayleigh && !s.rotations.empty()) throw UsageError(c.statistic + " needs a spectrum sample");
  if (c.statistic == "sobolev-unitary" && !s.unitary) throw UsageError("sobolev-unitary needs unitary spectra");
  if (c.statistic == "sobolev-so-odd" && s.unitary) throw UsageError("sobolev-so-odd needs so-odd spectra");

  TestReport report;
  if (rayleigh) {
    const double t = rayleigh_statistic(s.rotations);
    if (method == "asymptotic") {
      report = rayleigh_pvalue(t, PValueMethod::Asymptotic, s.rotations.size(), 0);
    } else {
      RngStream rng(*c.seed, 1);
      report = rayleigh_pvalue(t, PValueMethod::MonteCarlo, s.rotations.size(), static_cast<std::size_t>(c.sims), &rng);
    }
  } else {
    const KernelParams p(c.z);
    const int dim = static_cast<int>(s.spectra.front().size());
    for (const auto& sp : s.spectra) {
      if (static_cast<int>(sp.size()) != dim) throw DataError("spectra of different sizes");
    }
    double stat = 0.0;
    StatisticKind kind = StatisticKind::SobolevSoOdd;
    if (s.unitary) {
      kind = StatisticKind::SobolevUnitary;
      std::vector<UnitarySpectrum> us;
      for (const auto& sp : s.spectra) us.emplace_back(sp);
      stat = sobolev_statistic_unitary(us, p);
    } else {
      std::vector<HalfSpectrum> hs;
      for (const auto& sp : s.spectra) hs.emplace_back(sp, GroupType::SoOdd);
      stat = sobolev_statistic_so_odd(hs, p);
    }
    RngStream rng(*c.seed, 1);
    report = mc_pvalue(kind, stat, s.spectra.size(), dim, p, static_cast<std::size_t>(c.sims), rng);
  }

  json j = {{"config", c},
            {"statistic", report.statistic},
            {"p_value", report.p_value},
            {"method", to_string(report.method)},
            {"n_obs", report.n_obs},
            {"n_sims", report.n_sims},
            {"seed", c.seed ? json(*c.seed) : json()},
            {"elapsed_ms", report.elapsed_ms}};
  Sink sink(c, out);
  sink.stream() << j.dump(2) << "\n";
  sink.close();
  return ok;
}

// ---------------------------------------------------------------------------
// parsing

void add_spectrum_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--group", c.group, "so-odd, sp, so-even, o-odd or unitary")->capture_default_str();
  cmd->add_option("--m", c.m, "rank m (or dimension n for unitary)");
  cmd->add_option("--z", c.z, "series weight z in [0, 1)")->capture_default_str();
  cmd->add_option("--angles-x", c.angles_x, "angles of x, comma separated")->delimiter(',');
  cmd->add_option("--angles-y", c.angles_y, "angles of y, comma separated")->delimiter(',');
  cmd->add_option("--det-x", c.det_x, "determinant of x for o-odd")->check(CLI::IsMember({-1, 1}));
  cmd->add_option("--det-y", c.det_y, "determinant of y for o-odd")->check(CLI::IsMember({-1, 1}));
  cmd->add_flag("--conjugate", c.conjugate, "unitary: conjugate the second spectrum");
}

void add_io_options(CLI::App* cmd, RunConfig& c, bool with_format) {
  cmd->add_option("--output", c.output, "output file (relative paths resolve under CAUCHY_OUTPUT_DIR)");
  if (with_format) cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_oracle_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--oracle-tol", c.oracle_tolerance, "target tail bound of the series oracle")->capture_default_str();
  cmd->add_option("--max-weight", c.max_weight, "fixed truncation weight L for the oracle");
}

void add_seed(CLI::App* cmd, RunConfig& c) { cmd->add_option("--seed", c.seed, "random seed"); }

} // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"command", c.command},
       {"group", c.group},
       {"m", c.m},
       {"z", c.z},
       {"seed", c.seed ? json(*c.seed) : json()},
       {"angles_x", c.angles_x},
       {"angles_y", c.angles_y},
       {"det_x", c.det_x},
       {"det_y", c.det_y},
       {"conjugate", c.conjugate},
       {"random_points", c.random_points},
       {"tolerance", c.tolerance},
       {"oracle_tolerance", c.oracle_tolerance},
       {"max_weight", c.max_weight ? json(*c.max_weight) : json()},
       {"normalization", c.normalization},
       {"check", c.check},
       {"sampler", c.sampler},
       {"n", c.n},
       {"naive_range", c.naive_range},
       {"hist", c.hist},
       {"statistic", c.statistic},
       {"method", c.method},
       {"sims", c.sims},
       {"input", c.input},
       {"output", c.output},
       {"format", c.format}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  RunConfig d;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(field);
  };
  get("command", d.command);
  get("group", d.group);
  get("m", d.m);
  get("z", d.z);
  if (j.contains("seed") && !j.at("seed").is_null()) d.seed = j.at("seed").get<std::uint64_t>();
  get("angles_x", d.angles_x);
  get("angles_y", d.angles_y);
  get("det_x", d.det_x);
  get("det_y", d.det_y);
  get("conjugate", d.conjugate);
  get("random_points", d.random_points);
  get("tolerance", d.tolerance);
  get("oracle_tolerance", d.oracle_tolerance);
  if (j.contains("max_weight") && !j.at("max_weight").is_null()) d.max_weight = j.at("max_weight").get<int>();
  get("normalization", d.normalization);
  get("check", d.check);
  get("sampler", d.sampler);
  get("n", d.n);
  get("naive_range", d.naive_range);
  get("hist", d.hist);
  get("statistic", d.statistic);
  get("method", d.method);
  get("sims", d.sims);
  get("input", d.input);
  get("output", d.output);
  get("format", d.format);
  c = std::move(d);
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "verify") return cmd_verify(c, out, err);
    if (c.command == "kernel") return cmd_kernel(c, out);
    if (c.command == "sample") return cmd_sample(c, out, err);
    if (c.command == "test") return cmd_test(c, out);
    if (c.command == "limit") return cmd_limit(c, out);
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cauchy identities for the compact classical groups: kernels, Haar sampling and uniformity tests",
               "cauchy"};
  app.require_subcommand(1);
  RunConfig c;
  std::string replay_path;

  auto* verify = app.add_subcommand("verify", "compare closed-form kernels with the partition series");
  add_spectrum_options(verify, c);
  add_oracle_options(verify, c);
  add_seed(verify, c);
  add_io_options(verify, c, true);
  verify->add_option("--random", c.random_points, "number of random generic spectrum pairs");
  verify->add_option("--tol", c.tolerance, "allowed excess over the tail bound")->capture_default_str();
  verify->add_option("--normalization", c.normalization, "so-even normalization constant")->capture_default_str();

  auto* kernel_cmd = app.add_subcommand("kernel", "evaluate a kernel at explicit spectra");
  add_spectrum_options(kernel_cmd, c);
  add_oracle_options(kernel_cmd, c);
  add_io_options(kernel_cmd, c, true);
  kernel_cmd->add_option("--normalization", c.normalization, "so-even normalization constant")->capture_default_str();
  kernel_cmd->add_flag("--check", c.check, "also print the series oracle and its tail bound");

  auto* sample = app.add_subcommand("sample", "draw rotations or spectra and write CSV");
  sample->add_option("--sampler", c.sampler, "haar-so3, naive-so3, haar-spectrum, uniform-spectrum or haar-unitary")
      ->required();
  sample->add_option("--n", c.n, "number of draws")->required();
  sample->add_option("--group", c.group, "group for haar-spectrum")->capture_default_str();
  sample->add_option("--m", c.m, "rank (or unitary dimension)");
  sample->add_option("--naive-range", c.naive_range, "naive-so3 angle range: full or half")->capture_default_str();
  sample->add_flag("--hist", c.hist, "print a 50-bin angle histogram over [0, pi]");
  add_seed(sample, c);
  add_io_options(sample, c, false);

  auto* test = app.add_subcommand("test", "run a uniformity test and print a JSON report");
  test->add_option("--statistic", c.statistic, "rayleigh, sobolev-so-odd or sobolev-unitary")->required();
  test->add_option("--method", c.method, "asymptotic or monte-carlo");
  test->add_option("--sims", c.sims, "Monte Carlo replications")->capture_default_str();
  test->add_option("--input", c.input, "CSV written by `sample`");
  test->add_option("--sampler", c.sampler, "draw the data instead of reading it");
  test->add_option("--n", c.n, "sample size with --sampler");
  test->add_option("--group", c.group, "group for haar-spectrum")->capture_default_str();
  test->add_option("--m", c.m, "rank (or unitary dimension) with --sampler");
  test->add_option("--naive-range", c.naive_range, "naive-so3 angle range: full or half")->capture_default_str();
  test->add_option("--z", c.z, "series weight for the Sobolev statistics")->capture_default_str();
  add_seed(test, c);
  add_io_options(test, c, false);

  auto* limit = app.add_subcommand("limit", "z -> 1 limit of the differentiated SO(2m+1) identity");
  add_spectrum_options(limit, c);
  add_io_options(limit, c, true);
  limit->add_flag("--check", c.check, "also print derivative / m! at z = 0.99 and 0.999");

  auto* replay = app.add_subcommand("replay", "re-run the configuration embedded in a JSON output");
  replay->add_option("config", replay_path, "JSON file")->required();
  std::string replay_output;
  replay->add_option("--output", replay_output, "output file; by default the result goes to stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  if (replay->parsed()) {
    std::ifstream in(replay_path);
    if (!in) {
      err << "error: cannot open " << replay_path << "\n";
      return data_error;
    }
    try {
      const json j = json::parse(in);
      c = (j.contains("config") ? j.at("config") : j).get<RunConfig>();
      c.output = replay_output;
    } catch (const json::exception& e) {
      err << "error: " << replay_path << ": " << e.what() << "\n";
      return data_error;
    }
    return execute(c, out, err);
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  return execute(c, out, err);
}

} // namespace cauchy::cli
