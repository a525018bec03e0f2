// conicalq: point evaluation, table sweeps and fixture verification.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conicalq/conicalq.hpp"

namespace {

using conicalq::ConicalArgs;
using conicalq::Method;
using conicalq::OutputRecord;
using conicalq::RoutingConfig;
using conicalq::ScaledValue;

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<Method> parse_method(const std::string& name) {
  if (name == "auto") return std::nullopt;
  if (name == "near-one") return Method::NearOneSeries;
  if (name == "kummer") return Method::LargeTauKummer;
  if (name == "large-x") return Method::LargeXSeries;
  throw UsageError("unknown method '" + name + "'");
}

OutputRecord evaluate_record(int m, double tau, double x, const RoutingConfig& cfg,
                             std::optional<Method> method, bool extended) {
  OutputRecord r;
  r.m = m;
  r.tau = tau;
  r.x = x;
  try {
    const ConicalArgs args{m, tau, x};
    if (extended) {
      const auto e = conicalq::compute_qtilde_scaled(args, cfg, method);
      r.qtilde = e.value;
      r.method = std::string(conicalq::to_string(e.method));
      r.terms = e.terms_used;
      r.err_est = e.error_estimate;
    } else {
      const auto e = conicalq::compute_qtilde(args, cfg, method);
      r.qtilde = ScaledValue::from_double(e.value);
      r.method = std::string(conicalq::to_string(e.method));
      r.terms = e.terms_used;
      r.err_est = e.error_estimate;
    }
  } catch (const conicalq::Error& err) {
    r.failed = true;
    r.method = err.tag();
    r.message = err.what();
  }
  return r;
}

nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["tau"] = r.tau;
  j["x"] = r.x;
  // A string keeps 17 digits and the exponent range of the extended path.
  j["qtilde"] = r.failed ? "error" : conicalq::format_value(r.qtilde);
  j["method"] = r.method;
  j["terms"] = r.terms;
  if (r.failed) {
    j["err_est"] = nullptr;
    j["error"] = r.message;
  } else {
    j["err_est"] = r.err_est;
  }
  return j;
}

// "a,b,c" -> values
std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw UsageError(std::string("bad ") + what + " value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "lo:hi" or a single integer
std::pair<int, int> parse_int_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw UsageError("bad m range '" + text + "'");
      return {v, v};
    }
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw UsageError("bad m range '" + text + "'");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw UsageError("bad m range '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("bad m range '" + text + "'");
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- eval ----------------------------------------------------------------

struct EvalOptions {
  int m = 0;
  double tau = 0.0;
  double x = 0.0;
  std::string method = "auto";
  int terms = 0;
  std::string format = "plain";
  bool extended = false;
};

int run_eval(const EvalOptions& o) {
  RoutingConfig cfg = RoutingConfig::from_environment();
  if (o.terms > 0) {
    cfg.kummer_terms = o.terms;
    cfg.series.max_terms = o.terms;
  }
  const OutputRecord r = evaluate_record(o.m, o.tau, o.x, cfg, parse_method(o.method), o.extended);
  if (o.format == "json") {
    std::cout << to_json(r).dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << conicalq::kCsvHeader << "\n" << conicalq::to_csv(r) << "\n";
  } else {
    std::cout << conicalq::to_plain(r) << "\n";
  }
  if (r.failed) {
    std::cerr << "conicalq: " << r.message << "\n";
    return kExitComputation;
  }
  return 0;
}

// ---- table ---------------------------------------------------------------

struct TableOptions {
  std::string m = "0";
  std::string tau;
  std::string x;
  std::string x_range;
  int x_count = 0;
  std::string spacing = "lin";
  std::string output;
  std::string format = "csv";
  std::string method = "auto";
  bool deterministic = false;
  bool extended = false;
  int jobs = 1;
};

std::vector<double> x_grid(const TableOptions& o) {
  if (!o.x.empty() && !o.x_range.empty()) throw UsageError("give either --x or --x-range, not both");
  if (!o.x.empty()) return parse_list(o.x, "x");
  if (o.x_range.empty()) throw UsageError("empty grid: no x values");
  const auto colon = o.x_range.find(':');
  if (colon == std::string::npos) throw UsageError("--x-range expects lo:hi");
  const auto ends = parse_list(o.x_range.substr(0, colon) + "," + o.x_range.substr(colon + 1), "x-range");
  const double lo = ends[0], hi = ends[1];
  if (o.x_count < 1) throw UsageError("empty grid: --x-count must be >= 1 with --x-range");
  if (o.spacing != "lin" && o.spacing != "log") throw UsageError("--spacing must be lin or log");
  if (o.spacing == "log" && !(lo > 0.0 && hi > 0.0)) throw UsageError("log spacing needs a positive range");
  std::vector<double> xs;
  const int n = o.x_count;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    xs.push_back(o.spacing == "lin" ? lo + (hi - lo) * t : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t));
  }
  return xs;
}

int run_table(const TableOptions& o) {
  const auto [m_lo, m_hi] = parse_int_range(o.m);
  if (o.tau.empty()) throw UsageError("empty grid: no tau values");
  const auto taus = parse_list(o.tau, "tau");
  const auto xs = x_grid(o);
  if (m_hi < m_lo || taus.empty() || xs.empty()) throw UsageError("empty grid");
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");

  struct Point {
    int m;
    double tau, x;
  };
  std::vector<Point> grid;
  for (int m = m_lo; m <= m_hi; ++m) {
    for (double tau : taus) {
      for (double x : xs) grid.push_back({m, tau, x});
    }
  }

  const RoutingConfig cfg = RoutingConfig::from_environment();
  const auto method = parse_method(o.method);
  std::vector<OutputRecord> records(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      records[i] = evaluate_record(grid[i].m, grid[i].tau, grid[i].x, cfg, method, o.extended);
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::min<int>(o.jobs, static_cast<int>(grid.size()));
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
  }
  std::ostream& out = o.output.empty() ? std::cout : file;
  if (o.format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
  } else {
    if (!o.deterministic) out << "# generated " << utc_timestamp() << "\n";
    out << conicalq::kCsvHeader << "\n";
    for (const auto& r : records) out << conicalq::to_csv(r) << "\n";
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed");
  return 0;
}

// ---- verify --------------------------------------------------------------

struct VerifyOptions {
  std::string path;
  double tolerance = 5e-13;
  std::string region = "all";
  bool quiet = false;
};

std::string region_of(const conicalq::FixtureRow& row, const RoutingConfig& cfg) {
  if (row.m > 1) return "recursion";
  if (row.x >= cfg.threshold_x) return "c";
  return row.tau < cfg.threshold_tau ? "a" : "b";
}

void residual_sweep(const RoutingConfig& cfg) {
  std::printf("residual sweep (m = 1, informational):\n");
  for (double x : {1.1, 100.0}) {
    double worst_low = 0.0, worst_high = 0.0;
    for (int i = 0; i < 24; ++i) {
      const double tau = 5.0 * std::pow(20.0, i / 23.0);
      const Method method = conicalq::select_method(tau, x, cfg);
      try {
        const auto q0 = conicalq::evaluate_direct(0, tau, x, method, cfg);
        const auto q1 = conicalq::evaluate_direct(1, tau, x, method, cfg);
        const auto q2 = conicalq::evaluate_direct(2, tau, x, method, cfg);
        const double res = conicalq::recurrence_residual(1, tau, x, q0, q1, q2);
        (tau < 10.0 ? worst_low : worst_high) = std::max(tau < 10.0 ? worst_low : worst_high, res);
      } catch (const conicalq::Error& e) {
        std::printf("  x=%g tau=%g: %s\n", x, tau, e.what());
      }
    }
    std::printf("  x=%g: max residual %.3e (5 <= tau < 10), %.3e (10 <= tau <= 100)\n", x, worst_low, worst_high);
  }
}

int run_verify(const VerifyOptions& o) {
  const std::vector<std::string> regions = {"all", "a", "b", "c", "recursion"};
  if (std::find(regions.begin(), regions.end(), o.region) == regions.end()) {
    throw UsageError("--region must be one of all, a, b, c, recursion");
  }
  if (!(o.tolerance >= 0.0)) throw UsageError("--tolerance must be >= 0");
  conicalq::FixtureSet set;
  try {
    set = conicalq::read_fixtures(o.path);
  } catch (const conicalq::FormatError& e) {
    std::cerr << "conicalq: " << o.path << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const bool self = set.value_column == "qtilde";
  const RoutingConfig cfg = RoutingConfig::from_environment();
  std::printf("%s: %zu points (%s)\n", o.path.c_str(), set.rows.size(),
              self ? "self-comparison against table output" : "oracle comparison");
  if (set.skipped_error_rows > 0) std::printf("skipped %d error rows\n", set.skipped_error_rows);

  std::map<std::string, double> region_max;
  double worst = -1.0;
  const conicalq::FixtureRow* worst_row = nullptr;
  std::size_t checked = 0, violations = 0;
  for (const auto& row : set.rows) {
    const std::string region = region_of(row, cfg);
    if (o.region != "all" && region != o.region) continue;
    ++checked;
    double err = 0.0;
    std::string status;
    try {
      const auto e = conicalq::compute_qtilde_scaled({row.m, row.tau, row.x}, cfg);
      err = conicalq::relative_difference(e.value, row.reference);
      status = std::string(conicalq::to_string(e.method));
    } catch (const conicalq::Error& e) {
      err = std::numeric_limits<double>::infinity();
      status = std::string("error: ") + e.what();
    }
    const bool ok = err <= o.tolerance;
    if (!ok) ++violations;
    if (!o.quiet) {
      std::printf("%-9s m=%d tau=%s x=%s rel_err=%.3e %s%s\n", region.c_str(), row.m,
                  conicalq::format_real(row.tau).c_str(), conicalq::format_real(row.x).c_str(), err,
                  status.c_str(), ok ? "" : "  FAIL");
    }
    region_max[region] = std::max(region_max[region], err);
    if (err > worst) {
      worst = err;
      worst_row = &row;
    }
  }
  for (const auto& [region, err] : region_max) std::printf("region %-9s max rel_err %.3e\n", region.c_str(), err);
  residual_sweep(cfg);
  if (checked == 0) {
    std::printf("no points selected\n");
    return 0;
  }
  if (violations > 0) {
    std::printf("FAIL: %zu of %zu points exceed tolerance %.3e; worst m=%d tau=%s x=%s rel_err=%.3e (line %d)\n",
                violations, checked, o.tolerance, worst_row->m, conicalq::format_real(worst_row->tau).c_str(),
                conicalq::format_real(worst_row->x).c_str(), worst, worst_row->line);
    return kExitComputation;
  }
  std::printf("PASS: %zu points within tolerance %.3e (worst %.3e)\n", checked, o.tolerance, worst);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conical function Q~^m_{-1/2+i tau}(x) for x > 1"};
  app.require_subcommand(1);

  EvalOptions eo;
  auto* eval = app.add_subcommand("eval", "evaluate one point");
  eval->add_option("--m", eo.m, "order m >= 0")->required();
  eval->add_option("--tau", eo.tau, "tau >= 0")->required();
  eval->add_option("--x", eo.x, "x > 1")->required();
  eval->add_option("--method", eo.method, "seed method")
      ->check(CLI::IsMember({"auto", "near-one", "kummer", "large-x"}));
  eval->add_option("--terms", eo.terms, "Kummer K / series term budget")->check(CLI::PositiveNumber);
  eval->add_option("--format", eo.format)->check(CLI::IsMember({"plain", "csv", "json"}));
  eval->add_flag("--extended-range", eo.extended, "allow values beyond the double range");

  TableOptions to;
  auto* table = app.add_subcommand("table", "evaluate a grid");
  table->add_option("--m", to.m, "order or range lo:hi");
  table->add_option("--tau", to.tau, "comma-separated tau values");
  table->add_option("--x", to.x, "comma-separated x values");
  table->add_option("--x-range", to.x_range, "lo:hi, with --x-count points");
  table->add_option("--x-count", to.x_count);
  table->add_option("--spacing", to.spacing)->check(CLI::IsMember({"lin", "log"}));
  table->add_option("--method", to.method)->check(CLI::IsMember({"auto", "near-one", "kummer", "large-x"}));
  table->add_option("--output,-o", to.output, "output file (default stdout)");
  table->add_option("--format", to.format)->check(CLI::IsMember({"csv", "json"}));
  table->add_flag("--deterministic", to.deterministic, "omit the timestamp comment");
  table->add_flag("--extended-range", to.extended);
  table->add_option("--jobs,-j", to.jobs);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "compare against a fixture or table file");
  verify->add_option("fixtures", vo.path)->required();
  verify->add_option("--tolerance", vo.tolerance);
  verify->add_option("--region", vo.region, "all, a, b, c or recursion");
  verify->add_flag("--quiet,-q", vo.quiet, "summary only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return run_eval(eo);
    if (*table) return run_table(to);
    return run_verify(vo);
  } catch (const UsageError& e) {
    std::cerr << "conicalq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "conicalq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "conicalq: " << e.what() << "\n";
    return kExitComputation;
  }
}
