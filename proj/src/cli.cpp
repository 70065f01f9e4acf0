#include "fdl/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fdl/arith.hpp"
#include "fdl/equidist.hpp"
#include "fdl/io.hpp"
#include "fdl/lemma_bounds.hpp"
#include "fdl/modular.hpp"
#include "fdl/parallel.hpp"
#include "fdl/polyfact.hpp"
#include "fdl/search.hpp"

namespace fdl::cli {

namespace {

using io::Json;
using u64 = std::uint64_t;

// Signals a usage problem found after parsing (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> w(header_.size(), 0);
    const auto widen = [&w](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    const auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
      }
      os << s << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string str(u64 v) { return std::to_string(v); }

std::string join(const std::vector<u64>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string approx(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(12) << q.get_d();
  return os.str();
}

std::string interval_text(const equidist::Interval& in) {
  return std::string(in.lo_open ? "(" : "[") + io::format_rational(in.lo) + ", " + io::format_rational(in.hi) +
         (in.hi_open ? ")" : "]");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw UsageError("unknown output format: " + s);
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size() || text.empty() || text[0] == '-') throw std::invalid_argument(what);
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw UsageError("invalid value for " + what + ": " + text);
  }
}

// Settings layered as flags > environment > config file > defaults.
struct Layered {
  std::string format;
  std::uint32_t precision_bits = 0;
  u64 prime_limit = 0;
  std::string cache_dir;
  unsigned threads = 0;
  std::string config_path;
  std::string out_path;
};

RunConfig resolve_config(const CLI::App& app, const Layered& flags, const EnvLookup& env) {
  RunConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw UsageError("cannot read config file " + flags.config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw UsageError(std::string("malformed config file: ") + e.what());
    }
    static const char* const kKeys[] = {"precision_bits", "prime_limit", "cache_dir", "format", "threads"};
    for (const auto& [key, value] : j.items()) {
      if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; }) ==
          std::end(kKeys)) {
        throw UsageError("unknown config key: " + key);
      }
    }
    try {
      if (j.contains("precision_bits")) cfg.precision_bits = j["precision_bits"].get<std::uint32_t>();
      if (j.contains("prime_limit")) cfg.prime_limit = j["prime_limit"].get<u64>();
      if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
      if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
      if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    } catch (const Json::exception& e) {
      throw UsageError(std::string("bad config value: ") + e.what());
    }
  }
  if (auto v = env("FDL_PRECISION_BITS")) cfg.precision_bits = parse_number<std::uint32_t>(*v, "FDL_PRECISION_BITS");
  if (auto v = env("FDL_CACHE_DIR")) cfg.cache_dir = *v;
  if (auto v = env("FDL_THREADS")) cfg.threads = parse_number<unsigned>(*v, "FDL_THREADS");

  if (app.count("--precision-bits")) cfg.precision_bits = flags.precision_bits;
  if (app.count("--prime-limit")) cfg.prime_limit = flags.prime_limit;
  if (app.count("--cache-dir")) cfg.cache_dir = flags.cache_dir;
  if (app.count("--format")) cfg.format = parse_format(flags.format);
  if (app.count("--threads")) cfg.threads = flags.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

// ---- search ----

void emit_solutions(std::ostream& os, const RunConfig& cfg, const std::vector<search::Solution>& sols) {
  switch (cfg.format) {
    case OutputFormat::Json: emit_json(os, io::to_json_array(sols)); break;
    case OutputFormat::Csv: io::write_solutions_csv(os, sols); break;
    case OutputFormat::Table: {
      Table t({"a", "b", "c", "k", "trivial"});
      for (const auto& s : sols) t.add({str(s.a), str(s.b), str(s.c), str(s.k), s.trivial ? "yes" : "no"});
      t.print(os);
    }
  }
}

// ---- equidist sample acquisition ----

struct SampleArgs {
  u64 max_a = 0;
  u64 fixed_k = 0;
  double log_base = 0.0;
  double coefficient = 5.0;
  std::string samples_file;

  equidist::KPolicy policy() const {
    equidist::KPolicy p;
    p.coefficient = coefficient;
    p.log_base = log_base;
    if (fixed_k != 0) p.fixed_k = fixed_k;
    return p;
  }
};

void add_sample_options(CLI::App* sub, SampleArgs& args) {
  sub->add_option("--A,--a-max", args.max_a, "Largest a in the sample set");
  sub->add_option("--k-max", args.fixed_k, "Fixed K instead of the log-log policy");
  sub->add_option("--log-base", args.log_base, "Logarithm base for the K policy (default e)");
  sub->add_option("--k-coefficient", args.coefficient, "Coefficient in K = c log log A");
  sub->add_option("--samples", args.samples_file, "Read samples from a JSONL file");
}

equidist::SampleSet acquire_samples(const SampleArgs& args, const RunConfig& cfg) {
  if (!args.samples_file.empty()) {
    std::ifstream in(args.samples_file);
    if (!in) throw UsageError("cannot read sample file " + args.samples_file);
    return io::read_samples_jsonl(in);
  }
  if (args.max_a == 0) throw UsageError("--A is required (or --samples)");
  const auto policy = args.policy();
  std::optional<io::SampleCache> cache;
  if (cfg.cache_dir) {
    cache.emplace(*cfg.cache_dir);
    if (auto hit = cache->load(args.max_a, cfg.precision_bits, policy)) return std::move(*hit);
  }
  auto set = equidist::generate_samples(args.max_a, cfg.precision_bits, policy, cfg.threads);
  if (cache) cache->store(set, policy);
  return set;
}

equidist::Interval parse_interval(const std::string& text) {
  // "lo:hi", closed
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("interval must look like lo:hi, got " + text);
  try {
    return equidist::Interval::closed(io::parse_rational(text.substr(0, colon)),
                                      io::parse_rational(text.substr(colon + 1)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad interval ") + text + ": " + e.what());
  }
}

void emit_verdict_table(Table& t, const std::string& label, const polyfact::IntPoly& poly,
                        const polyfact::IrredVerdict& v) {
  static const char* const kStatus[] = {"irreducible", "reducible", "unknown"};
  const Json cert = io::to_json(v)["certificate"];
  std::string detail;
  if (!v.certificate.primes.empty()) detail = "primes " + join(v.certificate.primes, ',');
  if (!v.certificate.factors.empty()) {
    std::string f;
    for (const auto& fac : v.certificate.factors) f += (f.empty() ? "" : " * ") + ("(" + fac.to_string() + ")");
    detail += (detail.empty() ? "" : "; ") + f;
  }
  t.add({label, poly.to_string(), kStatus[static_cast<int>(v.status)], cert["kind"].get<std::string>(), detail});
}

void emit_scan(std::ostream& os, const RunConfig& cfg, const polyfact::ExceptionScan& scan) {
  switch (cfg.format) {
    case OutputFormat::Json: emit_json(os, io::to_json(scan)); break;
    case OutputFormat::Csv: {
      os << "k,a,status,certificate,factors\n";
      const auto rows = [&](const std::vector<polyfact::ScanEntry>& v, const char* status) {
        for (const auto& e : v) {
          std::string f;
          for (const auto& fac : e.verdict.certificate.factors) f += (f.empty() ? "" : ";") + fac.to_string();
          os << e.k << ',' << e.a << ',' << status << ','
             << io::to_json(e.verdict)["certificate"]["kind"].get<std::string>() << ",\"" << f << "\"\n";
        }
      };
      rows(scan.reducible, "reducible");
      rows(scan.unknown, "unknown");
      break;
    }
    case OutputFormat::Table: {
      Table t({"(k,a)", "polynomial", "status", "certificate", "witness"});
      for (const auto& e : scan.reducible) {
        emit_verdict_table(t, "(" + str(e.k) + "," + str(e.a) + ")",
                           polyfact::falling_to_monomial(e.k, Integer(-arith::factorial(e.a).value())), e.verdict);
      }
      for (const auto& e : scan.unknown) {
        emit_verdict_table(t, "(" + str(e.k) + "," + str(e.a) + ")",
                           polyfact::falling_to_monomial(e.k, Integer(-arith::factorial(e.a).value())), e.verdict);
      }
      os << "cells scanned: " << scan.cells << ", reducible: " << scan.reducible.size()
         << ", unknown: " << scan.unknown.size() << '\n';
      t.print(os);
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (precision_bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
  if (prime_limit < 2) throw std::invalid_argument("prime_limit must be >= 2");
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Exact search, screening and statistics for a!b! = c!", "fdl"};
  app.require_subcommand(1);
  app.fallthrough();

  Layered flags;
  app.add_option("--format", flags.format, "Output format: table, json or csv");
  app.add_option("--out", flags.out_path, "Write the report to FILE instead of stdout");
  app.add_option("--threads", flags.threads, "Worker threads (0 = auto)");
  app.add_option("--precision-bits", flags.precision_bits, "Fixed-point precision P (>= 64, default 96)");
  app.add_option("--prime-limit", flags.prime_limit, "Default prime bound for screen and density");
  app.add_option("--cache-dir", flags.cache_dir, "Directory for JSONL sample caches");
  app.add_option("--config", flags.config_path, "JSON config file");

  // search
  u64 c_max = 0, a_min = 2;
  auto* search_cmd = app.add_subcommand("search", "Exhaustive search for solutions with c <= c_max");
  search_cmd->add_option("--c-max", c_max, "Largest c")->required();
  search_cmd->add_option("--a-min", a_min, "Smallest a (default 2)");

  // locate
  u64 loc_a_min = 2, loc_a_max = 0, loc_k_min = 2, loc_k_max = 0;
  auto* locate_cmd = app.add_subcommand("locate", "Interval solver over ranges of (a, k)");
  locate_cmd->add_option("--a-min", loc_a_min, "Smallest a (default 2)");
  locate_cmd->add_option("--a-max", loc_a_max, "Largest a")->required();
  locate_cmd->add_option("--k-min", loc_k_min, "Smallest k (default 2)");
  locate_cmd->add_option("--k-max", loc_k_max, "Largest k")->required();

  // screen
  u64 screen_k = 0, screen_prime_max = 0, screen_p = 0;
  auto* screen_cmd = app.add_subcommand("screen", "Modular screen of class-k solutions at each prime");
  screen_cmd->add_option("--k", screen_k, "Class k >= 2")->required();
  screen_cmd->add_option("--prime-max", screen_prime_max, "Screen primes k < p <= prime-max");
  screen_cmd->add_option("--p", screen_p, "Screen a single prime");

  // density
  std::vector<u64> density_k;
  u64 density_n = 0;
  auto* density_cmd = app.add_subcommand("density", "Fraction of primes where x(x-1)...(x-k+1) = -1 has no root");
  density_cmd->add_option("--k", density_k, "One or more k >= 2")->required();
  density_cmd->add_option("--N,--prime-max", density_n, "Prime bound N");

  // count-bound
  u64 cb_p = 0, cb_k = 0, cb_n = 0;
  auto* count_cmd = app.add_subcommand("count-bound", "Count b <= n whose residue mod p is a root");
  count_cmd->add_option("--p", cb_p, "Prime p")->required();
  count_cmd->add_option("--k", cb_k, "Class k")->required();
  count_cmd->add_option("--n", cb_n, "Range bound n")->required();

  // irred
  polyfact::IrredOptions irred_opts;
  u64 irred_k = 0, irred_a = 0, irred_a_max = 0, irred_k_max = 0;
  std::string irred_coeffs;
  bool irred_scan = false;
  const auto add_irred_budget = [&irred_opts](CLI::App* sub) {
    sub->add_option("--prime-budget", irred_opts.prime_budget, "Good primes tried (default 40)");
    sub->add_option("--degree-cap", irred_opts.recombine_degree_cap, "Largest degree for recombination (default 24)");
  };
  auto* irred_cmd = app.add_subcommand("irred", "Irreducibility over Z with a certificate");
  irred_cmd->add_option("--k", irred_k, "Falling-factorial degree k");
  irred_cmd->add_option("--a", irred_a, "With --k: test x(x-1)...(x-k+1) - a!; without: x(x-1)...(x-k+1) + 1");
  irred_cmd->add_option("--coeffs", irred_coeffs, "Comma-separated integer coefficients, constant term first");
  irred_cmd->add_flag("--scan", irred_scan, "Run the exception scan instead");
  irred_cmd->add_option("--a-max", irred_a_max, "Scan bound on a");
  irred_cmd->add_option("--k-max", irred_k_max, "Scan bound on k");
  add_irred_budget(irred_cmd);

  u64 scan_a_max = 0, scan_k_max = 0;
  auto* scan_cmd = app.add_subcommand("scan-exceptions", "Reducible x(x-1)...(x-k+1) - a! with a >= k + 3");
  scan_cmd->add_option("--a-max", scan_a_max, "Largest a")->required();
  scan_cmd->add_option("--k-max", scan_k_max, "Largest k")->required();
  add_irred_budget(scan_cmd);

  // equidist
  auto* eq_cmd = app.add_subcommand("equidist", "Fractional parts of (a!)^(1/k)");
  eq_cmd->require_subcommand(1);
  SampleArgs sample_args;
  auto* eq_gen = eq_cmd->add_subcommand("generate", "Emit the sample set");
  add_sample_options(eq_gen, sample_args);
  std::string count_lo = "0", count_hi = "1";
  bool count_lo_open = false, count_hi_open = false;
  auto* eq_count = eq_cmd->add_subcommand("count", "Samples inside an interval");
  add_sample_options(eq_count, sample_args);
  eq_count->add_option("--lo", count_lo, "Left endpoint (e.g. 0, 1/2, 0.25)");
  eq_count->add_option("--hi", count_hi, "Right endpoint");
  eq_count->add_flag("--lo-open", count_lo_open, "Exclude the left endpoint");
  eq_count->add_flag("--hi-open", count_hi_open, "Exclude the right endpoint");
  auto* eq_disc = eq_cmd->add_subcommand("discrepancy", "Exact star discrepancy");
  add_sample_options(eq_disc, sample_args);
  u64 gamma = 0;
  auto* eq_crit = eq_cmd->add_subcommand("critical", "Samples inside the critical windows at c >= gamma");
  add_sample_options(eq_crit, sample_args);
  eq_crit->add_option("--gamma", gamma, "Lower bound on c (default ceil(sqrt(A)))");
  std::vector<u64> conj_a;
  std::vector<double> conj_eps{0.1, 0.25};
  std::vector<std::string> conj_intervals{"0:1/2"};
  auto* eq_conj = eq_cmd->add_subcommand("conjecture", "Deviation table |S n I| - |S||I|");
  add_sample_options(eq_conj, sample_args);
  eq_conj->add_option("--A-list", conj_a, "Sample bounds A")->required();
  eq_conj->add_option("--eps", conj_eps, "Exponents epsilon for |S|^(1-eps)");
  eq_conj->add_option("--interval", conj_intervals, "Intervals lo:hi");

  // verify-bounds
  std::uint32_t lemma_bits = 128, guard_bits = 8;
  auto* verify_cmd = app.add_subcommand("verify-bounds", "Check the analytic inequalities on the default grids");
  verify_cmd->add_option("--lemma-bits", lemma_bits, "Verification precision (default 128)");
  verify_cmd->add_option("--guard-bits", guard_bits, "Rounding guard (default 8)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return 2;
  }

  std::ostringstream report;
  try {
    const RunConfig cfg = resolve_config(app, flags, env);
    const unsigned threads = cfg.threads;

    if (*search_cmd) {
      if (c_max < 1) throw UsageError("--c-max must be positive");
      emit_solutions(report, cfg, search::brute_force_search(c_max, a_min, threads));
    } else if (*locate_cmd) {
      if (loc_a_min < 1 || loc_k_min < 2 || loc_a_min > loc_a_max || loc_k_min > loc_k_max) {
        throw UsageError("need 1 <= a-min <= a-max and 2 <= k-min <= k-max");
      }
      const u64 na = loc_a_max - loc_a_min + 1, nk = loc_k_max - loc_k_min + 1;
      std::vector<std::optional<search::RootHit>> cells(na * nk);
      parallel_for(0, cells.size(), threads, [&](std::size_t i) {
        cells[i] = search::interval_search(loc_a_min + i / nk, loc_k_min + i % nk);
      });
      std::vector<search::RootHit> hits;
      for (auto& c : cells) {
        if (c) hits.push_back(std::move(*c));
      }
      if (cfg.format == OutputFormat::Json) {
        emit_json(report, io::to_json_array(hits));
      } else if (cfg.format == OutputFormat::Csv) {
        report << "a,k,c,valid_solution\n";
        for (const auto& h : hits) {
          report << h.a << ',' << h.k << ',' << h.c.to_decimal() << ',' << (h.valid_solution ? "true" : "false") << '\n';
        }
      } else {
        Table t({"a", "k", "c", "valid_solution"});
        for (const auto& h : hits) t.add({str(h.a), str(h.k), h.c.to_decimal(), h.valid_solution ? "yes" : "no"});
        t.print(report);
      }
    } else if (*screen_cmd) {
      if (screen_k < 2) throw UsageError("--k must be >= 2");
      std::vector<u64> primes;
      if (screen_p != 0) {
        primes.push_back(screen_p);
      } else {
        const u64 bound = screen_prime_max != 0 ? screen_prime_max : cfg.prime_limit;
        for (u64 p : modular::primes_up_to(bound)) {
          if (p > screen_k) primes.push_back(p);
        }
      }
      std::vector<modular::ScreenOutcome> outcomes(primes.size());
      parallel_for(0, primes.size(), threads,
                   [&](std::size_t i) { outcomes[i] = modular::screen_class_k(primes[i], screen_k); });
      if (cfg.format == OutputFormat::Json) {
        emit_json(report, io::to_json_array(outcomes));
      } else if (cfg.format == OutputFormat::Csv) {
        report << "p,k,verdict,roots\n";
        for (const auto& o : outcomes) {
          report << o.p << ',' << o.k << ',' << (o.verdict == modular::Verdict::Impossible ? "impossible" : "possible")
                 << ',' << join(o.roots, ';') << '\n';
        }
      } else {
        Table t({"p", "k", "verdict", "roots"});
        for (const auto& o : outcomes) {
          t.add({str(o.p), str(o.k), o.verdict == modular::Verdict::Impossible ? "impossible" : "possible",
                 join(o.roots, ' ')});
        }
        t.print(report);
      }
    } else if (*density_cmd) {
      const u64 n = density_n != 0 ? density_n : cfg.prime_limit;
      std::vector<modular::DensityReport> rows;
      for (u64 k : density_k) rows.push_back(modular::no_root_density(k, n, threads));
      if (cfg.format == OutputFormat::Json) {
        emit_json(report, io::to_json_array(rows));
      } else if (cfg.format == OutputFormat::Csv) {
        io::write_density_csv(report, rows);
      } else {
        Table t({"k", "N", "primes", "no_root", "fraction", "approx"});
        for (const auto& d : rows) {
          t.add({str(d.k), str(d.prime_bound), str(d.primes_tested), str(d.no_root_count),
                 io::format_rational(d.fraction()), approx(d.fraction())});
        }
        t.print(report);
      }
    } else if (*count_cmd) {
      const auto r = modular::count_bound_report(cb_p, cb_k, cb_n);
      if (cfg.format == OutputFormat::Json) {
        emit_json(report, io::to_json(r));
      } else if (cfg.format == OutputFormat::Csv) {
        report << "p,k,n,roots,actual,bound,bound_floor,residue_bound\n"
               << r.p << ',' << r.k << ',' << r.n << ',' << join(r.roots, ';') << ',' << r.actual << ','
               << io::format_rational(r.bound) << ',' << r.bound_floor << ',' << r.residue_bound << '\n';
      } else {
        Table t({"p", "k", "n", "roots", "actual", "bound", "bound_floor", "residue_bound"});
        t.add({str(r.p), str(r.k), str(r.n), join(r.roots, ' '), str(r.actual), io::format_rational(r.bound),
               str(r.bound_floor), str(r.residue_bound)});
        t.print(report);
      }
    } else if (*irred_cmd || *scan_cmd) {
      if (*scan_cmd || irred_scan) {
        const u64 am = *scan_cmd ? scan_a_max : irred_a_max;
        const u64 km = *scan_cmd ? scan_k_max : irred_k_max;
        if (am == 0 || km == 0) throw UsageError("scan needs --a-max and --k-max");
        emit_scan(report, cfg, polyfact::exception_scan(am, km, irred_opts, threads));
      } else {
        polyfact::IntPoly poly;
        if (!irred_coeffs.empty()) {
          std::vector<Integer> c;
          std::stringstream ss(irred_coeffs);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            Integer v;
            if (v.set_str(tok, 10) != 0) throw UsageError("bad coefficient: " + tok);
            c.push_back(v);
          }
          poly = polyfact::IntPoly(std::move(c));
        } else if (irred_k != 0) {
          poly = irred_a != 0 ? polyfact::falling_to_monomial(irred_k, Integer(-arith::factorial(irred_a).value()))
                              : polyfact::falling_plus_one(irred_k);
        } else {
          throw UsageError("irred needs --k, --coeffs or --scan");
        }
        const auto v = polyfact::is_irreducible_over_z(poly, irred_opts);
        if (cfg.format == OutputFormat::Json) {
          Json j = io::to_json(v);
          j["poly"] = io::to_json(poly);
          j["certificate_verified"] = polyfact::verify_certificate(poly, v);
          emit_json(report, j);
        } else {
          Table t({"input", "polynomial", "status", "certificate", "witness"});
          emit_verdict_table(t, irred_coeffs.empty() ? "k=" + str(irred_k) : "coeffs", poly, v);
          if (cfg.format == OutputFormat::Csv) {
            std::string f;
            for (const auto& fac : v.certificate.factors) f += (f.empty() ? "" : ";") + fac.to_string();
            report << "polynomial,status,certificate,primes,factors\n\"" << poly.to_string() << "\","
                   << io::to_json(v)["status"].get<std::string>() << ','
                   << io::to_json(v)["certificate"]["kind"].get<std::string>() << ','
                   << join(v.certificate.primes, ';') << ",\"" << f << "\"\n";
          } else {
            t.print(report);
          }
        }
      }
    } else if (*eq_cmd) {
      if (*eq_gen) {
        const auto set = acquire_samples(sample_args, cfg);
        if (cfg.format == OutputFormat::Json) {
          io::write_samples_jsonl(report, set);
        } else if (cfg.format == OutputFormat::Csv) {
          report << "a,k,frac_num,precision_bits\n";
          for (const auto& s : set.samples) {
            report << s.a << ',' << s.k << ',' << s.frac_num.to_decimal() << ',' << set.precision_bits << '\n';
          }
        } else {
          report << "A = " << set.max_a << ", K = " << set.max_k << ", P = " << set.precision_bits
                 << ", |S| = " << set.size() << '\n';
          Table t({"a", "k", "frac"});
          Integer scale;
          mpz_ui_pow_ui(scale.get_mpz_t(), 2, set.precision_bits);
          for (const auto& s : set.samples) {
            t.add({str(s.a), str(s.k), approx(Rational(s.frac_num.value(), scale))});
          }
          t.print(report);
        }
      } else if (*eq_count) {
        const auto set = acquire_samples(sample_args, cfg);
        equidist::Interval in;
        try {
          in = equidist::Interval{io::parse_rational(count_lo), io::parse_rational(count_hi), count_lo_open,
                                  count_hi_open};
          in.validate();
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        const u64 n = equidist::interval_count(set, in);
        if (cfg.format == OutputFormat::Json) {
          emit_json(report, Json{{"A", set.max_a}, {"K", set.max_k}, {"size", set.size()},
                                 {"interval", io::to_json(in)}, {"count", n}});
        } else if (cfg.format == OutputFormat::Csv) {
          report << "A,K,size,lo,hi,lo_open,hi_open,count\n"
                 << set.max_a << ',' << set.max_k << ',' << set.size() << ',' << io::format_rational(in.lo) << ','
                 << io::format_rational(in.hi) << ',' << in.lo_open << ',' << in.hi_open << ',' << n << '\n';
        } else {
          Table t({"A", "K", "|S|", "interval", "count"});
          t.add({str(set.max_a), str(set.max_k), str(set.size()), interval_text(in), str(n)});
          t.print(report);
        }
      } else if (*eq_disc) {
        const auto set = acquire_samples(sample_args, cfg);
        const Rational d = equidist::star_discrepancy(set);
        if (cfg.format == OutputFormat::Json) {
          emit_json(report, Json{{"A", set.max_a}, {"K", set.max_k}, {"size", set.size()},
                                 {"discrepancy", io::format_rational(d)}, {"approx", d.get_d()}});
        } else if (cfg.format == OutputFormat::Csv) {
          report << "A,K,size,discrepancy,approx\n"
                 << set.max_a << ',' << set.max_k << ',' << set.size() << ',' << io::format_rational(d) << ','
                 << approx(d) << '\n';
        } else {
          Table t({"A", "K", "|S|", "D*"});
          t.add({str(set.max_a), str(set.max_k), str(set.size()), approx(d)});
          t.print(report);
        }
      } else if (*eq_crit) {
        const auto set = acquire_samples(sample_args, cfg);
        const u64 g = gamma != 0 ? gamma : equidist::default_gamma(set.max_a);
        const auto h = equidist::critical_hits(set, g);
        if (cfg.format == OutputFormat::Json) {
          Json j = io::to_json(h);
          j["A"] = set.max_a;
          j["K"] = set.max_k;
          j["gamma"] = g;
          emit_json(report, j);
        } else {
          const auto row = [&](const char* parity, const std::optional<equidist::CriticalInterval>& ci, u64 hits,
                               u64 samples) -> std::vector<std::string> {
            if (!ci) return {parity, "-", "-", "-", "0", str(samples)};
            return {parity, str(ci->k), io::format_rational(ci->lo), io::format_rational(ci->hi), str(hits),
                    str(samples)};
          };
          const auto even = row("even", h.even, h.even_hits, h.even_samples);
          const auto odd = row("odd", h.odd, h.odd_hits, h.odd_samples);
          if (cfg.format == OutputFormat::Csv) {
            report << "parity,k,lo,hi,hits,samples\n";
            for (const auto* r : {&even, &odd}) {
              for (std::size_t i = 0; i < r->size(); ++i) report << (i ? "," : "") << (*r)[i];
              report << '\n';
            }
          } else {
            report << "A = " << set.max_a << ", K = " << set.max_k << ", gamma = " << g << '\n';
            Table t({"parity", "k", "lo", "hi", "hits", "samples"});
            t.add(even);
            t.add(odd);
            t.print(report);
          }
        }
      } else if (*eq_conj) {
        std::vector<equidist::Interval> intervals;
        for (const auto& s : conj_intervals) intervals.push_back(parse_interval(s));
        if (conj_a.empty()) throw UsageError("--A-list needs at least one value");
        std::vector<equidist::ConjectureRow> rows;
        for (u64 a : conj_a) {
          SampleArgs one = sample_args;
          one.max_a = a;
          one.samples_file.clear();
          auto part = equidist::conjecture_rows(acquire_samples(one, cfg), conj_eps, intervals);
          rows.insert(rows.end(), part.begin(), part.end());
        }
        if (cfg.format == OutputFormat::Json) {
          emit_json(report, io::to_json_array(rows));
        } else {
          std::vector<std::string> header{"A", "size", "interval", "count", "deviation", "relative"};
          for (double e : conj_eps) {
            std::ostringstream os;
            os << "S^(1-" << e << ")";
            header.push_back(os.str());
          }
          Table t(header);
          for (const auto& r : rows) {
            std::vector<std::string> cells{str(r.max_a), str(r.size), interval_text(r.interval), str(r.count),
                                           io::format_rational(r.deviation),
                                           approx(r.deviation / Rational(static_cast<unsigned long>(r.size)))};
            for (double th : r.thresholds) {
              std::ostringstream os;
              os << std::setprecision(10) << th;
              cells.push_back(os.str());
            }
            t.add(cells);
          }
          if (cfg.format == OutputFormat::Csv) {
            for (std::size_t i = 0; i < header.size(); ++i) report << (i ? "," : "") << header[i];
            report << '\n';
            for (const auto& r : rows) {
              report << r.max_a << ',' << r.size << ",\"" << interval_text(r.interval) << "\"," << r.count << ','
                     << io::format_rational(r.deviation) << ','
                     << approx(r.deviation / Rational(static_cast<unsigned long>(r.size)));
              for (double th : r.thresholds) report << ',' << std::setprecision(10) << th;
              report << '\n';
            }
          } else {
            t.print(report);
          }
        }
      }
    } else if (*verify_cmd) {
      if (lemma_bits < 64 || guard_bits >= lemma_bits) throw UsageError("need --lemma-bits >= 64 and guard < bits");
      auto grid = arith::LemmaGrid::defaults(lemma_bits);
      grid.guard_bits = guard_bits;
      const auto r = arith::verify_lemma_bounds(grid);
      if (cfg.format == OutputFormat::Json) {
        emit_json(report, io::to_json(r));
      } else if (cfg.format == OutputFormat::Csv) {
        report << "kind,k,point,lower_margin,upper_margin,pass\n";
        for (const auto& p : r.points) {
          report << (p.kind == arith::LemmaKind::ExpInequality ? "exp_inequality" : "falling_root") << ',' << p.k
                 << ',' << io::format_rational(p.point) << ',' << std::setprecision(17) << p.lower_margin << ','
                 << p.upper_margin << ',' << (p.pass ? "true" : "false") << '\n';
        }
      } else {
        std::size_t failed = 0;
        for (const auto& p : r.points) failed += p.pass ? 0 : 1;
        Table t({"points", "failed", "precision_bits", "tolerance", "min_margin", "pass"});
        std::ostringstream mm;
        mm << std::setprecision(6) << r.min_margin;
        t.add({str(r.points.size()), str(failed), str(r.precision_bits), "2^" + std::to_string(r.tolerance_exponent),
               mm.str(), r.pass ? "yes" : "no"});
        t.print(report);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }

  if (!flags.out_path.empty()) {
    std::ofstream file(flags.out_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << report.str()) || !file.flush()) {
      err << "error: cannot write " << flags.out_path << '\n';
      return 1;
    }
  } else {
    out << report.str();
    out.flush();
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr, process_env());
}

}  // namespace fdl::cli
