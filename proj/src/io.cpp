#include "fdl/io.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fdl::io {

namespace {

using polyfact::IrredCertificate;
using polyfact::IrredStatus;

std::string nat_str(const Natural& n) { return n.to_decimal(); }

Natural nat_from(const Json& j) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  return Natural::from_decimal(j.get<std::string>());
}

const char* status_name(IrredStatus s) {
  switch (s) {
    case IrredStatus::Irreducible: return "irreducible";
    case IrredStatus::Reducible: return "reducible";
    case IrredStatus::Unknown: return "unknown";
  }
  return "unknown";
}

IrredStatus status_from(const std::string& s) {
  if (s == "irreducible") return IrredStatus::Irreducible;
  if (s == "reducible") return IrredStatus::Reducible;
  if (s == "unknown") return IrredStatus::Unknown;
  throw std::invalid_argument("unknown irreducibility status: " + s);
}

constexpr std::pair<IrredCertificate::Kind, const char*> kKindNames[] = {
    {IrredCertificate::Kind::None, "none"},
    {IrredCertificate::Kind::DegreeOne, "degree_one"},
    {IrredCertificate::Kind::IrreducibleModP, "irreducible_mod_p"},
    {IrredCertificate::Kind::PartitionSieve, "partition_sieve"},
    {IrredCertificate::Kind::Recombination, "recombination"},
    {IrredCertificate::Kind::Factors, "factors"},
    {IrredCertificate::Kind::RationalRoot, "rational_root"},
};

const char* kind_name(IrredCertificate::Kind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "none";
}

IrredCertificate::Kind kind_from(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  throw std::invalid_argument("unknown certificate kind: " + s);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational q;
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    const auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed rational: " + std::string(text));
    const Integer d{std::string(den)};
    if (sgn(d) == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    q = Rational(Integer(std::string(num)), d);
  } else if (dot != std::string_view::npos) {
    const auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    const Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip));
    const Integer frac = fp.empty() ? Integer(0) : Integer(std::string(fp));
    q = Rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational: " + std::string(text));
    q = Rational(Integer(std::string(s)));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  if (cmp(c.get_den(), 1) == 0) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Json to_json(const search::Solution& s) {
  return Json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"k", s.k}, {"trivial", s.trivial}};
}

Json to_json(const search::RootHit& h) {
  return Json{{"a", h.a}, {"k", h.k}, {"c", nat_str(h.c)}, {"valid_solution", h.valid_solution}};
}

Json to_json(const modular::ScreenOutcome& s) {
  return Json{{"p", s.p},
              {"k", s.k},
              {"verdict", s.verdict == modular::Verdict::Impossible ? "impossible" : "possible"},
              {"roots", s.roots}};
}

Json to_json(const modular::DensityReport& d) {
  return Json{{"k", d.k},
              {"N", d.prime_bound},
              {"primes", d.primes_tested},
              {"no_root", d.no_root_count},
              {"fraction", format_rational(d.fraction())}};
}

Json to_json(const modular::CountBoundReport& r) {
  return Json{{"p", r.p},
              {"k", r.k},
              {"n", r.n},
              {"roots", r.roots},
              {"actual", r.actual},
              {"bound", format_rational(r.bound)},
              {"bound_floor", r.bound_floor},
              {"residue_bound", r.residue_bound}};
}

Json to_json(const polyfact::IntPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
  return Json{{"coeffs", coeffs}, {"text", p.to_string()}};
}

Json to_json(const polyfact::IrredVerdict& v) {
  Json cert{{"kind", kind_name(v.certificate.kind)},
            {"primes", v.certificate.primes},
            {"factors", to_json_array(v.certificate.factors)}};
  if (v.certificate.root) cert["root"] = v.certificate.root->get_str();
  return Json{{"status", status_name(v.status)}, {"certificate", cert}};
}

Json to_json(const polyfact::ScanEntry& e) {
  return Json{{"k", e.k}, {"a", e.a}, {"verdict", to_json(e.verdict)}};
}

Json to_json(const polyfact::ExceptionScan& s) {
  return Json{{"cells", s.cells}, {"reducible", to_json_array(s.reducible)}, {"unknown", to_json_array(s.unknown)}};
}

Json to_json(const arith::LemmaReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    pts.push_back(Json{{"kind", p.kind == arith::LemmaKind::ExpInequality ? "exp_inequality" : "falling_root"},
                       {"k", p.k},
                       {"point", format_rational(p.point)},
                       {"lower_margin", p.lower_margin},
                       {"upper_margin", p.upper_margin},
                       {"pass", p.pass}});
  }
  return Json{{"points", pts},
              {"precision_bits", r.precision_bits},
              {"guard_bits", r.guard_bits},
              {"tolerance_exponent", r.tolerance_exponent},
              {"min_margin", r.min_margin},
              {"pass", r.pass}};
}

Json to_json(const equidist::Interval& in) {
  return Json{{"lo", format_rational(in.lo)}, {"hi", format_rational(in.hi)}, {"lo_open", in.lo_open}, {"hi_open", in.hi_open}};
}

Json to_json(const equidist::CriticalInterval& ci) {
  return Json{{"k", ci.k},
              {"c_floor", ci.c_floor},
              {"width", format_rational(ci.width)},
              {"lo", format_rational(ci.lo)},
              {"hi", format_rational(ci.hi)}};
}

Json to_json(const equidist::CriticalHits& h) {
  Json hits = Json::array();
  for (const auto& [a, k] : h.hits) hits.push_back(Json{{"a", a}, {"k", k}});
  Json j{{"even", to_json(h.even)},
         {"even_hits", h.even_hits},
         {"even_samples", h.even_samples},
         {"odd_hits", h.odd_hits},
         {"odd_samples", h.odd_samples},
         {"hits", hits}};
  j["odd"] = h.odd ? to_json(*h.odd) : Json(nullptr);
  return j;
}

Json to_json(const equidist::ConjectureRow& row) {
  return Json{{"A", row.max_a},
              {"size", row.size},
              {"interval", to_json(row.interval)},
              {"count", row.count},
              {"deviation", format_rational(row.deviation)},
              {"epsilons", row.epsilons},
              {"thresholds", row.thresholds}};
}

Json to_json(const equidist::Sample& s) {
  return Json{{"a", s.a}, {"k", s.k}, {"frac_num", nat_str(s.frac_num)}};
}

search::Solution solution_from_json(const Json& j) {
  search::Solution s;
  s.a = j.at("a").get<std::uint64_t>();
  s.b = j.at("b").get<std::uint64_t>();
  s.c = j.at("c").get<std::uint64_t>();
  s.k = j.at("k").get<std::uint64_t>();
  s.trivial = j.at("trivial").get<bool>();
  return s;
}

modular::DensityReport density_from_json(const Json& j) {
  modular::DensityReport d;
  d.k = j.at("k").get<std::uint64_t>();
  d.prime_bound = j.at("N").get<std::uint64_t>();
  d.primes_tested = j.at("primes").get<std::uint64_t>();
  d.no_root_count = j.at("no_root").get<std::uint64_t>();
  return d;
}

modular::CountBoundReport count_bound_from_json(const Json& j) {
  modular::CountBoundReport r;
  r.p = j.at("p").get<std::uint64_t>();
  r.k = j.at("k").get<std::uint64_t>();
  r.n = j.at("n").get<std::uint64_t>();
  r.roots = j.at("roots").get<std::vector<std::uint64_t>>();
  r.actual = j.at("actual").get<std::uint64_t>();
  r.bound = parse_rational(j.at("bound").get<std::string>());
  r.bound_floor = j.at("bound_floor").get<std::uint64_t>();
  r.residue_bound = j.at("residue_bound").get<std::uint64_t>();
  return r;
}

modular::ScreenOutcome screen_from_json(const Json& j) {
  modular::ScreenOutcome s;
  s.p = j.at("p").get<std::uint64_t>();
  s.k = j.at("k").get<std::uint64_t>();
  const auto v = j.at("verdict").get<std::string>();
  if (v == "impossible") {
    s.verdict = modular::Verdict::Impossible;
  } else if (v == "possible") {
    s.verdict = modular::Verdict::Possible;
  } else {
    throw std::invalid_argument("unknown verdict: " + v);
  }
  s.roots = j.at("roots").get<std::vector<std::uint64_t>>();
  return s;
}

polyfact::IntPoly poly_from_json(const Json& j) {
  std::vector<Integer> c;
  for (const auto& v : j.at("coeffs")) c.emplace_back(v.get<std::string>());
  return polyfact::IntPoly(std::move(c));
}

polyfact::IrredVerdict verdict_from_json(const Json& j) {
  polyfact::IrredVerdict v;
  v.status = status_from(j.at("status").get<std::string>());
  const auto& cert = j.at("certificate");
  v.certificate.kind = kind_from(cert.at("kind").get<std::string>());
  v.certificate.primes = cert.at("primes").get<std::vector<std::uint64_t>>();
  for (const auto& f : cert.at("factors")) v.certificate.factors.push_back(poly_from_json(f));
  if (cert.contains("root")) v.certificate.root = Integer(cert.at("root").get<std::string>());
  return v;
}

equidist::Interval interval_from_json(const Json& j) {
  equidist::Interval in;
  in.lo = parse_rational(j.at("lo").get<std::string>());
  in.hi = parse_rational(j.at("hi").get<std::string>());
  in.lo_open = j.value("lo_open", false);
  in.hi_open = j.value("hi_open", false);
  in.validate();
  return in;
}

equidist::Sample sample_from_json(const Json& j) {
  equidist::Sample s;
  s.a = j.at("a").get<std::uint64_t>();
  s.k = j.at("k").get<std::uint64_t>();
  s.frac_num = nat_from(j.at("frac_num"));
  return s;
}

void write_solutions_csv(std::ostream& out, const std::vector<search::Solution>& sols) {
  out << "a,b,c,k,trivial\n";
  for (const auto& s : sols) {
    out << s.a << ',' << s.b << ',' << s.c << ',' << s.k << ',' << (s.trivial ? "true" : "false") << '\n';
  }
}

void write_density_csv(std::ostream& out, const std::vector<modular::DensityReport>& rows) {
  out << "k,N,primes,no_root,fraction_num,fraction_den\n";
  for (const auto& d : rows) {
    out << d.k << ',' << d.prime_bound << ',' << d.primes_tested << ',' << d.no_root_count << ','
        << d.no_root_count << ',' << d.primes_tested << '\n';
  }
}

void write_samples_jsonl(std::ostream& out, const equidist::SampleSet& set) {
  out << Json{{"A", set.max_a}, {"K", set.max_k}, {"precision_bits", set.precision_bits}, {"size", set.size()}}.dump()
      << '\n';
  for (const auto& s : set.samples) out << to_json(s).dump() << '\n';
}

equidist::SampleSet read_samples_jsonl(std::istream& in) {
  equidist::SampleSet set;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("sample file: missing header");
  try {
    const Json head = Json::parse(line);
    set.max_a = head.at("A").get<std::uint64_t>();
    set.max_k = head.at("K").get<std::uint64_t>();
    set.precision_bits = head.at("precision_bits").get<std::uint32_t>();
    const auto size = head.at("size").get<std::uint64_t>();
    set.samples.reserve(size);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      set.samples.push_back(sample_from_json(Json::parse(line)));
    }
    if (set.samples.size() != size) throw std::runtime_error("sample file: truncated");
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("sample file: ") + e.what());
  }
  return set;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

SampleCache::SampleCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SampleCache::path_for(std::uint64_t max_a, std::uint32_t precision_bits,
                                            const equidist::KPolicy& policy) const {
  const Json args{{"A", max_a}, {"K", policy.max_k(max_a)}, {"P", precision_bits}};
  return dir_ / ("equidist-generate-" + fnv1a_hex(args.dump()) + ".jsonl");
}

std::optional<equidist::SampleSet> SampleCache::load(std::uint64_t max_a, std::uint32_t precision_bits,
                                                     const equidist::KPolicy& policy) const {
  std::ifstream in(path_for(max_a, precision_bits, policy));
  if (!in) return std::nullopt;
  try {
    auto set = read_samples_jsonl(in);
    if (set.max_a != max_a || set.precision_bits != precision_bits || set.max_k != policy.max_k(max_a)) {
      return std::nullopt;
    }
    return set;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entry: regenerate
  }
}

void SampleCache::store(const equidist::SampleSet& set, const equidist::KPolicy& policy) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(set.max_a, set.precision_bits, policy);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    write_samples_jsonl(out, set);
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace fdl::io
