#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fdl/equidist.hpp"
#include "fdl/lemma_bounds.hpp"
#include "fdl/modular.hpp"
#include "fdl/natural.hpp"
#include "fdl/polyfact.hpp"
#include "fdl/search.hpp"

namespace fdl::io {

using Json = nlohmann::json;  // std::map backed, so keys serialize sorted

/// "3/4", "-2", "0.25", "1e-3" is rejected. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
/// Canonical "num/den", or "num" when den == 1.
std::string format_rational(const Rational& q);

Json to_json(const search::Solution& s);
Json to_json(const search::RootHit& h);
Json to_json(const modular::ScreenOutcome& s);
Json to_json(const modular::DensityReport& d);
Json to_json(const modular::CountBoundReport& r);
Json to_json(const polyfact::IntPoly& p);
Json to_json(const polyfact::IrredVerdict& v);
Json to_json(const polyfact::ScanEntry& e);
Json to_json(const polyfact::ExceptionScan& s);
Json to_json(const arith::LemmaReport& r);
Json to_json(const equidist::Interval& in);
Json to_json(const equidist::CriticalInterval& ci);
Json to_json(const equidist::CriticalHits& h);
Json to_json(const equidist::ConjectureRow& row);
Json to_json(const equidist::Sample& s);

search::Solution solution_from_json(const Json& j);
modular::DensityReport density_from_json(const Json& j);
modular::CountBoundReport count_bound_from_json(const Json& j);
modular::ScreenOutcome screen_from_json(const Json& j);
polyfact::IntPoly poly_from_json(const Json& j);
polyfact::IrredVerdict verdict_from_json(const Json& j);
equidist::Interval interval_from_json(const Json& j);
equidist::Sample sample_from_json(const Json& j);

template <typename T>
Json to_json_array(const std::vector<T>& items) {
  Json arr = Json::array();
  for (const auto& it : items) arr.push_back(to_json(it));
  return arr;
}

/// Header "a,b,c,k,trivial", one row per solution.
void write_solutions_csv(std::ostream& out, const std::vector<search::Solution>& sols);
/// Header "k,N,primes,no_root,fraction_num,fraction_den"; the fraction is
/// written unreduced as no_root/primes.
void write_density_csv(std::ostream& out, const std::vector<modular::DensityReport>& rows);

/// SampleSet as JSON lines: a header record, then one record per sample.
void write_samples_jsonl(std::ostream& out, const equidist::SampleSet& set);
/// Throws std::runtime_error on malformed input.
equidist::SampleSet read_samples_jsonl(std::istream& in);

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(std::string_view data);

/// JSONL cache of sample sets under a directory. Files are named by the
/// operation and a digest of its canonical arguments.
class SampleCache {
 public:
  explicit SampleCache(std::filesystem::path dir);

  std::filesystem::path path_for(std::uint64_t max_a, std::uint32_t precision_bits,
                                 const equidist::KPolicy& policy) const;
  std::optional<equidist::SampleSet> load(std::uint64_t max_a, std::uint32_t precision_bits,
                                          const equidist::KPolicy& policy) const;
  void store(const equidist::SampleSet& set, const equidist::KPolicy& policy) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace fdl::io
