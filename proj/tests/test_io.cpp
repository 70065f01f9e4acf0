#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fdl/arith.hpp"
#include "fdl/io.hpp"

using namespace fdl;
using namespace fdl::io;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational(".25") == Rational(1, 4));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("2/4").get_den() == 2);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(4, 2)) == "2");
}

TEST_CASE("solution json shape and round trip") {
  const search::Solution s{6, 7, 10, 3, false};
  CHECK(to_json(s).dump() == R"({"a":6,"b":7,"c":10,"k":3,"trivial":false})");
  CHECK(solution_from_json(Json::parse(to_json(s).dump())) == s);
  CHECK(to_json_array(std::vector<search::Solution>{}).dump() == "[]");
}

TEST_CASE("report round trips") {
  const auto d = modular::no_root_density(3, 2000);
  CHECK(density_from_json(Json::parse(to_json(d).dump())) == d);
  const auto cb = modular::count_bound_report(7, 2, 100);
  CHECK(count_bound_from_json(Json::parse(to_json(cb).dump())) == cb);
  for (std::uint64_t p : {5, 7, 13}) {
    const auto o = modular::screen_class_k(p, 2);
    CHECK(screen_from_json(Json::parse(to_json(o).dump())) == o);
  }
  for (std::uint64_t k : {2, 4, 6}) {
    const auto v = polyfact::is_irreducible_over_z(polyfact::falling_plus_one(k));
    CHECK(verdict_from_json(Json::parse(to_json(v).dump())) == v);
  }
  const auto r = polyfact::is_irreducible_over_z(polyfact::falling_to_monomial(3, Integer(-720)));
  CHECK(verdict_from_json(Json::parse(to_json(r).dump())) == r);
  const auto big = polyfact::falling_to_monomial(20, Integer(-arith::factorial(23).value()));
  CHECK(poly_from_json(to_json(big)) == big);
  const equidist::Interval in{Rational(1, 3), Rational(1, 2), true, false};
  const auto back = interval_from_json(to_json(in));
  CHECK(back.lo == in.lo);
  CHECK(back.hi == in.hi);
  CHECK(back.lo_open);
  CHECK_FALSE(back.hi_open);
}

TEST_CASE("csv writers") {
  std::ostringstream os;
  write_solutions_csv(os, {{3, 5, 6, 1, true}, {6, 7, 10, 3, false}});
  CHECK(os.str() == "a,b,c,k,trivial\n3,5,6,1,true\n6,7,10,3,false\n");
  std::ostringstream empty;
  write_solutions_csv(empty, {});
  CHECK(empty.str() == "a,b,c,k,trivial\n");
  std::ostringstream ds;
  modular::DensityReport d;
  d.k = 2;
  d.prime_bound = 100000;
  d.primes_tested = 9591;
  d.no_root_count = 4806;
  write_density_csv(ds, {d});
  CHECK(ds.str() == "k,N,primes,no_root,fraction_num,fraction_den\n2,100000,9591,4806,4806,9591\n");
}

TEST_CASE("sample sets round trip through JSON lines") {
  const auto set = equidist::generate_samples(50, 96);
  std::stringstream ss;
  write_samples_jsonl(ss, set);
  CHECK(read_samples_jsonl(ss) == set);
  std::stringstream bad("{\"A\":5}\n");
  CHECK_THROWS_AS(read_samples_jsonl(bad), std::runtime_error);
}

TEST_CASE("sample cache") {
  const auto dir = std::filesystem::temp_directory_path() / "fdl_cache_test";
  std::filesystem::remove_all(dir);
  SampleCache cache(dir);
  const equidist::KPolicy policy;
  CHECK_FALSE(cache.load(40, 96, policy).has_value());
  const auto set = equidist::generate_samples(40, 96, policy);
  cache.store(set, policy);
  const auto hit = cache.load(40, 96, policy);
  REQUIRE(hit.has_value());
  CHECK(*hit == set);
  CHECK_FALSE(cache.load(40, 128, policy).has_value());
  CHECK(cache.path_for(40, 96, policy) != cache.path_for(41, 96, policy));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
