#include <doctest.h>

#include <sstream>

#include "reclab/json_io.hpp"

using namespace reclab;

TEST_CASE("rationals serialize as num/den") {
  CHECK(to_json(Rational::parse("-2/4")) == "-1/2");
  CHECK(to_json(Rational(3)) == "3/1");
}

TEST_CASE("window json") {
  const json j = window_json(WindowSet(10, {3, 6, 9}));
  CHECK(j["N"] == 10);
  CHECK(j["in"] == json::array({3, 6, 9}));
  CHECK(j["out"] == json::array({1, 2, 4, 5, 7, 8, 10}));
  CHECK(j["unknown"].empty());
  CHECK(j["max_gap_in"] == 3);
  CHECK(window_json(WindowSet(4, {}))["max_gap_in"].is_null());
  CHECK(j.dump() == window_json(WindowSet(10, {9, 6, 3})).dump());
}

TEST_CASE("continued fractions round trip through json") {
  const ContinuedFraction cf = build_theoremB_quotients(3, BigInt(3));
  const json j = to_json(cf);
  CHECK(j[2].is_string());
  const ContinuedFraction back = cf_from_json(json::parse(j.dump()));
  CHECK(back.convergent(3).q == cf.convergent(3).q);
  CHECK_THROWS_AS(cf_from_json(json::array({1, 2})), DomainError);
}

TEST_CASE("window csv") {
  std::ostringstream out;
  write_window_csv(out, WindowSet(3, {2}));
  CHECK(out.str() == "n,status\n1,out\n2,in\n3,out\n");
}

TEST_CASE("tampered transcripts fail re-verification") {
  json t;
  t["links"] = json::array({{{"link", "a"}, {"lhs", "1/3"}, {"relation", "<"}, {"rhs", "1/2"}, {"holds", true}}});
  CHECK(reverify_transcript(t));
  t["links"][0]["lhs"] = "2/3";
  CHECK_FALSE(reverify_transcript(t));
}
