#include <doctest.h>

#include "fixtures.hpp"
#include "tug/io.hpp"

using namespace tug;
using namespace tug::testing;

TEST_CASE("parsing each kind") {
  SUBCASE("coalition") {
    const GameFile f = parse_game_file(R"({"kind":"coalition","players":2,
      "values":[0,"1/2",0,1]})");
    REQUIRE(f.kind == GameFile::Kind::kCoalition);
    CHECK(f.coalition->values[1] == R(1, 2));
    CHECK(validate_game_file(f).empty());
  }
  SUBCASE("normal form") {
    const GameFile f = parse_game_file(R"({"kind":"normal_form","players":2,
      "action_counts":[2,2],"utilities":[[1,0,0,1],[0,1,1,0]]})");
    REQUIRE(f.kind == GameFile::Kind::kNormalForm);
    CHECK(f.normal_form->utility(0, 3) == R(1));
    CHECK(validate_game_file(f).empty());
  }
  SUBCASE("community") {
    const GameFile f = parse_game_file(R"({"kind":"community","players":2,"communities":[
      {"members":[1],"profiles":[["0"]]},
      {"members":[2],"profiles":[["0"]]},
      {"members":[1,2],"profiles":[["1/2","1/2"]]}]})");
    REQUIRE(f.kind == GameFile::Kind::kCommunity);
    CHECK(f.community->communities[2].members == 0b11u);
    CHECK(validate_game_file(f).empty());
  }
  SUBCASE("exchange") {
    const GameFile f = parse_game_file(R"({"kind":"exchange","commodities":2,"types":[
      {"trades":[[0,0],["-1",1]],"values":[1,3]},
      {"trades":[[0,0],[1,"-1"]],"values":[3,1]}]})");
    REQUIRE(f.kind == GameFile::Kind::kExchange);
    CHECK(f.exchange->types[0].trades[1][0] == R(-1));
    CHECK(validate_game_file(f).empty());
  }
}

TEST_CASE("schema errors carry a path") {
  CHECK_THROWS_WITH_AS(parse_game_file("{"), doctest::Contains("invalid JSON"), ParseError);
  CHECK_THROWS_WITH_AS(parse_game_file(R"({"players":2})"),
                       doctest::Contains("missing field \"kind\""), ParseError);
  CHECK_THROWS_WITH_AS(parse_game_file(R"({"kind":"nope"})"), doctest::Contains("unknown"),
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_game_file(R"({"kind":"coalition","players":2,"values":[0,"x",0,1]})"),
      doctest::Contains("values[1]"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_game_file(R"({"kind":"coalition","players":2,"values":[0,0.5,0,1]})"),
      doctest::Contains("expected integer or \"p/q\""), ParseError);
}

TEST_CASE("value-level problems are diagnostics, not parse errors") {
  const GameFile f = parse_game_file(R"({"kind":"coalition","players":2,
    "values":[1,"-1/2",0,1]})");
  const auto bad = validate_game_file(f);
  REQUIRE(bad.size() == 2);
  CHECK(bad[0] == "values[0]: empty coalition must have value 0");
  CHECK(bad[1] == "values[1]: negative value");
}
