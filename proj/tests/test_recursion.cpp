#include <string>

#include "doctest.h"
#include "limitnerve/error.hpp"
#include "limitnerve/recursion.hpp"
#include "oracles.hpp"

using namespace limitnerve;

TEST_CASE("torus recursion parses with the expected sections") {
  const auto rec = parse_recursion(oracle::torus_text());
  REQUIRE(rec.degree() == 2);
  REQUIRE(rec.generators().size() == 2);
  const auto& u = rec.generator(0);
  const auto& v = rec.generator(1);
  CHECK(u.name == "u");
  CHECK(u.permutation == std::vector<Letter>{1, 0});
  CHECK(u.sections[0].empty());
  CHECK(rec.format(u.sections[1]) == "u v");
  CHECK(rec.format(v.sections[0]) == "u^-1");
  CHECK(rec.format(v.sections[1]) == "v");
}

TEST_CASE("adding machine prints canonically") {
  const auto rec = parse_recursion(oracle::adding_text());
  CHECK(pretty_print(rec) == "alphabet = 0 1\na = (0 1)[1, a]\n");
  CHECK(parse_recursion(pretty_print(rec)) == rec);
}

TEST_CASE("torus prints generators in declaration order") {
  const auto rec = parse_recursion(oracle::torus_text());
  CHECK(pretty_print(rec) == "alphabet = 0 1\nu = (0 1)[1, u v]\nv = (0 1)[u^-1, v]\n");
}

TEST_CASE("undeclared symbol is rejected") {
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = (0 1)[1, b]"), InvalidRecursion);
  try {
    parse_recursion("alphabet = 0 1 ; a = (0 1)[1, b]");
  } catch (const InvalidRecursion& e) {
    CHECK(std::string(e.what()).find("symbol b undeclared") != std::string::npos);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = (0 0)[1, 1]"), InvalidRecursion);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = (0 2)[1, 1]"), InvalidRecursion);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = ()[1, 1] ; a = ()[1, 1]"), InvalidRecursion);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = ()[1]"), InvalidRecursion);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 ; a = ()[1]"), InvalidRecursion);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; 0 = ()[1, 1]"), InvalidRecursion);
}

TEST_CASE("grammar errors carry a position") {
  CHECK_THROWS_AS(parse_recursion(""), ParseError);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = ()[,]"), ParseError);
  CHECK_THROWS_AS(parse_recursion("alphabet = 0 1 ; a = ()[1 a, 1]"), ParseError);
  try {
    parse_recursion("alphabet = 0 1\na = (0 1[1, a]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("section words are freely reduced") {
  const auto rec = parse_recursion("alphabet = 0 1 ; a = (0 1)[a a^-1, b b^-1 a] ; b = ()[1, 1]");
  CHECK(rec.generator(0).sections[0].empty());
  CHECK(rec.format(rec.generator(0).sections[1]) == "a");
}

TEST_CASE("comments and forward references") {
  const auto rec = parse_recursion("# header\nalphabet = x y z # letters\nf = (x y z)[g, 1, f^-1]\ng = (x z)[1, g, f]\n");
  CHECK(rec.degree() == 3);
  CHECK(rec.generator(0).permutation == std::vector<Letter>{1, 2, 0});
  CHECK(rec.format(rec.generator(0).sections[2]) == "f^-1");
  CHECK(parse_recursion(pretty_print(rec)) == rec);
}

TEST_CASE("word parsing") {
  const auto rec = parse_recursion(oracle::torus_text());
  CHECK(rec.format(rec.parse_word("u v^-1")) == "u v^-1");
  CHECK(rec.parse_word("1").empty());
  CHECK(rec.parse_word("u u^-1").empty());
  CHECK_THROWS_AS(rec.parse_word("w"), ParseError);
}
