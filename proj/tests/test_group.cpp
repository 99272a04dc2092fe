#include <set>

#include "doctest.h"
#include "limitnerve/error.hpp"
#include "limitnerve/group.hpp"
#include "oracles.hpp"

using namespace limitnerve;

namespace {

GroupEngine engine_for(const char* text) { return GroupEngine(parse_recursion(text)); }

void check_action(GroupEngine& eng, Element e, const GeneratorWord& w, std::size_t depth) {
  for (const auto& v : oracle::words_up_to(eng.degree(), depth))
    REQUIRE(eng.act(e, v) == oracle::act_word(eng.recursion(), w, v));
}

}  // namespace

TEST_CASE("action on words") {
  auto add = engine_for(oracle::adding_text());
  const Element a = add.element("a");
  CHECK(add.act(a, LetterWord{1, 1}) == LetterWord{0, 0});
  for (const auto& w : oracle::words_up_to(2, 6)) {
    CHECK(add.act(a, w) == oracle::plus_one(w));
    CHECK(add.act(add.identity(), w) == w);
  }
  auto torus = engine_for(oracle::torus_text());
  CHECK(torus.act(torus.element("u"), LetterWord{1, 0}) == LetterWord{0, 0});
  for (const char* word : {"u", "v", "u v^-1", "v^-1 u^-1 v", "u u v v^-1 u"}) {
    const auto gw = torus.recursion().parse_word(word);
    check_action(torus, torus.element(gw), gw, 7);
  }
}

TEST_CASE("sections") {
  auto torus = engine_for(oracle::torus_text());
  const Element u = torus.element("u");
  CHECK(torus.section(u, Letter{1}) == torus.element("u v"));
  for (const auto& v : oracle::words_up_to(2, 4)) CHECK(torus.section(torus.identity(), v).is_identity());
  auto add = engine_for(oracle::adding_text());
  const Element aa = add.element("a a");
  CHECK(add.section(aa, Letter{0}) == add.element("a"));
  check_action(add, add.section(aa, Letter{0}), add.recursion().parse_word("a"), 6);
}

TEST_CASE("products and inverses") {
  auto torus = engine_for(oracle::torus_text());
  const Element uv = torus.multiply(torus.element("u"), torus.element("v"));
  CHECK(torus.permutation(uv) == std::vector<Letter>{0, 1});
  CHECK(torus.act(uv, Letter{0}) == 0);
  CHECK(torus.act(uv, Letter{1}) == 1);
  for (const char* word : {"u", "v", "u v", "u^-1 v v"}) {
    const Element g = torus.element(word);
    const Element p = torus.multiply(g, torus.inverse(g));
    for (const auto& w : oracle::words_up_to(2, 8)) REQUIRE(torus.act(p, w) == w);
    CHECK(p.is_identity());
  }
  auto add = engine_for(oracle::adding_text());
  const Element ai = add.inverse(add.element("a"));
  CHECK(ai == add.element("a^-1"));
  for (const auto& w : oracle::words_up_to(2, 6)) CHECK(add.act(ai, w) == oracle::minus_one(w));
}

TEST_CASE("equality") {
  auto torus = engine_for(oracle::torus_text());
  CHECK(torus.are_equal(torus.recursion().parse_word("u v"), torus.recursion().parse_word("v u")));
  CHECK_FALSE(torus.are_equal(torus.recursion().parse_word("u"), torus.recursion().parse_word("v")));
  auto add = engine_for(oracle::adding_text());
  CHECK(add.element("a a a^-1 a^-1").is_identity());
  // Equality soundness against the table evaluator.
  const auto& rec = torus.recursion();
  const char* words[] = {"u v", "v u", "u u^-1", "u v u^-1 v^-1", "v u v", "u v v"};
  for (const char* x : words)
    for (const char* y : words) {
      const auto gx = rec.parse_word(x), gy = rec.parse_word(y);
      if (torus.element(gx) != torus.element(gy)) continue;
      for (const auto& w : oracle::words_up_to(2, 8))
        REQUIRE(oracle::act_word(rec, gx, w) == oracle::act_word(rec, gy, w));
    }
}

TEST_CASE("section closures") {
  auto add = engine_for(oracle::adding_text());
  const auto c = add.section_closure(add.element("a"));
  REQUIRE(c.states.size() == 2);
  CHECK(c.states[0] == add.element("a"));
  CHECK(c.states[c.transitions[0][0]].is_identity());
  CHECK(c.transitions[0][1] == 0);
  CHECK(add.section_closure(add.identity()).states.size() == 1);

  auto torus = engine_for(oracle::torus_text());
  const auto t = torus.section_closure(torus.element("u v"));
  CHECK(t.states.size() <= 7);
  CHECK(t.index_of(torus.identity()) < t.states.size());
  for (std::size_t i = 0; i < t.states.size(); ++i)
    check_action(torus, t.states[i], t.words[i], 6);
}

TEST_CASE("balls") {
  auto torus = engine_for(oracle::torus_text());
  std::vector<Element> gens{torus.element("u"), torus.element("v")};
  CHECK(torus.enumerate_ball(gens, 1).size() == 5);
  CHECK(torus.enumerate_ball(gens, 0).size() == 1);
  CHECK(torus.enumerate_ball(gens, 2).size() == 13);
  auto add = engine_for(oracle::adding_text());
  std::vector<Element> ag{add.element("a")};
  const auto ball = add.enumerate_ball(ag, 2);
  REQUIRE(ball.size() == 5);
  // a has infinite order, so these five must be pairwise distinct actions.
  std::set<LetterWord> images;
  for (Element e : ball) images.insert(add.act(e, LetterWord{0, 0, 0, 0}));
  CHECK(images.size() == 5);
}

TEST_CASE("representative words are shortlex minimal after a ball traversal") {
  auto torus = engine_for(oracle::torus_text());
  const Element vu = torus.element("v u");
  std::vector<Element> gens{torus.element("u"), torus.element("v")};
  torus.enumerate_ball(gens, 2);
  CHECK(torus.to_string(vu) == "u v");
  CHECK(torus.to_string(torus.element("v^-1 u^-1")) == "u^-1 v^-1");
}

TEST_CASE("self-replication") {
  auto torus = engine_for(oracle::torus_text());
  const auto t = is_self_replicating(torus, 2);
  CHECK(t.replicating);
  for (const auto& w : t.witnesses) {
    CHECK(torus.act(w.element, w.from) == w.to);
    CHECK(torus.section(w.element, w.from).is_identity());
  }
  auto add = engine_for(oracle::adding_text());
  CHECK(is_self_replicating(add, 1).replicating);
  auto fixed = engine_for("alphabet = 0 1 ; g = ()[g, g]");
  const auto f = is_self_replicating(fixed, 3);
  CHECK_FALSE(f.replicating);
  REQUIRE(f.missing);
  CHECK(f.missing->first == 0);
  CHECK(f.missing->second == 1);
}

TEST_CASE("trivial generators fold to the identity") {
  auto triv = engine_for(oracle::trivial_text());
  CHECK(triv.element("e").is_identity());
  auto fixed = engine_for("alphabet = 0 1 ; g = ()[g, g] ; h = ()[h g, 1]");
  CHECK(fixed.element("g").is_identity());
  CHECK(fixed.element("h").is_identity());
}

TEST_CASE("budget guard") {
  EffortBudget tiny;
  tiny.max_states = 20;
  GroupEngine lamp(parse_recursion(oracle::lamplighter_text()), tiny);
  std::vector<Element> gens{lamp.element("a"), lamp.element("b")};
  CHECK_THROWS_AS(lamp.enumerate_ball(gens, 6), BudgetExceeded);
}

TEST_CASE("four-letter recursion bootstraps") {
  auto fs = GroupEngine(load_recursion(LIMITNERVE_CORPUS_DIR "/fornaess_sibony.rec"));
  const auto& rec = fs.recursion();
  for (GeneratorIndex g = 0; g < rec.generators().size(); ++g) {
    const Element e = fs.generator(g);
    check_action(fs, e, GeneratorWord::single({g, false}), 4);
    CHECK(fs.multiply(e, e).is_identity());
  }
}
