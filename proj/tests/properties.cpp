// Randomised property checks. Every generator is seeded, so failures replay.
#include <algorithm>
#include <random>

#include "doctest.h"
#include "limitnerve/error.hpp"
#include "limitnerve/model.hpp"
#include "oracles.hpp"

using namespace limitnerve;

namespace {

constexpr int kFuzzCases = 12000;

const char* kNames[] = {"a", "b", "c", "s", "t", "g1", "h_2", "Tau"};

std::string spaces(std::mt19937& rng) {
  static const char* pads[] = {"", " ", "  ", "\t"};
  return pads[rng() % 4];
}

// Random but valid definition text with irregular spacing, comments,
// rotated cycles and unreduced section words.
std::string random_text(std::mt19937& rng) {
  const std::size_t d = 2 + rng() % 4;
  const std::size_t gens = 1 + rng() % 4;
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < d; ++i) letters.push_back(std::to_string(i));
  std::string text = "alphabet =";
  for (const auto& l : letters) text += " " + l;
  text += rng() % 3 == 0 ? "  # letters\n" : "\n";
  for (std::size_t g = 0; g < gens; ++g) {
    text += spaces(rng) + kNames[g] + spaces(rng) + "=" + spaces(rng);
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<bool> seen(d, false);
    std::string cycles;
    for (std::size_t x = 0; x < d; ++x) {
      if (seen[x] || perm[x] == x) continue;
      std::vector<std::size_t> cyc;
      for (std::size_t y = x; !seen[y]; y = perm[y]) {
        seen[y] = true;
        cyc.push_back(y);
      }
      std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(rng() % cyc.size()), cyc.end());
      cycles += "(";
      for (std::size_t i = 0; i < cyc.size(); ++i) cycles += (i ? " " : "") + letters[cyc[i]];
      cycles += ")";
    }
    text += cycles.empty() ? "()" : cycles;
    text += "[";
    for (std::size_t x = 0; x < d; ++x) {
      if (x) text += "," + spaces(rng);
      const std::size_t len = rng() % 4;
      std::string w;
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t h = rng() % gens;
        const bool inv = rng() % 2;
        w += (k ? " " : "") + std::string(kNames[h]) + (inv ? "^-1" : "");
        if (rng() % 5 == 0) w += std::string(" ") + kNames[h] + (inv ? "" : "^-1");  // cancels
      }
      text += w.empty() ? "1" : w;
    }
    text += "]" + spaces(rng) + (rng() % 4 == 0 ? "; " : "\n");
  }
  return text;
}

GeneratorWord random_word(std::mt19937& rng, std::size_t gens, std::size_t max_len) {
  GeneratorWord w;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    w.push_back({static_cast<GeneratorIndex>(rng() % gens), static_cast<bool>(rng() % 2)});
  return w;
}

LetterWord random_letters(std::mt19937& rng, std::size_t d, std::size_t len) {
  LetterWord w(len);
  for (auto& x : w) x = static_cast<Letter>(rng() % d);
  return w;
}

std::vector<std::string> sample_texts() {
  std::vector<std::string> t{oracle::torus_text(), oracle::adding_text(), oracle::lamplighter_text()};
  t.push_back("alphabet = 1 2 3 4\nalpha = (1 2)(3 4)[1, 1, 1, 1]\na = (1 3)(2 4)[1, 1, 1, 1]\n"
              "beta = ()[alpha, gamma, alpha, gamma]\nb = ()[a alpha, a alpha, c, c]\n"
              "gamma = ()[beta, 1, 1, beta]\nc = ()[b beta, b beta, b, b]\n");
  return t;
}

}  // namespace

TEST_CASE("parse and print round trip") {
  std::mt19937 rng(20240601);
  for (int i = 0; i < kFuzzCases; ++i) {
    const std::string text = random_text(rng);
    const WreathRecursion rec = parse_recursion(text);
    const std::string printed = pretty_print(rec);
    const WreathRecursion again = parse_recursion(printed);
    REQUIRE_MESSAGE(again == rec, text);
    REQUIRE(pretty_print(again) == printed);
  }
}

TEST_CASE("mangled text never crashes the parser") {
  std::mt19937 rng(99);
  const std::string alphabet = "()[],;=^-1 #\nabcxyz0123";
  int rejected = 0;
  for (int i = 0; i < kFuzzCases; ++i) {
    std::string text = random_text(rng);
    const std::size_t edits = 1 + rng() % 3;
    for (std::size_t k = 0; k < edits; ++k) text[rng() % text.size()] = alphabet[rng() % alphabet.size()];
    try {
      const WreathRecursion rec = parse_recursion(text);
      CHECK(parse_recursion(pretty_print(rec)) == rec);
    } catch (const ParseError&) {
      ++rejected;
    } catch (const InvalidRecursion&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("section cocycle and product rule") {
  std::mt19937 rng(7);
  for (const auto& text : sample_texts()) {
    GroupEngine engine(parse_recursion(text));
    const auto& rec = engine.recursion();
    const std::size_t gens = rec.generators().size();
    const std::size_t d = rec.degree();
    for (int i = 0; i < 300; ++i) {
      const GeneratorWord gw = random_word(rng, gens, 6);
      const GeneratorWord hw = random_word(rng, gens, 6);
      const Element g = engine.element(gw);
      const Element h = engine.element(hw);
      const LetterWord v = random_letters(rng, d, rng() % 5);
      const LetterWord w = random_letters(rng, d, rng() % 5);
      // (gh)|_v = g|_{h(v)} h|_v
      CHECK(engine.section(engine.multiply(g, h), v) == engine.multiply(engine.section(g, engine.act(h, v)),
                                                                      engine.section(h, v)));
      // g(vw) = g(v) g|_v(w)
      LetterWord vw = v;
      vw.insert(vw.end(), w.begin(), w.end());
      LetterWord split = engine.act(g, v);
      const LetterWord tail = engine.act(engine.section(g, v), w);
      split.insert(split.end(), tail.begin(), tail.end());
      CHECK(engine.act(g, vw) == split);
      // (gh)(w) = g(h(w)), against table evaluation of the words.
      CHECK(engine.act(engine.multiply(g, h), vw) == oracle::act_word(rec, gw * hw, vw));
      CHECK(engine.act(engine.inverse(g), engine.act(g, vw)) == vw);
    }
  }
}

TEST_CASE("kappa maps are involutions at every level") {
  for (const char* text : {oracle::torus_text(), oracle::adding_text()}) {
    GroupEngine engine(parse_recursion(text));
    const Nucleus nucleus = compute_nucleus(engine);
    const Nerve nerve = build_nerve(engine, nucleus);
    for (std::size_t g = 1; g < nucleus.size(); ++g)
      for (std::size_t s = 0; s < nerve.family.sets.size(); ++s) {
        const std::size_t img = nerve.kappa[g][s];
        if (img != Nucleus::npos) CHECK(nerve.kappa[nucleus.inverse(g)][img] == s);
      }
    CutPasteTower tower(nerve);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (std::size_t k = 0; k <= static_cast<std::size_t>(tower.t().dimension()); ++k)
        for (std::size_t g = 1; g < nucleus.size(); ++g) {
          const auto& kg = tower.kappa(g, k);
          const auto& kinv = tower.kappa(nucleus.inverse(g), k);
          for (std::size_t c = 0; c < kg.size(); ++c)
            if (kg[c] != Nucleus::npos) CHECK(kinv[kg[c]] == c);
        }
      tower.advance();
    }
  }
}

TEST_CASE("identification order does not change the partition") {
  GroupEngine engine(parse_recursion(oracle::torus_text()));
  const Nucleus nucleus = compute_nucleus(engine);
  const Nerve nerve = build_nerve(engine, nucleus);
  CutPasteTower plain(nerve);
  for (int i = 0; i < 3; ++i) plain.advance();
  std::vector<std::vector<CellId>> expected;
  plain.assemble(&expected);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CutPasteTower shuffled(nerve, TowerOptions{seed * 7919});
    for (int i = 0; i < 3; ++i) shuffled.advance();
    std::vector<std::vector<CellId>> got;
    shuffled.assemble(&got);
    CHECK(got == expected);
    for (std::size_t k = 0; k < 3; ++k) CHECK(shuffled.cell_class(k) == plain.cell_class(k));
  }
}
