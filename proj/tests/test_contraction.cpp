#include <algorithm>

#include "doctest.h"
#include "limitnerve/contraction.hpp"
#include "limitnerve/error.hpp"
#include "oracles.hpp"

using namespace limitnerve;

namespace {

struct Setup {
  GroupEngine engine;
  Nucleus nucleus;
  Nerve nerve;
  explicit Setup(const char* text)
      : engine(parse_recursion(text)), nucleus(compute_nucleus(engine)), nerve(build_nerve(engine, nucleus)) {}

  // (N*S)|_v straight from products and word sections.
  std::vector<Element> orbit(const ElementSet& s, const LetterWord& v) {
    std::vector<Element> out;
    for (const Element h : nucleus.elements())
      for (auto g : s) out.push_back(engine.section(engine.multiply(h, nucleus.element(g)), v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Every translate containing 1 lies in the nucleus and is pairwise close.
  bool is_simplex(const std::vector<Element>& s) {
    for (const Element a : s)
      for (const Element b : s)
        if (!nucleus.contains(engine.multiply(a, engine.inverse(b)))) return false;
    const Element inv = engine.inverse(s.front());
    ElementSet t;
    for (const Element a : s) t.push_back(static_cast<std::uint32_t>(nucleus.index_of(engine.multiply(a, inv))));
    std::sort(t.begin(), t.end());
    return nerve.family.index_of(t) != Nucleus::npos;
  }

  bool holds(std::size_t n) {
    for (const auto& a : nerve.family.sets)
      for (const auto& v : oracle::all_words(nucleus.degree(), n))
        if (!is_simplex(orbit(a, v))) return false;
    return true;
  }
};

}  // namespace

TEST_CASE("trivial nucleus has depth zero") {
  Setup t(oracle::trivial_text());
  const auto cert = contraction_certificate(t.engine, t.nerve);
  CHECK(cert.depth == 0);
  REQUIRE(cert.rows.size() == 1);
  CHECK(cert.rows[0].image == std::vector<Element>{t.engine.identity()});
}

TEST_CASE("depth is the least level where the condition holds") {
  for (const char* text : {oracle::torus_text(), oracle::adding_text()}) {
    Setup s(text);
    bool monotone = false;
    const std::size_t depth = multinucleus_depth(s.engine, s.nerve, {}, &monotone);
    CHECK(monotone);
    CHECK(s.holds(depth));
    CHECK(s.holds(depth + 1));
    if (depth > 0) CHECK_FALSE(s.holds(depth - 1));
  }
}

TEST_CASE("certificate rows match direct computation") {
  for (const char* text : {oracle::torus_text(), oracle::adding_text()}) {
    Setup s(text);
    const auto cert = contraction_certificate(s.engine, s.nerve);
    std::size_t expected_rows = 0;
    for (const auto& a : s.nerve.family.sets) expected_rows += a.size();
    expected_rows <<= cert.depth;
    CHECK(cert.rows.size() == expected_rows);
    for (const auto& row : cert.rows) {
      const LetterWord v = index_word(row.word, 2, cert.depth);
      const auto& a = s.nerve.family.sets[row.set];
      CHECK(row.image == s.orbit({static_cast<std::uint32_t>(row.element)}, v));
      CHECK(row.simplex == s.orbit(a, v));
      const Element gv = s.engine.section(s.nucleus.element(row.element), v);
      CHECK(std::binary_search(row.image.begin(), row.image.end(), gv));
      CHECK(std::includes(row.simplex.begin(), row.simplex.end(), row.image.begin(), row.image.end()));
      for (auto g0 : a)
        CHECK(std::binary_search(row.image.begin(), row.image.end(), s.engine.section(s.nucleus.element(g0), v)));
      CHECK(row.image.size() <= row.simplex.size());
      CHECK(row.simplex.size() <= s.nucleus.size());
      CHECK(s.is_simplex(row.image));
    }
  }
}

TEST_CASE("identity rows are the nucleus restricted") {
  Setup s(oracle::adding_text());
  const auto cert = contraction_certificate(s.engine, s.nerve);
  for (const auto& row : cert.rows) {
    if (row.element != 0) continue;
    const LetterWord v = index_word(row.word, 2, cert.depth);
    std::vector<Element> restricted;
    for (const Element g : s.nucleus.elements()) restricted.push_back(s.engine.section(g, v));
    std::sort(restricted.begin(), restricted.end());
    restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
    CHECK(row.image == restricted);
    CHECK(std::binary_search(row.image.begin(), row.image.end(), s.engine.identity()));
  }
}

TEST_CASE("certificate below the depth fails") {
  Setup s(oracle::adding_text());
  const std::size_t depth = multinucleus_depth(s.engine, s.nerve);
  REQUIRE(depth > 0);
  CHECK_THROWS_AS(barycenter_images(s.engine, s.nerve, depth - 1), CertificateFailure);
  Setup t(oracle::torus_text());
  ContractionOptions shallow;
  shallow.max_depth = 2;
  CHECK_THROWS_AS(multinucleus_depth(t.engine, t.nerve, shallow), NotFoundWithinBound);
}
