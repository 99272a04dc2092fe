// Acceptance suite: one line per criterion with its time limit.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "limitnerve/contraction.hpp"
#include "limitnerve/error.hpp"
#include "limitnerve/model.hpp"
#include "nerve_oracle.hpp"
#include "oracles.hpp"

using namespace limitnerve;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  bool gating;
  std::function<Outcome()> check;
};

std::string path(const char* file) { return std::string(LIMITNERVE_CORPUS_DIR) + "/" + file; }

std::string counts(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Group {
  GroupEngine engine;
  Nucleus nucleus;
  Nerve nerve;
  explicit Group(const char* file)
      : engine(load_recursion(path(file))), nucleus(compute_nucleus(engine)), nerve(build_nerve(engine, nucleus)) {}

  std::vector<Element> elements(std::initializer_list<const char*> words) {
    std::vector<Element> out;
    for (const char* w : words) out.push_back(engine.element(w));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Element> elements(const ElementSet& s) const {
    std::vector<Element> out;
    for (auto i : s) out.push_back(nucleus.element(i));
    std::sort(out.begin(), out.end());
    return out;
  }
  ElementSet indices(std::initializer_list<const char*> words) {
    ElementSet s;
    for (const char* w : words) s.push_back(static_cast<std::uint32_t>(nucleus.index_of(engine.element(w))));
    std::sort(s.begin(), s.end());
    return s;
  }
};

// Same element sets, compared under the engine's equality.
bool same(GroupEngine& engine, const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!engine.are_equal(a[i], b[i])) return false;
  return true;
}

Outcome torus_nucleus() {
  GroupEngine engine(load_recursion(path("torus.rec")));
  const Nucleus n = compute_nucleus(engine);
  std::vector<Element> got(n.elements().begin(), n.elements().end());
  std::sort(got.begin(), got.end());
  std::vector<Element> want;
  for (const char* w : {"1", "u", "v", "u^-1", "v^-1", "u v", "u^-1 v^-1"}) want.push_back(engine.element(w));
  std::sort(want.begin(), want.end());
  std::string names;
  for (const Element e : n.elements()) names += " " + engine.to_string(e);
  return {same(engine, got, want), std::to_string(n.size()) + " elements:" + names};
}

Outcome restriction_table() {
  Group t("torus.rec");
  struct Row {
    std::initializer_list<const char*> a;
    Letter x;
    std::initializer_list<const char*> image;
  };
  const Row rows[] = {
      {{"1", "u", "u v"}, 0, {"1", "v"}},
      {{"1", "u", "u v"}, 1, {"1", "u v", "v"}},
      {{"1", "v", "u v"}, 0, {"1", "u^-1", "v"}},
      {{"1", "v", "u v"}, 1, {"1", "v"}},
      {{"1", "u^-1", "u^-1 v^-1"}, 0, {"1", "v^-1", "u^-1 v^-1"}},
      {{"1", "u^-1", "u^-1 v^-1"}, 1, {"1", "v^-1"}},
      {{"1", "v^-1", "u^-1 v^-1"}, 0, {"1", "v^-1"}},
      {{"1", "v^-1", "u^-1 v^-1"}, 1, {"1", "u", "v^-1"}},
      {{"1", "u", "v^-1"}, 0, {"1", "v^-1"}},
      {{"1", "u", "v^-1"}, 1, {"1", "u", "u v"}},
      {{"1", "u^-1", "v"}, 0, {"1", "u^-1", "u^-1 v^-1"}},
      {{"1", "u^-1", "v"}, 1, {"1", "v"}},
  };
  std::size_t ok = 0;
  for (const auto& r : rows)
    ok += same(t.engine, t.elements(restrict_set(t.nucleus, t.indices(r.a), r.x)), t.elements(r.image));
  return {ok == 12, std::to_string(ok) + "/12 equalities"};
}

Outcome maximal_sets() {
  Group t("torus.rec");
  std::set<ElementSet> got;
  for (std::size_t i : t.nerve.family.maximal()) got.insert(t.nerve.family.sets[i]);
  const std::set<ElementSet> want{t.indices({"1", "u", "u v"}),          t.indices({"1", "v", "u v"}),
                                  t.indices({"1", "u^-1", "u^-1 v^-1"}), t.indices({"1", "v^-1", "u^-1 v^-1"}),
                                  t.indices({"1", "u", "v^-1"}),         t.indices({"1", "u^-1", "v"})};
  std::string listed;
  for (const auto& s : got) listed += " " + t.nerve.table.format(s);
  return {got == want, std::to_string(got.size()) + " maximal:" + listed};
}

Outcome fundamental_domains() {
  Group t("torus.rec");
  const auto [t0_oracle, j0_oracle] = oracle::chain_counts(t.engine, oracle::adjacency_sets(t.engine, t.nucleus));
  const auto t0 = t.nerve.t0.f_vector();
  const auto j0 = t.nerve.j0.f_vector();
  const auto betti = t.nerve.j0.betti_mod2();
  const bool pass = t0 == std::vector<std::size_t>{13, 24, 12} && t.nerve.t0.euler() == 1 &&
                    j0 == std::vector<std::size_t>{6, 18, 12} && t.nerve.j0.euler() == 0 &&
                    betti == std::vector<std::size_t>{1, 2, 1} && t0 == t0_oracle && j0 == j0_oracle;
  return {pass, "T0 " + counts(t0) + " chi " + std::to_string(t.nerve.t0.euler()) + ", J0 " + counts(j0) + " chi " +
                    std::to_string(t.nerve.j0.euler()) + " betti " + counts(betti) + ", oracle " + counts(t0_oracle) +
                    " / " + counts(j0_oracle)};
}

Outcome cutpaste_level_one() {
  Group t("torus.rec");
  CutPasteTower tower(t.nerve);
  tower.advance();
  const auto& trace = tower.trace();
  const auto& fam = t.nerve.family;
  const std::size_t u = t.nucleus.index_of(t.engine.element("u"));
  const std::size_t ui = t.nucleus.index_of(t.engine.element("u^-1"));
  ElementSet a{0, static_cast<std::uint32_t>(u)}, b{0, static_cast<std::uint32_t>(ui)};
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t side0 = fam.index_of(a), side1 = fam.index_of(b);
  // Node c * 2 + x is cell c of copy (T_0, x).
  bool sides = trace[1].size() == 2;
  for (auto [p, q] : trace[1]) {
    if (p % 2 == q % 2) sides = false;
    const auto& e0 = t.nerve.t0.cell(1, static_cast<CellId>(p % 2 == 0 ? p / 2 : q / 2)).vertices;
    const auto& e1 = t.nerve.t0.cell(1, static_cast<CellId>(p % 2 == 0 ? q / 2 : p / 2)).vertices;
    sides = sides && std::count(e0.begin(), e0.end(), side0) && std::count(e1.begin(), e1.end(), side1);
  }
  const auto f = tower.t().f_vector();
  const bool pass = sides && trace[0].size() == 3 && trace[2].empty() && f == std::vector<std::size_t>{23, 46, 24};
  return {pass, "glued " + std::to_string(trace[1].size()) + " edges, " + std::to_string(trace[0].size()) +
                    " vertices, " + std::to_string(trace[2].size()) + " triangles; T1 " + counts(f)};
}

Outcome schreier_group(const char* file, std::size_t max_level, double limit, double& elapsed) {
  const auto start = std::chrono::steady_clock::now();
  Group g(file);
  for (std::size_t n = 0; n <= max_level; ++n) {
    const DirectModel m = direct_Jn(g.nerve, n);
    std::vector<Element> gens(g.nucleus.elements().begin() + 1, g.nucleus.elements().end());
    const SchreierGraph s = schreier_graph(g.engine, gens, n);
    // g at v and g^-1 at g(v) trace the same undirected edge.
    std::multiset<std::pair<std::size_t, std::size_t>> schreier, doubled;
    for (const auto& e : s.edges) schreier.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    for (auto [p, q] : edge_multiset(m.complex)) {
      doubled.insert({p, q});
      doubled.insert({p, q});
    }
    if (schreier != doubled) return {false, std::string(file) + " differs at level " + std::to_string(n)};
  }
  elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {elapsed <= limit, std::string(file) + " levels 0.." + std::to_string(max_level)};
}

Outcome schreier_equivalence() {
  double a = 0, b = 0;
  const auto torus = schreier_group("torus.rec", 5, 30, a);
  const auto adding = schreier_group("adding_machine.rec", 8, 30, b);
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << torus.detail << " " << a << " s, " << adding.detail << " " << b << " s";
  return {torus.pass && adding.pass, d.str()};
}

Outcome cross_validation() {
  std::string detail;
  for (auto [file, levels] : {std::pair{"torus.rec", std::size_t{3}}, std::pair{"adding_machine.rec", std::size_t{6}}}) {
    Group g(file);
    const auto cp = cutpaste_models(g.engine.recursion(), g.nerve, levels);
    for (std::size_t n = 0; n <= levels; ++n) cross_validate(g.engine, g.nerve, direct_Jn(g.nerve, n), cp[n]);
    detail += std::string(detail.empty() ? "" : ", ") + file + " n<=" + std::to_string(levels);
  }
  return {true, detail};
}

Outcome adding_circle() {
  Group g("adding_machine.rec");
  const auto cp = cutpaste_models(g.engine.recursion(), g.nerve, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    const DirectModel m = direct_Jn(g.nerve, n);
    std::vector<std::pair<CellId, CellId>> want;
    for (const auto& w : oracle::all_words(2, n)) {
      std::size_t x = 0, y = 0;
      for (Letter l : w) x = 2 * x + l;
      for (Letter l : oracle::plus_one(w)) y = 2 * y + l;
      want.emplace_back(static_cast<CellId>(std::min(x, y)), static_cast<CellId>(std::max(x, y)));
    }
    std::sort(want.begin(), want.end());
    const std::vector<std::size_t> circle{1, 1};
    if (edge_multiset(m.complex) != want || m.complex.vertex_count() != (std::size_t{1} << n) ||
        m.complex.betti_mod2() != circle || cp[n].complex.betti_mod2() != circle)
      return {false, "level " + std::to_string(n) + " betti " + counts(m.complex.betti_mod2())};
  }
  return {true, "2^n-cycles with betti (1,1) for n<=6"};
}

Outcome certificates() {
  std::string detail;
  for (const char* file : {"torus.rec", "adding_machine.rec"}) {
    Group g(file);
    const ContractionCertificate cert = contraction_certificate(g.engine, g.nerve);
    for (const auto& row : cert.rows) {
      const LetterWord v = index_word(row.word, g.nucleus.degree(), cert.depth);
      std::set<Element> image, simplex;
      for (const Element h : g.nucleus.elements()) {
        image.insert(g.engine.section(g.engine.multiply(h, g.nucleus.element(row.element)), v));
        for (auto a : g.nerve.family.sets[row.set])
          simplex.insert(g.engine.section(g.engine.multiply(h, g.nucleus.element(a)), v));
      }
      const Element gv = g.engine.section(g.nucleus.element(row.element), v);
      if (!image.count(gv) || !std::includes(simplex.begin(), simplex.end(), image.begin(), image.end()) ||
          std::vector<Element>(image.begin(), image.end()) != row.image)
        return {false, std::string(file) + " row fails"};
    }
    detail += std::string(detail.empty() ? "" : ", ") + file + " depth " + std::to_string(cert.depth) + " (" +
              std::to_string(cert.rows.size()) + " rows)";
  }
  return {true, detail};
}

Outcome property_suite() {
  const std::string cmd = std::string("\"") + LIMITNERVE_PROPERTY_TESTS + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return {status == 0, "property_tests exit status " + std::to_string(status)};
}

Outcome fornaess_sibony() {
  GroupEngine engine(load_recursion(path("fornaess_sibony.rec")), EffortBudget{200000, 64});
  std::vector<Element> gens;
  for (const char* name : {"beta", "gamma", "b", "c"}) gens.push_back(engine.element(name));
  std::size_t previous = 0;
  for (std::size_t r = 0; r <= 32; ++r) {
    const std::size_t size = engine.enumerate_ball(gens, r).size();
    if (size == previous)
      return {size == 128, "ball stabilised at radius " + std::to_string(r - 1) + " with " + std::to_string(size) +
                               " elements"};
    previous = size;
  }
  return {false, "ball still growing at radius 32 (" + std::to_string(previous) + " elements)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "torus nucleus", 5, true, torus_nucleus},
      {2, "restriction table", 1, true, restriction_table},
      {3, "maximal adjacency sets", 5, true, maximal_sets},
      {4, "T_0 and J_0 topology", 10, true, fundamental_domains},
      {5, "cut-and-paste level 1", 5, true, cutpaste_level_one},
      {6, "Schreier equivalence", 60, true, schreier_equivalence},
      {7, "route cross-validation", 60, true, cross_validation},
      {8, "adding-machine circle", 10, true, adding_circle},
      {9, "contraction certificate", 30, true, certificates},
      {10, "property suites", 120, true, property_suite},
      {11, "Fornaess-Sibony subgroup order", 600, false, fornaess_sibony},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    const char* tag = pass ? "PASS" : (c.gating ? "FAIL" : "SKIP");
    std::cout << "[" << tag << "] criterion " << c.id << " " << c.title << ": " << o.detail
              << (in_time ? "" : " (over time limit)") << " [" << std::fixed << std::setprecision(2) << seconds
              << " s / " << std::setprecision(0) << c.limit_seconds << " s]\n";
    if (!pass && c.gating) ++failures;
  }
  std::cout << (failures ? "acceptance: FAILED" : "acceptance: all gating criteria passed") << "\n";
  return failures ? 1 : 0;
}
