#include "limitnerve/model.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

#include "limitnerve/error.hpp"

namespace limitnerve {

LevelTable::LevelTable(const Nucleus& nucleus, std::size_t level, std::size_t max_words)
    : level_(level), words_(checked_power(nucleus.degree(), level, max_words)) {
  const std::size_t n = nucleus.size();
  const std::size_t d = nucleus.degree();
  std::vector<std::size_t> act(n, 0);
  std::vector<std::uint32_t> sec(n);
  for (std::size_t g = 0; g < n; ++g) sec[g] = static_cast<std::uint32_t>(g);
  std::size_t words = 1;
  for (std::size_t k = 0; k < level; ++k) {
    std::vector<std::size_t> next_act(n * words * d);
    std::vector<std::uint32_t> next_sec(n * words * d);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t x = 0; x < d; ++x) {
        const Letter letter = static_cast<Letter>(x);
        const std::size_t s = nucleus.section(g, letter);
        const std::size_t base = g * words * d + x * words;
        const std::size_t image = nucleus.act(g, letter) * words;
        for (std::size_t r = 0; r < words; ++r) {
          next_act[base + r] = image + act[s * words + r];
          next_sec[base + r] = sec[s * words + r];
        }
      }
    act = std::move(next_act);
    sec = std::move(next_sec);
    words *= d;
  }
  act_ = std::move(act);
  sec_ = std::move(sec);
}

std::vector<Atom> canonical_atoms(const NucleusTable& table, std::vector<Atom> atoms,
                                  std::vector<std::size_t>* order) {
  std::vector<std::pair<Atom, std::size_t>> tagged;
  for (std::size_t i = 0; i < atoms.size(); ++i) tagged.emplace_back(atoms[i], i);
  std::sort(tagged.begin(), tagged.end());
  tagged.erase(std::unique(tagged.begin(), tagged.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               tagged.end());

  std::vector<std::pair<Atom, std::size_t>> best;
  std::vector<std::pair<Atom, std::size_t>> trial;
  for (const auto& pivot : tagged) {
    const std::size_t h = atom_element(pivot.first);
    trial.clear();
    for (const auto& [a, i] : tagged) {
      const std::size_t q = table.quotient(atom_element(a), h);
      if (q == NucleusTable::npos) throw ConsistencyError("tile translate leaves the nucleus");
      trial.emplace_back(make_atom(atom_word(a), q), i);
    }
    std::sort(trial.begin(), trial.end());
    const bool less = std::lexicographical_compare(trial.begin(), trial.end(), best.begin(), best.end(),
                                                   [](const auto& a, const auto& b) { return a.first < b.first; });
    if (best.empty() || less) best = trial;
  }
  std::vector<Atom> out;
  if (order) order->clear();
  for (const auto& [a, i] : best) {
    out.push_back(a);
    if (order) order->push_back(i);
  }
  return out;
}

long long DirectModel::find(const std::vector<Atom>& canonical) const {
  if (canonical.empty() || canonical.size() > index.size()) return -1;
  const auto& map = index[canonical.size() - 1];
  const auto it = map.find(canonical);
  return it == map.end() ? -1 : static_cast<long long>(it->second);
}

namespace {

using Generated = std::pair<std::vector<Atom>, std::pair<std::uint32_t, std::size_t>>;

std::vector<Atom> tile_atoms(const LevelTable& t, const ElementSet& set, std::size_t word) {
  std::vector<Atom> atoms;
  for (auto a : set) atoms.push_back(make_atom(t.act(a, word), t.section(a, word)));
  return atoms;
}

std::size_t worker_count(std::size_t jobs, std::size_t work) {
  std::size_t n = jobs ? jobs : std::max<unsigned>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, work));
}

}  // namespace

DirectModel direct_Jn(const Nerve& nerve, std::size_t level, ModelOptions options) {
  const Nucleus& nucleus = nerve.nucleus();
  DirectModel model;
  model.level = level;
  model.table = LevelTable(nucleus, level, options.max_words);
  const LevelTable& t = model.table;
  const std::size_t words = t.words();
  const auto& sets = nerve.family.sets;
  std::size_t top = 0;
  for (const auto& s : sets) top = std::max(top, s.size() - 1);

  // Each worker takes a contiguous block of words; blocks are merged in order.
  const std::size_t workers = worker_count(options.jobs, words);
  std::vector<std::vector<std::vector<Generated>>> parts(workers, std::vector<std::vector<Generated>>(top + 1));
  auto run = [&](std::size_t w) {
    const std::size_t lo = words * w / workers;
    const std::size_t hi = words * (w + 1) / workers;
    for (std::size_t v = lo; v < hi; ++v)
      for (std::size_t a = 0; a < sets.size(); ++a) {
        auto canon = canonical_atoms(nerve.table, tile_atoms(t, sets[a], v));
        parts[w][canon.size() - 1].push_back({std::move(canon), {static_cast<std::uint32_t>(a), v}});
      }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& th : threads) th.join();
  }

  model.atoms.resize(top + 1);
  model.origin.resize(top + 1);
  model.index.resize(top + 1);
  std::size_t total = 0;
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<Generated> all;
    for (auto& part : parts) {
      all.insert(all.end(), std::make_move_iterator(part[k].begin()), std::make_move_iterator(part[k].end()));
      part[k].clear();
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              all.end());
    total += all.size();
    if (total > options.max_cells) throw ResourceLimit("direct level " + std::to_string(level) + " exceeds the cell limit");
    for (auto& [atoms, origin] : all) {
      model.index[k].emplace(atoms, static_cast<CellId>(model.atoms[k].size()));
      model.atoms[k].push_back(std::move(atoms));
      model.origin[k].push_back(origin);
    }
  }
  while (!model.atoms.empty() && model.atoms.back().empty()) {
    model.atoms.pop_back();
    model.origin.pop_back();
    model.index.pop_back();
  }

  if (model.atoms[0].size() != words) throw ConsistencyError("direct vertices do not match the words of the level");
  for (std::size_t w = 0; w < words; ++w)
    if (model.atoms[0][w] != std::vector<Atom>{make_atom(w, 0)})
      throw ConsistencyError("direct vertex " + std::to_string(w) + " is not a pure atom");

  CellComplex& c = model.complex;
  c = CellComplex(words);
  std::vector<std::size_t> order;
  for (std::size_t k = 1; k < model.atoms.size(); ++k) {
    for (const auto& atoms : model.atoms[k]) {
      std::vector<CellId> verts;
      for (Atom a : atoms) verts.push_back(static_cast<CellId>(atom_word(a)));
      std::vector<FaceRef> faces;
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Atom> sub;
        for (std::size_t j = 0; j <= k; ++j)
          if (j != i) sub.push_back(atoms[j]);
        const auto canon = canonical_atoms(nerve.table, sub, &order);
        const long long face = model.find(canon);
        if (face < 0 || canon.size() != k)
          throw ConsistencyError("direct level " + std::to_string(level) + " is not closed under faces");
        FaceRef ref{static_cast<CellId>(face), {}};
        for (std::size_t j : order) ref.positions.push_back(static_cast<std::uint8_t>(j < i ? j : j + 1));
        faces.push_back(std::move(ref));
      }
      c.add_cell(std::move(verts), std::move(faces));
    }
  }
  return model;
}

LevelMaps level_maps(const Nerve& nerve, const DirectModel& upper, const DirectModel& lower) {
  if (upper.level != lower.level + 1) throw ValidationFailure("level maps", "levels are not consecutive");
  const std::size_t d = nerve.nucleus().degree();
  const std::size_t lower_words = lower.table.words();
  LevelMaps maps;
  for (std::size_t w = 0; w < upper.table.words(); ++w) {
    maps.p.push_back(static_cast<CellId>(w / d));
    maps.iota.push_back(static_cast<CellId>(w % lower_words));
  }
  const auto& sets = nerve.family.sets;
  auto check = [&](const char* name, const std::vector<CellId>& map, const std::vector<Atom>& cell,
                   const std::vector<Atom>& image_atoms) {
    const auto canon = canonical_atoms(nerve.table, image_atoms);
    const long long hit = lower.find(canon);
    std::set<std::size_t> expected;
    std::set<std::size_t> got;
    for (Atom a : cell) expected.insert(map[atom_word(a)]);
    if (hit >= 0)
      for (Atom a : canon) got.insert(atom_word(a));
    if (hit < 0 || got != expected) {
      std::string witness = "simplex on words";
      for (Atom a : cell) witness += " " + std::to_string(atom_word(a));
      throw ValidationFailure(name, witness + " at level " + std::to_string(upper.level));
    }
  };
  for (std::size_t k = 0; k < upper.atoms.size(); ++k)
    for (std::size_t i = 0; i < upper.atoms[k].size(); ++i) {
      const auto [a, v] = upper.origin[k][i];
      check("p", maps.p, upper.atoms[k][i], tile_atoms(lower.table, sets[a], v / d));
      const Letter first = static_cast<Letter>(v / lower_words);
      const std::size_t restricted = nerve.family.index_of(restrict_set(nerve.nucleus(), sets[a], first));
      check("iota", maps.iota, upper.atoms[k][i], tile_atoms(lower.table, sets[restricted], v % lower_words));
    }
  return maps;
}

LeveledModel direct_model(const WreathRecursion& rec, const Nerve& nerve, const DirectModel& model,
                          const DirectModel* previous) {
  LeveledModel out;
  out.level = model.level;
  out.complex = model.complex;
  for (std::size_t w = 0; w < model.table.words(); ++w)
    out.vertex_words.push_back(rec.format(index_word(w, rec.degree(), model.level)));
  out.complex.vertex_labels = out.vertex_words;
  if (previous) {
    auto maps = level_maps(nerve, model, *previous);
    out.p = std::move(maps.p);
    out.iota = std::move(maps.iota);
  }
  return out;
}

CutPasteTower::CutPasteTower(const Nerve& nerve, TowerOptions options)
    : nerve_(&nerve), options_(options), t_(nerve.t0) {
  const std::size_t dims = static_cast<std::size_t>(t_.dimension()) + 1;
  const std::size_t n = nerve.nucleus().size();
  kappa_.assign(n, std::vector<std::vector<std::size_t>>(dims));
  raw_.resize(dims);
  copies_.resize(dims);
  trace_.resize(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    for (CellId c = 0; c < t_.cell_count(k); ++c) raw_[k].push_back(c);
    for (std::size_t g = 0; g < n; ++g)
      for (CellId c = 0; c < t_.cell_count(k); ++c) {
        const long long img = nerve.kappa_cell(g, k, c);
        kappa_[g][k].push_back(img < 0 ? Nucleus::npos : static_cast<std::size_t>(img));
      }
  }
}

void CutPasteTower::advance() {
  const Nucleus& nucleus = nerve_->nucleus();
  const std::size_t d = nucleus.degree();
  const std::size_t n = nucleus.size();
  const std::size_t dims = raw_.size();
  const CellComplex& prev = t_;

  // Copies (T_{n-1}, x) glued along arrows with trivial section.
  for (std::size_t k = 0; k < dims; ++k) {
    const std::size_t cells = prev.cell_count(k);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t g = 1; g < n; ++g)
      for (std::size_t x = 0; x < d; ++x) {
        const Letter letter = static_cast<Letter>(x);
        if (nucleus.section(g, letter) != 0) continue;
        for (std::size_t c = 0; c < cells; ++c)
          if (kappa_[g][k][c] != Nucleus::npos)
            pairs.emplace_back(c * d + x, kappa_[g][k][c] * d + nucleus.act(g, letter));
      }
    if (options_.shuffle_seed)
      std::shuffle(pairs.begin(), pairs.end(), std::mt19937_64(*options_.shuffle_seed + 1000 * level_ + k));
    UnionFind uf(cells * d);
    for (auto [a, b] : pairs) uf.unite(a, b);
    trace_[k] = uf.trace();
    copies_[k] = uf.labels();
  }

  CellComplex product(prev.vertex_count() * d);
  for (std::size_t k = 1; k < dims; ++k)
    for (const Cell& cell : prev.cells(k))
      for (std::size_t x = 0; x < d; ++x) {
        std::vector<CellId> verts;
        for (CellId v : cell.vertices) verts.push_back(static_cast<CellId>(v * d + x));
        std::vector<FaceRef> faces;
        for (const FaceRef& f : cell.faces) faces.push_back({static_cast<CellId>(f.cell * d + x), f.positions});
        product.add_cell(std::move(verts), std::move(faces));
      }
  // add_cell appends cells in (cell, x) order, matching the copy numbering.
  CellComplex next = quotient_complex(product, copies_);

  std::vector<std::vector<std::vector<std::size_t>>> kappa(n, std::vector<std::vector<std::size_t>>(dims));
  for (std::size_t k = 0; k < dims; ++k) {
    const std::size_t cells = next.cell_count(k);
    for (std::size_t g = 0; g < n; ++g) kappa[g][k].assign(cells, Nucleus::npos);
    for (CellId c = 0; c < cells; ++c) kappa[0][k][c] = c;
    for (std::size_t h = 1; h < n; ++h)
      for (std::size_t x = 0; x < d; ++x) {
        const Letter letter = static_cast<Letter>(x);
        const std::size_t g = nucleus.section(h, letter);
        if (g == 0) continue;
        for (std::size_t c = 0; c < prev.cell_count(k); ++c) {
          if (kappa_[h][k][c] == Nucleus::npos) continue;
          const std::size_t src = copies_[k][c * d + x];
          const std::size_t dst = copies_[k][kappa_[h][k][c] * d + nucleus.act(h, letter)];
          std::size_t& slot = kappa[g][k][src];
          if (slot == Nucleus::npos)
            slot = dst;
          else if (slot != dst)
            throw ConsistencyError("kappa for " + nerve_->table.name(g) + " at level " + std::to_string(level_ + 1) +
                                   " sends cell " + std::to_string(k) + ":" + std::to_string(src) +
                                   " to two different cells");
        }
      }
    for (std::size_t g = 1; g < n; ++g) {
      const std::size_t inv = nucleus.inverse(g);
      for (CellId c = 0; c < cells; ++c) {
        const std::size_t img = kappa[g][k][c];
        if (img != Nucleus::npos && kappa[inv][k][img] != c)
          throw ConsistencyError("kappa for " + nerve_->table.name(g) + " at level " + std::to_string(level_ + 1) +
                                 " is not inverted by its inverse");
      }
    }
    const std::size_t base = nerve_->t0.cell_count(k);
    std::vector<CellId> raw(raw_[k].size() * d);
    for (std::size_t r = 0; r < raw_[k].size(); ++r) {
      const std::size_t w = r / base;
      const std::size_t c = r % base;
      for (std::size_t x = 0; x < d; ++x) raw[(w * d + x) * base + c] = copies_[k][raw_[k][r] * d + x];
    }
    raw_[k] = std::move(raw);
  }
  kappa_ = std::move(kappa);
  t_ = std::move(next);
  ++level_;
}

CellComplex CutPasteTower::assemble(std::vector<std::vector<CellId>>* classes) const {
  const std::size_t dims = raw_.size();
  std::vector<std::vector<CellId>> cls(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t g = 1; g < kappa_.size(); ++g)
      for (std::size_t c = 0; c < kappa_[g][k].size(); ++c)
        if (kappa_[g][k][c] != Nucleus::npos) pairs.emplace_back(c, kappa_[g][k][c]);
    if (options_.shuffle_seed)
      std::shuffle(pairs.begin(), pairs.end(), std::mt19937_64(*options_.shuffle_seed + 7 + 1000 * level_ + k));
    UnionFind uf(t_.cell_count(k));
    for (auto [a, b] : pairs) uf.unite(a, b);
    cls[k] = uf.labels();
  }
  CellComplex j = quotient_complex(t_, cls);
  if (classes) *classes = std::move(cls);
  return j;
}

std::vector<LeveledModel> cutpaste_models(const WreathRecursion& rec, const Nerve& nerve, std::size_t level,
                                          TowerOptions options) {
  const Nucleus& nucleus = nerve.nucleus();
  const std::size_t d = nucleus.degree();
  const std::size_t base = nerve.t0.vertex_count();
  CutPasteTower tower(nerve, options);
  std::vector<LeveledModel> out;
  std::vector<CellId> previous;  // raw vertex -> J_{n-1} vertex
  // T_0 vertex i restricted at letter x, as a T_0 vertex.
  std::vector<std::size_t> restricted(base * d);
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t x = 0; x < d; ++x)
      restricted[i * d + x] =
          nerve.family.index_of(restrict_set(nucleus, nerve.family.sets[i], static_cast<Letter>(x)));

  for (std::size_t n = 0;; ++n) {
    LeveledModel m;
    m.level = n;
    std::vector<std::vector<CellId>> cls;
    m.complex = tower.assemble(&cls);
    const auto& raw = tower.cell_class(0);
    std::vector<CellId> current(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) current[r] = cls[0][raw[r]];

    const std::size_t vertices = m.complex.vertex_count();
    m.vertex_words.assign(vertices, std::string());
    std::vector<bool> named(vertices, false);
    for (std::size_t r = 0; r < raw.size(); ++r) {
      const CellId j = current[r];
      if (named[j]) continue;
      named[j] = true;
      m.vertex_words[j] = nerve.t0.vertex_labels[r % base];
      if (n > 0) m.vertex_words[j] += "@" + rec.format(index_word(r / base, d, n));
    }
    m.complex.vertex_labels = m.vertex_words;

    if (n > 0) {
      constexpr CellId unset = ~CellId{0};
      m.p.assign(vertices, unset);
      m.iota.assign(vertices, unset);
      std::vector<bool> conflict(vertices, false);
      const std::size_t lower_words = previous.size() / base;
      for (std::size_t r = 0; r < raw.size(); ++r) {
        const CellId j = current[r];
        const std::size_t w = r / base;
        const std::size_t c = r % base;
        const CellId p = previous[(w / d) * base + c];
        if (m.p[j] == unset)
          m.p[j] = p;
        else if (m.p[j] != p)
          throw ConsistencyError("p is not well defined on " + m.vertex_words[j]);
        const std::size_t first = w / lower_words;
        const CellId i = previous[(w % lower_words) * base + restricted[c * d + first]];
        if (m.iota[j] == unset)
          m.iota[j] = i;
        else if (m.iota[j] != i)
          conflict[j] = true;
      }
      m.iota_conflicts = static_cast<std::size_t>(std::count(conflict.begin(), conflict.end(), true));
    }
    previous = std::move(current);
    out.push_back(std::move(m));
    if (n == level) break;
    tower.advance();
  }
  return out;
}

std::vector<std::pair<CellId, CellId>> schreier_edge_multiset(GroupEngine& engine, const Nucleus& nucleus,
                                                              std::size_t level) {
  const std::size_t d = nucleus.degree();
  const std::size_t count = checked_power(d, level, std::size_t{1} << 22);
  std::vector<std::pair<CellId, CellId>> edges;
  for (std::size_t g = 1; g < nucleus.size(); ++g) {
    const std::size_t inv = nucleus.inverse(g);
    if (inv < g) continue;
    const Element e = nucleus.element(g);
    for (std::size_t v = 0; v < count; ++v) {
      const LetterWord w = index_word(v, d, level);
      const std::size_t gv = word_index(engine.act(e, w), d);
      if (inv == g && gv < v) continue;
      // g fixing v with trivial section there spans no edge of the tiling.
      if (gv == v && engine.section(e, w).is_identity()) continue;
      edges.emplace_back(static_cast<CellId>(std::min(v, gv)), static_cast<CellId>(std::max(v, gv)));
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

std::string format_counts(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

CrossValidation cross_validate(GroupEngine& engine, const Nerve& nerve, const DirectModel& direct,
                               const LeveledModel& cutpaste) {
  CrossValidation r;
  r.level = direct.level;
  const std::string at = " at level " + std::to_string(direct.level);
  const CellComplex& dc = direct.complex;
  const CellComplex& cc = cutpaste.complex;
  r.euler = dc.euler();
  if (cc.euler() != r.euler)
    throw ValidationFailure("euler", "direct " + std::to_string(r.euler) + " vs cut-and-paste " +
                                         std::to_string(cc.euler()) + at);
  r.betti = dc.betti_mod2();
  const auto cb = cc.betti_mod2();
  if (cb != r.betti)
    throw ValidationFailure("betti", "direct " + format_counts(r.betti) + " vs cut-and-paste " + format_counts(cb) + at);
  r.direct_f = dc.f_vector();
  r.cutpaste_f = cc.f_vector();
  const auto sub = barycentric_subdivision(dc).f_vector();
  if (sub != r.cutpaste_f)
    throw ValidationFailure("f-vector", "subdivided direct " + format_counts(sub) + " vs cut-and-paste " +
                                            format_counts(r.cutpaste_f) + at);
  const auto skeleton = edge_multiset(dc);
  const auto schreier = schreier_edge_multiset(engine, nerve.nucleus(), direct.level);
  if (skeleton != schreier) {
    std::vector<std::pair<CellId, CellId>> extra;
    std::vector<std::pair<CellId, CellId>> missing;
    std::set_difference(skeleton.begin(), skeleton.end(), schreier.begin(), schreier.end(), std::back_inserter(extra));
    std::set_difference(schreier.begin(), schreier.end(), skeleton.begin(), skeleton.end(),
                        std::back_inserter(missing));
    const auto& e = extra.empty() ? missing.front() : extra.front();
    const std::size_t d = nerve.nucleus().degree();
    const auto& rec = engine.recursion();
    throw ValidationFailure("schreier", std::string(extra.empty() ? "missing" : "extra") + " edge " +
                                            rec.format(index_word(e.first, d, direct.level)) + " -- " +
                                            rec.format(index_word(e.second, d, direct.level)) + at);
  }
  r.schreier_edges = schreier.size();
  return r;
}

}  // namespace limitnerve
