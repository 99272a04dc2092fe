#include "limitnerve/nerve.hpp"

#include <algorithm>
#include <functional>

#include "limitnerve/error.hpp"

namespace limitnerve {

NucleusTable::NucleusTable(GroupEngine& engine, const Nucleus& nucleus)
    : nucleus_(&nucleus), n_(nucleus.size()), quotient_(n_ * n_, npos) {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      quotient_[a * n_ + b] =
          nucleus.index_of(engine.multiply(nucleus.element(a), engine.inverse(nucleus.element(b))));
  for (Element e : nucleus.elements()) names_.push_back(engine.to_string(e));
}

std::string NucleusTable::format(const ElementSet& set) const {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += ", ";
    s += names_[set[i]];
  }
  return s + "}";
}

ElementSet restrict_set(const Nucleus& nucleus, const ElementSet& set, Letter x) {
  ElementSet out;
  for (auto g : set) out.push_back(static_cast<std::uint32_t>(nucleus.section(g, x)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_rips(const NucleusTable& table, const ElementSet& set) {
  for (auto g : set)
    for (auto h : set)
      if (table.quotient(g, h) == NucleusTable::npos) return false;
  return true;
}

std::optional<ElementSet> translate(const NucleusTable& table, const ElementSet& set, std::size_t g) {
  ElementSet out;
  for (auto a : set) {
    const std::size_t q = table.quotient(a, g);
    if (q == NucleusTable::npos) return std::nullopt;
    out.push_back(static_cast<std::uint32_t>(q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::size_t> strongly_recurrent(const std::vector<std::vector<std::size_t>>& arrows) {
  const std::size_t n = arrows.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false), cyclic;
  std::vector<std::size_t> stack;
  int counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t child;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.child < arrows[fr.v].size()) {
        const std::size_t w = arrows[fr.v][fr.child++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      const std::size_t v = fr.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::size_t members = 0, w;
      const int id = static_cast<int>(cyclic.size());
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = id;
        ++members;
      } while (w != v);
      bool cyc = members > 1;
      for (std::size_t t : arrows[v]) cyc = cyc || t == v;
      cyclic.push_back(cyc);
    }
  }
  std::vector<bool> mark(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (cyclic[comp[v]]) {
      mark[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t t : arrows[v])
      if (!mark[t]) {
        mark[t] = true;
        queue.push_back(t);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

bool family_order(const ElementSet& a, const ElementSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

AdjacencyGraph adjacency_graph(const NucleusTable& table, std::size_t max_nodes) {
  const Nucleus& nucleus = table.nucleus();
  const std::size_t n = nucleus.size();
  AdjacencyGraph g;
  // Cliques containing 1 in the graph g ~ h iff g*h^-1 in N.
  ElementSet current{0};
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (g.nodes.size() >= max_nodes)
      throw ResourceLimit("more than " + std::to_string(max_nodes) + " adjacency candidates");
    g.nodes.push_back(current);
    for (std::size_t h = from; h < n; ++h) {
      bool ok = true;
      for (auto a : current) ok = ok && table.quotient(a, h) != NucleusTable::npos && table.quotient(h, a) != NucleusTable::npos;
      if (!ok) continue;
      current.push_back(static_cast<std::uint32_t>(h));
      extend(h + 1);
      current.pop_back();
    }
  };
  extend(1);
  std::sort(g.nodes.begin(), g.nodes.end(), family_order);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.index.emplace(g.nodes[i], i);
  g.arrows.resize(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t x = 0; x < nucleus.degree(); ++x) {
      auto it = g.index.find(restrict_set(nucleus, g.nodes[i], static_cast<Letter>(x)));
      if (it == g.index.end()) throw ConsistencyError("restriction left the Rips candidates: " + table.format(g.nodes[i]));
      g.arrows[i].push_back(it->second);
    }
  return g;
}

std::vector<std::size_t> cycle_reachable(const AdjacencyGraph& graph) { return strongly_recurrent(graph.arrows); }

std::size_t AdjacencyFamily::index_of(const ElementSet& set) const {
  auto it = index.find(set);
  return it == index.end() ? Nucleus::npos : it->second;
}

std::vector<std::size_t> AdjacencyFamily::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < sets.size() && !covered; ++j)
      covered = sets[j].size() > sets[i].size() &&
                std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end());
    if (!covered) out.push_back(i);
  }
  return out;
}

AdjacencyFamily adjacency_sets(const NucleusTable&, const AdjacencyGraph& graph) {
  AdjacencyFamily fam;
  for (std::size_t i : cycle_reachable(graph)) fam.sets.push_back(graph.nodes[i]);
  std::sort(fam.sets.begin(), fam.sets.end(), family_order);
  for (std::size_t i = 0; i < fam.sets.size(); ++i) fam.index.emplace(fam.sets[i], i);
  return fam;
}

namespace {

// Cycle criterion on every subset containing 1, as bit masks.
void unfiltered_check(const NucleusTable& table, AdjacencyFamily& fam) {
  const Nucleus& nucleus = table.nucleus();
  const std::size_t n = nucleus.size();
  const std::size_t count = std::size_t{1} << (n - 1);
  std::vector<std::vector<std::size_t>> arrows(count);
  auto to_set = [&](std::size_t mask) {
    ElementSet s{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.push_back(static_cast<std::uint32_t>(i));
    return s;
  };
  for (std::size_t mask = 0; mask < count; ++mask) {
    const ElementSet s = to_set(mask);
    for (std::size_t x = 0; x < nucleus.degree(); ++x) {
      std::size_t m = 0;
      for (auto g : s) {
        const std::size_t t = nucleus.section(g, static_cast<Letter>(x));
        if (t) m |= std::size_t{1} << (t - 1);
      }
      arrows[mask].push_back(m);
    }
  }
  std::vector<bool> in_full(count, false);
  for (std::size_t m : strongly_recurrent(arrows)) in_full[m] = true;
  for (std::size_t mask = 0; mask < count; ++mask) {
    const ElementSet s = to_set(mask);
    if (in_full[mask] != (fam.index_of(s) != Nucleus::npos)) fam.unfiltered_mismatches.push_back(s);
  }
  fam.unfiltered_checked = true;
}

}  // namespace

std::vector<GluingMap> gluing_maps(const NucleusTable& table, const AdjacencyFamily& family) {
  std::vector<GluingMap> out;
  for (std::size_t g = 1; g < table.size(); ++g) {
    GluingMap m;
    m.element = g;
    for (std::size_t i = 0; i < family.sets.size(); ++i) {
      const ElementSet& a = family.sets[i];
      if (!std::binary_search(a.begin(), a.end(), static_cast<std::uint32_t>(g))) continue;
      const auto image = translate(table, a, g);
      const std::size_t j = image ? family.index_of(*image) : Nucleus::npos;
      if (j == Nucleus::npos)
        throw ConsistencyError("translate of " + table.format(a) + " by " + table.name(g) + "^-1 is not an adjacency set");
      m.pairs.emplace_back(i, j);
    }
    out.push_back(std::move(m));
  }
  return out;
}

CellComplex fundamental_domain(const NucleusTable& table, const AdjacencyFamily& family) {
  // Chains of strict inclusions; family order refines inclusion.
  std::vector<std::vector<CellId>> chains;
  const std::size_t n = family.sets.size();
  std::vector<std::vector<std::size_t>> above(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (family.sets[j].size() > family.sets[i].size() &&
          std::includes(family.sets[j].begin(), family.sets[j].end(), family.sets[i].begin(), family.sets[i].end()))
        above[i].push_back(j);
  std::vector<CellId> chain;
  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    chain.push_back(static_cast<CellId>(i));
    bool extended = false;
    for (std::size_t j : above[i]) {
      grow(j);
      extended = true;
    }
    if (!extended) chains.push_back(chain);
    chain.pop_back();
  };
  for (std::size_t i = 0; i < n; ++i) grow(i);
  CellComplex t0 = simplicial_closure(n, chains);
  for (const auto& s : family.sets) t0.vertex_labels.push_back(table.format(s));
  return t0;
}

long long Nerve::kappa_cell(std::size_t g, std::size_t dim, CellId cell) const {
  const Cell& c = t0.cell(dim, cell);
  std::vector<CellId> image;
  for (CellId v : c.vertices) {
    const std::size_t j = kappa[g][v];
    if (j == Nucleus::npos) return -1;
    image.push_back(static_cast<CellId>(j));
  }
  if (dim == 0) return image[0];
  return t0_index.front().find(image);
}

CellComplex assemble_j0(const Nerve& nerve, std::vector<std::vector<CellId>>* classes,
                        std::vector<std::pair<std::size_t, std::size_t>>* trace) {
  const CellComplex& t0 = nerve.t0;
  const std::size_t top = static_cast<std::size_t>(t0.dimension());
  std::vector<std::vector<CellId>> cls(top + 1);
  std::vector<std::pair<std::size_t, std::size_t>> merges;
  for (std::size_t k = 0; k <= top; ++k) {
    UnionFind uf(t0.cell_count(k));
    for (std::size_t g = 1; g < nerve.kappa.size(); ++g)
      for (CellId c = 0; c < t0.cell_count(k); ++c) {
        const long long img = nerve.kappa_cell(g, k, c);
        if (img >= 0) uf.unite(c, static_cast<std::size_t>(img));
      }
    cls[k] = uf.labels();
    merges.insert(merges.end(), uf.trace().begin(), uf.trace().end());
  }
  CellComplex j0 = quotient_complex(t0, cls);
  if (classes) *classes = cls;
  if (trace) *trace = std::move(merges);
  return j0;
}

Nerve build_nerve(GroupEngine& engine, const Nucleus& nucleus, NerveOptions options) {
  Nerve nerve{NucleusTable(engine, nucleus)};
  nerve.graph = adjacency_graph(nerve.table, options.max_candidates);
  nerve.family = adjacency_sets(nerve.table, nerve.graph);
  if (nucleus.size() - 1 <= options.unfiltered_limit) unfiltered_check(nerve.table, nerve.family);
  for (const auto& s : nerve.family.sets) {
    for (std::size_t x = 0; x < nucleus.degree(); ++x)
      if (nerve.family.index_of(restrict_set(nucleus, s, static_cast<Letter>(x))) == Nucleus::npos)
        throw ConsistencyError("adjacency sets not closed under restriction at " + nerve.table.format(s));
  }
  nerve.gluings = gluing_maps(nerve.table, nerve.family);
  const std::size_t m = nerve.family.sets.size();
  nerve.kappa.assign(nucleus.size(), std::vector<std::size_t>(m, Nucleus::npos));
  for (std::size_t i = 0; i < m; ++i) nerve.kappa[0][i] = i;
  for (const auto& gm : nerve.gluings)
    for (auto [a, b] : gm.pairs) nerve.kappa[gm.element][a] = b;
  // Involution: kappa_{g^-1} undoes kappa_g.
  for (const auto& gm : nerve.gluings) {
    const std::size_t inv = nucleus.inverse(gm.element);
    for (auto [a, b] : gm.pairs)
      if (nerve.kappa[inv][b] != a)
        throw ConsistencyError("gluing maps of " + nerve.table.name(gm.element) + " and its inverse do not match");
  }
  nerve.t0 = fundamental_domain(nerve.table, nerve.family);
  nerve.t0_index.emplace_back(nerve.t0);
  nerve.j0 = assemble_j0(nerve, &nerve.j0_classes, &nerve.j0_trace);
  return nerve;
}

}  // namespace limitnerve
