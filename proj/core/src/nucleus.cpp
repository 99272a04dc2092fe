#include "limitnerve/nucleus.hpp"

#include <algorithm>
#include <unordered_set>

#include "limitnerve/error.hpp"

namespace limitnerve {

Nucleus::Nucleus(GroupEngine& engine, std::vector<Element> elements)
    : degree_(engine.degree()), elements_(std::move(elements)) {
  const std::size_t n = elements_.size();
  sorted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sorted_[i] = i;
  std::sort(sorted_.begin(), sorted_.end(),
            [&](std::size_t a, std::size_t b) { return elements_[a] < elements_[b]; });
  for (std::size_t k = 1; k < n; ++k)
    if (elements_[sorted_[k]] == elements_[sorted_[k - 1]])
      throw ValidationFailure("nucleus", "duplicate member " + engine.to_string(elements_[sorted_[k]]));

  sections_.resize(n * degree_);
  actions_.resize(n * degree_);
  inverses_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < degree_; ++x) {
      const Element s = engine.section(elements_[i], static_cast<Letter>(x));
      const std::size_t k = index_of(s);
      if (k == npos)
        throw ValidationFailure("section closure",
                                engine.to_string(elements_[i]) + " at letter " +
                                    engine.recursion().alphabet().name(static_cast<Letter>(x)));
      sections_[i * degree_ + x] = k;
      actions_[i * degree_ + x] = engine.act(elements_[i], static_cast<Letter>(x));
    }
    const std::size_t inv = index_of(engine.inverse(elements_[i]));
    if (inv == npos) throw ValidationFailure("inverse closure", engine.to_string(elements_[i]));
    inverses_[i] = inv;
  }
}

std::size_t Nucleus::index_of(Element e) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e,
                             [&](std::size_t a, Element v) { return elements_[a] < v; });
  if (it == sorted_.end() || elements_[*it] != e) return npos;
  return *it;
}

std::vector<Element> recurrent_sections(GroupEngine& engine, Element g) {
  const SectionClosure c = engine.section_closure(g);
  const std::size_t n = c.states.size();
  // Iterative Tarjan; a node is recurrent if its component has a cycle.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<bool> cyclic_comp;
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
      const auto& out = c.transitions[fr.v];
      if (fr.child < out.size()) {
        const std::size_t w = out[fr.child++];
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
      const int id = static_cast<int>(cyclic_comp.size());
      std::size_t members = 0;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = id;
        ++members;
      } while (w != v);
      bool cyclic = members > 1;
      for (std::size_t t : c.transitions[v]) cyclic = cyclic || t == v;
      cyclic_comp.push_back(cyclic);
    }
  }
  std::vector<bool> mark(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (cyclic_comp[comp[v]]) {
      mark[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t t : c.transitions[v])
      if (!mark[t]) {
        mark[t] = true;
        queue.push_back(t);
      }
  }
  std::vector<Element> out;
  for (std::size_t v = 0; v < n; ++v)
    if (mark[v]) out.push_back(c.states[v]);
  return out;
}

namespace {

// Shortest words are only worth searching for when the ball stays small.
void canonicalize_words(GroupEngine& engine, const std::vector<Element>& members) {
  const std::size_t m = engine.recursion().generators().size();
  std::size_t radius = 0;
  for (Element e : members) radius = std::max(radius, engine.word(e).size());
  const std::size_t limit = engine.budget().max_states / 4;
  double estimate = 1;
  for (std::size_t r = 0; r < radius; ++r) estimate *= r == 0 ? 2.0 * m : 2.0 * m - 1;
  if (estimate > static_cast<double>(limit)) return;
  engine.canonicalize(members, radius);
}

}  // namespace

Nucleus compute_nucleus(GroupEngine& engine, NucleusOptions options) {
  std::vector<Element> members;
  std::unordered_set<StateId> seen;
  auto add = [&](Element e) {
    if (seen.insert(e.id()).second) members.push_back(e);
  };
  add(engine.identity());
  for (GeneratorIndex g = 0; g < engine.recursion().generators().size(); ++g)
    for (bool inv : {false, true})
      for (Element s : recurrent_sections(engine, engine.generator(g, inv))) add(s);

  std::size_t fresh_from = 0;
  std::size_t rounds = 0;
  for (;;) {
    if (rounds >= options.max_rounds) throw RoundLimitExceeded(options.max_rounds);
    ++rounds;
    const std::size_t n = members.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i < fresh_from && j < fresh_from) continue;
        const Element p = engine.multiply(members[i], members[j]);
        for (Element s : recurrent_sections(engine, p)) add(s);
      }
    if (members.size() == n) break;
    fresh_from = n;
  }

  canonicalize_words(engine, members);
  std::sort(members.begin(), members.end(), [&](Element a, Element b) {
    if (a.is_identity() != b.is_identity()) return a.is_identity();
    return engine.word_less(a, b);
  });
  Nucleus nucleus(engine, std::move(members));
  nucleus.rounds = rounds;
  nucleus.pair_depth = verify_nucleus(engine, nucleus);
  return nucleus;
}

ContractionVerdict is_contracting(GroupEngine& engine, NucleusOptions options) {
  ContractionVerdict v;
  try {
    v.nucleus = compute_nucleus(engine, options);
    v.contracting = true;
  } catch (const BudgetExceeded& e) {
    v.reason = "max_states=" + std::to_string(engine.budget().max_states);
  } catch (const RoundLimitExceeded& e) {
    v.reason = "max_rounds=" + std::to_string(e.rounds());
  }
  return v;
}

std::size_t verify_nucleus(GroupEngine& engine, const Nucleus& nucleus) {
  const std::size_t n = nucleus.size();
  const std::size_t d = nucleus.degree();
  if (n == 0 || !nucleus.element(0).is_identity()) throw ValidationFailure("identity", "index 0 is not 1");
  for (std::size_t i = 0; i < n; ++i)
    if (nucleus.inverse(nucleus.inverse(i)) != i)
      throw ValidationFailure("inverse map", engine.to_string(nucleus.element(i)));

  // Every member must be reachable from a cycle of the nucleus section graph.
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < d; ++x) preds[nucleus.section(i, static_cast<Letter>(x))].push_back(i);
  // Remove members with no predecessor until stable; the rest lie after cycles.
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = preds[i].size();
  std::vector<std::size_t> queue;
  std::vector<bool> removed(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    removed[v] = true;
    for (std::size_t x = 0; x < d; ++x) {
      const std::size_t t = nucleus.section(v, static_cast<Letter>(x));
      if (--indeg[t] == 0) queue.push_back(t);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (removed[i]) throw ValidationFailure("recurrence", engine.to_string(nucleus.element(i)));

  // Pair saturation: the level sets of g*h fall into the nucleus by depth 2|N|.
  const std::size_t bound = 2 * n;
  std::size_t depth = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Element> level{engine.multiply(nucleus.element(i), nucleus.element(j))};
      std::size_t k = 0;
      for (;;) {
        bool inside = true;
        for (Element e : level) inside = inside && nucleus.contains(e);
        if (inside) break;
        if (++k > bound)
          throw ValidationFailure("pair saturation", engine.to_string(nucleus.element(i)) + " * " +
                                                         engine.to_string(nucleus.element(j)));
        std::vector<Element> next;
        for (Element e : level)
          for (std::size_t x = 0; x < d; ++x) next.push_back(engine.section(e, static_cast<Letter>(x)));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
      }
      depth = std::max(depth, k);
    }
  return depth;
}

MooreDiagram moore_diagram(const Nucleus& nucleus) {
  MooreDiagram m;
  m.letters = nucleus.degree();
  for (std::size_t x = 0; x < m.letters; ++x)
    for (std::size_t i = 1; i < nucleus.size(); ++i) {
      const Letter lx = static_cast<Letter>(x);
      m.arrows.push_back({lx, nucleus.act(i, lx), i, nucleus.section(i, lx)});
    }
  return m;
}

std::size_t checked_power(std::size_t degree, std::size_t level, std::size_t limit) {
  std::size_t v = 1;
  for (std::size_t k = 0; k < level; ++k) {
    if (v > limit / degree) throw ResourceLimit("level " + std::to_string(level) + " has more than " +
                                                std::to_string(limit) + " words");
    v *= degree;
  }
  return v;
}

std::size_t word_index(std::span<const Letter> word, std::size_t degree) {
  std::size_t i = 0;
  for (Letter x : word) i = i * degree + x;
  return i;
}

LetterWord index_word(std::size_t index, std::size_t degree, std::size_t level) {
  LetterWord w(level);
  for (std::size_t k = level; k-- > 0;) {
    w[k] = static_cast<Letter>(index % degree);
    index /= degree;
  }
  return w;
}

std::size_t SchreierGraph::vertex_count() const {
  std::size_t v = 1;
  for (std::size_t k = 0; k < level; ++k) v *= degree;
  return v;
}

LetterWord SchreierGraph::word(std::size_t vertex) const { return index_word(vertex, degree, level); }

SchreierGraph schreier_graph(GroupEngine& engine, std::span<const Element> generators,
                             std::size_t level, std::size_t max_vertices) {
  SchreierGraph g;
  g.level = level;
  g.degree = engine.degree();
  g.generators.assign(generators.begin(), generators.end());
  const std::size_t count = checked_power(g.degree, level, max_vertices);
  g.edges.reserve(count * generators.size());
  for (std::size_t v = 0; v < count; ++v) {
    const LetterWord w = index_word(v, g.degree, level);
    for (std::size_t k = 0; k < generators.size(); ++k)
      g.edges.push_back({v, word_index(engine.act(generators[k], w), g.degree), k});
  }
  return g;
}

}  // namespace limitnerve
