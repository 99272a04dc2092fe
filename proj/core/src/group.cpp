#include "limitnerve/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>

#include "limitnerve/error.hpp"

namespace limitnerve {

namespace {

constexpr StateId kNone = std::numeric_limits<StateId>::max();

std::uint64_t pair_key(StateId a, StateId b) {
  return (std::uint64_t{a} << 32) | b;
}

std::vector<Letter> inverse_perm(const std::vector<Letter>& p) {
  std::vector<Letter> inv(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) inv[p[x]] = static_cast<Letter>(x);
  return inv;
}

// Hash for signature vectors used during refinement.
struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

std::uint64_t perm_hash(const std::vector<Letter>& p) {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (Letter x : p) h = mix_hash(h, x);
  return h;
}

}  // namespace

EffortBudget EffortBudget::from_environment() {
  EffortBudget b;
  if (const char* env = std::getenv("LIMITNERVE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.max_states = static_cast<std::size_t>(v);
  }
  return b;
}

std::size_t SectionClosure::index_of(Element e) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == e) return i;
  return states.size();
}

GroupEngine::GroupEngine(WreathRecursion rec, EffortBudget budget)
    : rec_(std::move(rec)), budget_(budget) {
  const std::size_t d = rec_.degree();
  State id;
  id.perm.resize(d);
  for (std::size_t x = 0; x < d; ++x) id.perm[x] = static_cast<Letter>(x);
  id.next.assign(d, 0);
  states_.push_back(std::move(id));
  reps_.emplace_back();
  inverses_.push_back(0);
  fp_.push_back(perm_hash(states_[0].perm));
  for (std::size_t k = 1; k <= kFingerprintDepth; ++k) {
    std::uint64_t h = fp_[0] ^ (k * 0x2545f4914f6cdd1dULL);
    for (std::size_t x = 0; x < d; ++x) h = mix_hash(h, fp_[k - 1]);
    fp_.push_back(h);
  }
  fp_index_.emplace(fp_.back(), 0);
  bootstrap_generators();
}

void GroupEngine::check_size(std::size_t extra, const char* what) const {
  if (states_.size() + extra > budget_.max_states) throw BudgetExceeded(what, budget_.max_states);
}

void GroupEngine::offer_word(StateId id, const GeneratorWord& w) {
  if (id == 0) return;
  if (reps_[id].empty() || shortlex_less(w, reps_[id])) reps_[id] = w;
}

// Merges a finite automaton whose transitions point into the registry or into
// itself. Runs Moore refinement on the pending states together with every
// registry state they can reach; classes that contain a registry state fold
// onto it, the rest become new registry states in order of first appearance.
std::vector<StateId> GroupEngine::absorb(const std::vector<Pending>& pending) {
  const std::size_t d = degree();
  std::vector<StateId> reg_nodes;
  std::unordered_map<StateId, std::uint32_t> reg_local;
  std::deque<StateId> queue;
  auto visit_reg = [&](StateId s) {
    if (reg_local.emplace(s, static_cast<std::uint32_t>(reg_nodes.size())).second) {
      reg_nodes.push_back(s);
      queue.push_back(s);
    }
  };
  for (const auto& p : pending)
    for (auto t : p.next)
      if (!(t & kPending)) visit_reg(static_cast<StateId>(t));
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId t : states_[s].next) visit_reg(t);
  }

  const std::size_t R = reg_nodes.size();
  const std::size_t n = R + pending.size();
  std::vector<std::vector<std::uint32_t>> succ(n, std::vector<std::uint32_t>(d));
  std::vector<const std::vector<Letter>*> perms(n);
  for (std::size_t i = 0; i < R; ++i) {
    const State& s = states_[reg_nodes[i]];
    perms[i] = &s.perm;
    for (std::size_t x = 0; x < d; ++x) succ[i][x] = reg_local.at(s.next[x]);
  }
  for (std::size_t j = 0; j < pending.size(); ++j) {
    perms[R + j] = &pending[j].perm;
    for (std::size_t x = 0; x < d; ++x) {
      const auto t = pending[j].next[x];
      succ[R + j][x] = (t & kPending) ? static_cast<std::uint32_t>(R + (t & ~kPending))
                                      : reg_local.at(static_cast<StateId>(t));
    }
  }

  std::vector<std::uint32_t> cls(n);
  std::size_t num_classes = 0;
  {
    std::map<std::vector<Letter>, std::uint32_t> by_perm;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = by_perm.emplace(*perms[i], static_cast<std::uint32_t>(by_perm.size()));
      cls[i] = it->second;
    }
    num_classes = by_perm.size();
  }
  for (;;) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> sig_ids;
    std::vector<std::uint32_t> next_cls(n);
    std::vector<std::uint32_t> sig(d + 1);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (std::size_t x = 0; x < d; ++x) sig[x + 1] = cls[succ[i][x]];
      auto [it, fresh] = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size()));
      next_cls[i] = it->second;
    }
    cls.swap(next_cls);
    if (sig_ids.size() == num_classes) break;
    num_classes = sig_ids.size();
  }

  std::vector<StateId> class_state(num_classes, kNone);
  for (std::size_t i = 0; i < R; ++i) {
    if (class_state[cls[i]] != kNone)
      throw ConsistencyError("registry holds two bisimilar states");
    class_state[cls[i]] = reg_nodes[i];
  }

  // Classes without a reachable registry member may still match a registry
  // state elsewhere. Fingerprints narrow the candidates; a pairwise
  // bisimulation walk decides.
  std::vector<std::size_t> class_rep(num_classes, n);
  std::vector<std::uint32_t> fresh;
  for (std::size_t j = 0; j < pending.size(); ++j) {
    const auto c = cls[R + j];
    if (class_state[c] == kNone && class_rep[c] == n) {
      class_rep[c] = R + j;
      fresh.push_back(c);
    }
  }
  std::vector<std::uint32_t> fresh_pos(num_classes, 0);
  for (std::size_t i = 0; i < fresh.size(); ++i) fresh_pos[fresh[i]] = static_cast<std::uint32_t>(i);
  auto csucc = [&](std::uint32_t c, std::size_t x) { return cls[succ[class_rep[c]][x]]; };

  const std::size_t F = fresh.size();
  std::vector<std::uint64_t> fp((kFingerprintDepth + 1) * F);
  for (std::size_t i = 0; i < F; ++i) fp[i] = perm_hash(*perms[class_rep[fresh[i]]]);
  for (std::size_t k = 1; k <= kFingerprintDepth; ++k) {
    for (std::size_t i = 0; i < F; ++i) {
      std::uint64_t h = fp[i] ^ (k * 0x2545f4914f6cdd1dULL);
      for (std::size_t x = 0; x < d; ++x) {
        const auto t = csucc(fresh[i], x);
        const std::uint64_t sub = class_state[t] != kNone
                                      ? fp_[class_state[t] * (kFingerprintDepth + 1) + k - 1]
                                      : fp[(k - 1) * F + fresh_pos[t]];
        h = mix_hash(h, sub);
      }
      fp[k * F + i] = h;
    }
  }

  auto try_match = [&](std::uint32_t c0, StateId y0) {
    std::unordered_map<std::uint32_t, StateId> trial;
    std::vector<std::pair<std::uint32_t, StateId>> todo{{c0, y0}};
    while (!todo.empty()) {
      auto [c, y] = todo.back();
      todo.pop_back();
      if (class_state[c] != kNone) {
        if (class_state[c] != y) return false;
        continue;
      }
      auto [it, fresh_pair] = trial.emplace(c, y);
      if (!fresh_pair) {
        if (it->second != y) return false;
        continue;
      }
      if (*perms[class_rep[c]] != states_[y].perm) return false;
      for (std::size_t x = 0; x < d; ++x) todo.emplace_back(csucc(c, x), states_[y].next[x]);
    }
    for (auto [c, y] : trial) class_state[c] = y;
    return true;
  };
  for (std::size_t i = 0; i < F; ++i) {
    const auto c = fresh[i];
    if (class_state[c] != kNone) continue;
    auto [lo, hi] = fp_index_.equal_range(fp[kFingerprintDepth * F + i]);
    for (auto it = lo; it != hi; ++it)
      if (try_match(c, it->second)) break;
  }

  std::vector<std::size_t> created;
  for (std::size_t i = 0; i < F; ++i) {
    const auto c = fresh[i];
    if (class_state[c] != kNone) continue;
    check_size(1, "element registry");
    class_state[c] = static_cast<StateId>(states_.size());
    states_.push_back(State{*perms[class_rep[c]], std::vector<StateId>(d, kNone)});
    reps_.push_back(pending[class_rep[c] - R].rep);
    inverses_.push_back(kNone);
    fp_.insert(fp_.end(), kFingerprintDepth + 1, 0);
    for (std::size_t k = 0; k <= kFingerprintDepth; ++k)
      fp_[class_state[c] * (kFingerprintDepth + 1) + k] = fp[k * F + i];
    fp_index_.emplace(fp[kFingerprintDepth * F + i], class_state[c]);
    created.push_back(i);
  }
  for (std::size_t i : created) {
    const auto c = fresh[i];
    for (std::size_t x = 0; x < d; ++x) states_[class_state[c]].next[x] = class_state[csucc(c, x)];
  }
  std::vector<StateId> out(pending.size());
  for (std::size_t j = 0; j < pending.size(); ++j) {
    out[j] = class_state[cls[R + j]];
    offer_word(out[j], pending[j].rep);
  }
  return out;
}

// Items of a bootstrap tuple: registry states, or still-pending generator
// factors of the block being resolved.
namespace {
constexpr std::uint64_t kFactorTag = std::uint64_t{1} << 63;
}

void GroupEngine::bootstrap_generators() {
  const std::size_t m = rec_.generators().size();
  const std::size_t d = degree();
  gens_.assign(2 * m, kNone);

  // Tarjan on the dependency graph; blocks come out dependencies first.
  std::vector<std::vector<std::size_t>> deps(m);
  for (std::size_t g = 0; g < m; ++g) {
    for (const auto& w : rec_.generator(static_cast<GeneratorIndex>(g)).sections)
      for (Factor f : w.factors()) deps[g].push_back(f.generator);
    std::sort(deps[g].begin(), deps[g].end());
    deps[g].erase(std::unique(deps[g].begin(), deps[g].end()), deps[g].end());
  }
  std::vector<std::vector<std::size_t>> blocks;
  {
    std::vector<int> index(m, -1), low(m, 0);
    std::vector<bool> on_stack(m, false);
    std::vector<std::size_t> stack;
    int counter = 0;
    struct Frame {
      std::size_t v;
      std::size_t child;
    };
    for (std::size_t root = 0; root < m; ++root) {
      if (index[root] != -1) continue;
      std::vector<Frame> call{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        Frame& fr = call.back();
        if (fr.child < deps[fr.v].size()) {
          std::size_t w = deps[fr.v][fr.child++];
          if (index[w] == -1) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[fr.v] = std::min(low[fr.v], index[w]);
          }
        } else {
          const std::size_t v = fr.v;
          call.pop_back();
          if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
          if (low[v] == index[v]) {
            std::vector<std::size_t> block;
            std::size_t w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              block.push_back(w);
            } while (w != v);
            std::sort(block.begin(), block.end());
            blocks.push_back(std::move(block));
          }
        }
      }
    }
  }

  using Tuple = std::vector<std::uint64_t>;
  for (const auto& block : blocks) {
    std::vector<bool> in_block(m, false);
    for (auto g : block) in_block[g] = true;

    auto factor_item = [](std::size_t g, bool inv) {
      return kFactorTag | (2 * g + (inv ? 1 : 0));
    };
    auto normalize = [&](const Tuple& items) {
      Tuple st;
      for (auto it : items) {
        if (!(it & kFactorTag)) {
          if (it == 0) continue;
          if (!st.empty() && !(st.back() & kFactorTag)) {
            StateId p = multiply(Element(static_cast<StateId>(st.back())), Element(static_cast<StateId>(it))).id();
            st.pop_back();
            if (p != 0) st.push_back(p);
            continue;
          }
          st.push_back(it);
        } else {
          if (!st.empty() && (st.back() & kFactorTag) && (st.back() ^ it) == 1) {
            st.pop_back();
            continue;
          }
          st.push_back(it);
        }
      }
      return st;
    };
    // Section of one item at letter x: (image letter, items of the section).
    auto item_step = [&](std::uint64_t it, Letter x, Tuple& out) -> Letter {
      if (!(it & kFactorTag)) {
        const State& s = states_[static_cast<StateId>(it)];
        out.push_back(s.next[x]);
        return s.perm[x];
      }
      const std::size_t code = it & ~kFactorTag;
      const auto& def = rec_.generator(static_cast<GeneratorIndex>(code / 2));
      const bool inv = code % 2;
      auto convert = [&](Factor f, bool flip) -> std::uint64_t {
        const bool finv = f.inverse != flip;
        if (in_block[f.generator]) return factor_item(f.generator, finv);
        return gens_[2 * f.generator + (finv ? 1 : 0)];
      };
      if (!inv) {
        for (Factor f : def.sections[x].factors()) out.push_back(convert(f, false));
        return def.permutation[x];
      }
      const Letter src = inverse_perm(def.permutation)[x];
      const auto& fs = def.sections[src].factors();
      for (auto f = fs.rbegin(); f != fs.rend(); ++f) out.push_back(convert(*f, true));
      return src;
    };
    auto to_word = [&](const Tuple& t) {
      GeneratorWord w;
      for (auto it : t) {
        if (it & kFactorTag) {
          const std::size_t code = it & ~kFactorTag;
          w.push_back({static_cast<GeneratorIndex>(code / 2), code % 2 == 1});
        } else {
          w *= reps_[static_cast<StateId>(it)];
        }
      }
      return w;
    };

    std::map<Tuple, std::size_t> local;
    std::vector<Tuple> tuples;
    std::vector<Pending> pending;
    auto intern = [&](const Tuple& t) -> std::uint64_t {
      if (t.empty()) return 0;
      if (t.size() == 1 && !(t[0] & kFactorTag)) return t[0];
      auto [it, fresh] = local.emplace(t, tuples.size());
      if (fresh) {
        if (t.size() > budget_.max_word_length)
          throw BudgetExceeded("generator section length", budget_.max_word_length);
        check_size(tuples.size() + 1, "generator bootstrap");
        tuples.push_back(t);
      }
      return kPending | it->second;
    };
    for (auto g : block) {
      intern({factor_item(g, false)});
      intern({factor_item(g, true)});
    }
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      Pending p;
      p.perm.resize(d);
      p.next.resize(d);
      for (std::size_t x0 = 0; x0 < d; ++x0) {
        const Tuple t = tuples[i];
        std::vector<Tuple> parts(t.size());
        Letter x = static_cast<Letter>(x0);
        for (std::size_t k = t.size(); k-- > 0;) x = item_step(t[k], x, parts[k]);
        p.perm[x0] = x;
        Tuple flat;
        for (const auto& part : parts) flat.insert(flat.end(), part.begin(), part.end());
        p.next[x0] = intern(normalize(flat));
      }
      p.rep = to_word(tuples[i]);
      pending.push_back(std::move(p));
    }
    const auto ids = absorb(pending);
    for (auto g : block) {
      gens_[2 * g] = ids[local.at({factor_item(g, false)})];
      gens_[2 * g + 1] = ids[local.at({factor_item(g, true)})];
    }
    for (auto g : block) {
      const StateId a = gens_[2 * g], b = gens_[2 * g + 1];
      if (a != 0 && b != 0) {
        inverses_[a] = b;
        inverses_[b] = a;
      }
    }
  }
}

Element GroupEngine::generator(GeneratorIndex g, bool inverse) const {
  return Element(gens_.at(2 * g + (inverse ? 1 : 0)));
}

Element GroupEngine::element(const GeneratorWord& word) {
  if (word.size() > budget_.max_word_length)
    throw BudgetExceeded("word length", budget_.max_word_length);
  Element acc = identity();
  for (Factor f : word.factors()) acc = multiply(acc, element(f));
  offer_word(acc.id(), word);
  return acc;
}

Element GroupEngine::element(std::string_view word) {
  return element(rec_.parse_word(word));
}

LetterWord GroupEngine::act(Element g, std::span<const Letter> word) const {
  LetterWord out(word.size());
  StateId s = g.id();
  for (std::size_t i = 0; i < word.size(); ++i) {
    out[i] = states_[s].perm[word[i]];
    s = states_[s].next[word[i]];
  }
  return out;
}

Element GroupEngine::section(Element g, std::span<const Letter> word) const {
  StateId s = g.id();
  for (Letter x : word) s = states_[s].next[x];
  return Element(s);
}

Element GroupEngine::multiply(Element g, Element h) {
  if (g.is_identity()) return h;
  if (h.is_identity()) return g;
  const std::uint64_t root_key = pair_key(g.id(), h.id());
  if (auto it = products_.find(root_key); it != products_.end()) return Element(it->second);

  const std::size_t d = degree();
  std::unordered_map<std::uint64_t, std::size_t> local;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<Pending> pending;
  auto intern = [&](StateId a, StateId b) -> std::uint64_t {
    if (a == 0) return b;
    if (b == 0) return a;
    const auto key = pair_key(a, b);
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    auto [it, fresh] = local.emplace(key, pairs.size());
    if (fresh) {
      check_size(pairs.size() + 1, "product automaton");
      pairs.emplace_back(a, b);
    }
    return kPending | it->second;
  };
  intern(g.id(), h.id());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    Pending p;
    p.perm.resize(d);
    p.next.resize(d);
    for (std::size_t x = 0; x < d; ++x) {
      const Letter mid = states_[b].perm[x];
      p.perm[x] = states_[a].perm[mid];
      p.next[x] = intern(states_[a].next[mid], states_[b].next[x]);
    }
    p.rep = reps_[a] * reps_[b];
    pending.push_back(std::move(p));
  }
  const auto ids = absorb(pending);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    products_[pair_key(pairs[i].first, pairs[i].second)] = ids[i];
  return Element(ids[0]);
}

Element GroupEngine::inverse(Element g) {
  if (inverses_[g.id()] != kNone) return Element(inverses_[g.id()]);
  const std::size_t d = degree();
  std::unordered_map<StateId, std::size_t> local;
  std::vector<StateId> nodes;
  std::vector<Pending> pending;
  auto intern = [&](StateId a) -> std::uint64_t {
    if (inverses_[a] != kNone) return inverses_[a];
    auto [it, fresh] = local.emplace(a, nodes.size());
    if (fresh) {
      check_size(nodes.size() + 1, "inverse automaton");
      nodes.push_back(a);
    }
    return kPending | it->second;
  };
  intern(g.id());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const State& s = states_[nodes[i]];
    Pending p;
    p.perm = inverse_perm(s.perm);
    p.next.resize(d);
    for (std::size_t y = 0; y < d; ++y) p.next[y] = intern(s.next[p.perm[y]]);
    p.rep = reps_[nodes[i]].inverse();
    pending.push_back(std::move(p));
  }
  const auto ids = absorb(pending);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    inverses_[nodes[i]] = ids[i];
    inverses_[ids[i]] = nodes[i];
  }
  return Element(ids[0]);
}

Element GroupEngine::multiply(std::span<const Element> factors) {
  Element acc = identity();
  for (Element f : factors) acc = multiply(acc, f);
  return acc;
}

bool GroupEngine::are_equal(const GeneratorWord& g, const GeneratorWord& h) {
  return element(g) == element(h);
}

SectionClosure GroupEngine::section_closure(Element g) const {
  SectionClosure c;
  std::unordered_map<StateId, std::size_t> idx;
  auto visit = [&](StateId s) {
    auto [it, fresh] = idx.emplace(s, c.states.size());
    if (fresh) c.states.emplace_back(s);
    return it->second;
  };
  visit(g.id());
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    const State& s = states_[c.states[i].id()];
    std::vector<std::size_t> row;
    for (StateId t : s.next) row.push_back(visit(t));
    c.transitions.push_back(std::move(row));
  }
  if (!idx.count(0)) {
    visit(0);
    c.transitions.push_back(std::vector<std::size_t>(degree(), c.states.size() - 1));
  }
  for (Element e : c.states) {
    c.words.push_back(word(e));
    c.outputs.push_back(states_[e.id()].perm);
  }
  return c;
}

std::vector<Element> GroupEngine::enumerate_ball(std::span<const Element> generators,
                                                 std::size_t radius) {
  // Factor list: g then g^-1 for every generator, in the given order.
  std::vector<Element> factors;
  for (Element g : generators) {
    factors.push_back(g);
    factors.push_back(inverse(g));
  }
  std::vector<Element> ball{identity()};
  std::unordered_map<StateId, std::size_t> seen{{0, 0}};
  std::vector<std::size_t> last_factor{factors.size()};
  std::vector<std::size_t> frontier{0};
  for (std::size_t r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<std::size_t> next;
    for (std::size_t i : frontier) {
      for (std::size_t f = 0; f < factors.size(); ++f) {
        if (last_factor[i] != factors.size() && (last_factor[i] ^ 1) == f) continue;
        const Element e = multiply(ball[i], factors[f]);
        offer_word(e.id(), reps_[ball[i].id()] * reps_[factors[f].id()]);
        if (seen.emplace(e.id(), ball.size()).second) {
          if (ball.size() + 1 > budget_.max_states) throw BudgetExceeded("ball", budget_.max_states);
          next.push_back(ball.size());
          ball.push_back(e);
          last_factor.push_back(f);
        }
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

bool GroupEngine::canonicalize(std::span<const Element> targets, std::size_t max_radius) {
  std::vector<Element> gens;
  for (std::size_t g = 0; g < rec_.generators().size(); ++g)
    gens.push_back(generator(static_cast<GeneratorIndex>(g)));
  std::size_t radius = 0;
  for (Element t : targets) radius = std::max(radius, reps_[t.id()].size());
  radius = std::min(radius, max_radius);
  const auto ball = enumerate_ball(gens, radius);
  std::unordered_map<StateId, bool> in_ball;
  for (Element e : ball) in_ball[e.id()] = true;
  // Reps of ball elements that are recursion generator words became shortlex
  // minimal during the traversal only if the traversal's words were used.
  bool all = true;
  for (Element t : targets) all = all && in_ball.count(t.id());
  return all;
}

SelfReplication is_self_replicating(GroupEngine& engine, std::size_t search_radius) {
  std::vector<Element> gens;
  for (std::size_t g = 0; g < engine.recursion().generators().size(); ++g)
    gens.push_back(engine.generator(static_cast<GeneratorIndex>(g)));
  const auto ball = engine.enumerate_ball(gens, search_radius);
  SelfReplication out;
  out.radius = search_radius;
  const std::size_t d = engine.degree();
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      std::optional<Element> w;
      for (Element e : ball) {
        if (engine.act(e, static_cast<Letter>(x)) == y && engine.section(e, static_cast<Letter>(x)).is_identity()) {
          w = e;
          break;
        }
      }
      if (!w) {
        out.missing = std::pair<Letter, Letter>(static_cast<Letter>(x), static_cast<Letter>(y));
        out.witnesses.clear();
        return out;
      }
      out.witnesses.push_back({static_cast<Letter>(x), static_cast<Letter>(y), *w});
    }
  }
  out.replicating = true;
  return out;
}

}  // namespace limitnerve
