#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "limitnerve/recursion.hpp"

namespace limitnerve {

/// Termination guard for closure computations.
struct EffortBudget {
  std::size_t max_states = 10000;
  std::size_t max_word_length = 64;

  /// Defaults, with max_states overridden by LIMITNERVE_BUDGET when set.
  static EffortBudget from_environment();
};

using StateId = std::uint32_t;

/// Handle of a group element in the faithful quotient. Two handles from the
/// same engine are equal exactly when the elements act identically on X*.
class Element {
 public:
  constexpr Element() = default;
  constexpr explicit Element(StateId id) : id_(id) {}

  constexpr StateId id() const { return id_; }
  constexpr bool is_identity() const { return id_ == 0; }

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;

 private:
  StateId id_ = 0;
};

/// Finite machine of all sections of one element.
struct SectionClosure {
  /// states[0] is the root element; the identity is always present.
  std::vector<Element> states;
  std::vector<GeneratorWord> words;
  /// transitions[i][x] indexes into states.
  std::vector<std::vector<std::size_t>> transitions;
  std::vector<std::vector<Letter>> outputs;

  std::size_t index_of(Element e) const;
};

/// Element arithmetic for one wreath recursion.
///
/// Elements live in a registry kept as a minimal Mealy automaton: every state
/// has a root permutation and one section state per letter, and no two states
/// are bisimilar. Products and inverses are built as finite automata over the
/// registry and merged back by partition refinement, so equality of handles
/// is equality of actions. Generators are bootstrapped from their section
/// words one strongly connected block of the dependency graph at a time,
/// folding every product of already-known states as it appears.
///
/// An engine is not thread-safe; finished Element values are plain integers.
class GroupEngine {
 public:
  explicit GroupEngine(WreathRecursion rec, EffortBudget budget = {});

  const WreathRecursion& recursion() const { return rec_; }
  std::size_t degree() const { return rec_.degree(); }
  const EffortBudget& budget() const { return budget_; }
  void set_budget(EffortBudget b) { budget_ = b; }

  Element identity() const { return Element(0); }
  Element generator(GeneratorIndex g, bool inverse = false) const;
  Element element(Factor f) const { return generator(f.generator, f.inverse); }
  Element element(const GeneratorWord& word);
  /// Parses and interns a word such as "u v^-1".
  Element element(std::string_view word);

  Letter act(Element g, Letter x) const { return states_[g.id()].perm[x]; }
  LetterWord act(Element g, std::span<const Letter> word) const;
  Element section(Element g, Letter x) const { return Element(states_[g.id()].next[x]); }
  Element section(Element g, std::span<const Letter> word) const;
  const std::vector<Letter>& permutation(Element g) const { return states_[g.id()].perm; }

  Element multiply(Element g, Element h);
  Element inverse(Element g);
  Element multiply(std::span<const Element> factors);

  bool are_equal(Element g, Element h) const { return g == h; }
  bool are_equal(const GeneratorWord& g, const GeneratorWord& h);

  SectionClosure section_closure(Element g) const;

  /// All distinct elements that are products of at most `radius` factors
  /// from generators and their inverses, ordered by first appearance in a
  /// shortlex traversal.
  std::vector<Element> enumerate_ball(std::span<const Element> generators, std::size_t radius);

  /// Best known representative word; shortlex-least once the element has
  /// been reached by a shortlex ball traversal over the recursion generators.
  const GeneratorWord& word(Element g) const { return reps_[g.id()]; }
  std::string to_string(Element g) const { return rec_.format(word(g)); }
  /// Shortlex order of representative words.
  bool word_less(Element g, Element h) const { return shortlex_less(word(g), word(h)); }

  /// Runs a shortlex ball traversal over the recursion generators until every
  /// target has been reached or `max_radius` is hit. Returns true if all
  /// targets now have their shortlex-least word.
  bool canonicalize(std::span<const Element> targets, std::size_t max_radius);

  std::size_t state_count() const { return states_.size(); }

 private:
  struct State {
    std::vector<Letter> perm;
    std::vector<StateId> next;
  };

  // Pending states refer to each other through indices tagged with kPending.
  static constexpr std::uint64_t kPending = std::uint64_t{1} << 40;
  struct Pending {
    std::vector<Letter> perm;
    std::vector<std::uint64_t> next;
    GeneratorWord rep;
  };

  std::vector<StateId> absorb(const std::vector<Pending>& pending);
  void bootstrap_generators();
  void offer_word(StateId id, const GeneratorWord& w);
  void check_size(std::size_t extra, const char* what) const;

  WreathRecursion rec_;
  EffortBudget budget_;
  std::vector<State> states_;
  std::vector<GeneratorWord> reps_;
  std::vector<StateId> gens_;  // 2*g for g, 2*g+1 for g^-1
  std::unordered_map<std::uint64_t, StateId> products_;
  std::vector<StateId> inverses_;  // kNone when unknown
  // Unfolding hashes per state, levels 0..kFingerprintDepth.
  static constexpr std::size_t kFingerprintDepth = 24;
  std::vector<std::uint64_t> fp_;
  std::unordered_multimap<std::uint64_t, StateId> fp_index_;
};

struct ReplicationWitness {
  Letter from;
  Letter to;
  Element element;
};

struct SelfReplication {
  /// false means undecided within the search radius, never a refutation.
  bool replicating = false;
  std::size_t radius = 0;
  std::vector<ReplicationWitness> witnesses;
  std::optional<std::pair<Letter, Letter>> missing;
};

/// Looks for g with g(x) = y and trivial section at x for every letter pair.
SelfReplication is_self_replicating(GroupEngine& engine, std::size_t search_radius);

}  // namespace limitnerve
