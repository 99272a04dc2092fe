#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limitnerve/group.hpp"

namespace limitnerve {

struct NucleusOptions {
  std::size_t max_rounds = 64;
};

/// Finite section- and inverse-closed set containing the identity. Members
/// are addressed by index; index 0 is the identity and the rest follow the
/// shortlex order of their representative words.
class Nucleus {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Nucleus() = default;
  Nucleus(GroupEngine& engine, std::vector<Element> elements);

  std::size_t size() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const std::vector<Element>& elements() const { return elements_; }
  Element element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(Element e) const;
  bool contains(Element e) const { return index_of(e) != npos; }

  /// Index of element(i)|_x.
  std::size_t section(std::size_t i, Letter x) const { return sections_[i * degree_ + x]; }
  std::size_t inverse(std::size_t i) const { return inverses_[i]; }
  Letter act(std::size_t i, Letter x) const { return actions_[i * degree_ + x]; }

  /// Saturation rounds used, and the largest depth after which every
  /// product of two members has all its sections inside the set.
  std::size_t rounds = 0;
  std::size_t pair_depth = 0;
  /// Minimality beyond the checked invariants is not certified.
  bool minimality_certified = false;

 private:
  std::size_t degree_ = 0;
  std::vector<Element> elements_;
  std::vector<std::size_t> sorted_;  // indices sorted by element id
  std::vector<std::size_t> sections_;
  std::vector<std::size_t> inverses_;
  std::vector<Letter> actions_;
};

/// Saturates products of pairs until no new recurrent sections appear.
/// Throws BudgetExceeded or RoundLimitExceeded when the group is not shown
/// to be contracting within the limits.
Nucleus compute_nucleus(GroupEngine& engine, NucleusOptions options = {});

struct ContractionVerdict {
  bool contracting = false;
  std::optional<Nucleus> nucleus;
  /// Why the verdict is unknown, when it is.
  std::string reason;
};

ContractionVerdict is_contracting(GroupEngine& engine, NucleusOptions options = {});

/// Re-checks identity, section and inverse closure, recurrence of every
/// member and pair saturation. Returns the depth by which all sections of
/// pairwise products lie in the set. Throws ValidationFailure.
std::size_t verify_nucleus(GroupEngine& engine, const Nucleus& nucleus);

/// Sections of g lying on or after a cycle of its section graph.
std::vector<Element> recurrent_sections(GroupEngine& engine, Element g);

struct MooreArrow {
  Letter from;
  Letter to;
  std::size_t element;  // nucleus index of g
  std::size_t section;  // nucleus index of g|_from
};

struct MooreDiagram {
  std::size_t letters = 0;
  std::vector<MooreArrow> arrows;
};

/// Dual Moore diagram: an arrow x -> g(x) labelled (g, g|_x) for every letter
/// and every non-identity member.
MooreDiagram moore_diagram(const Nucleus& nucleus);

struct SchreierEdge {
  std::size_t from;
  std::size_t to;
  std::size_t label;  // index into SchreierGraph::generators
};

/// Level-n action graph. Vertex i is the i-th word of X^n in lexicographic
/// order, first letter most significant.
struct SchreierGraph {
  std::size_t level = 0;
  std::size_t degree = 0;
  std::vector<Element> generators;
  std::vector<SchreierEdge> edges;

  std::size_t vertex_count() const;
  LetterWord word(std::size_t vertex) const;
};

/// One edge per vertex and generator. Throws ResourceLimit beyond
/// `max_vertices`.
SchreierGraph schreier_graph(GroupEngine& engine, std::span<const Element> generators,
                             std::size_t level, std::size_t max_vertices = std::size_t{1} << 22);

/// Index words of X^n: first letter most significant.
std::size_t word_index(std::span<const Letter> word, std::size_t degree);
LetterWord index_word(std::size_t index, std::size_t degree, std::size_t level);
std::size_t checked_power(std::size_t degree, std::size_t level, std::size_t limit);

}  // namespace limitnerve
