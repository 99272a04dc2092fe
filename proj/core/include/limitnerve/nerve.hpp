#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitnerve/complex.hpp"
#include "limitnerve/nucleus.hpp"

namespace limitnerve {

/// Sorted nucleus indices; index 0 is the identity.
using ElementSet = std::vector<std::uint32_t>;

/// Quotients a*b^-1 inside the nucleus, plus display names.
class NucleusTable {
 public:
  static constexpr std::size_t npos = Nucleus::npos;

  NucleusTable(GroupEngine& engine, const Nucleus& nucleus);

  const Nucleus& nucleus() const { return *nucleus_; }
  std::size_t size() const { return n_; }
  /// Index of element(a) * element(b)^-1, or npos outside the nucleus.
  std::size_t quotient(std::size_t a, std::size_t b) const { return quotient_[a * n_ + b]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  /// "{1, u, u v}"
  std::string format(const ElementSet& set) const;

 private:
  const Nucleus* nucleus_;
  std::size_t n_;
  std::vector<std::size_t> quotient_;
  std::vector<std::string> names_;
};

/// {g|_x : g in A}, deduplicated.
ElementSet restrict_set(const Nucleus& nucleus, const ElementSet& set, Letter x);

/// Pairwise condition g*h^-1 in N for all members.
bool is_rips(const NucleusTable& table, const ElementSet& set);

/// A*g^-1 for a member g, when every quotient stays in the nucleus.
std::optional<ElementSet> translate(const NucleusTable& table, const ElementSet& set, std::size_t g);

/// Subsets containing 1 with restriction arrows A -> A|_x.
struct AdjacencyGraph {
  std::vector<ElementSet> nodes;
  /// arrows[i][x] is the node index of nodes[i]|_x.
  std::vector<std::vector<std::size_t>> arrows;
  std::map<ElementSet, std::size_t> index;
};

/// Graph over the Rips cliques of the nucleus that contain 1. Throws
/// ResourceLimit past `max_nodes` candidates.
AdjacencyGraph adjacency_graph(const NucleusTable& table, std::size_t max_nodes = std::size_t{1} << 20);

/// Nodes lying on a cycle (self-loops included) or reachable from one.
std::vector<std::size_t> cycle_reachable(const AdjacencyGraph& graph);

/// Adjacency sets ordered by size, then lexicographically; sets[0] = {1}.
struct AdjacencyFamily {
  std::vector<ElementSet> sets;
  std::map<ElementSet, std::size_t> index;

  std::size_t index_of(const ElementSet& set) const;
  /// Indices of sets not strictly contained in another member.
  std::vector<std::size_t> maximal() const;

  /// Whether the unfiltered subset criterion was run, and the sets on which
  /// it disagreed with the filtered one.
  bool unfiltered_checked = false;
  std::vector<ElementSet> unfiltered_mismatches;
};

AdjacencyFamily adjacency_sets(const NucleusTable& table, const AdjacencyGraph& graph);

/// A -> A*g^-1 on the sets containing g.
struct GluingMap {
  std::size_t element = 0;
  /// (domain set, image set) as family indices.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// One map per non-identity nucleus element, in nucleus order. Throws
/// ConsistencyError if a translate is not an adjacency set.
std::vector<GluingMap> gluing_maps(const NucleusTable& table, const AdjacencyFamily& family);

/// Order complex of the family under inclusion; vertex i is sets[i].
CellComplex fundamental_domain(const NucleusTable& table, const AdjacencyFamily& family);

struct NerveOptions {
  std::size_t max_candidates = std::size_t{1} << 20;
  /// Run the criterion on all subsets containing 1 when |N| - 1 is at most this.
  std::size_t unfiltered_limit = 16;
};

/// Everything the model builder needs at level 0. Refers to the nucleus it
/// was built from, which must outlive it.
struct Nerve {
  NucleusTable table;
  AdjacencyGraph graph = {};
  AdjacencyFamily family = {};
  std::vector<GluingMap> gluings = {};
  /// kappa[g][set] = image family index or npos; row 0 is the identity.
  std::vector<std::vector<std::size_t>> kappa = {};
  CellComplex t0 = {};
  CellComplex j0 = {};
  /// j0_classes[dim][t0 cell] = J_0 cell.
  std::vector<std::vector<CellId>> j0_classes = {};
  /// Merges recorded while identifying T_0 cells.
  std::vector<std::pair<std::size_t, std::size_t>> j0_trace = {};

  /// Image of a T_0 cell under kappa_g, or -1 when g is not in its first set.
  long long kappa_cell(std::size_t g, std::size_t dim, CellId cell) const;

  const Nucleus& nucleus() const { return table.nucleus(); }

  /// Lookup of T_0 cells by chain; one entry once t0 is built.
  std::vector<CellIndex> t0_index = {};
};

Nerve build_nerve(GroupEngine& engine, const Nucleus& nucleus, NerveOptions options = {});

/// J_0 as the quotient of T_0 by all gluing maps.
CellComplex assemble_j0(const Nerve& nerve, std::vector<std::vector<CellId>>* classes = nullptr,
                        std::vector<std::pair<std::size_t, std::size_t>>* trace = nullptr);

}  // namespace limitnerve
