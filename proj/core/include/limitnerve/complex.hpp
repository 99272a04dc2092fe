#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace limitnerve {

using CellId = std::uint32_t;

/// Face of a cell: the face cell, and for each of its vertices the position
/// of the matching vertex in the parent cell.
struct FaceRef {
  CellId cell = 0;
  std::vector<std::uint8_t> positions;

  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

/// A k-cell has k+1 vertex slots and k+1 faces; faces[i] omits slot i.
/// Slots may repeat a vertex, so quotients by simplicial identifications
/// stay representable (a loop edge has both slots on one vertex).
struct Cell {
  std::vector<CellId> vertices;
  std::vector<FaceRef> faces;
};

/// Finite complex of simplex-shaped cells glued along faces.
class CellComplex {
 public:
  CellComplex() = default;
  explicit CellComplex(std::size_t vertex_count);

  /// Highest cell dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t vertex_count() const { return cells_.empty() ? 0 : cells_[0].size(); }
  std::size_t cell_count(std::size_t dim) const { return dim < cells_.size() ? cells_[dim].size() : 0; }
  const std::vector<Cell>& cells(std::size_t dim) const { return cells_.at(dim); }
  const Cell& cell(std::size_t dim, CellId id) const { return cells_.at(dim).at(id); }

  CellId add_vertex();
  /// Adds a cell of dimension vertices.size() - 1 >= 1.
  CellId add_cell(std::vector<CellId> vertices, std::vector<FaceRef> faces);

  std::vector<std::size_t> f_vector() const;
  long long euler() const;
  /// Ranks of homology over the field with two elements.
  std::vector<std::size_t> betti_mod2() const;

  /// Checks face vertices against parent slots and the face-of-face
  /// identities. Throws ConsistencyError.
  void validate() const;

  std::vector<std::string> vertex_labels;

 private:
  std::vector<std::vector<Cell>> cells_;
};

/// Simplicial complex spanned by the given vertex sets and all their faces.
/// Slots follow ascending vertex order.
CellComplex simplicial_closure(std::size_t vertex_count, const std::vector<std::vector<CellId>>& simplices);

/// Lookup of cells by their exact vertex list.
class CellIndex {
 public:
  explicit CellIndex(const CellComplex& complex);
  /// Returns the cell with this slot list, or -1.
  long long find(const std::vector<CellId>& vertices) const;

 private:
  std::map<std::vector<CellId>, CellId> index_;
};

/// Quotient by a partition of cells in every dimension. Members of a class
/// must agree on face classes slot for slot. classes[dim][cell] is a dense
/// class number. The representative of a class is its first member.
CellComplex quotient_complex(const CellComplex& base, const std::vector<std::vector<CellId>>& classes);

/// Barycentric subdivision. Vertex i of the result is the barycenter of the
/// i-th cell in dimension-major order.
CellComplex barycentric_subdivision(const CellComplex& complex);

/// Subdivided simplices contributed by one k-cell: chains of nonempty slot
/// sets ending at the full set, counted by length.
std::vector<std::size_t> subdivision_counts(std::size_t dim);

/// Union-find with path halving, union by rank and a record of every
/// successful merge.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);

  std::size_t size() const { return parent_.size(); }
  std::size_t find(std::size_t x);
  /// Returns false if already joined.
  bool unite(std::size_t a, std::size_t b);
  const std::vector<std::pair<std::size_t, std::size_t>>& trace() const { return trace_; }
  std::size_t class_count() const { return classes_; }
  /// Dense class numbers in order of first appearance.
  std::vector<CellId> labels();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::vector<std::pair<std::size_t, std::size_t>> trace_;
  std::size_t classes_ = 0;
};

/// Undirected 1-skeleton as sorted (min, max) vertex pairs with multiplicity.
std::vector<std::pair<CellId, CellId>> edge_multiset(const CellComplex& complex);

}  // namespace limitnerve
