#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitnerve/complex.hpp"
#include "limitnerve/nerve.hpp"

namespace limitnerve {

/// A level-n approximation with its vertex maps to level n-1.
struct LeveledModel {
  std::size_t level = 0;
  CellComplex complex;
  std::vector<std::string> vertex_words;
  /// Vertex maps to level n-1; empty at level 0.
  std::vector<CellId> p;
  std::vector<CellId> iota;
  /// Vertices whose members disagreed on their iota image.
  std::size_t iota_conflicts = 0;
};

/// Actions and sections of every nucleus member on X^n.
class LevelTable {
 public:
  LevelTable() = default;
  LevelTable(const Nucleus& nucleus, std::size_t level, std::size_t max_words);

  std::size_t level() const { return level_; }
  std::size_t words() const { return words_; }
  std::size_t act(std::size_t g, std::size_t w) const { return act_[g * words_ + w]; }
  std::uint32_t section(std::size_t g, std::size_t w) const { return sec_[g * words_ + w]; }

 private:
  std::size_t level_ = 0;
  std::size_t words_ = 0;
  std::vector<std::size_t> act_;
  std::vector<std::uint32_t> sec_;
};

/// (word index, nucleus index) packed as word << 32 | element.
using Atom = std::uint64_t;

inline Atom make_atom(std::size_t word, std::size_t element) {
  return (static_cast<Atom>(word) << 32) | static_cast<Atom>(element);
}
inline std::size_t atom_word(Atom a) { return static_cast<std::size_t>(a >> 32); }
inline std::uint32_t atom_element(Atom a) { return static_cast<std::uint32_t>(a & 0xffffffffu); }

/// Least sorted translate of a set of atoms among the translates that make
/// one group part trivial. `order`, if given, receives for each slot of the
/// result the index of the source atom it came from.
std::vector<Atom> canonical_atoms(const NucleusTable& table, std::vector<Atom> atoms,
                                  std::vector<std::size_t>* order = nullptr);

struct ModelOptions {
  std::size_t max_words = std::size_t{1} << 20;
  std::size_t max_cells = std::size_t{1} << 22;
  /// Worker threads for the direct route; 0 picks the hardware count.
  std::size_t jobs = 0;
};

/// Level n built from tiles: vertices are words of X^n, cells are classes of
/// {(a(v), a|_v) : a in A} under right translation.
struct DirectModel {
  std::size_t level = 0;
  CellComplex complex;
  /// atoms[dim][cell] in canonical form; slot i of the cell is atom i.
  std::vector<std::vector<std::vector<Atom>>> atoms;
  /// Least (family set, word) generating each cell.
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> origin;
  std::vector<std::map<std::vector<Atom>, CellId>> index;
  LevelTable table;

  long long find(const std::vector<Atom>& canonical) const;
};

DirectModel direct_Jn(const Nerve& nerve, std::size_t level, ModelOptions options = {});

/// LeveledModel view of a direct level; `previous` supplies the p and iota
/// targets and is checked to receive every image simplex.
LeveledModel direct_model(const WreathRecursion& rec, const Nerve& nerve, const DirectModel& model, const DirectModel* previous);

struct LevelMaps {
  std::vector<CellId> p;
  std::vector<CellId> iota;
};

/// Vertex maps p(vx) = v and iota(xv) = v between consecutive direct levels.
/// Throws ValidationFailure if a simplex image is not a simplex.
LevelMaps level_maps(const Nerve& nerve, const DirectModel& upper, const DirectModel& lower);

struct TowerOptions {
  /// Shuffle every batch of identifications with this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

/// T_n and the maps kappa_{g,n}, built one level at a time from T_0.
class CutPasteTower {
 public:
  explicit CutPasteTower(const Nerve& nerve, TowerOptions options = {});

  std::size_t level() const { return level_; }
  const CellComplex& t() const { return t_; }
  /// kappa(g, dim)[cell] = image cell of T_n or npos.
  const std::vector<std::size_t>& kappa(std::size_t g, std::size_t dim) const { return kappa_[g][dim]; }
  /// cell_class(dim)[raw] for raw = word * |T_0 cells| + T_0 cell.
  const std::vector<CellId>& cell_class(std::size_t dim) const { return raw_[dim]; }
  /// Merges made while gluing the copies at the latest level, per dimension.
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& trace() const { return trace_; }
  /// T_n cells of the previous level times X: (cell * d + x) -> T_n cell.
  const std::vector<CellId>& copy_class(std::size_t dim) const { return copies_[dim]; }

  /// Moves to level n+1. Throws ConsistencyError if kappa is ill-defined.
  void advance();

  /// J_n as the quotient by all kappa_{g,n}; classes[dim][T_n cell].
  CellComplex assemble(std::vector<std::vector<CellId>>* classes = nullptr) const;

 private:
  const Nerve* nerve_;
  TowerOptions options_;
  std::size_t level_ = 0;
  CellComplex t_;
  std::vector<std::vector<std::vector<std::size_t>>> kappa_;
  std::vector<std::vector<CellId>> raw_;
  std::vector<std::vector<CellId>> copies_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> trace_;
};

/// J_0..J_n by cut and paste with p and iota attached.
std::vector<LeveledModel> cutpaste_models(const WreathRecursion& rec, const Nerve& nerve, std::size_t level, TowerOptions options = {});

struct CrossValidation {
  std::size_t level = 0;
  long long euler = 0;
  std::vector<std::size_t> betti;
  std::vector<std::size_t> direct_f;
  std::vector<std::size_t> cutpaste_f;
  std::size_t schreier_edges = 0;
};

/// Compares the two routes at one level: Euler characteristic, mod-2 Betti
/// numbers, f-vector of the subdivided direct complex, and the direct
/// 1-skeleton against the Schreier graph of the nucleus. Throws
/// ValidationFailure naming the first mismatch.
CrossValidation cross_validate(GroupEngine& engine, const Nerve& nerve, const DirectModel& direct,
                               const LeveledModel& cutpaste);

/// Unordered Schreier edges for the generators N \ {1}, one per pair
/// {g at v, g^-1 at g(v)}.
std::vector<std::pair<CellId, CellId>> schreier_edge_multiset(GroupEngine& engine, const Nucleus& nucleus,
                                                              std::size_t level);

}  // namespace limitnerve
