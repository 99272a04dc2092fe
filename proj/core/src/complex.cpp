#include "limitnerve/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "limitnerve/error.hpp"

namespace limitnerve {

CellComplex::CellComplex(std::size_t vertex_count) {
  for (std::size_t i = 0; i < vertex_count; ++i) add_vertex();
}

CellId CellComplex::add_vertex() {
  if (cells_.empty()) cells_.emplace_back();
  const auto id = static_cast<CellId>(cells_[0].size());
  cells_[0].push_back(Cell{{id}, {}});
  return id;
}

CellId CellComplex::add_cell(std::vector<CellId> vertices, std::vector<FaceRef> faces) {
  const std::size_t dim = vertices.size() - 1;
  if (vertices.size() < 2 || faces.size() != vertices.size())
    throw ConsistencyError("cell needs one face per slot");
  if (cells_.size() <= dim) cells_.resize(dim + 1);
  const auto id = static_cast<CellId>(cells_[dim].size());
  cells_[dim].push_back(Cell{std::move(vertices), std::move(faces)});
  return id;
}

std::vector<std::size_t> CellComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& level : cells_) f.push_back(level.size());
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

long long CellComplex::euler() const {
  long long chi = 0;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(cells_[k].size());
  return chi;
}

namespace {

// Rank over GF(2) of the boundary map from `dim` cells to `dim - 1` cells.
std::size_t boundary_rank(const std::vector<Cell>& cols, std::size_t rows) {
  if (cols.empty() || rows == 0) return 0;
  const std::size_t words = (rows + 63) / 64;
  if (static_cast<double>(words) * static_cast<double>(cols.size()) > double(1u << 27))
    throw ResourceLimit("boundary matrix too large for elimination");
  std::vector<std::vector<std::uint64_t>> pivots(rows);
  std::size_t rank = 0;
  std::vector<std::uint64_t> col(words);
  for (const Cell& c : cols) {
    std::fill(col.begin(), col.end(), 0);
    for (const FaceRef& f : c.faces) col[f.cell / 64] ^= std::uint64_t{1} << (f.cell % 64);
    for (;;) {
      std::size_t top = rows;
      for (std::size_t w = words; w-- > 0;)
        if (col[w]) {
          top = w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(col[w]));
          break;
        }
      if (top == rows) break;
      if (pivots[top].empty()) {
        pivots[top] = col;
        ++rank;
        break;
      }
      for (std::size_t w = 0; w < words; ++w) col[w] ^= pivots[top][w];
    }
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> CellComplex::betti_mod2() const {
  const auto f = f_vector();
  std::vector<std::size_t> ranks(f.size() + 1, 0);
  for (std::size_t k = 1; k < f.size(); ++k) ranks[k] = boundary_rank(cells_[k], f[k - 1]);
  std::vector<std::size_t> betti(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) betti[k] = f[k] - ranks[k] - ranks[k + 1];
  return betti;
}

void CellComplex::validate() const {
  for (std::size_t k = 1; k < cells_.size(); ++k) {
    for (std::size_t id = 0; id < cells_[k].size(); ++id) {
      const Cell& c = cells_[k][id];
      const std::string where = "cell " + std::to_string(k) + ":" + std::to_string(id);
      if (c.vertices.size() != k + 1 || c.faces.size() != k + 1) throw ConsistencyError(where + " has wrong arity");
      for (std::size_t i = 0; i <= k; ++i) {
        const FaceRef& f = c.faces[i];
        if (f.cell >= cells_[k - 1].size() || f.positions.size() != k)
          throw ConsistencyError(where + " has a dangling face");
        const Cell& face = cells_[k - 1][f.cell];
        for (std::size_t t = 0; t < k; ++t) {
          if (f.positions[t] > k || f.positions[t] == i) throw ConsistencyError(where + " face slot out of range");
          if (face.vertices[t] != c.vertices[f.positions[t]]) throw ConsistencyError(where + " face vertex mismatch");
        }
      }
      // Removing slots i and j in either order reaches the same cell.
      if (k < 2) continue;
      for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = 0; j <= k; ++j) {
          if (i == j) continue;
          const FaceRef& fi = c.faces[i];
          const auto it = std::find(fi.positions.begin(), fi.positions.end(), static_cast<std::uint8_t>(j));
          const FaceRef& fij = cells_[k - 1][fi.cell].faces[static_cast<std::size_t>(it - fi.positions.begin())];
          const FaceRef& fj = c.faces[j];
          const auto jt = std::find(fj.positions.begin(), fj.positions.end(), static_cast<std::uint8_t>(i));
          const FaceRef& fji = cells_[k - 1][fj.cell].faces[static_cast<std::size_t>(jt - fj.positions.begin())];
          if (fij.cell != fji.cell) throw ConsistencyError(where + " violates face identities");
        }
    }
  }
}

CellComplex simplicial_closure(std::size_t vertex_count, const std::vector<std::vector<CellId>>& simplices) {
  std::vector<std::map<std::vector<CellId>, CellId>> index(1);
  std::size_t top = 0;
  std::vector<std::vector<std::vector<CellId>>> by_dim(1);
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) continue;
    if (s.size() > 16) throw ResourceLimit("simplex with more than 16 vertices");
    top = std::max(top, s.size() - 1);
    if (by_dim.size() <= top) by_dim.resize(top + 1);
    const std::uint32_t full = (std::uint32_t{1} << s.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      std::vector<CellId> sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask >> i & 1) sub.push_back(s[i]);
      by_dim[sub.size() - 1].push_back(std::move(sub));
    }
  }
  CellComplex out(vertex_count);
  index.resize(by_dim.size());
  for (std::size_t k = 1; k < by_dim.size(); ++k) {
    auto& list = by_dim[k];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (const auto& s : list) {
      std::vector<FaceRef> faces;
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<CellId> sub;
        FaceRef f;
        for (std::size_t t = 0; t <= k; ++t)
          if (t != i) {
            sub.push_back(s[t]);
            f.positions.push_back(static_cast<std::uint8_t>(t));
          }
        f.cell = k == 1 ? sub[0] : index[k - 1].at(sub);
        faces.push_back(std::move(f));
      }
      index[k].emplace(s, out.add_cell(s, std::move(faces)));
    }
  }
  return out;
}

CellIndex::CellIndex(const CellComplex& complex) {
  for (int k = 0; k <= complex.dimension(); ++k) {
    const auto& cells = complex.cells(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < cells.size(); ++i) index_.emplace(cells[i].vertices, static_cast<CellId>(i));
  }
}

long long CellIndex::find(const std::vector<CellId>& vertices) const {
  auto it = index_.find(vertices);
  return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

CellComplex quotient_complex(const CellComplex& base, const std::vector<std::vector<CellId>>& classes) {
  CellComplex out;
  const int top = base.dimension();
  if (top < 0) return out;
  std::vector<std::size_t> counts(static_cast<std::size_t>(top) + 1, 0);
  for (int k = 0; k <= top; ++k)
    for (CellId c : classes[static_cast<std::size_t>(k)])
      counts[static_cast<std::size_t>(k)] = std::max<std::size_t>(counts[static_cast<std::size_t>(k)], c + 1);

  for (std::size_t v = 0; v < counts[0]; ++v) out.add_vertex();
  if (!base.vertex_labels.empty()) {
    out.vertex_labels.assign(counts[0], std::string());
    std::vector<bool> named(counts[0], false);
    for (std::size_t v = 0; v < base.vertex_count(); ++v) {
      const CellId c = classes[0][v];
      if (!named[c]) {
        named[c] = true;
        out.vertex_labels[c] = base.vertex_labels[v];
      }
    }
  }
  for (std::size_t k = 1; k <= static_cast<std::size_t>(top); ++k) {
    const auto& cells = base.cells(k);
    std::vector<long long> first(counts[k], -1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const CellId c = classes[k][i];
      if (first[c] < 0) {
        first[c] = static_cast<long long>(i);
        continue;
      }
      const Cell& a = cells[static_cast<std::size_t>(first[c])];
      const Cell& b = cells[i];
      for (std::size_t t = 0; t <= k; ++t) {
        if (classes[0][a.vertices[t]] != classes[0][b.vertices[t]] ||
            classes[k - 1][a.faces[t].cell] != classes[k - 1][b.faces[t].cell] ||
            a.faces[t].positions != b.faces[t].positions)
          throw ConsistencyError("identified cells " + std::to_string(k) + ":" + std::to_string(first[c]) +
                                 " and " + std::to_string(k) + ":" + std::to_string(i) + " disagree on faces");
      }
    }
    for (std::size_t c = 0; c < counts[k]; ++c) {
      if (first[c] < 0) throw ConsistencyError("empty cell class");
      const Cell& a = cells[static_cast<std::size_t>(first[c])];
      std::vector<CellId> verts;
      std::vector<FaceRef> faces;
      for (std::size_t t = 0; t <= k; ++t) {
        verts.push_back(classes[0][a.vertices[t]]);
        faces.push_back({classes[k - 1][a.faces[t].cell], a.faces[t].positions});
      }
      out.add_cell(std::move(verts), std::move(faces));
    }
  }
  return out;
}

namespace {

struct Resolved {
  std::size_t dim;
  CellId cell;
  std::vector<std::uint8_t> slots;  // host slot of each slot of `cell`
};

Resolved resolve(const CellComplex& cx, std::size_t dim, CellId cell, std::uint32_t mask) {
  Resolved r{dim, cell, {}};
  for (std::size_t t = 0; t <= dim; ++t) r.slots.push_back(static_cast<std::uint8_t>(t));
  while (r.slots.size() > static_cast<std::size_t>(std::popcount(mask))) {
    std::size_t drop = r.slots.size();
    for (std::size_t j = r.slots.size(); j-- > 0;)
      if (!(mask >> r.slots[j] & 1)) {
        drop = j;
        break;
      }
    const FaceRef& f = cx.cell(r.dim, r.cell).faces[drop];
    std::vector<std::uint8_t> next;
    for (std::uint8_t p : f.positions) next.push_back(r.slots[p]);
    r.slots = std::move(next);
    r.cell = f.cell;
    --r.dim;
  }
  return r;
}

// Strictly increasing chains of nonempty slot sets that end at `full`.
void chains_ending(std::uint32_t full, std::vector<std::uint32_t>& prefix,
                   std::vector<std::vector<std::uint32_t>>& out) {
  const std::uint32_t last = prefix.empty() ? 0 : prefix.back();
  for (std::uint32_t m = full; m; m = (m - 1) & full) {
    if ((m & last) != last || m == last) continue;
    prefix.push_back(m);
    if (m == full)
      out.push_back(prefix);
    else
      chains_ending(full, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::size_t> subdivision_counts(std::size_t dim) {
  std::vector<std::vector<std::uint32_t>> chains;
  std::vector<std::uint32_t> prefix;
  chains_ending((std::uint32_t{1} << (dim + 1)) - 1, prefix, chains);
  std::vector<std::size_t> counts(dim + 1, 0);
  for (const auto& c : chains) ++counts[c.size() - 1];
  return counts;
}

CellComplex barycentric_subdivision(const CellComplex& complex) {
  CellComplex out;
  const int top = complex.dimension();
  if (top < 0) return out;
  std::vector<std::size_t> offset(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 0; k <= top; ++k)
    offset[static_cast<std::size_t>(k) + 1] = offset[static_cast<std::size_t>(k)] + complex.cell_count(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < offset.back(); ++v) out.add_vertex();
  if (!complex.vertex_labels.empty()) {
    out.vertex_labels.resize(offset.back());
    for (int k = 0; k <= top; ++k)
      for (std::size_t i = 0; i < complex.cell_count(static_cast<std::size_t>(k)); ++i)
        out.vertex_labels[offset[static_cast<std::size_t>(k)] + i] =
            k == 0 ? complex.vertex_labels[i] : "c" + std::to_string(k) + ":" + std::to_string(i);
  }

  // Chains per host dimension, grouped by length.
  std::vector<std::vector<std::vector<std::uint32_t>>> chains(static_cast<std::size_t>(top) + 1);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(top); ++k) {
    std::vector<std::uint32_t> prefix;
    chains_ending((std::uint32_t{1} << (k + 1)) - 1, prefix, chains[k]);
    std::stable_sort(chains[k].begin(), chains[k].end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
  }

  using Key = std::pair<std::pair<std::size_t, CellId>, std::vector<std::uint32_t>>;
  std::map<Key, CellId> made;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(top); ++k)
    for (CellId c = 0; c < complex.cell_count(k); ++c)
      made[{{k, c}, {(std::uint32_t{1} << (k + 1)) - 1}}] = static_cast<CellId>(offset[k] + c);

  for (std::size_t m = 1; m <= static_cast<std::size_t>(top); ++m) {
    for (std::size_t k = m; k <= static_cast<std::size_t>(top); ++k) {
      for (CellId c = 0; c < complex.cell_count(k); ++c) {
        for (const auto& chain : chains[k]) {
          if (chain.size() != m + 1) continue;
          std::vector<CellId> verts;
          for (std::uint32_t mask : chain) {
            const Resolved r = resolve(complex, k, c, mask);
            verts.push_back(static_cast<CellId>(offset[r.dim] + r.cell));
          }
          std::vector<FaceRef> faces;
          for (std::size_t i = 0; i <= m; ++i) {
            FaceRef f;
            for (std::size_t t = 0; t <= m; ++t)
              if (t != i) f.positions.push_back(static_cast<std::uint8_t>(t));
            if (m == 1) {
              f.cell = verts[1 - i];
              faces.push_back(std::move(f));
              continue;
            }
            Key key;
            if (i < m) {
              std::vector<std::uint32_t> sub;
              for (std::size_t t = 0; t <= m; ++t)
                if (t != i) sub.push_back(chain[t]);
              key = {{k, c}, std::move(sub)};
            } else {
              const Resolved r = resolve(complex, k, c, chain[m - 1]);
              std::vector<std::uint32_t> sub;
              for (std::size_t t = 0; t < m; ++t) {
                std::uint32_t mapped = 0;
                for (std::size_t s = 0; s < r.slots.size(); ++s)
                  if (chain[t] >> r.slots[s] & 1) mapped |= std::uint32_t{1} << s;
                sub.push_back(mapped);
              }
              key = {{r.dim, r.cell}, std::move(sub)};
            }
            f.cell = made.at(key);
            faces.push_back(std::move(f));
          }
          made[{{k, c}, chain}] = out.add_cell(std::move(verts), std::move(faces));
        }
      }
    }
  }
  return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0), classes_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  std::size_t ra = find(a), rb = find(b);
  if (ra == rb) return false;
  trace_.emplace_back(a, b);
  if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  if (rank_[ra] == rank_[rb]) ++rank_[ra];
  --classes_;
  return true;
}

std::vector<CellId> UnionFind::labels() {
  std::vector<CellId> out(parent_.size());
  std::vector<long long> num(parent_.size(), -1);
  CellId next = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    const std::size_t r = find(i);
    if (num[r] < 0) num[r] = next++;
    out[i] = static_cast<CellId>(num[r]);
  }
  return out;
}

std::vector<std::pair<CellId, CellId>> edge_multiset(const CellComplex& complex) {
  std::vector<std::pair<CellId, CellId>> out;
  if (complex.dimension() < 1) return out;
  for (const Cell& e : complex.cells(1))
    out.emplace_back(std::min(e.vertices[0], e.vertices[1]), std::max(e.vertices[0], e.vertices[1]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace limitnerve
