#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "limitnerve/nerve.hpp"

namespace limitnerve {

struct ContractionOptions {
  std::size_t max_depth = 8;
  std::size_t max_words = std::size_t{1} << 20;
};

/// One (A, g, v) entry: the simplex (N*g)|_v inside (N*A)|_v.
struct CertificateRow {
  std::size_t set = 0;      // family index of A
  std::size_t element = 0;  // nucleus index of g
  std::size_t word = 0;     // index of v in X^n
  /// (N*g)|_v and (N*A)|_v as sorted element lists.
  std::vector<Element> image;
  std::vector<Element> simplex;
  /// Family index of each set translated by the inverse of its least member.
  std::size_t image_set = 0;
  std::size_t simplex_set = 0;
};

struct ContractionCertificate {
  std::size_t depth = 0;
  /// Whether the depth condition was also confirmed one level deeper.
  bool monotone = false;
  std::vector<CertificateRow> rows;
};

/// (N*A)|_v for every adjacency set A and word v of X^n.
class SectionSets {
 public:
  SectionSets(GroupEngine& engine, const Nerve& nerve, std::size_t level, std::size_t max_words);

  std::size_t words() const { return words_; }
  /// (N*g)|_v for a nucleus index g.
  std::vector<Element> orbit(std::size_t g, std::size_t v) const;
  /// Union of orbit(g, v) over g in the set.
  std::vector<Element> orbit(const ElementSet& set, std::size_t v) const;

 private:
  GroupEngine* engine_;
  const Nerve* nerve_;
  std::size_t words_;
  std::vector<std::size_t> act_;
  std::vector<std::uint32_t> sec_;
};

/// Family index of the set translated by the inverse of each member in turn,
/// or npos if some translate is not an adjacency set.
std::size_t normalized_set(GroupEngine& engine, const Nerve& nerve, const std::vector<Element>& set);

/// Least n <= max_depth such that (N*A)|_v is an adjacency simplex for every
/// adjacency set A and every v of length n. Throws NotFoundWithinBound.
std::size_t multinucleus_depth(GroupEngine& engine, const Nerve& nerve, ContractionOptions options = {},
                               bool* monotone = nullptr);

/// Rows for every A, g in A and v of length n, each checked for
/// g|_v in (N*g)|_v, (N*g)|_v inside (N*A)|_v and g0|_v in (N*g)|_v for all g0
/// in A. Throws CertificateFailure with the offending triple.
ContractionCertificate barycenter_images(GroupEngine& engine, const Nerve& nerve, std::size_t level,
                                         ContractionOptions options = {});

/// Depth search followed by the rows at that depth.
ContractionCertificate contraction_certificate(GroupEngine& engine, const Nerve& nerve,
                                               ContractionOptions options = {});

}  // namespace limitnerve
