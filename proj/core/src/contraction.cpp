#include "limitnerve/contraction.hpp"

#include <algorithm>

#include "limitnerve/error.hpp"
#include "limitnerve/model.hpp"

namespace limitnerve {

SectionSets::SectionSets(GroupEngine& engine, const Nerve& nerve, std::size_t level, std::size_t max_words)
    : engine_(&engine), nerve_(&nerve) {
  const LevelTable table(nerve.nucleus(), level, max_words);
  words_ = table.words();
  const std::size_t n = nerve.nucleus().size();
  act_.resize(n * words_);
  sec_.resize(n * words_);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t v = 0; v < words_; ++v) {
      act_[g * words_ + v] = table.act(g, v);
      sec_[g * words_ + v] = table.section(g, v);
    }
}

std::vector<Element> SectionSets::orbit(std::size_t g, std::size_t v) const {
  const Nucleus& nucleus = nerve_->nucleus();
  // (h*g)|_v = h|_{g(v)} * g|_v
  const std::size_t gv = act_[g * words_ + v];
  const Element tail = nucleus.element(sec_[g * words_ + v]);
  std::vector<Element> out;
  for (std::size_t h = 0; h < nucleus.size(); ++h)
    out.push_back(engine_->multiply(nucleus.element(sec_[h * words_ + gv]), tail));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Element> SectionSets::orbit(const ElementSet& set, std::size_t v) const {
  std::vector<Element> out;
  for (auto g : set) {
    const auto part = orbit(g, v);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t normalized_set(GroupEngine& engine, const Nerve& nerve, const std::vector<Element>& set) {
  const Nucleus& nucleus = nerve.nucleus();
  std::size_t first = Nucleus::npos;
  for (const Element s : set) {
    const Element inv = engine.inverse(s);
    ElementSet translate;
    for (const Element t : set) {
      const std::size_t i = nucleus.index_of(engine.multiply(t, inv));
      if (i == Nucleus::npos) return Nucleus::npos;
      translate.push_back(static_cast<std::uint32_t>(i));
    }
    std::sort(translate.begin(), translate.end());
    const std::size_t found = nerve.family.index_of(translate);
    if (found == Nucleus::npos) return Nucleus::npos;
    if (first == Nucleus::npos) first = found;
  }
  return first;
}

namespace {

bool condition_holds(GroupEngine& engine, const Nerve& nerve, std::size_t level, std::size_t max_words) {
  const SectionSets sections(engine, nerve, level, max_words);
  for (const auto& a : nerve.family.sets)
    for (std::size_t v = 0; v < sections.words(); ++v)
      if (normalized_set(engine, nerve, sections.orbit(a, v)) == Nucleus::npos) return false;
  return true;
}

std::string triple(GroupEngine& engine, const Nerve& nerve, std::size_t set, std::size_t g, std::size_t v,
                   std::size_t level) {
  const auto& rec = engine.recursion();
  return "A = " + nerve.table.format(nerve.family.sets[set]) + ", g = " + nerve.table.name(g) + ", v = " +
         rec.format(index_word(v, rec.degree(), level));
}

}  // namespace

std::size_t multinucleus_depth(GroupEngine& engine, const Nerve& nerve, ContractionOptions options, bool* monotone) {
  for (std::size_t n = 0; n <= options.max_depth; ++n) {
    if (!condition_holds(engine, nerve, n, options.max_words)) continue;
    const bool next = condition_holds(engine, nerve, n + 1, options.max_words);
    if (!next)
      throw ValidationFailure("multinucleus depth", "condition holds at level " + std::to_string(n) +
                                                        " but fails at level " + std::to_string(n + 1));
    if (monotone) *monotone = next;
    return n;
  }
  throw NotFoundWithinBound(options.max_depth);
}

ContractionCertificate barycenter_images(GroupEngine& engine, const Nerve& nerve, std::size_t level,
                                         ContractionOptions options) {
  const Nucleus& nucleus = nerve.nucleus();
  const SectionSets sections(engine, nerve, level, options.max_words);
  const LevelTable table(nucleus, level, options.max_words);
  ContractionCertificate cert;
  cert.depth = level;
  for (std::size_t s = 0; s < nerve.family.sets.size(); ++s) {
    const ElementSet& a = nerve.family.sets[s];
    for (std::size_t v = 0; v < sections.words(); ++v) {
      const auto simplex = sections.orbit(a, v);
      const std::size_t simplex_set = normalized_set(engine, nerve, simplex);
      if (simplex_set == Nucleus::npos)
        throw CertificateFailure("(N*A)|_v is not an adjacency simplex: " + triple(engine, nerve, s, 0, v, level));
      for (auto g : a) {
        auto image = sections.orbit(g, v);
        auto contains = [&](const std::vector<Element>& set, Element e) {
          return std::binary_search(set.begin(), set.end(), e);
        };
        std::string failure;
        if (!contains(image, nucleus.element(table.section(g, v))))
          failure = "g|_v is not in (N*g)|_v";
        else if (!std::includes(simplex.begin(), simplex.end(), image.begin(), image.end()))
          failure = "(N*g)|_v is not inside (N*A)|_v";
        else
          for (auto g0 : a)
            if (!contains(image, nucleus.element(table.section(g0, v)))) failure = "g0|_v is not in (N*g)|_v";
        const std::size_t image_set = failure.empty() ? normalized_set(engine, nerve, image) : Nucleus::npos;
        if (failure.empty() && image_set == Nucleus::npos) failure = "(N*g)|_v is not an adjacency simplex";
        if (!failure.empty()) throw CertificateFailure(failure + ": " + triple(engine, nerve, s, g, v, level));
        cert.rows.push_back({s, g, v, std::move(image), simplex, image_set, simplex_set});
      }
    }
  }
  return cert;
}

ContractionCertificate contraction_certificate(GroupEngine& engine, const Nerve& nerve, ContractionOptions options) {
  bool monotone = false;
  const std::size_t depth = multinucleus_depth(engine, nerve, options, &monotone);
  ContractionCertificate cert = barycenter_images(engine, nerve, depth, options);
  cert.monotone = monotone;
  return cert;
}

}  // namespace limitnerve
