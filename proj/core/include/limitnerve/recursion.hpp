#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace limitnerve {

using Letter = std::uint8_t;
using LetterWord = std::vector<Letter>;
using GeneratorIndex = std::uint32_t;

/// One factor g or g^-1 of a word in the generators.
struct Factor {
  GeneratorIndex generator = 0;
  bool inverse = false;

  /// Position in the order "g0, g0^-1, g1, g1^-1, ...".
  constexpr std::uint32_t key() const { return 2 * generator + (inverse ? 1u : 0u); }
  constexpr Factor inverted() const { return {generator, !inverse}; }

  friend constexpr bool operator==(Factor, Factor) = default;
  friend constexpr auto operator<=>(Factor a, Factor b) { return a.key() <=> b.key(); }
};

/// Freely reduced word in the generators. The rightmost factor acts first.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  explicit GeneratorWord(std::span<const Factor> factors);

  static GeneratorWord single(Factor f) { return GeneratorWord(std::span<const Factor>(&f, 1)); }

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  /// Appends with free reduction.
  void push_back(Factor f);
  GeneratorWord& operator*=(const GeneratorWord& rhs);
  friend GeneratorWord operator*(GeneratorWord lhs, const GeneratorWord& rhs) {
    lhs *= rhs;
    return lhs;
  }
  GeneratorWord inverse() const;

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Shortlex order: shorter first, then lexicographic by Factor::key().
bool shortlex_less(const GeneratorWord& a, const GeneratorWord& b);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  const std::string& name(Letter x) const { return letters_[x]; }
  const std::vector<std::string>& names() const { return letters_; }
  std::optional<Letter> find(std::string_view symbol) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> letters_;
};

struct GeneratorDef {
  std::string name;
  /// permutation[x] is the image of letter x.
  std::vector<Letter> permutation;
  /// sections[x] is the section at letter x.
  std::vector<GeneratorWord> sections;

  friend bool operator==(const GeneratorDef&, const GeneratorDef&) = default;
};

/// Validated wreath recursion: every generator is a root permutation
/// followed by one section word per letter in alphabet order.
class WreathRecursion {
 public:
  WreathRecursion(Alphabet alphabet, std::vector<GeneratorDef> generators);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t degree() const { return alphabet_.size(); }
  const std::vector<GeneratorDef>& generators() const { return generators_; }
  const GeneratorDef& generator(GeneratorIndex g) const { return generators_[g]; }
  std::optional<GeneratorIndex> find(std::string_view name) const;

  std::string format(const GeneratorWord& word) const;
  std::string format(Factor f) const;
  std::string format(std::span<const Letter> word) const;

  /// Parses a word such as "u v^-1" or "1"; throws ParseError.
  GeneratorWord parse_word(std::string_view text) const;
  /// Parses a word over the alphabet given as space separated letters.
  LetterWord parse_letters(std::string_view text) const;

  friend bool operator==(const WreathRecursion&, const WreathRecursion&) = default;

 private:
  Alphabet alphabet_;
  std::vector<GeneratorDef> generators_;
};

/// Parses the group-definition format; throws ParseError or InvalidRecursion.
WreathRecursion parse_recursion(std::string_view text);
WreathRecursion load_recursion(const std::string& path);

/// Canonical serialisation; parse_recursion(pretty_print(r)) == r.
std::string pretty_print(const WreathRecursion& rec);

}  // namespace limitnerve
