#include "limitnerve/recursion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "limitnerve/error.hpp"

namespace limitnerve {

GeneratorWord::GeneratorWord(std::span<const Factor> factors) {
  factors_.reserve(factors.size());
  for (Factor f : factors) push_back(f);
}

void GeneratorWord::push_back(Factor f) {
  if (!factors_.empty() && factors_.back() == f.inverted())
    factors_.pop_back();
  else
    factors_.push_back(f);
}

GeneratorWord& GeneratorWord::operator*=(const GeneratorWord& rhs) {
  for (Factor f : rhs.factors_) push_back(f);
  return *this;
}

GeneratorWord GeneratorWord::inverse() const {
  GeneratorWord out;
  out.factors_.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
    out.factors_.push_back(it->inverted());
  return out;
}

bool shortlex_less(const GeneratorWord& a, const GeneratorWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.factors().begin(), a.factors().end(),
                                      b.factors().begin(), b.factors().end());
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == symbol) return static_cast<Letter>(i);
  return std::nullopt;
}

WreathRecursion::WreathRecursion(Alphabet alphabet, std::vector<GeneratorDef> generators)
    : alphabet_(std::move(alphabet)), generators_(std::move(generators)) {
  const std::size_t d = alphabet_.size();
  if (d < 2) throw InvalidRecursion("alphabet needs at least two letters");
  if (d > 255) throw InvalidRecursion("alphabet has more than 255 letters");
  std::unordered_set<std::string> seen;
  for (const auto& letter : alphabet_.names())
    if (!seen.insert(letter).second) throw InvalidRecursion("duplicate letter '" + letter + "'");
  if (generators_.empty()) throw InvalidRecursion("no generators declared");

  std::unordered_set<std::string> names;
  for (const auto& g : generators_) {
    if (g.name == "1") throw InvalidRecursion("'1' is reserved for the identity");
    if (alphabet_.find(g.name)) throw InvalidRecursion("generator '" + g.name + "' collides with a letter");
    if (!names.insert(g.name).second) throw InvalidRecursion("duplicate generator '" + g.name + "'");
    if (g.permutation.size() != d)
      throw InvalidRecursion("generator '" + g.name + "' permutation has wrong degree");
    std::vector<bool> hit(d, false);
    for (Letter y : g.permutation) {
      if (y >= d || hit[y]) throw InvalidRecursion("generator '" + g.name + "' permutation is not a bijection");
      hit[y] = true;
    }
    if (g.sections.size() != d)
      throw InvalidRecursion("generator '" + g.name + "' has " + std::to_string(g.sections.size()) +
                             " sections, expected " + std::to_string(d));
    for (const auto& w : g.sections)
      for (Factor f : w.factors())
        if (f.generator >= generators_.size())
          throw InvalidRecursion("generator '" + g.name + "' refers to an undeclared generator");
  }
}

std::optional<GeneratorIndex> WreathRecursion::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<GeneratorIndex>(i);
  return std::nullopt;
}

std::string WreathRecursion::format(Factor f) const {
  std::string s = generators_[f.generator].name;
  if (f.inverse) s += "^-1";
  return s;
}

std::string WreathRecursion::format(const GeneratorWord& word) const {
  if (word.empty()) return "1";
  std::string s;
  for (Factor f : word.factors()) {
    if (!s.empty()) s += ' ';
    s += format(f);
  }
  return s;
}

std::string WreathRecursion::format(std::span<const Letter> word) const {
  const bool single = std::all_of(alphabet_.names().begin(), alphabet_.names().end(),
                                  [](const std::string& l) { return l.size() == 1; });
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) s += '.';
    s += alphabet_.name(word[i]);
  }
  return s;
}

namespace {

enum class Tok { ident, equals, lparen, rparen, lbracket, rbracket, comma, semicolon, inverse, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '^') {
      if (text.substr(i, 3) != "^-1") throw ParseError(l, cl, "expected '^-1'");
      out.push_back({Tok::inverse, "^-1", l, cl});
      advance(3);
      continue;
    }
    Tok kind;
    switch (c) {
      case '=': kind = Tok::equals; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ',': kind = Tok::comma; break;
      case ';': kind = Tok::semicolon; break;
      default: throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// Word factors are kept by name until every generator is declared.
struct RawFactor {
  std::string name;
  bool inverse;
  std::size_t line, column;
};
using RawWord = std::vector<RawFactor>;

struct RawGenerator {
  std::string name;
  std::size_t line, column;
  std::vector<std::vector<std::string>> cycles;
  std::vector<RawWord> sections;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  WreathRecursion parse_file() {
    skip_separators();
    const Token& kw = peek();
    if (kw.kind != Tok::ident || kw.text != "alphabet") fail(kw, "expected 'alphabet'");
    next();
    expect(Tok::equals, "'='");
    std::vector<std::string> letters;
    while (peek().kind == Tok::ident && peek(1).kind != Tok::equals) letters.push_back(next().text);
    if (letters.empty()) fail(peek(), "expected at least one letter");
    std::vector<RawGenerator> raw;
    skip_separators();
    while (peek().kind != Tok::end) {
      raw.push_back(parse_generator());
      skip_separators();
    }
    if (raw.empty()) fail(peek(), "expected a generator declaration");
    return build(Alphabet(std::move(letters)), raw);
  }

  RawWord parse_word_only() {
    RawWord w = parse_word();
    if (peek().kind != Tok::end) fail(peek(), "unexpected '" + peek().text + "' after word");
    return w;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.column, msg);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }
  void skip_separators() {
    while (peek().kind == Tok::semicolon) next();
  }

  RawGenerator parse_generator() {
    const Token& name = expect(Tok::ident, "generator name");
    RawGenerator g{name.text, name.line, name.column, {}, {}};
    expect(Tok::equals, "'='");
    expect(Tok::lparen, "'(' starting a permutation");
    if (peek().kind == Tok::rparen) {
      next();
    } else {
      for (;;) {
        std::vector<std::string> cycle;
        while (peek().kind == Tok::ident) cycle.push_back(next().text);
        if (cycle.empty()) fail(peek(), "expected a letter in cycle");
        expect(Tok::rparen, "')'");
        g.cycles.push_back(std::move(cycle));
        if (peek().kind != Tok::lparen) break;
        next();
      }
    }
    expect(Tok::lbracket, "'[' starting the section list");
    g.sections.push_back(parse_word());
    while (peek().kind == Tok::comma) {
      next();
      g.sections.push_back(parse_word());
    }
    expect(Tok::rbracket, "']'");
    return g;
  }

  RawWord parse_word() {
    RawWord w;
    if (peek().kind == Tok::ident && peek().text == "1") {
      next();
      if (peek().kind == Tok::ident || peek().kind == Tok::inverse)
        fail(peek(), "identity '1' cannot be combined with other factors");
      return w;
    }
    if (peek().kind != Tok::ident) fail(peek(), "expected a word");
    while (peek().kind == Tok::ident) {
      const Token& t = next();
      if (t.text == "1") fail(t, "identity '1' cannot be combined with other factors");
      bool inv = false;
      if (peek().kind == Tok::inverse) {
        next();
        inv = true;
      }
      w.push_back({t.text, inv, t.line, t.column});
    }
    return w;
  }

  static WreathRecursion build(Alphabet alphabet, const std::vector<RawGenerator>& raw) {
    const std::size_t d = alphabet.size();
    std::vector<GeneratorDef> defs;
    auto index_of = [&](const std::string& name) -> std::optional<GeneratorIndex> {
      for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i].name == name) return static_cast<GeneratorIndex>(i);
      return std::nullopt;
    };
    for (const auto& g : raw) {
      GeneratorDef def;
      def.name = g.name;
      def.permutation.resize(d);
      for (std::size_t x = 0; x < d; ++x) def.permutation[x] = static_cast<Letter>(x);
      std::vector<bool> used(d, false);
      for (const auto& cycle : g.cycles) {
        std::vector<Letter> ls;
        for (const auto& sym : cycle) {
          auto x = alphabet.find(sym);
          if (!x) throw InvalidRecursion("generator '" + g.name + "' uses unknown letter '" + sym + "'");
          if (used[*x]) throw InvalidRecursion("generator '" + g.name + "' permutation is not a bijection");
          used[*x] = true;
          ls.push_back(*x);
        }
        for (std::size_t k = 0; k < ls.size(); ++k) def.permutation[ls[k]] = ls[(k + 1) % ls.size()];
      }
      for (const auto& sw : g.sections) {
        GeneratorWord w;
        for (const auto& f : sw) {
          auto idx = index_of(f.name);
          if (!idx) throw InvalidRecursion("symbol " + f.name + " undeclared (used by '" + g.name + "')");
          w.push_back({*idx, f.inverse});
        }
        def.sections.push_back(std::move(w));
      }
      defs.push_back(std::move(def));
    }
    return WreathRecursion(std::move(alphabet), std::move(defs));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

WreathRecursion parse_recursion(std::string_view text) {
  return Parser(tokenize(text)).parse_file();
}

WreathRecursion load_recursion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_recursion(ss.str());
}

GeneratorWord WreathRecursion::parse_word(std::string_view text) const {
  const auto raw = Parser(tokenize(text)).parse_word_only();
  GeneratorWord w;
  for (const auto& f : raw) {
    auto idx = find(f.name);
    if (!idx) throw ParseError(f.line, f.column, "unknown generator '" + f.name + "'");
    w.push_back({*idx, f.inverse});
  }
  return w;
}

LetterWord WreathRecursion::parse_letters(std::string_view text) const {
  LetterWord out;
  std::istringstream in{std::string(text)};
  std::string sym;
  while (in >> sym) {
    auto x = alphabet_.find(sym);
    if (!x) throw ParseError(1, 1, "unknown letter '" + sym + "'");
    out.push_back(*x);
  }
  return out;
}

std::string pretty_print(const WreathRecursion& rec) {
  const auto& alpha = rec.alphabet();
  std::string out = "alphabet =";
  for (const auto& l : alpha.names()) out += " " + l;
  out += '\n';
  for (const auto& g : rec.generators()) {
    out += g.name + " = ";
    std::vector<bool> seen(alpha.size(), false);
    std::string perm;
    for (std::size_t x = 0; x < alpha.size(); ++x) {
      if (seen[x] || g.permutation[x] == x) continue;
      perm += '(';
      Letter y = static_cast<Letter>(x);
      bool first = true;
      while (!seen[y]) {
        seen[y] = true;
        if (!first) perm += ' ';
        perm += alpha.name(y);
        first = false;
        y = g.permutation[y];
      }
      perm += ')';
    }
    out += perm.empty() ? "()" : perm;
    out += '[';
    for (std::size_t x = 0; x < g.sections.size(); ++x) {
      if (x) out += ", ";
      out += rec.format(g.sections[x]);
    }
    out += "]\n";
  }
  return out;
}

}  // namespace limitnerve
