#include "hytab/parser.hpp"

#include <cctype>
#include <vector>

namespace hytab {

namespace {

enum class Tok { Ident, Neg, And, Or, Implies, Iff, Dia, Box, At, LParen, RParen, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

struct Alias {
  std::string_view spelling;
  Tok type;
};

// Longest spellings first so "<->" wins over "<>".
constexpr Alias kAliases[] = {
    {"<->", Tok::Iff}, {"->", Tok::Implies}, {"<>", Tok::Dia}, {"[]", Tok::Box},
    {"~", Tok::Neg},   {"!", Tok::Neg},      {"&", Tok::And},  {"|", Tok::Or},
    {"@", Tok::At},    {"(", Tok::LParen},   {")", Tok::RParen},
    {"¬", Tok::Neg},   {"∧", Tok::And},      {"∨", Tok::Or},   {"◇", Tok::Dia},
    {"□", Tok::Box},   {"→", Tok::Implies},  {"↔", Tok::Iff},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& alias : kAliases) {
      if (text.substr(i, alias.spelling.size()) == alias.spelling) {
        tokens.push_back({alias.type, std::string(alias.spelling), i});
        i += alias.spelling.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
  }
  tokens.push_back({Tok::End, "", text.size()});
  return tokens;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::set<Nominal> nominals)
      : tokens_(std::move(tokens)), nominals_(std::move(nominals)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().type != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  bool accept(Tok t) {
    if (peek().type != t) return false;
    ++pos_;
    return true;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) return Formula::implies(lhs, formula());
    if (accept(Tok::Iff)) {
      Formula rhs = formula();
      return Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (accept(Tok::Or)) return Formula::disj(lhs, disjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (accept(Tok::And)) return Formula::conj(lhs, conjunction());
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Neg:
        take();
        return Formula::neg(unary());
      case Tok::Dia:
        take();
        return Formula::dia(unary());
      case Tok::Box:
        take();
        return Formula::box(unary());
      case Tok::At: {
        take();
        const Token& name = take();
        if (name.type != Tok::Ident) throw ParseError("expected nominal after '@'", name.pos);
        return Formula::at(name.text, unary());
      }
      case Tok::LParen: {
        take();
        Formula inner = formula();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
        return inner;
      }
      case Tok::Ident:
        take();
        return nominals_.count(t.text) ? Formula::nom(t.text) : Formula::prop(t.text);
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::set<Nominal> nominals_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  auto tokens = tokenize(text);

  std::set<Nominal> nominals = options.nominals;
  for (std::size_t k = 0; k + 1 < tokens.size(); ++k) {
    if (tokens[k].type == Tok::At && tokens[k + 1].type == Tok::Ident) nominals.insert(tokens[k + 1].text);
  }
  for (const auto& t : tokens) {
    if (t.type != Tok::Ident) continue;
    if (!options.allow_reserved && is_reserved_nominal(t.text)) {
      throw ParseError("identifier '" + t.text + "' is reserved for generated nominals", t.pos);
    }
    if (nominals.count(t.text) && options.props.count(t.text)) {
      throw ParseError("'" + t.text + "' is used both as a nominal and as a proposition", t.pos);
    }
  }
  return Parser(std::move(tokens), std::move(nominals)).parse_all();
}

}  // namespace hytab
