#include "ltlplan/ltl/parser.hpp"

#include <cctype>
#include <optional>

namespace ltlplan::ltl {

namespace {

enum class Tok {
  Ident,
  Int,
  True,
  False,
  Bang,
  Amp,
  Pipe,
  Arrow,
  DoubleArrow,
  Next,
  Eventually,
  Always,
  AlwaysEventually,
  EventuallyAlways,
  Until,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DoubleArrow: return "'<->'";
    case Tok::Next: return "'X'";
    case Tok::Eventually: return "'F'";
    case Tok::Always: return "'G'";
    case Tok::AlwaysEventually: return "'GF'";
    case Tok::EventuallyAlways: return "'FG'";
    case Tok::Until: return "'U'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = keyword(t.text);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = Tok::Int;
      } else if (starts_with("<->")) {
        t.kind = Tok::DoubleArrow;
        t.text = "<->";
        advance(3);
      } else if (starts_with("->")) {
        t.kind = Tok::Arrow;
        t.text = "->";
        advance(2);
      } else {
        t.text = std::string(1, c);
        switch (c) {
          case '!': t.kind = Tok::Bang; break;
          case '&': t.kind = Tok::Amp; break;
          case '|': t.kind = Tok::Pipe; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case ',': t.kind = Tok::Comma; break;
          default:
            throw ParseError(line_, column_, {"a formula token"}, t.text);
        }
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static Tok keyword(const std::string& s) {
    if (s == "true") return Tok::True;
    if (s == "false") return Tok::False;
    if (s == "X") return Tok::Next;
    if (s == "F") return Tok::Eventually;
    if (s == "G") return Tok::Always;
    if (s == "GF") return Tok::AlwaysEventually;
    if (s == "FG") return Tok::EventuallyAlways;
    if (s == "U") return Tok::Until;
    return Tok::Ident;
  }

  bool starts_with(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = parse_iff();
    expect(Tok::End, {"end of input", "'&'", "'|'", "'->'", "'<->'", "'U'"});
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().line, peek().column, std::move(expected),
                     describe(peek()));
  }

  const Token& expect(Tok k, std::vector<std::string> expected = {}) {
    if (!at(k)) {
      if (expected.empty()) expected.push_back(describe(k));
      fail(std::move(expected));
    }
    return take();
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (at(Tok::DoubleArrow)) {
      take();
      lhs = Formula::iff(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (at(Tok::Arrow)) {
      take();
      return Formula::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts;
    parts.push_back(parse_and());
    while (at(Tok::Pipe)) {
      take();
      parts.push_back(parse_and());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts;
    parts.push_back(parse_until());
    while (at(Tok::Amp)) {
      take();
      parts.push_back(parse_until());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Formula::conjunction(std::move(parts));
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (at(Tok::Until)) {
      take();
      return Formula::until(std::move(lhs), parse_until());
    }
    return lhs;
  }

  std::optional<TimeBound> parse_bound() {
    if (!at(Tok::LBracket)) return std::nullopt;
    take();
    const Token& lo_tok = expect(Tok::Int);
    int lo_line = lo_tok.line;
    int lo_col = lo_tok.column;
    int lo = std::stoi(lo_tok.text);
    expect(Tok::Comma);
    int hi = std::stoi(expect(Tok::Int).text);
    expect(Tok::RBracket);
    if (lo < 1 || lo > hi) {
      throw ParseError(lo_line, lo_col, {"bounds with 1 <= a <= b"},
                       "[" + std::to_string(lo) + "," + std::to_string(hi) +
                           "]");
    }
    return TimeBound{lo, hi};
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Bang:
        take();
        return Formula::negation(parse_unary());
      case Tok::Next:
        take();
        return Formula::next(parse_unary());
      case Tok::Eventually: {
        take();
        auto b = parse_bound();
        return Formula::eventually(parse_unary(), b);
      }
      case Tok::Always: {
        take();
        auto b = parse_bound();
        return Formula::always(parse_unary(), b);
      }
      case Tok::AlwaysEventually:
        take();
        return Formula::always_eventually(parse_unary());
      case Tok::EventuallyAlways:
        take();
        return Formula::eventually_always(parse_unary());
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::True:
        take();
        return Formula::truth();
      case Tok::False:
        take();
        return Formula::falsity();
      case Tok::Ident:
        return Formula::atom(take().text);
      case Tok::LParen: {
        take();
        Formula inner = parse_iff();
        expect(Tok::RParen,
               {"')'", "'&'", "'|'", "'->'", "'<->'", "'U'"});
        return inner;
      }
      default:
        fail({"identifier", "'true'", "'false'", "'('", "'!'", "'X'", "'F'",
              "'G'", "'GF'", "'FG'"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_message(int line, int column,
                           const std::vector<std::string>& expected,
                           const std::string& found) {
  std::string msg = std::to_string(line) + ":" + std::to_string(column) +
                    ": expected ";
  if (expected.size() == 1) {
    msg += expected.front();
  } else {
    msg += "one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    msg += "}";
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(format_message(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Formula parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace ltlplan::ltl
