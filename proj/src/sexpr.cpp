#include "smt/sexpr.h"

#include <cctype>
#include <sstream>

#include "smt/exceptions.h"

namespace smt {

namespace {

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_delimiter(int c)
{
  return c < 0 || is_space(c) || c == '(' || c == ')' || c == '"' || c == ';'
         || c == '|';
}

bool all_of(std::string_view s, int (*pred)(int))
{
  if (s.empty()) return false;
  for (char c : s) {
    if (!pred(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int is_bin(int c) { return c == '0' || c == '1'; }

}  // namespace

SExpr SExpr::atom(std::string lexeme, AtomKind kind)
{
  SExpr e;
  e.is_atom_ = true;
  e.kind_ = kind;
  e.lexeme_ = std::move(lexeme);
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items)
{
  SExpr e;
  e.is_atom_ = false;
  e.items_ = std::move(items);
  return e;
}

bool SExpr::is_quoted_symbol() const
{
  return is_symbol() && lexeme_.size() >= 2 && lexeme_.front() == '|'
         && lexeme_.back() == '|';
}

std::string SExpr::symbol_name() const
{
  if (!is_symbol()) {
    throw IncorrectUsageException("expected a symbol, got " + to_string());
  }
  if (is_quoted_symbol()) return lexeme_.substr(1, lexeme_.size() - 2);
  return lexeme_;
}

std::string SExpr::string_value() const
{
  if (!is_atom_ || kind_ != AtomKind::STRING) {
    throw IncorrectUsageException("expected a string literal, got "
                                  + to_string());
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < lexeme_.size(); ++i) {
    out.push_back(lexeme_[i]);
    if (lexeme_[i] == '"') ++i;
  }
  return out;
}

std::string SExpr::to_string() const
{
  if (is_atom_) return lexeme_;
  std::string out = "(";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ' ';
    out += items_[i].to_string();
  }
  out += ')';
  return out;
}

bool operator==(const SExpr & a, const SExpr & b)
{
  if (a.is_atom_ != b.is_atom_) return false;
  if (a.is_atom_) return a.kind_ == b.kind_ && a.lexeme_ == b.lexeme_;
  return a.items_ == b.items_;
}

std::ostream & operator<<(std::ostream & os, const SExpr & e)
{
  return os << e.to_string();
}

SExprReader::SExprReader(std::string_view text) : owned_(text)
{
  source_ = [this]() -> int {
    if (pos_ >= owned_.size()) return -1;
    return static_cast<unsigned char>(owned_[pos_++]);
  };
}

SExprReader::SExprReader(CharSource source) : source_(std::move(source)) {}

int SExprReader::peek()
{
  if (lookahead_ == -2) lookahead_ = source_();
  return lookahead_;
}

int SExprReader::get()
{
  int c = peek();
  lookahead_ = -2;
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else if (c >= 0) {
    ++column_;
  }
  return c;
}

void SExprReader::fail(const std::string & msg,
                       std::size_t line,
                       std::size_t col) const
{
  throw IncorrectUsageException(std::to_string(line) + ":"
                                + std::to_string(col) + ": " + msg);
}

void SExprReader::skip_space()
{
  while (true) {
    int c = peek();
    if (is_space(c)) {
      get();
    } else if (c == ';') {
      while (c >= 0 && c != '\n') {
        get();
        c = peek();
      }
    } else {
      return;
    }
  }
}

SExpr SExprReader::read_atom()
{
  const std::size_t line = line_, col = column_;
  std::string lex;
  int c = peek();
  if (c == '|') {
    lex.push_back(static_cast<char>(get()));
    while (true) {
      c = get();
      if (c < 0) fail("unterminated quoted symbol", line, col);
      lex.push_back(static_cast<char>(c));
      if (c == '|') break;
    }
    SExpr e = SExpr::atom(std::move(lex), AtomKind::SYMBOL);
    e.line = line;
    e.column = col;
    return e;
  }
  if (c == '"') {
    lex.push_back(static_cast<char>(get()));
    while (true) {
      c = get();
      if (c < 0) fail("unterminated string literal", line, col);
      lex.push_back(static_cast<char>(c));
      if (c == '"') {
        if (peek() == '"') {
          lex.push_back(static_cast<char>(get()));
          continue;
        }
        break;
      }
    }
    SExpr e = SExpr::atom(std::move(lex), AtomKind::STRING);
    e.line = line;
    e.column = col;
    return e;
  }

  while (!is_delimiter(peek())) lex.push_back(static_cast<char>(get()));
  if (peek() == '|' || peek() == '"') {
    fail("unexpected '" + std::string(1, static_cast<char>(peek()))
             + "' inside atom '" + lex + "'",
         line_, column_);
  }

  AtomKind kind = AtomKind::SYMBOL;
  std::string_view v = lex;
  if (v.front() == ':') {
    if (v.size() == 1) fail("empty keyword", line, col);
    kind = AtomKind::KEYWORD;
  } else if (v.starts_with("#b")) {
    if (!all_of(v.substr(2), is_bin)) fail("malformed binary literal '" + lex + "'", line, col);
    kind = AtomKind::BINARY;
  } else if (v.starts_with("#x")) {
    if (!all_of(v.substr(2), isxdigit)) fail("malformed hex literal '" + lex + "'", line, col);
    kind = AtomKind::HEX;
  } else if (std::isdigit(static_cast<unsigned char>(v.front()))) {
    auto dot = v.find('.');
    if (dot == std::string_view::npos && all_of(v, isdigit)) {
      kind = AtomKind::NUMERAL;
    } else if (dot != std::string_view::npos && all_of(v.substr(0, dot), isdigit)
               && all_of(v.substr(dot + 1), isdigit)) {
      kind = AtomKind::DECIMAL;
    } else {
      fail("malformed numeral '" + lex + "'", line, col);
    }
  } else if (v.front() == '#') {
    fail("malformed literal '" + lex + "'", line, col);
  }
  SExpr e = SExpr::atom(std::move(lex), kind);
  e.line = line;
  e.column = col;
  return e;
}

std::optional<SExpr> SExprReader::next()
{
  skip_space();
  int c = peek();
  if (c < 0) return std::nullopt;
  if (c == ')') fail("unexpected ')'", line_, column_);
  if (c != '(') return read_atom();

  // Explicit stack of open lists.
  struct Open
  {
    std::vector<SExpr> items;
    std::size_t line, col;
  };
  std::vector<Open> open;
  while (true) {
    skip_space();
    c = peek();
    if (c < 0) {
      fail("unbalanced '(': input ended inside a list", open.back().line,
           open.back().col);
    }
    if (c == '(') {
      open.push_back({ {}, line_, column_ });
      get();
      continue;
    }
    if (c == ')') {
      get();
      SExpr done = SExpr::list(std::move(open.back().items));
      done.line = open.back().line;
      done.column = open.back().col;
      open.pop_back();
      if (open.empty()) return done;
      open.back().items.push_back(std::move(done));
      continue;
    }
    open.back().items.push_back(read_atom());
  }
}

SExpr parse_sexpr(std::string_view text)
{
  SExprReader reader(text);
  std::optional<SExpr> e = reader.next();
  if (!e) throw IncorrectUsageException("1:1: expected an s-expression");
  std::size_t line = reader.line(), col = reader.column();
  if (reader.next()) {
    throw IncorrectUsageException(std::to_string(line) + ":"
                                  + std::to_string(col)
                                  + ": trailing input after s-expression");
  }
  return *e;
}

std::vector<SExpr> parse_sexprs(std::string_view text)
{
  SExprReader reader(text);
  std::vector<SExpr> out;
  while (auto e = reader.next()) out.push_back(std::move(*e));
  return out;
}

}  // namespace smt
