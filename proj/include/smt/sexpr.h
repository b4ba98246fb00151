#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace smt {

enum class AtomKind
{
  SYMBOL,   // simple or |quoted| (the lexeme keeps the bars)
  KEYWORD,  // :name
  NUMERAL,
  DECIMAL,
  HEX,      // #x...
  BINARY,   // #b...
  STRING    // "..." (the lexeme keeps quotes and "" escapes)
};

/** An SMT-LIB s-expression. Atoms keep their exact lexeme, so printing a
 *  parsed s-expression reproduces the input token for token. */
class SExpr
{
 public:
  SExpr() = default;

  static SExpr atom(std::string lexeme, AtomKind kind);
  static SExpr symbol(std::string lexeme) { return atom(std::move(lexeme), AtomKind::SYMBOL); }
  static SExpr list(std::vector<SExpr> items);

  bool is_atom() const { return is_atom_; }
  bool is_list() const { return !is_atom_; }
  bool is_symbol() const { return is_atom_ && kind_ == AtomKind::SYMBOL; }
  /** True for an unquoted symbol atom spelled exactly `s`. */
  bool is_symbol(std::string_view s) const { return is_symbol() && lexeme_ == s; }

  const std::string & lexeme() const { return lexeme_; }
  AtomKind atom_kind() const { return kind_; }
  const std::vector<SExpr> & items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const SExpr & operator[](std::size_t i) const { return items_.at(i); }

  bool is_quoted_symbol() const;
  /** Symbol name with |bars| removed. */
  std::string symbol_name() const;
  /** Contents of a string literal with "" unescaped. */
  std::string string_value() const;

  /** Source position (1-based) where the expression started; 0 if built
   *  programmatically. */
  std::size_t line = 0;
  std::size_t column = 0;

  std::string to_string() const;

  /** Structural equality; positions are ignored. */
  friend bool operator==(const SExpr & a, const SExpr & b);

 private:
  bool is_atom_ = false;
  AtomKind kind_ = AtomKind::SYMBOL;
  std::string lexeme_;
  std::vector<SExpr> items_;
};

std::ostream & operator<<(std::ostream & os, const SExpr & e);

/** Incremental reader for a stream of s-expressions.
 *
 *  Skips whitespace and `;` comments. Never reads past the closing
 *  parenthesis of a list, so it is safe on a pipe where the peer waits for
 *  our next command. Malformed input raises IncorrectUsageException with a
 *  line:column position.
 */
class SExprReader
{
 public:
  /** Returns the next character, or -1 at end of input. */
  using CharSource = std::function<int()>;

  explicit SExprReader(std::string_view text);
  explicit SExprReader(CharSource source);
  SExprReader(const SExprReader &) = delete;
  SExprReader & operator=(const SExprReader &) = delete;

  /** The next complete s-expression, or nullopt at end of input. */
  std::optional<SExpr> next();

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  int peek();
  int get();
  void skip_space();
  SExpr read_atom();
  [[noreturn]] void fail(const std::string & msg, std::size_t line, std::size_t col) const;

  CharSource source_;
  std::string owned_;
  std::size_t pos_ = 0;
  int lookahead_ = -2;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

/** Parses exactly one s-expression; trailing whitespace and comments are
 *  allowed, anything else is an error. */
SExpr parse_sexpr(std::string_view text);

/** Every s-expression in `text`. */
std::vector<SExpr> parse_sexprs(std::string_view text);

}  // namespace smt
