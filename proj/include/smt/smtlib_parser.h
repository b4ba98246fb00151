#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smt/sexpr.h"
#include "smt/term_manager.h"

namespace smt {

/** A define-fun: parameters, return sort and the unparsed body. Uses are
 *  expanded in place, so macros never appear in terms. */
struct Macro
{
  std::vector<std::pair<std::string, Sort>> params;
  Sort codomain;
  SExpr body;
};

/** Builds sorts and terms from SMT-LIB s-expressions inside one manager.
 *
 *  Supports let, (_ ...) indexed operators, (as const ...) arrays, numeric,
 *  bit-vector and uninterpreted-value literals, macros, and user function
 *  application. Malformed or ill-sorted input raises
 *  IncorrectUsageException; messages carry the line:column of the offending
 *  expression when it came from text.
 */
class TermParser
{
 public:
  /** Uninterpreted sorts occurring in already declared symbols are known
   *  from the start. */
  explicit TermParser(TermManager & mgr);

  TermManager & manager() { return mgr_; }

  Sort declare_sort(const std::string & name, uint64_t arity);
  void define_macro(const std::string & name, Macro m);
  bool has_macro(const std::string & name) const;

  Sort parse_sort(const SExpr & e) const;
  Term parse_term(const SExpr & e);

 private:
  using Scope = std::unordered_map<std::string, Term>;

  Term term(const SExpr & e, std::vector<Scope> & scopes);
  Term atom_term(const SExpr & e, std::vector<Scope> & scopes);
  Term list_term(const SExpr & e, std::vector<Scope> & scopes);
  Term apply_named(const SExpr & e,
                   const std::string & name,
                   bool quoted,
                   TermVec args);
  Term expand_macro(const SExpr & e, const Macro & m, const TermVec & args);

  TermManager & mgr_;
  std::unordered_map<std::string, Sort> sorts_;
  std::unordered_map<std::string, Macro> macros_;
};

/** Parses one term from text. */
Term parse_term(std::string_view text, TermManager & mgr);

/** A value literal as written in a get-value reply.
 *
 *  Accepted: true/false; #b, #x and (_ bvN w); numerals, decimals, (- x),
 *  (/ p q); ((as const (Array I E)) v) and store chains over it; (as @k S)
 *  and S!val!k. The literal must denote a value of sort `expected`.
 *  Anything else raises InternalSolverException("unparseable model value:
 *  ...").
 */
Value parse_value_literal(const SExpr & s, const Sort & expected);
Term parse_value(const SExpr & s, const Sort & expected, TermManager & mgr);

}  // namespace smt
