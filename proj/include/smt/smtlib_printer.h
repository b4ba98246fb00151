#pragma once

#include <string>

#include "smt/sort.h"
#include "smt/term.h"
#include "smt/value.h"

namespace smt {

/** `name` as an SMT-LIB symbol: unchanged when it is a simple symbol that
 *  cannot be mistaken for a literal, keyword, reserved word or builtin
 *  operator; otherwise wrapped in |bars|. */
std::string quote_symbol(const std::string & name);

std::string print_sort(const Sort & s);

/** Bit-vectors as width-padded #b literals, negative numbers as (- n),
 *  non-integral reals as (/ p q), constant arrays as
 *  ((as const (Array I E)) e), other arrays as store chains over their
 *  default, uninterpreted elements as (as @k S). */
std::string print_value(const Value & v);

/** Fully expanded SMT-LIB text (no let binders). Applications print as
 *  (f args...), indexed operators as ((_ op i [j]) args...). */
std::string print_term(const Term & t);
std::string print_term(const TermNode & t);

}  // namespace smt
