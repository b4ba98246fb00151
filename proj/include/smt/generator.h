#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smt/term_manager.h"

namespace smt {

struct GeneratorOptions
{
  std::vector<uint64_t> widths{ 1, 2, 3, 4 };
  std::size_t num_bv_symbols = 3;
  std::size_t num_bool_symbols = 1;
  /** Uninterpreted functions over bit-vectors, one or two arguments. */
  std::size_t num_functions = 0;
  /** Int and Real symbols and arithmetic. */
  bool arithmetic = false;
  /** One array symbol over the listed widths. */
  bool arrays = false;
  /** An uninterpreted sort U with two constants. */
  bool uninterpreted = false;
  unsigned max_depth = 6;
};

/** Random well-sorted terms over a fixed set of symbols.
 *
 *  Fully determined by the seed: random choices use mt19937_64 reduced
 *  modulo the number of alternatives, so the output does not depend on the
 *  standard library's distribution implementations. Symbol names are
 *  "b<i>", "x<i>", "f<i>", "n<i>", "r<i>", "a<i>" and "u<i>" and must not be
 *  taken in the manager yet.
 */
class TermGenerator
{
 public:
  TermGenerator(TermManager & mgr, uint64_t seed, GeneratorOptions opts = {});

  const TermVec & symbols() const { return symbols_; }
  const GeneratorOptions & options() const { return opts_; }

  /** A Bool term of depth at most `depth`. */
  Term formula(unsigned depth);
  Term formula() { return formula(opts_.max_depth); }
  /** A term of sort `s` of depth at most `depth`. */
  Term term(const Sort & s, unsigned depth);
  /** A sort for which terms can be generated. */
  Sort random_sort();

  uint64_t below(uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool coin(unsigned percent) { return below(100) < percent; }

 private:
  Term leaf(const Sort & s);
  Value random_value(const Sort & s);
  Term bool_term(unsigned depth);
  Term bv_term(uint64_t w, unsigned depth);
  Term int_term(unsigned depth);
  Term real_term(unsigned depth);
  Term array_term(const Sort & s, unsigned depth);
  Term symbol_of(const Sort & s);
  uint64_t random_width() { return opts_.widths[below(opts_.widths.size())]; }

  TermManager & mgr_;
  std::mt19937_64 rng_;
  GeneratorOptions opts_;
  TermVec symbols_;
  TermVec functions_;
  std::vector<Sort> array_sorts_;
  std::optional<Sort> usort_;
};

enum class FuzzProfile
{
  QF_BV,
  QF_UFBV
};

/** Parses "qf_bv" / "qf_ufbv" (case-insensitive). */
FuzzProfile parse_profile(const std::string & name);
std::string profile_name(FuzzProfile p);

/** Generator settings for a profile: widths up to 4, at most 4 symbols,
 *  depth up to 6; QF_UFBV adds up to two functions. */
GeneratorOptions profile_options(FuzzProfile p);

/** One standalone SMT-LIB script: declarations, one to three assertions,
 *  check-sat, then a push/assert/check-sat/pop round and a final
 *  check-sat. Kept within 2^16 candidate assignments so the reference
 *  backend always decides it. Depends only on (seed, index, profile). */
std::string generate_script(uint64_t seed, uint64_t index, FuzzProfile p);

}  // namespace smt
