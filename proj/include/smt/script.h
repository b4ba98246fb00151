#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smt/sexpr.h"
#include "smt/smtlib_parser.h"
#include "smt/solver.h"

namespace smt {

namespace cmd {

struct SetLogic { std::string logic; };
/** Keyword without the leading colon; the value as written. */
struct SetOption { std::string key; std::string value; };
struct DeclareSort { std::string name; uint64_t arity = 0; };
struct DeclareFun { std::string name; SortVec domain; Sort codomain; };
struct DeclareConst { std::string name; Sort sort; };
struct DefineFun { std::string name; Macro macro; };
struct Assert { Term term; };
struct CheckSat {};
struct CheckSatAssuming { TermVec assumptions; };
struct Push { uint64_t n = 1; };
struct Pop { uint64_t n = 1; };
struct GetValue { TermVec terms; };
struct Exit {};

}  // namespace cmd

using Command = std::variant<cmd::SetLogic,
                             cmd::SetOption,
                             cmd::DeclareSort,
                             cmd::DeclareFun,
                             cmd::DeclareConst,
                             cmd::DefineFun,
                             cmd::Assert,
                             cmd::CheckSat,
                             cmd::CheckSatAssuming,
                             cmd::Push,
                             cmd::Pop,
                             cmd::GetValue,
                             cmd::Exit>;

/** SMT-LIB command name, e.g. "check-sat". */
std::string command_name(const Command & c);

/** One s-expression in SMT-LIB syntax. */
std::string print_command(const Command & c);

/** Parses and executes script commands against one solver.
 *
 *  Commands are converted one at a time, so later commands see earlier
 *  declarations. Any command outside the supported subset raises
 *  NotImplementedException naming it.
 */
class ScriptRunner
{
 public:
  explicit ScriptRunner(AbsSmtSolver & solver);

  /** Builds the command from `e` using the declarations made so far. */
  Command parse_command(const SExpr & e);

  /** Runs `c` and returns the SMT-LIB response: "sat", "unsat" or
   *  "unknown" for checks, a ((t v) ...) list for get-value and "" for
   *  everything else. */
  std::string execute(const Command & c);

  bool exited() const { return exited_; }

  /** Parses and executes every command in `text`. `on_response` sees each
   *  command and its response as soon as it is produced. Errors are
   *  rethrown with their original type and a "command N" prefix (0-based
   *  index). Stops after (exit). */
  void run(std::string_view text,
           const std::function<void(const Command &, const std::string &)> &
               on_response = {});

 private:
  AbsSmtSolver & solver_;
  TermParser parser_;
  bool exited_ = false;
};

std::vector<std::pair<Command, std::string>> parse_script(
    std::string_view text, AbsSmtSolver & solver);

}  // namespace smt
