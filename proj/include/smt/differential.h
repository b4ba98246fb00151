#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smt/generator.h"
#include "smt/solver.h"

namespace smt {

using OptionList = std::vector<std::pair<std::string, std::string>>;

struct BackendSpec
{
  /** As given, e.g. "ref" or "proc:z3 -in". */
  std::string text;
  SolverConfig config;
};

/** "ref" or "proc:<command line>". Throws IncorrectUsageException. */
BackendSpec parse_backend_spec(const std::string & spec);

struct RunOutcome
{
  std::string backend;
  /** Non-empty responses in order. */
  std::vector<std::string> responses;
  /** Answers of check-sat and check-sat-assuming, in order. */
  std::vector<std::string> statuses;
  /** "<ExceptionType>: message" when the run stopped on an error. */
  std::optional<std::string> error;
  /** Set when an error was raised; the exception type only. */
  std::optional<std::string> error_kind;
  /** One entry per SAT answer whose model failed re-evaluation. */
  std::vector<std::string> soundness_violations;
};

/** Runs `script` on a fresh solver for `spec`. Errors are captured in the
 *  outcome rather than thrown. With `check_soundness`, every SAT answer is
 *  followed by re-evaluating the current assertions under the model. */
RunOutcome run_script(const std::string & script,
                      const BackendSpec & spec,
                      const OptionList & options,
                      bool check_soundness = true);

struct CrosscheckReport
{
  std::vector<RunOutcome> outcomes;
  bool divergent = false;
  /** Human-readable explanation; empty when nothing diverged. */
  std::string report;
};

/** Runs every backend (concurrently) and compares status sequences. A
 *  backend error is a divergence unless all backends fail the same way
 *  after the same statuses; a soundness violation always is. */
CrosscheckReport crosscheck(const std::string & script,
                            const std::vector<BackendSpec> & specs,
                            const OptionList & options);

/** Drops assert commands while `still_failing` holds; returns the smallest
 *  script found. */
std::string minimize_script(
    const std::string & script,
    const std::function<bool(const std::string &)> & still_failing);

struct FuzzReport
{
  uint64_t cases = 0;
  uint64_t divergences = 0;
  /** Reproduction files written, one per divergent case. */
  std::vector<std::string> artifacts;
  std::string report;
};

/** Generates `count` scripts with generate_script(seed, i, profile),
 *  cross-checks each and writes minimized reproductions of divergent cases
 *  to `artifact_dir`. */
FuzzReport fuzz(uint64_t seed,
                uint64_t count,
                FuzzProfile profile,
                const std::vector<BackendSpec> & specs,
                const OptionList & options,
                const std::string & artifact_dir);

}  // namespace smt
