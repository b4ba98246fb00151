#include "smt/differential.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "smt/exceptions.h"
#include "smt/process_solver.h"
#include "smt/reference_solver.h"
#include "smt/script.h"
#include "smt/sexpr.h"

namespace smt {

BackendSpec parse_backend_spec(const std::string & spec)
{
  BackendSpec out;
  out.text = spec;
  if (spec == "ref") {
    out.config.backend = SolverConfig::Backend::REFERENCE;
    return out;
  }
  if (spec.rfind("proc:", 0) == 0) {
    std::vector<std::string> argv = split_command_line(spec.substr(5));
    if (argv.empty()) {
      throw IncorrectUsageException("backend spec " + spec
                                    + " has an empty command");
    }
    out.config.backend = SolverConfig::Backend::PROCESS;
    out.config.command = argv[0];
    out.config.args.assign(argv.begin() + 1, argv.end());
    return out;
  }
  throw IncorrectUsageException("unknown backend spec '" + spec
                                + "' (expected ref or proc:<command>)");
}

RunOutcome run_script(const std::string & script,
                      const BackendSpec & spec,
                      const OptionList & options,
                      bool check_soundness)
{
  RunOutcome out;
  out.backend = spec.text;
  auto record_error = [&](const char * kind, const std::exception & ex) {
    out.error_kind = kind;
    out.error = std::string(kind) + ": " + ex.what();
  };
  try {
    SolverConfig cfg = spec.config;
    cfg.options = options;
    SmtSolver solver = create_solver(cfg);
    ScriptRunner runner(*solver);
    runner.run(script, [&](const Command & c, const std::string & r) {
      if (!r.empty()) out.responses.push_back(r);
      const bool is_check = std::holds_alternative<cmd::CheckSat>(c)
                            || std::holds_alternative<cmd::CheckSatAssuming>(c);
      if (!is_check) return;
      out.statuses.push_back(r);
      if (!check_soundness || r != "sat" || !solver->has_model()) return;
      TermVec roots = solver->assertions();
      if (auto * csa = std::get_if<cmd::CheckSatAssuming>(&c)) {
        roots.insert(roots.end(), csa->assumptions.begin(),
                     csa->assumptions.end());
      }
      SoundnessReport rep = check_model_soundness(*solver, roots);
      if (!rep.ok) {
        out.soundness_violations.push_back(
            "check " + std::to_string(out.statuses.size() - 1) + ": "
            + rep.detail);
      }
    });
  } catch (const NotImplementedException & ex) {
    record_error("NotImplementedError", ex);
  } catch (const IncorrectUsageException & ex) {
    record_error("IncorrectUsageError", ex);
  } catch (const InternalSolverException & ex) {
    record_error("InternalSolverError", ex);
  } catch (const std::exception & ex) {
    record_error("Error", ex);
  }
  return out;
}

namespace {

std::string join_statuses(const std::vector<std::string> & s)
{
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "]";
}

}  // namespace

CrosscheckReport crosscheck(const std::string & script,
                            const std::vector<BackendSpec> & specs,
                            const OptionList & options)
{
  CrosscheckReport rep;
  std::vector<std::future<RunOutcome>> jobs;
  for (const BackendSpec & spec : specs) {
    jobs.push_back(std::async(std::launch::async, [&script, &options, spec] {
      return run_script(script, spec, options);
    }));
  }
  for (auto & j : jobs) rep.outcomes.push_back(j.get());

  std::ostringstream msg;
  const RunOutcome & first = rep.outcomes.front();
  for (const RunOutcome & o : rep.outcomes) {
    for (const std::string & v : o.soundness_violations) {
      rep.divergent = true;
      msg << "unsound model from " << o.backend << ": " << v << "\n";
    }
    if (o.statuses != first.statuses || o.error_kind != first.error_kind) {
      rep.divergent = true;
    }
  }
  const bool any_error = std::any_of(
      rep.outcomes.begin(), rep.outcomes.end(),
      [](const RunOutcome & o) { return o.error.has_value(); });
  if (any_error && rep.outcomes.size() > 1) {
    // errors only agree when every backend failed the same way
    for (const RunOutcome & o : rep.outcomes) {
      if (!o.error) rep.divergent = true;
    }
  }
  if (rep.divergent) {
    for (const RunOutcome & o : rep.outcomes) {
      msg << o.backend << ": statuses " << join_statuses(o.statuses);
      if (o.error) msg << ", error " << *o.error;
      msg << "\n";
    }
  }
  rep.report = msg.str();
  return rep;
}

std::string minimize_script(
    const std::string & script,
    const std::function<bool(const std::string &)> & still_failing)
{
  std::vector<SExpr> cmds = parse_sexprs(script);
  auto render = [](const std::vector<SExpr> & cs) {
    std::string out;
    for (const SExpr & c : cs) out += c.to_string() + "\n";
    return out;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      if (!cmds[i].is_list() || cmds[i].size() == 0
          || !cmds[i][0].is_symbol("assert")) {
        continue;
      }
      std::vector<SExpr> candidate = cmds;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
      if (still_failing(render(candidate))) {
        cmds = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return render(cmds);
}

FuzzReport fuzz(uint64_t seed,
                uint64_t count,
                FuzzProfile profile,
                const std::vector<BackendSpec> & specs,
                const OptionList & options,
                const std::string & artifact_dir)
{
  FuzzReport rep;
  std::ostringstream msg;
  for (uint64_t i = 0; i < count; ++i) {
    const std::string script = generate_script(seed, i, profile);
    CrosscheckReport cc = crosscheck(script, specs, options);
    ++rep.cases;
    if (!cc.divergent) continue;
    ++rep.divergences;
    const std::string reduced = minimize_script(
        script, [&](const std::string & s) {
          return crosscheck(s, specs, options).divergent;
        });
    std::filesystem::create_directories(artifact_dir);
    const std::string path = (std::filesystem::path(artifact_dir)
                              / ("fuzz-" + std::to_string(seed) + "-"
                                 + std::to_string(i) + ".smt2"))
                                 .string();
    std::ofstream f(path);
    f << "; seed " << seed << " case " << i << " profile "
      << profile_name(profile) << "\n";
    for (const RunOutcome & o : cc.outcomes) {
      f << "; " << o.backend << ": " << join_statuses(o.statuses);
      if (o.error) f << " " << *o.error;
      f << "\n";
    }
    f << reduced;
    rep.artifacts.push_back(path);
    msg << "case " << i << " diverged (" << path << ")\n" << cc.report;
  }
  rep.report = msg.str();
  return rep;
}

}  // namespace smt
