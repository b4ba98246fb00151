// smtbridge: run, cross-check and fuzz SMT-LIB scripts on any backend.
//
// Exit codes: 0 ok, 1 solver or usage error, 2 file or argument error,
// 3 divergence between backends.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smt/differential.h"
#include "smt/exceptions.h"
#include "smt/generator.h"
#include "smt/script.h"

namespace {

constexpr int kOk = 0;
constexpr int kSolverError = 1;
constexpr int kIoError = 2;
constexpr int kDivergence = 3;

struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

smt::OptionList parse_options(const std::vector<std::string> & raw,
                              const std::string & transcript)
{
  smt::OptionList out;
  for (const std::string & kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw IoError("--opt expects key=value, got " + kv);
    }
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!transcript.empty()) out.emplace_back("proc.transcript", transcript);
  return out;
}

std::vector<smt::BackendSpec> parse_specs(const std::vector<std::string> & raw)
{
  std::vector<smt::BackendSpec> out;
  for (const std::string & s : raw) {
    try {
      out.push_back(smt::parse_backend_spec(s));
    } catch (const smt::IncorrectUsageException & ex) {
      throw IoError(ex.what());
    }
  }
  return out;
}

int cmd_run(const std::string & path,
            const std::string & backend,
            const smt::OptionList & options)
{
  const std::string script = read_file(path);
  const smt::BackendSpec spec = parse_specs({ backend }).front();
  try {
    smt::SolverConfig cfg = spec.config;
    cfg.options = options;
    smt::SmtSolver solver = smt::create_solver(cfg);
    smt::ScriptRunner runner(*solver);
    runner.run(script, [](const smt::Command &, const std::string & r) {
      if (!r.empty()) std::cout << r << "\n" << std::flush;
    });
  } catch (const smt::NotImplementedException & ex) {
    std::cerr << "NotImplementedError: " << ex.what() << "\n";
    return kSolverError;
  } catch (const smt::IncorrectUsageException & ex) {
    std::cerr << "IncorrectUsageError: " << ex.what() << "\n";
    return kSolverError;
  } catch (const smt::InternalSolverException & ex) {
    std::cerr << "InternalSolverError: " << ex.what() << "\n";
    return kSolverError;
  }
  return kOk;
}

int cmd_crosscheck(const std::string & path,
                   const std::vector<std::string> & backends,
                   const smt::OptionList & options)
{
  if (backends.size() < 2) {
    throw IoError("crosscheck needs at least two --backend specs");
  }
  const std::string script = read_file(path);
  const smt::CrosscheckReport rep =
      smt::crosscheck(script, parse_specs(backends), options);
  for (const smt::RunOutcome & o : rep.outcomes) {
    std::cout << o.backend << ":";
    for (const std::string & s : o.statuses) std::cout << " " << s;
    if (o.error_kind) std::cout << " " << *o.error_kind;
    std::cout << "\n";
  }
  if (rep.divergent) {
    std::cerr << "divergence:\n" << rep.report;
    return kDivergence;
  }
  return kOk;
}

int cmd_fuzz(uint64_t seed,
             uint64_t count,
             const std::string & profile_text,
             const std::vector<std::string> & backends,
             const smt::OptionList & options,
             const std::string & artifact_dir,
             const std::string & emit_dir)
{
  if (count < 1) throw IoError("--count must be at least 1");
  if (backends.empty()) throw IoError("fuzz needs at least one --backend");
  smt::FuzzProfile profile;
  try {
    profile = smt::parse_profile(profile_text);
  } catch (const smt::IncorrectUsageException & ex) {
    throw IoError(ex.what());
  }
  if (!emit_dir.empty()) {
    std::filesystem::create_directories(emit_dir);
    for (uint64_t i = 0; i < count; ++i) {
      const auto file = std::filesystem::path(emit_dir)
                        / ("case-" + std::to_string(i) + ".smt2");
      std::ofstream out(file, std::ios::binary);
      if (!out) throw IoError("cannot write " + file.string());
      out << smt::generate_script(seed, i, profile);
    }
  }
  const smt::FuzzReport rep = smt::fuzz(seed, count, profile,
                                        parse_specs(backends), options,
                                        artifact_dir);
  std::cout << "cases " << rep.cases << " divergences " << rep.divergences
            << "\n";
  if (rep.divergences > 0) {
    std::cerr << rep.report;
    return kDivergence;
  }
  return kOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{ "Run, cross-check and fuzz SMT-LIB scripts" };
  app.require_subcommand(1);

  std::vector<std::string> opts;
  std::string transcript;
  auto add_common = [&](CLI::App * sub) {
    sub->add_option("--opt", opts, "Solver option key=value (repeatable)");
    sub->add_option("--transcript", transcript,
                    "Write the bytes sent to a process backend to this file");
  };

  std::string run_file, run_backend = "ref";
  CLI::App * run = app.add_subcommand("run", "Execute a script on one backend");
  run->add_option("file", run_file, "SMT-LIB script")->required();
  run->add_option("--backend", run_backend, "ref or proc:<command line>");
  add_common(run);

  std::string cc_file;
  std::vector<std::string> cc_backends;
  CLI::App * cc = app.add_subcommand(
      "crosscheck", "Compare check-sat answers of several backends");
  cc->add_option("file", cc_file, "SMT-LIB script")->required();
  cc->add_option("--backend", cc_backends, "Backend spec (repeat, at least 2)");
  add_common(cc);

  uint64_t seed = 1, count = 100;
  std::string profile = "qf_bv", artifacts = "fuzz-artifacts", emit_dir;
  std::vector<std::string> fz_backends;
  CLI::App * fz = app.add_subcommand(
      "fuzz", "Generate random formulas and cross-check them");
  fz->add_option("--seed", seed, "Generator seed");
  fz->add_option("--count", count, "Number of formulas");
  fz->add_option("--profile", profile, "qf_bv or qf_ufbv");
  fz->add_option("--backend", fz_backends, "Backend spec (repeatable)");
  fz->add_option("--artifacts", artifacts,
                 "Directory for reproductions of divergent cases");
  fz->add_option("--emit", emit_dir,
                 "Also write every generated script to this directory");
  add_common(fz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kIoError;
  }

  try {
    const smt::OptionList options = parse_options(opts, transcript);
    if (run->parsed()) return cmd_run(run_file, run_backend, options);
    if (cc->parsed()) return cmd_crosscheck(cc_file, cc_backends, options);
    if (fz->parsed()) {
      return cmd_fuzz(seed, count, profile, fz_backends, options, artifacts,
                      emit_dir);
    }
  } catch (const IoError & ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error & ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kIoError;
  } catch (const std::exception & ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kSolverError;
  }
  return kIoError;
}
