#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliRun
{
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is folded into the output when
// `with_stderr` is set.
CliRun cli(const std::string & args, bool with_stderr = false)
{
  const std::string cmd = std::string("'") + SMTBRIDGE_CLI + "' " + args
                          + (with_stderr ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE * p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string & name)
{
  return std::string(SMTBRIDGE_DATA) + "/" + name;
}

bool have_z3() { return std::system("command -v z3 >/dev/null 2>&1") == 0; }

fs::path temp_dir(const std::string & tag)
{
  fs::path d = fs::temp_directory_path()
               / ("smtbridge-cli-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, RunPrintsResponses)
{
  CliRun r = cli("run " + data("uf_msb_w4.smt2") + " --backend ref");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "sat\nunsat\n");

  fs::path d = temp_dir("run");
  std::ofstream(d / "gv.smt2")
      << "(declare-const x (_ BitVec 2))\n(assert (bvult #b10 x))\n"
         "(check-sat)\n(get-value (x))\n";
  r = cli("run " + (d / "gv.smt2").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "sat\n((x #b11))\n");

  std::ofstream(d / "proof.smt2") << "(check-sat)\n(get-proof)\n";
  r = cli("run " + (d / "proof.smt2").string(), true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NotImplementedError"), std::string::npos);
  EXPECT_NE(r.out.find("get-proof"), std::string::npos);
  fs::remove_all(d);
}

TEST(Cli, ArgumentAndIoErrors)
{
  EXPECT_EQ(cli("run /nonexistent/file.smt2").code, 2);
  EXPECT_EQ(cli("crosscheck " + data("uf_msb_w4.smt2") + " --backend ref").code, 2);
  EXPECT_EQ(cli("run " + data("uf_msb_w4.smt2") + " --backend bogus").code, 2);
  EXPECT_EQ(cli("run " + data("uf_msb_w4.smt2") + " --opt novalue").code, 2);
  EXPECT_EQ(cli("fuzz --count 3 --profile qf_lia").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST(Cli, OptionsReachTheBackend)
{
  CliRun r = cli("run " + data("uf_msb_w4.smt2") + " --opt ref.max-states=4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "unknown\nunknown\n");
}

TEST(Cli, CrosscheckAgreement)
{
  CliRun r = cli("crosscheck " + data("uf_msb_w4.smt2")
              + " --backend ref --backend ref");
  EXPECT_EQ(r.code, 0);
  // identical unknowns are agreement
  r = cli("crosscheck " + data("uf_msb_w4.smt2")
          + " --backend ref --backend ref --opt ref.max-states=4");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, CrosscheckAgainstZ3)
{
  if (!have_z3()) GTEST_SKIP() << "z3 not on PATH";
  CliRun r = cli("crosscheck " + data("uf_msb_w4.smt2")
              + " --backend ref --backend 'proc:z3 -in'");
  EXPECT_EQ(r.code, 0) << r.out;
  r = cli("crosscheck " + data("uf_msb_w9.smt2")
          + " --backend ref --backend 'proc:z3 -in'", true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("divergence"), std::string::npos);
  r = cli("run " + data("uf_msb_w9.smt2") + " --backend 'proc:z3 -in'");
  EXPECT_EQ(r.out, "sat\nunsat\n");
}

TEST(Cli, ProcessStartFailureIsASolverError)
{
  CliRun r = cli("run " + data("uf_msb_w4.smt2") + " --backend proc:cat", true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("InternalSolverError"), std::string::npos) << r.out;
}

TEST(Cli, FuzzIsDeterministic)
{
  fs::path a = temp_dir("fa"), b = temp_dir("fb");
  CliRun ra = cli("fuzz --seed 42 --count 20 --profile qf_ufbv --backend ref --emit "
               + a.string());
  CliRun rb = cli("fuzz --seed 42 --count 20 --profile qf_ufbv --backend ref --emit "
               + b.string());
  EXPECT_EQ(ra.code, 0);
  EXPECT_EQ(ra.out, rb.out);
  std::size_t files = 0;
  for (const auto & e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
  }
  EXPECT_EQ(files, 20u);
  // every emitted case runs cleanly through the CLI
  CliRun r = cli("run " + (a / "case-0.smt2").string());
  EXPECT_EQ(r.code, 0);
  fs::path c = temp_dir("fc");
  cli("fuzz --seed 43 --count 20 --profile qf_ufbv --backend ref --emit " + c.string());
  EXPECT_NE(slurp(a / "case-0.smt2"), slurp(c / "case-0.smt2"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST(Cli, FuzzAgainstZ3WritesNoArtifactsWhenClean)
{
  if (!have_z3()) GTEST_SKIP() << "z3 not on PATH";
  fs::path d = temp_dir("art");
  CliRun r = cli("fuzz --seed 5 --count 40 --profile qf_bv --backend ref "
              "--backend 'proc:z3 -in' --artifacts " + d.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::is_empty(d));
  fs::remove_all(d);
}
