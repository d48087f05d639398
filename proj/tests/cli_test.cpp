#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "padic_lattice/cli.hpp"

namespace padic {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "padic-lattice");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(PADIC_FIXTURES) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "padic_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) { return cli::read_file(p.string()); }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

TEST(Cli, OrthogonalizeWorkedExample) {
  const CliRun r = run({"orthogonalize", fixture("worked_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "norms: 2^0 2^-1 2^-4")) << r.out;
  EXPECT_TRUE(has_line(r.out, "  [0, 0, 16, 16]")) << r.out;
  const CliRun v = run({"orthogonalize", "--via-cvp", fixture("worked_example.json")});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(has_line(v.out, "norms: 2^0 2^-1 2^-4"));
  EXPECT_TRUE(has_line(v.out, "oracle-calls: 3"));
}

TEST(Cli, OrthogonalizeAlternativeOrder) {
  const CliRun r = run({"orthogonalize", fixture("worked_example_alt_order.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "norms: 2^0 2^-1 2^-4")) << r.out;
}

TEST(Cli, CvpStep) {
  const CliRun r = run({"cvp", "--verify", fixture("worked_cvp_step.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "distance: 2^-1")) << r.out;
  EXPECT_TRUE(has_line(r.out, "oracle-distance: 2^-1"));
  EXPECT_TRUE(has_line(r.out, "verify: PASS"));
}

TEST(Cli, CvpTargetInLatticeAndMissingTarget) {
  const fs::path f = scratch("in_lattice.json");
  cli::write_file(f.string(), R"({"p": 2, "dim": 2, "basis": [["1", "1"]], "target": ["3", "3"]})");
  const CliRun r = run({"cvp", f.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "distance: 0")) << r.out;
  const CliRun m = run({"cvp", fixture("worked_example.json")});
  EXPECT_EQ(m.code, 2);
  EXPECT_NE(m.err.find("target"), std::string::npos);
}

TEST(Cli, LvpWorkedLattice) {
  const CliRun r = run({"lvp", "--verify", fixture("worked_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "norm: 2^-1")) << r.out;
  EXPECT_TRUE(has_line(r.out, "verify: PASS"));
}

TEST(Cli, Invariants) {
  const CliRun r = run({"invariants", fixture("worked_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "lambda~: 2^0 2^-1 2^-4"));
  EXPECT_TRUE(has_line(r.out, "mu: undefined: not full rank"));
  EXPECT_TRUE(has_line(r.out, "ladder: 2^0 2^-1 2^-2 2^-3 2^-4"));
  const CliRun z = run({"invariants", fixture("z2_in_q2.json")});
  ASSERT_EQ(z.code, 0) << z.err;
  EXPECT_TRUE(has_line(z.out, "mu: 2^1")) << z.out;
  const CliRun k = run({"invariants", "--ladder", "2", fixture("worked_example.json")});
  EXPECT_TRUE(has_line(k.out, "ladder: 2^0 2^-1")) << k.out;
}

TEST(Cli, GeneratedInstancesVerifyAndMatchTruth) {
  for (int seed = 1; seed <= 20; ++seed) {
    const fs::path f = scratch("gen_" + std::to_string(seed) + ".json");
    const std::string p = seed % 3 == 0 ? "5" : (seed % 2 ? "2" : "3");
    const CliRun g = run({"gen", "--p", p, "--dim", "3", "--rank", std::to_string(1 + seed % 3), "--seed",
                       std::to_string(seed), "--weights", "half", "--wlo", "-1", "--whi", "1", "--random-frame",
                       "--target", "--out", f.string()});
    ASSERT_EQ(g.code, 0) << g.err;
    const CliRun c = run({"check", "--verify", f.string()});
    EXPECT_EQ(c.code, 0) << c.out << c.err;
    EXPECT_TRUE(has_line(c.out, "verify: PASS")) << "seed " << seed << "\n" << c.out;
    const CliRun inv = run({"invariants", f.string()});
    ASSERT_EQ(inv.code, 0) << inv.err;
    const std::string truth = slurp(f.string() + ".truth");
    // The report carries two header lines before the invariant fields.
    const std::string body = inv.out.substr(inv.out.find("lambda~"));
    EXPECT_EQ(body, truth) << "seed " << seed;
  }
}

TEST(Cli, GenIsByteIdenticalForSameSeed) {
  const fs::path a = scratch("same_a.json");
  const fs::path b = scratch("same_b.json");
  for (const auto& f : {a, b}) {
    ASSERT_EQ(run({"gen", "--p", "3", "--dim", "4", "--rank", "3", "--seed", "77", "--out", f.string()}).code, 0);
  }
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a.string() + ".truth"), slurp(b.string() + ".truth"));
}

TEST(Cli, ParseErrorsExitWithInputCode) {
  const fs::path f = scratch("broken.json");
  cli::write_file(f.string(), "{\n  \"p\": 2,\n  \"dim\": ]\n}\n");
  const CliRun r = run({"check", f.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3, column 10"), std::string::npos) << r.err;
  EXPECT_EQ(run({"check", scratch("does_not_exist.json").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
}

TEST(Cli, PreconditionFailures) {
  const fs::path singular = scratch("singular.json");
  cli::write_file(singular.string(),
                  R"({"p": 3, "dim": 2, "frame": [["1", "2"], ["2", "4"]], "basis": [["1", "0"]]})");
  EXPECT_EQ(run({"check", singular.string()}).code, 3);
  const fs::path dependent = scratch("dependent.json");
  cli::write_file(dependent.string(), R"({"p": 3, "dim": 2, "basis": [["1", "2"], ["2", "4"]]})");
  EXPECT_EQ(run({"orthogonalize", dependent.string()}).code, 3);
  const fs::path composite = scratch("composite.json");
  cli::write_file(composite.string(), R"({"p": 6, "dim": 1, "basis": [["1"]]})");
  EXPECT_NE(run({"check", composite.string()}).code, 0);
}

TEST(Cli, OracleBudgetExceeded) {
  const fs::path f = scratch("deep.json");
  cli::write_file(f.string(),
                  R"({"p": 5, "dim": 4, "basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]],)"
                  R"( "target": ["1", "2", "3", "15625"]})");
  ::setenv(cli::kBudgetEnv, "10", 1);
  const CliRun r = run({"cvp", "--verify", f.string()});
  ::unsetenv(cli::kBudgetEnv);
  EXPECT_EQ(r.code, 4) << r.out << r.err;
  EXPECT_EQ(run({"cvp", "--verify", f.string()}).code, 0);
}

TEST(Cli, JsonFormat) {
  const CliRun r = run({"invariants", "--format", "json", fixture("worked_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("mu"), "undefined: not full rank");
  EXPECT_EQ(j.at("lambda~"), "2^0 2^-1 2^-4");
  const CliRun o = run({"orthogonalize", "--format", "json", fixture("worked_example.json")});
  const auto b = nlohmann::json::parse(o.out).at("basis");
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[1], "[0, 2, 0, 0]");
}

TEST(Cli, DigestHeaderIsStable) {
  const CliRun a = run({"check", fixture("worked_example.json")});
  const CliRun b = run({"check", fixture("worked_example.json")});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("instance: fnv1a64:"), std::string::npos);
}

}  // namespace
}  // namespace padic
