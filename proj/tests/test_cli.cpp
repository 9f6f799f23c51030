#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "prospan/cli.hpp"

using namespace prospan;

namespace {

const std::string kSamples = PROSPAN_SAMPLES;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "prospan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, TableOfMarks) {
  const CliRun r = run({"tom", kSamples + "/c2.group"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "classes (subgroup orders): 1 2\n2 0\n1 1\n");
  const CliRun s = run({"tom", "S3"});
  EXPECT_TRUE(has(s.out, "6 0 0 0\n3 1 0 0\n2 0 2 0\n1 1 1 1\n")) << s.out;
}

TEST(Cli, GroupVerbs) {
  const CliRun a = run({"group-show", "C4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a.out, "order 4"));
  EXPECT_TRUE(has(a.out, "element orders 1 4 2 4"));
  const CliRun b = run({"subgroups", kSamples + "/s3.group"});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(has(b.out, "class 1 order 2 index 3 members 3"));
  const CliRun c = run({"burnside", "C2"});
  EXPECT_TRUE(has(c.out, "t0 * t0 = 2 t0")) << c.out;
}

TEST(Cli, SpanHom) {
  const CliRun r = run({"span-hom", kSamples + "/c4-orbit2.gset", kSamples + "/c4-mixed.gset"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, ": 4 basis spans")) << r.out;
}

TEST(Cli, MackeyCheck) {
  const CliRun ok = run({"mackey-check", kSamples + "/c4-burnside.mackey"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.out.rfind("PASS", 0), 0u);
  EXPECT_TRUE(has(ok.out, "res/tr 2 <-> 1"));
  const CliRun bad = run({"mackey-check", kSamples + "/c2-broken.mackey"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("FAIL", 0), 0u);
}

TEST(Cli, MackeyFixedWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "prospan_cli_fixed";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "fp.mackey").string();
  const CliRun r = run({"mackey-fixed", kSamples + "/c4-burnside.mackey", "--normal", "2", "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out + ".group"));
  const CliRun c = run({"mackey-check", out});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(has(c.out, "level 1 |H|=2 Z^3"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const CliRun missing = run({"tom", "/nonexistent/g.group"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(has(missing.err, "parse error"));
  EXPECT_EQ(run({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "colim-gset", "--tower", "4,2"}).code, 2);
  EXPECT_EQ(run({"verify", "colim-gset", "--tower", "2,9"}).code, 2);
  EXPECT_EQ(run({"verify", "colim-gset", "--tower", "two"}).code, 2);
  EXPECT_EQ(run({"tom", "C2", "--format", "json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyAdjunction) {
  const CliRun r = run({"verify", "adjunction", "--group", "C2", "--normal", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(has(r.out, "EXPECTED counit square not a pullback"));
  EXPECT_TRUE(has(r.out, "PASS verify: 1 section(s)"));
}

TEST(Cli, VerifyColimGset) {
  const CliRun r = run({"verify", "colim-gset", "--tower", "2,3", "--cap", "4"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(has(r.out, "PASS colim-gset: comparison colim Fin_{G_i} -> discrete G-sets is an equivalence"));
}
