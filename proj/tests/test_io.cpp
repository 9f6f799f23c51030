#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prospan/io.hpp"

using namespace prospan;

namespace {

const std::string kSamples = PROSPAN_SAMPLES;

std::size_t error_line(const std::string& text, bool mackey = false) {
  std::istringstream in(text);
  try {
    if (mackey)
      parse_mackey(in, "t");
    else
      parse_group(in, "t");
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / ("prospan_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(IO, GroupRoundTrip) {
  for (const auto& [name, g] : corpus(12)) {
    std::ostringstream a;
    write_group(a, *g);
    std::istringstream in(a.str());
    const GroupRef back = parse_group(in);
    std::ostringstream b;
    write_group(b, *back);
    EXPECT_EQ(a.str(), b.str()) << name;
    EXPECT_TRUE(isomorphic(*g, *back));
  }
}

TEST(IO, TowerRoundTrip) {
  const GroupTower t = read_tower(kSamples + "/c2-tower-3.tower");
  EXPECT_EQ(t.depth(), 3u);
  EXPECT_EQ(t.top()->order(), 8u);
  std::ostringstream a, b;
  write_tower(a, t);
  std::istringstream in(a.str());
  write_tower(b, parse_tower(in));
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_tower(c, cyclic_tower(3, 2));
  std::istringstream in3(c.str());
  EXPECT_EQ(parse_tower(in3).top()->order(), 9u);
}

TEST(IO, GSetRoundTrip) {
  auto g = builtin_group("S3");
  for (const auto& x : enumerate_gsets(g, 4)) {
    std::ostringstream a;
    write_gset(a, x, "S3");
    std::istringstream in(a.str());
    const GSet back = parse_gset(in);
    EXPECT_TRUE(back == x) << describe(x);
    std::ostringstream b;
    write_gset(b, back, "S3");
    EXPECT_EQ(a.str(), b.str());
  }
  const GSet y = read_gset(kSamples + "/c4-mixed.gset");
  EXPECT_EQ(y.size(), 5u);
  EXPECT_EQ(describe(y), describe(coproduct(GSet::point(cyclic(4)), GSet::regular(cyclic(4))).set));
}

TEST(IO, MackeyRoundTrip) {
  for (const char* name : {"C2", "C4", "S3", "C2xC2", "D4"}) {
    const MackeyFunctor m = burnside_mackey(builtin_group(name));
    std::ostringstream a;
    write_mackey(a, m, name);
    std::istringstream in(a.str());
    const MackeyFunctor back = parse_mackey(in);
    EXPECT_TRUE(check_mackey(back).ok);
    std::ostringstream b;
    write_mackey(b, back, name);
    EXPECT_EQ(a.str(), b.str()) << name;
  }
  // zero levels have 0-column matrices, written without rows
  const MackeyFunctor z = zero_mackey(builtin_group("C2"));
  std::ostringstream a;
  write_mackey(a, z, "C2");
  std::istringstream in(a.str());
  EXPECT_EQ(parse_mackey(in).gens().size(), z.gens().size());
  const MackeyFunctor t = reduce_mod(burnside_mackey(builtin_group("C2")), 3);
  std::ostringstream c;
  write_mackey(c, t, "C2");
  EXPECT_NE(c.str().find("torsion 3"), std::string::npos);
  std::istringstream in3(c.str());
  EXPECT_TRUE(parse_mackey(in3) == t);
}

TEST(IO, SampleFilesLoad) {
  EXPECT_EQ(read_group(kSamples + "/s3.group")->order(), 6u);
  EXPECT_TRUE(check_mackey(read_mackey(kSamples + "/c4-burnside.mackey")).ok);
  EXPECT_TRUE(check_mackey(read_mackey(kSamples + "/s3-burnside.mackey")).ok);
  EXPECT_FALSE(check_mackey(read_mackey(kSamples + "/c2-broken.mackey")).ok);
}

TEST(IO, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("grop 2\n"), 1u);
  EXPECT_EQ(error_line("# comment\n\ngroup 2\n0 1\n1 0 1\n"), 5u);
  EXPECT_EQ(error_line("group 2\n0 1\n1 x\n"), 3u);
  EXPECT_EQ(error_line("group 2\n0 1\n"), 3u);  // end of input
  EXPECT_EQ(error_line("group 2\n0 1\n1 0\nextra\n"), 4u);
  EXPECT_EQ(error_line("group 3\n0 1 2\n1 2 0\n2 1 0\n"), 4u);  // not a group
  EXPECT_EQ(error_line("mackey C2\nlevel 0 rank 1 torsion\nlevel 1 rank 2\n", true), 3u);
  EXPECT_EQ(error_line("mackey C2\nlevel 0 rank 1 torsion\nlevel 1 rank 2 torsion\nbogus\n", true), 4u);
  EXPECT_EQ(error_line("mackey C2\nlevel 0 rank 1 torsion\nlevel 1 rank 2 torsion\ngen 0:0 rows 1 cols 1\n1\n", true), 4u);
  EXPECT_EQ(error_line("mackey C2\nlevel 0 rank 1 torsion 4 2\n", true), 2u);
  std::istringstream tower("tower 2\ngroup 2\n0 1\n1 0\ngroup 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\nlink 1 0 1 1 0\n");
  try {
    parse_tower(tower, "t");
    ADD_FAILURE() << "bad link accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 10u);
  }
}

TEST(IO, MissingFilesAndNames) {
  EXPECT_THROW(read_group("/nonexistent/x.group"), ParseError);
  EXPECT_THROW(load_group("NotAGroupName"), ParseError);
  EXPECT_EQ(load_group("A4")->order(), 12u);
  std::istringstream in("gset missing.group 1\n0\n");
  EXPECT_THROW(parse_gset(in), ParseError);
}

TEST(IO, IdentityNeedNotBeZeroInFiles) {
  // Z/3 with identity 2: a * b = a + b + 1 mod 3.
  const auto dir = scratch_dir();
  {
    std::ofstream g(dir / "z3.group");
    g << "group 3\n1 2 0\n2 0 1\n0 1 2\n";
    // regular action in the file's labels: point x moved by e goes to e * x
    std::ofstream x(dir / "z3.gset");
    x << "gset z3.group 3\n1 2 0\n2 0 1\n0 1 2\n";
  }
  const GroupRef g = read_group((dir / "z3.group").string());
  EXPECT_TRUE(isomorphic(*g, *cyclic(3)));
  const GSet x = read_gset((dir / "z3.gset").string());
  EXPECT_EQ(orbit_decompose(x), (std::vector<OrbitType>{{0, 1}}));
  // the file's identity column (index 2) became element 0 and fixes every point
  for (Point p = 0; p < 3; ++p) EXPECT_EQ(x.act(p, 0), p);
  std::filesystem::remove_all(dir);
}
