#include <gtest/gtest.h>

#include <fstream>

#include "helpers.hpp"
#include "toricgcp/commands.hpp"

using namespace toricgcp;
using io::json;

namespace {

json load(const std::string& name) {
  std::ifstream in("data/" + name);
  EXPECT_TRUE(in.good()) << name;
  return json::parse(in);
}

RunResult run(const std::string& cmd, const std::string& file, RunOptions o = {}) {
  return run_command(cmd, load(file), o);
}

}  // namespace

TEST(Cli, MixedVolumes) {
  EXPECT_EQ(run("mixedvol", "rect.json").output["mixed_volume"], 29);
  EXPECT_EQ(run("mixedvol", "cubes.json").output["mixed_volume"], 6);
  EXPECT_EQ(run("mixedvol", "degenerate_pair.json").output["mixed_volume"], 4);
  EXPECT_EQ(run("mixedvol", "dense.json").output["mixed_volume"], 6);
}

TEST(Cli, FillCandidates) {
  for (const auto& [p, d] : {std::pair{"rect.json", "rect_D.json"}, std::pair{"cubes.json", "cubes_D.json"}}) {
    RunOptions o;
    o.candidate = load(d);
    const auto r = run("fill", p, o);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output["fills"], true) << p;
    EXPECT_EQ(r.output["irreducible"], true) << p;
  }
  const auto r = run("fill", "dense.json");
  EXPECT_EQ(r.output["fills"], true);
}

TEST(Cli, ResultantOfTheBilinearPair) {
  const auto g = run("resultant", "mixed_generic.json");
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_EQ(g.output["resultant"]["terms"].size(), 12u);
  EXPECT_EQ(g.output["rows"], 7);
  EXPECT_EQ(g.output["vanishes"], false);
  EXPECT_EQ(run("resultant", "mixed_special.json").output["vanishes"], true);
}

TEST(Cli, GcpAndSolveOnTheDegeneratePair) {
  const auto g = run("gcp", "degenerate_pair.json");
  EXPECT_EQ(g.output["k"], 1);
  EXPECT_EQ(g.output["H_terms"], 110);
  EXPECT_EQ(g.output["chow_vanishes"], true);
  EXPECT_FALSE(g.output.contains("H"));
  RunOptions o;
  o.emit_H = true;
  EXPECT_TRUE(run("gcp", "degenerate_pair.json", o).output.contains("H"));

  const auto s = run("solve", "degenerate_pair.json");
  EXPECT_EQ(s.exit_code, 0);
  int torus = 0;
  for (const auto& r : s.output["roots"]) torus += r["status"] == "torus-root";
  EXPECT_EQ(torus, 4);
  EXPECT_EQ(s.output["remainder_degree"], 0);

  o = {};
  o.field = "gfp:101";
  const auto p = run("solve", "degenerate_pair.json", o);
  EXPECT_EQ(p.output["field"], json({{"GFp", 101}}));
  EXPECT_EQ(p.output["factors"].size(), 4u);
}

TEST(Cli, TwistedChowForm) {
  const auto r = run("chow", "twisted.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output["vanishes"], false);
  ASSERT_EQ(r.output["roots"].size(), 1u);
  EXPECT_EQ(r.output["roots"][0]["status"], "projective-only");
  RunOptions o;
  o.A = "simplex";
  EXPECT_EQ(run("chow", "twisted.json", o).output["vanishes"], true);
  o.A = "auto";
  EXPECT_EQ(run("chow", "twisted.json", o).output["vanishes"], false);
}

TEST(Cli, BoundaryRootOfTheSpecializedPair) {
  const auto r = run("solve", "mixed_pair.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output["mixed_volume"], 1);
  ASSERT_EQ(r.output["roots"].size(), 1u);
  EXPECT_EQ(r.output["roots"][0]["status"], "boundary");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_command("solve", json::object({{"n", 2}}), {}).exit_code, 1);
  EXPECT_EQ(run_command("bogus", load("rect.json"), {}).exit_code, 1);
  auto bad = load("rect.json");
  bad["extra"] = 1;
  EXPECT_EQ(run_command("mixedvol", bad, {}).exit_code, 1);

  const json xy = {"x", "y"};
  const json flat = {{"n", 2}, {"polynomials", {{{"vars", xy}, {"expr", "1+x*y"}}, {{"vars", xy}, {"expr", "2+x^2*y^2"}}}}};
  const auto r = run_command("mixedvol", flat, {});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.output["error"], "precondition");

  RunOptions o;
  o.cap = 3;
  EXPECT_EQ(run("gcp", "degenerate_pair.json", o).exit_code, 2);
}

// Property: identical inputs and seeds render byte-identical output.
TEST(Cli, DeterministicRendering) {
  for (const char* cmd : {"mixedvol", "gcp", "solve"}) {
    RunOptions o;
    o.seed = 5;
    const auto a = render(run(cmd, "degenerate_pair.json", o).output);
    const auto b = render(run(cmd, "degenerate_pair.json", o).output);
    EXPECT_EQ(a, b) << cmd;
  }
}

// Property: polynomials survive a JSON round trip.
TEST(Cli, PolynomialJsonRoundTrip) {
  const auto v = make_vars({"x", "y", "a"});
  for (const Field f : {Field::rationals(), Field::prime(101)}) {
    const auto p = testing_util::P(f, v, "3/2*x^3*y - a*x + 7 - y^2*a^2");
    EXPECT_EQ(io::poly_from_json(f, io::poly_to_json(p)), p);
  }
  const auto prob = io::parse_problem(load("degenerate_pair.json"), std::nullopt);
  EXPECT_EQ(prob.n, 2u);
  EXPECT_EQ(prob.polys.size(), 2u);
}
