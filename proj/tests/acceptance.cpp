// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "toricgcp/commands.hpp"
#include "toricgcp/errors.hpp"
#include "toricgcp/fill.hpp"
#include "toricgcp/rootfind.hpp"
#include "toricgcp/subdivision.hpp"

using namespace toricgcp;
using testing_util::box;
using testing_util::cube3;
using testing_util::P;
using testing_util::S;
using io::json;

namespace {

const Field Q = Field::rationals();

struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

json load(const std::string& name) {
  std::ifstream in("data/" + name);
  if (!in) throw std::runtime_error("missing data/" + name);
  return json::parse(in);
}

std::string coeffs_str(const std::vector<FieldElem>& c) {
  std::string out;
  for (const auto& x : c) out += (out.empty() ? "" : ",") + x.str();
  return out;
}

Support simplex(std::size_t n, std::int64_t d) {
  std::vector<Point> pts{Point(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    Point p(n, 0);
    p[k] = d;
    pts.push_back(p);
  }
  return Support(n, pts);
}

void mixed_volumes(Check& c) {
  const std::vector<std::pair<SupportTuple, std::int64_t>> cases{
      {{box(2, 3), box(5, 7)}, 29},
      {{cube3(), cube3(), cube3()}, 6},
      {{support_of(testing_util::degenerate_pair(Q, make_vars({"x", "y"}))[0], 2),
        support_of(testing_util::degenerate_pair(Q, make_vars({"x", "y"}))[1], 2)},
       4},
  };
  for (const auto& [t, want] : cases) {
    const auto got = mixed_volume(t);
    const auto oracle = mixed_volume_by_volumes(t);
    c.expect(got == want, "mixed volume " + std::to_string(got) + " != " + std::to_string(want));
    c.expect(oracle == want, "oracle " + std::to_string(oracle) + " != " + std::to_string(want));
  }
  for (const char* f : {"rect.json", "cubes.json", "degenerate_pair.json"}) {
    const auto r = run_command("mixedvol", load(f), {});
    c.expect(r.exit_code == 0, std::string("mixedvol ") + f + " failed");
  }
}

void fills_and_essential_subsets(Check& c) {
  auto verify = [&](const SupportTuple& D, const SupportTuple& E, const std::string& name, bool deletions) {
    c.expect(fills(D, E).fills, name + " does not fill");
    if (!deletions) return;
    for (std::size_t i = 0; i < D.size(); ++i) {
      for (const auto& p : D[i].points()) {
        auto d = D;
        d[i] = D[i].without(p);
        c.expect(!fills(d, E).fills, name + " survives a deletion");
      }
    }
  };
  verify({S({{0, 0}, {2, 3}}), S({{0, 7}, {5, 0}})}, {box(2, 3), box(5, 7)}, "rectangle fill", true);
  verify({S({{0, 0, 0}, {1, 1, 1}}), S({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), S({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}})},
         {cube3(), cube3(), cube3()}, "cube fill", true);
  verify({S({{0, 0}, {2, 0}}), S({{0, 0}, {0, 3}})}, {simplex(2, 2), simplex(2, 3)}, "dense fill", false);

  c.expect(essential_subsets({S({{0, 0}}), S({{1, 0}})}) == std::vector<IndexSet>{{0}, {1}}, "points row");
  c.expect(essential_subsets({S({{0, 1}}), S({{1, 0}, {2, 1}})}) == std::vector<IndexSet>{{0}}, "point/segment row");
  c.expect(essential_subsets({S({{0, 0}, {1, 1}}), S({{1, 0}, {2, 1}})}) == std::vector<IndexSet>{{0, 1}},
           "parallel segments row");
  c.expect(essential_subsets({S({{0, 1}, {1, 0}}), S({{2, 0}, {2, 1}})}).empty(), "crossing segments row");
}

void degenerate_pair_end_to_end(Check& c) {
  const auto v = make_vars({"x", "y"});
  GcpProblem p;
  p.F = testing_util::degenerate_pair(Q, v);
  p.E = {support_of(p.F[0], 2), support_of(p.F[1], 2)};
  p.A = standard_simplex(2);
  p.D = testing_util::degenerate_pair_fill();
  const auto g = gcp(p, {}, true);
  c.expect(g.k == 1, "k = " + std::to_string(g.k));
  c.expect(g.s_degree == 8, "deg_s H = " + std::to_string(g.s_degree));
  c.expect(g.H && g.H->size() == 110, "H has " + std::to_string(g.H_terms) + " terms");
  const auto quartic = P(Q, g.F_A.vars(), "-4*(u0+u2+u1)*(28*u0+4*u2+49*u1)*(u0-u2+u1)*(4*u0-4*u2+u1)");
  c.expect(g.F_A == make_primitive(quartic).poly, "F_A differs from the quartic");

  // Tags: u0 -> 1, u1 -> y, u2 -> x.
  const std::set<std::string> want{"1,1,1", "1,7/4,1/7", "1,1,-1", "1,1/4,-1"};
  const auto split = split_linear(g.F_A);
  std::set<std::string> got;
  for (const auto& f : split.factors) got.insert(coeffs_str(f.coeffs));
  c.expect(got == want && split.factors.size() == 4, "linear factors differ");

  const auto roots = roots_from_factors(split.factors, p.A, &p.F);
  std::set<std::string> verified;
  int minus_one = 0;
  for (const auto& r : roots) {
    if (r.status != "torus-root") continue;
    verified.insert(coeffs_str(*r.torus));
    minus_one += (*r.torus)[0] == FieldElem(Q, -1L);
  }
  c.expect(verified.count("1,1") && verified.count("1/7,7/4"), "isolated roots not verified");
  c.expect(minus_one == 2, "expected two points with x = -1, got " + std::to_string(minus_one));
}

void bilinear_u_resultant(Check& c) {
  const auto v = make_vars({"x", "y", "a1", "a2", "a3", "b1", "b2", "b3", "u0", "u1", "u2"});
  const Support bil = S({{0, 1}, {1, 0}, {1, 1}});
  const SupportTuple T{bil, bil, standard_simplex(2)};
  const std::vector<MultiPoly> ps{P(Q, v, "a1*y+a2*x+a3*x*y"), P(Q, v, "b1*y+b2*x+b3*x*y"), P(Q, v, "u0+u1*x+u2*y")};
  const auto r = toric_resultant(T, ps, {});
  const auto expect = P(Q, parameter_vars(v, 2),
                        "(a3^2*b2*b1+b3^2*a2*a1-b3*a2*a3*b1-b3*a3*b2*a1)*u0"
                        "+(b1^2*a2*a3-b1*b3*a2*a1-b2*a1*a3*b1+b2*b3*a1^2)*u1"
                        "+(b1*b3*a2^2-b2*a2*a3*b1+b2^2*a3*a1-b2*b3*a2*a1)*u2");
  c.expect(r.poly == make_primitive(expect).poly, "generic u-resultant differs from the bracket expansion");

  const auto w = make_vars({"x", "y", "u0", "u1", "u2"});
  const std::vector<MultiPoly> sp{P(Q, w, "x+2*x*y"), P(Q, w, "x+3*x*y"), P(Q, w, "u0+u1*x+u2*y")};
  c.expect(toric_resultant(T, sp, {}).poly.is_zero(), "specialization does not vanish");
}

void twisted_chow(Check& c) {
  const auto v = make_vars({"x", "y", "z"});
  const std::vector<MultiPoly> F{P(Q, v, "3*x*y*z+2*x*y+x*z+y*z"), P(Q, v, "9*x*y*z+4*x*y+x*z+y*z"),
                                 P(Q, v, "27*x*y*z+8*x*y+x*z+y*z")};
  const Support Ap = S({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
  const SupportTuple E{Ap, Ap, Ap};
  // Sorted A': u0 = (0,1,1), u1 = (1,0,1).
  const auto ch = chow_form(F, E, Ap);
  c.expect(!ch.is_zero() && ch == make_primitive(P(Q, ch.vars(), "u1-u0")).poly, "Chow form is " + ch.str());
  const auto split = split_linear(ch);
  const auto roots = roots_from_factors(split.factors, Ap, &F);
  c.expect(roots.size() == 1 && coeffs_str(roots[0].projective) == "1,-1,0,0", "projective root differs");
  c.expect(chow_form(F, E, standard_simplex(3)).is_zero(), "simplex Chow form does not vanish");
}

MultiPoly random_poly(std::mt19937_64& rng, Field f, const VarList& v, const Support& s) {
  std::uniform_int_distribution<long> d(1, static_cast<long>(f.characteristic()) - 1);
  std::vector<Term> terms;
  for (const auto& e : s.points()) terms.push_back({{static_cast<std::uint32_t>(e[0]), static_cast<std::uint32_t>(e[1])}, FieldElem(f, d(rng))});
  return MultiPoly::from_terms(f, v, terms);
}

void projection_operator_properties(Check& c) {
  const Field F = Field::prime(101);
  const auto v = make_vars({"x", "y"});
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<long> d(1, 100);
  int systems = 0;
  for (int it = 0; it < 400 && systems < 60; ++it) {
    const std::vector<FieldElem> zeta{FieldElem(F, d(rng)), FieldElem(F, d(rng))};
    std::vector<MultiPoly> sys;
    for (int i = 0; i < 2; ++i) {
      auto f = random_poly(rng, F, v, testing_util::random_support(rng, 2, 2, 4));
      const std::vector<FieldElem> pt{zeta[0], zeta[1]};
      f -= MultiPoly::constant(F, v, f.evaluate(pt));
      sys.push_back(f);
    }
    SupportTuple E{support_of(sys[0], 2), support_of(sys[1], 2)};
    if (mixed_volume(E) == 0) continue;
    GcpProblem p{sys, E, standard_simplex(2), irreducible_fill(E)};
    const auto g = gcp(p);
    const auto M = g.mixed_volume;
    std::vector<std::size_t> tags;
    for (std::size_t j = 0; j < g.F_A.nvars(); ++j) tags.push_back(j);
    c.expect(g.F_A.is_homogeneous_in(tags) && g.F_A.degree_in(tags) == M, "F_A not homogeneous of degree M(E)");

    const auto split = split_linear(g.F_A, static_cast<std::uint64_t>(it));
    int mult = 0;
    MultiPoly back = split.remainder.scaled(split.scalar);
    for (const auto& f : split.factors) {
      mult += f.multiplicity;
      MultiPoly l(F, g.F_A.vars());
      for (std::size_t k = 0; k < f.coeffs.size(); ++k) l += MultiPoly::variable(F, g.F_A.vars(), k).scaled(f.coeffs[k]);
      back = back * l.pow(static_cast<unsigned>(f.multiplicity));
    }
    c.expect(mult + std::max(0, split.remainder.total_degree()) == M, "multiplicities do not sum to M(E)");
    c.expect(back == g.F_A, "re-expansion differs from F_A");

    // phi(zeta) = (1, y, x) in the sorted simplex order, scaled to lead with 1.
    const std::string phi = "1," + zeta[1].str() + "," + zeta[0].str();
    bool found = false;
    for (const auto& r : roots_from_factors(split.factors, p.A)) found |= coeffs_str(r.projective) == phi;
    c.expect(found, "planted root " + phi + " missing");
    ++systems;
  }
  c.expect(systems >= 50, "only " + std::to_string(systems) + " planted systems");

  int leading = 0;
  for (int it = 0; it < 200 && leading < 12; ++it) {
    const SupportTuple E{testing_util::random_support(rng, 2, 2, 4), testing_util::random_support(rng, 2, 2, 4)};
    if (mixed_volume(E) == 0) continue;
    GcpProblem p{{random_poly(rng, F, v, E[0]), random_poly(rng, F, v, E[1])}, E, standard_simplex(2),
                 irreducible_fill(E)};
    const auto g = gcp(p, {}, true);
    if (g.s_degree != g.expected_s_degree) continue;
    std::size_t si = 0;
    while (g.H->vars()->at(si) != "s") ++si;
    const auto top = make_primitive(g.H->coefficient(si, static_cast<std::uint32_t>(g.s_degree))).poly;
    std::vector<MultiPoly> star;
    for (const auto& Di : p.D) {
      MultiPoly s(F, v);
      for (const auto& e : Di.points())
        s += MultiPoly::monomial(F, v, {static_cast<std::uint32_t>(e[0]), static_cast<std::uint32_t>(e[1])}, FieldElem(F, 1L));
      star.push_back(s);
    }
    const auto res = chow_form(star, E, p.A);
    c.expect(!res.is_zero() && top.str() == res.str(), "leading s-coefficient differs from Res(F*, g)");
    ++leading;
  }
  c.expect(leading >= 10, "only " + std::to_string(leading) + " leading-coefficient checks");
}

void determinism(Check& c) {
  struct Run {
    const char* cmd;
    const char* file;
    json A;
    bool emit_H;
    json candidate;
  };
  const std::vector<Run> runs{
      {"mixedvol", "rect.json", {}, false, {}},
      {"mixedvol", "cubes.json", {}, false, {}},
      {"mixedvol", "degenerate_pair.json", {}, false, {}},
      {"fill", "rect.json", {}, false, load("rect_D.json")},
      {"fill", "cubes.json", {}, false, load("cubes_D.json")},
      {"fill", "dense.json", {}, false, {}},
      {"gcp", "degenerate_pair.json", {}, true, {}},
      {"solve", "degenerate_pair.json", {}, false, {}},
      {"resultant", "mixed_generic.json", {}, false, {}},
      {"resultant", "mixed_special.json", {}, false, {}},
      {"chow", "twisted.json", {}, false, {}},
      {"chow", "twisted.json", "simplex", false, {}},
  };
  for (const auto& r : runs) {
    RunOptions o;
    o.seed = 11;
    o.A = r.A;
    o.emit_H = r.emit_H;
    o.candidate = r.candidate;
    const auto a = run_command(r.cmd, load(r.file), o);
    const auto b = run_command(r.cmd, load(r.file), o);
    c.expect(a.exit_code == 0, std::string(r.cmd) + " " + r.file + " exited " + std::to_string(a.exit_code));
    c.expect(render(a.output) == render(b.output), std::string(r.cmd) + " " + r.file + " differs between runs");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"mixed volumes", mixed_volumes},
      {"fills and essential subsets", fills_and_essential_subsets},
      {"degenerate pair end to end", degenerate_pair_end_to_end},
      {"bilinear u-resultant", bilinear_u_resultant},
      {"twisted Chow form", twisted_chow},
      {"projection operator properties", projection_operator_properties},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << "\n";
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
