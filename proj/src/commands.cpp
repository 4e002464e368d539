#include "toricgcp/commands.hpp"

#include <sstream>

#include "toricgcp/errors.hpp"
#include "toricgcp/fill.hpp"
#include "toricgcp/gcp.hpp"
#include "toricgcp/resultant.hpp"
#include "toricgcp/rootfind.hpp"
#include "toricgcp/subdivision.hpp"

namespace toricgcp {

namespace {

using io::json;

struct Context {
  io::Problem pb;
  ResultantOptions ropts;
  const RunOptions& opts;
};

SupportTuple declared_or_inferred(const io::Problem& pb, std::size_t count) {
  if (pb.polys.size() != count) {
    throw SchemaError("expected " + std::to_string(count) + " polynomials, got " + std::to_string(pb.polys.size()));
  }
  if (pb.supports) return *pb.supports;
  SupportTuple out;
  for (const auto& f : pb.polys) out.push_back(support_of(f, pb.n));
  return out;
}

Support resolve_A(const Context& c, const SupportTuple& E) {
  json a = c.opts.A;
  if (a.is_null() && c.pb.A) a = *c.pb.A;
  if (a.is_null()) return standard_simplex(c.pb.n);
  if (a.is_string()) {
    const auto mode = a.get<std::string>();
    if (mode == "simplex") return standard_simplex(c.pb.n);
    if (mode == "cube") return unit_cube(c.pb.n);
    if (mode == "auto") {
      const Support P = hull_vertices(minkowski_sum(E));
      auto A = twisted_chow_support(P);
      if (!A) throw PreconditionError("no catalog simplex product is compatible with the Newton polytope");
      return *A;
    }
    throw SchemaError("A: expected simplex, cube, auto or a point list");
  }
  Support A = io::support_from_json(a, c.pb.n);
  if (A.size() < 2) throw PreconditionError("A needs at least two points");
  return A;
}

std::optional<SupportTuple> resolve_fill(const Context& c) {
  const json& f = c.opts.fill;
  if (f.is_string()) {
    if (f.get<std::string>() == "auto") return std::nullopt;
    throw SchemaError("fill: expected auto or a support tuple");
  }
  if (!f.is_null()) {
    auto D = io::tuple_from_json(f, c.pb.n);
    if (D.size() != c.pb.n) throw SchemaError("fill: expected n supports");
    return D;
  }
  return c.pb.fill;
}

json tags_json(const Support& A) {
  const auto names = tag_names(A.size());
  json out = json::array();
  for (std::size_t j = 0; j < A.size(); ++j) out.push_back({{"name", names[j]}, {"point", A.points()[j]}});
  return out;
}

json cert_json(const FillCertificate& cert) {
  json w = json::array();
  for (const auto& fw : cert.witnesses) w.push_back({{"w", fw.w}, {"essential", fw.essential}});
  json out{{"fills", cert.fills}, {"D", io::tuple_to_json(cert.D)}, {"E", io::tuple_to_json(cert.E)}, {"witnesses", w}};
  out["failing_w"] = cert.failing_w ? json(*cert.failing_w) : json(nullptr);
  out["irreducible"] = cert.irreducible ? json(*cert.irreducible) : json(nullptr);
  return out;
}

json factors_json(const std::vector<LinearFactor>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back({{"coeffs", io::elems_to_json(f.coeffs)}, {"multiplicity", f.multiplicity}});
  return out;
}

json root_json(const RecoveredRoot& r) {
  json rj{{"projective", io::elems_to_json(r.projective)}, {"status", r.status}, {"multiplicity", r.multiplicity}};
  rj["torus"] = r.torus ? io::elems_to_json(*r.torus) : json(nullptr);
  rj["residuals"] = r.residuals ? io::elems_to_json(*r.residuals) : json(nullptr);
  return rj;
}

std::string join_points(const Support& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << "(";
    for (std::size_t k = 0; k < s.points()[i].size(); ++k) os << (k ? "," : "") << s.points()[i][k];
    os << ")";
  }
  os << "}";
  return os.str();
}

json cmd_mixedvol(Context& c, std::string& summary) {
  const SupportTuple E = declared_or_inferred(c.pb, c.pb.n);
  const auto sub = mixed_subdivision(E, c.ropts.seed);
  std::int64_t mv = 0;
  json cells = json::array();
  for (const auto& cell : sub.cells) {
    if (!cell.is_mixed()) continue;
    mv += cell.det.get_si();
    cells.push_back({{"summands", io::tuple_to_json(cell.summands)}, {"volume", cell.det.get_str()}});
  }
  summary = "mixed volume " + std::to_string(mv) + " from " + std::to_string(cells.size()) + " mixed cells";
  return {{"mixed_volume", mv}, {"mixed_cells", cells}, {"supports", io::tuple_to_json(E)},
          {"seed", c.ropts.seed}, {"attempts", sub.attempts}};
}

json cmd_fill(Context& c, std::string& summary) {
  const SupportTuple E = declared_or_inferred(c.pb, c.pb.n);
  SupportTuple D;
  std::string origin;
  if (!c.opts.candidate.is_null()) {
    const json& cj = c.opts.candidate.is_object() && c.opts.candidate.contains("fill") ? c.opts.candidate.at("fill")
                                                                                      : c.opts.candidate;
    D = io::tuple_from_json(cj, c.pb.n);
    origin = "candidate";
  } else if (auto f = resolve_fill(c)) {
    D = *f;
    origin = "given";
  } else {
    D = irreducible_fill(E);
    origin = "computed";
  }
  if (D.size() != c.pb.n) throw SchemaError("fill: expected n supports");
  const auto cert = fills(D, E, true);
  json out = cert_json(cert);
  out["origin"] = origin;
  summary = std::string(cert.fills ? "D fills E" : "D does not fill E") + " (" + origin + ")";
  if (cert.irreducible) summary += *cert.irreducible ? ", irreducible" : ", reducible";
  return out;
}

json cmd_resultant(Context& c, std::string& summary) {
  const SupportTuple S = declared_or_inferred(c.pb, c.pb.n + 1);
  const auto r = toric_resultant(S, c.pb.polys, c.ropts);
  summary = r.poly.is_zero() ? "resultant vanishes identically"
                             : "resultant with " + std::to_string(r.poly.size()) + " terms";
  summary += ", " + std::to_string(r.rows) + " rows";
  return {{"resultant", io::poly_to_json(r.poly)}, {"vanishes", r.poly.is_zero()}, {"scalar", r.scalar.str()},
          {"rows", r.rows}, {"attempts", r.attempts}, {"perturbed", r.perturbed},
          {"supports", io::tuple_to_json(r.supports)}, {"seed", c.ropts.seed}};
}

json gcp_json(const GcpResult& g) {
  json out{{"k", g.k},
           {"mixed_volume", g.mixed_volume},
           {"s_degree", g.s_degree},
           {"expected_s_degree", g.expected_s_degree},
           {"H_terms", g.H_terms},
           {"rows", g.rows},
           {"attempts", g.attempts},
           {"perturbed", g.perturbed},
           {"F_A", io::poly_to_json(g.F_A)},
           {"F_A_scalar", g.F_A_scalar.str()},
           {"Ch_A", io::poly_to_json(g.Ch_A)},
           {"chow_vanishes", g.Ch_A.is_zero()}};
  if (g.H) out["H"] = io::poly_to_json(*g.H);
  return out;
}

json cmd_gcp(Context& c, std::string& summary) {
  const SupportTuple E = declared_or_inferred(c.pb, c.pb.n);
  const Support A = resolve_A(c, E);
  const auto given = resolve_fill(c);
  const SupportTuple D = given ? *given : irreducible_fill(E);
  const auto g = gcp(GcpProblem{c.pb.polys, E, A, D}, c.ropts, c.opts.emit_H);
  json out = gcp_json(g);
  out["E"] = io::tuple_to_json(E);
  out["D"] = io::tuple_to_json(D);
  out["A"] = io::support_to_json(A);
  out["tags"] = tags_json(A);
  out["seed"] = c.ropts.seed;
  summary = "k=" + std::to_string(g.k) + ", M(E)=" + std::to_string(g.mixed_volume) + ", deg_s H=" +
            std::to_string(g.s_degree) + ", " + std::to_string(g.H_terms) + " terms in H";
  return out;
}

json cmd_chow(Context& c, std::string& summary) {
  const SupportTuple E = declared_or_inferred(c.pb, c.pb.n);
  const Support A = resolve_A(c, E);
  const MultiPoly ch = chow_form(c.pb.polys, E, A, c.ropts);
  json out{{"chow_form", io::poly_to_json(ch)}, {"vanishes", ch.is_zero()}, {"A", io::support_to_json(A)},
           {"tags", tags_json(A)}, {"E", io::tuple_to_json(E)}, {"seed", c.ropts.seed}};
  // Split only a form in the tags alone; parameters would need a bigger field.
  if (!ch.is_zero() && ch.nvars() == A.size()) {
    const auto sp = split_linear(ch, c.ropts.seed, c.ropts.max_retries);
    json roots = json::array();
    for (const auto& r : roots_from_factors(sp.factors, A, &c.pb.polys)) roots.push_back(root_json(r));
    out["factors"] = factors_json(sp.factors);
    out["roots"] = roots;
    out["remainder"] = io::poly_to_json(sp.remainder);
  }
  summary = ch.is_zero() ? "Chow form vanishes identically for A=" + join_points(A)
                         : "Chow form with " + std::to_string(ch.size()) + " terms for A=" + join_points(A);
  return out;
}

json cmd_solve(Context& c, std::string& summary) {
  SolveInput in{c.pb.polys, std::nullopt, std::nullopt, std::nullopt};
  const SupportTuple E = declared_or_inferred(c.pb, c.pb.n);
  in.E = E;
  in.A = resolve_A(c, E);
  in.D = resolve_fill(c);
  const auto rep = solve(in, c.ropts, c.opts.emit_H);

  const json factors = factors_json(rep.split.factors);
  json roots = json::array();
  std::size_t torus = 0;
  for (const auto& r : rep.roots) {
    if (r.status == "torus-root") ++torus;
    roots.push_back(root_json(r));
  }
  const int rem_degree = rep.split.remainder.total_degree();
  json out{{"mixed_volume", rep.mixed_volume},
           {"k", rep.k},
           {"chow_vanishes", rep.chow_vanishes},
           {"factors", factors},
           {"roots", roots},
           {"remainder", io::poly_to_json(rep.split.remainder)},
           {"remainder_degree", rem_degree},
           {"scalar", rep.split.scalar.str()},
           {"F_A", io::poly_to_json(rep.gcp.F_A)},
           {"E", io::tuple_to_json(rep.E)},
           {"D", io::tuple_to_json(rep.D)},
           {"A", io::support_to_json(rep.A)},
           {"tags", tags_json(rep.A)},
           {"field", io::field_to_json(c.pb.field)},
           {"seed", c.ropts.seed},
           {"attempts", rep.gcp.attempts},
           {"lines", rep.split.lines}};
  if (rep.gcp.H) out["H"] = io::poly_to_json(*rep.gcp.H);
  summary = "M(E)=" + std::to_string(rep.mixed_volume) + ", k=" + std::to_string(rep.k) + ", " +
            std::to_string(factors.size()) + " linear factors, " + std::to_string(torus) + " torus roots";
  if (rem_degree > 0) {
    summary += "; a factor of degree " + std::to_string(rem_degree) +
               " has no linear factors over " + c.pb.field.name() + ", try --field gfp:P for a prime P";
  }
  return out;
}

}  // namespace

std::string render(const io::json& output) { return output.dump(2) + "\n"; }

RunResult run_command(const std::string& name, const io::json& problem, const RunOptions& opts) {
  RunResult res;
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    res.exit_code = code;
    res.output = json{{"error", kind}, {"message", msg}};
    res.summary = std::string(kind) + " error: " + msg;
  };
  try {
    std::optional<Field> field;
    if (opts.field) field = io::parse_field(*opts.field);
    Context c{io::parse_problem(problem, field), {}, opts};
    c.ropts.seed = opts.seed ? *opts.seed : c.pb.seed;
    c.ropts.max_retries = opts.max_retries;
    c.ropts.cap = opts.cap;
    if (opts.max_retries < 1) throw SchemaError("max-retries must be positive");

    json out;
    if (name == "mixedvol") out = cmd_mixedvol(c, res.summary);
    else if (name == "fill") out = cmd_fill(c, res.summary);
    else if (name == "resultant") out = cmd_resultant(c, res.summary);
    else if (name == "gcp") out = cmd_gcp(c, res.summary);
    else if (name == "chow") out = cmd_chow(c, res.summary);
    else if (name == "solve") out = cmd_solve(c, res.summary);
    else throw SchemaError("unknown subcommand '" + name + "'");
    out["command"] = name;
    res.output = std::move(out);
  } catch (const SchemaError& e) {
    fail(1, "schema", e.what());
  } catch (const json::exception& e) {
    fail(1, "schema", e.what());
  } catch (const PreconditionError& e) {
    fail(2, "precondition", e.what());
  } catch (const RetryExhausted& e) {
    fail(3, "retries", e.what());
  } catch (const std::exception& e) {
    fail(4, "internal", e.what());
  }
  return res;
}

}  // namespace toricgcp
