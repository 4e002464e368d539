#include "toricgcp/gcp.hpp"

#include <algorithm>
#include <functional>

#include "toricgcp/errors.hpp"
#include "toricgcp/fill.hpp"
#include "toricgcp/subdivision.hpp"

namespace toricgcp {

namespace {

std::string fresh(const std::vector<std::string>& taken, std::string name) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
  return name;
}

std::size_t torus_dim(const std::vector<MultiPoly>& F) {
  if (F.empty()) throw PreconditionError("empty system");
  const std::size_t n = F.size();
  for (const auto& f : F) {
    if (f.field() != F.front().field() || !same_vars(f.vars(), F.front().vars())) {
      throw PreconditionError("incompatible rings");
    }
  }
  if (F.front().nvars() < n) throw PreconditionError("fewer variables than equations");
  return n;
}

void check_supports(const std::vector<MultiPoly>& F, const SupportTuple& E, std::size_t n) {
  if (E.size() != n) throw PreconditionError("E must have one support per equation");
  for (std::size_t i = 0; i < n; ++i) {
    if (E[i].ambient_dim() != n) throw PreconditionError("support has wrong dimension");
    if (!support_of(F[i], n).is_subset_of(E[i])) {
      throw PreconditionError("polynomial has a monomial outside its declared support");
    }
  }
}

// Extends vars by s (optional) and the tags; returns the new list and the
// index of s (or npos) and of the first tag.
struct Extended {
  VarList vars;
  std::size_t s;
  std::size_t first_tag;
};

Extended extend_vars(const VarList& base, bool with_s, std::size_t tags) {
  std::vector<std::string> names(base->begin(), base->end());
  std::size_t s = std::string::npos;
  if (with_s) {
    s = names.size();
    names.push_back(fresh(names, "s"));
  }
  const std::size_t first = names.size();
  for (const auto& t : tag_names(tags)) names.push_back(fresh(names, t));
  return {make_vars(std::move(names)), s, first};
}

std::vector<std::size_t> range(std::size_t from, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + i;
  return out;
}

// Product of one simplex per block; orientation -1 reflects the block's
// simplex through the centre of the block's unit cube.
Support block_product(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks,
                      const std::vector<int>& orient) {
  std::vector<Point> acc{Point(n, 0)};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<Point> verts;
    Point corner(n, 0);
    for (auto j : blocks[b]) corner[j] = 1;
    Point origin(n, 0);
    verts.push_back(orient[b] > 0 ? origin : corner);
    for (auto j : blocks[b]) {
      Point v = orient[b] > 0 ? origin : corner;
      v[j] = orient[b] > 0 ? 1 : 0;
      verts.push_back(v);
    }
    std::vector<Point> next;
    for (const auto& a : acc) {
      for (const auto& v : verts) {
        Point c(n);
        for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + v[k];
        next.push_back(std::move(c));
      }
    }
    acc = std::move(next);
  }
  return Support(n, std::move(acc));
}

std::vector<std::vector<std::vector<std::size_t>>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<std::vector<std::size_t>> blocks(used);
      for (std::size_t j = 0; j < n; ++j) blocks[label[j]].push_back(j);
      out.push_back(std::move(blocks));
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      label[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  if (n > 0) rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace

std::vector<std::string> tag_names(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back("u" + std::to_string(i));
  return out;
}

std::vector<MultiPoly> perturb_system(const std::vector<MultiPoly>& F, const SupportTuple& D, const SupportTuple& E) {
  const std::size_t n = torus_dim(F);
  check_supports(F, E, n);
  if (D.size() != n) throw PreconditionError("D must have one support per equation");
  for (std::size_t i = 0; i < n; ++i) {
    if (D[i].empty() || !D[i].is_subset_of(E[i])) throw PreconditionError("D_i is not contained in E_i");
  }
  const auto ext = extend_vars(F.front().vars(), true, 0);
  const Field field = F.front().field();
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly f = F[i].embed(ext.vars);
    for (const auto& e : D[i].points()) {
      Exponent ex(ext.vars->size(), 0);
      for (std::size_t k = 0; k < n; ++k) ex[k] = static_cast<std::uint32_t>(e[k]);
      ex[ext.s] = 1;
      f -= MultiPoly::monomial(field, ext.vars, ex, FieldElem(field, 1L));
    }
    out.push_back(std::move(f));
  }
  return out;
}

MultiPoly generic_form(Field field, const VarList& vars, std::size_t n, const Support& A, std::size_t first_tag) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < A.size(); ++j) {
    Exponent ex(vars->size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (A.points()[j][k] < 0) throw PreconditionError("A must lie in the nonnegative orthant");
      ex[k] = static_cast<std::uint32_t>(A.points()[j][k]);
    }
    ex[first_tag + j] = 1;
    terms.push_back({std::move(ex), FieldElem(field, 1L)});
  }
  return MultiPoly::from_terms(field, vars, std::move(terms));
}

GcpResult gcp(const GcpProblem& pb, const ResultantOptions& opts, bool keep_H) {
  const std::size_t n = torus_dim(pb.F);
  check_supports(pb.F, pb.E, n);
  if (pb.A.size() < 2) throw PreconditionError("A needs at least two points");
  if (pb.A.ambient_dim() != n) throw PreconditionError("A has wrong dimension");
  const std::int64_t M = mixed_volume(pb.E, opts.seed);
  if (M == 0) throw PreconditionError("unfilled hypothesis M(E)>0 violated");
  if (!fills(pb.D, pb.E).fills) throw PreconditionError("D does not fill E");

  const Field field = pb.F.front().field();
  auto perturbed = perturb_system(pb.F, pb.D, pb.E);
  const VarList with_s = perturbed.front().vars();
  const auto ext = extend_vars(with_s, false, pb.A.size());
  std::vector<MultiPoly> polys;
  for (auto& f : perturbed) polys.push_back(f.embed(ext.vars));
  polys.push_back(generic_form(field, ext.vars, n, pb.A, ext.first_tag));

  SupportTuple supports = pb.E;
  supports.push_back(pb.A);
  ResultantOptions ro = opts;
  const std::size_t s_param = with_s->size() - 1 - n;
  const auto tags = range(ext.first_tag - n, pb.A.size());
  ro.homogeneous.push_back({tags, static_cast<int>(M)});
  const ResultantValue rv = toric_resultant(supports, polys, ro);
  if (rv.poly.is_zero()) throw Error("toric GCP vanished identically");
  const MultiPoly& H = rv.poly;

  GcpResult out{std::nullopt, 0, H, FieldElem(field, 1L), H, M, 0, 0, H.size(), rv.rows, rv.attempts, rv.perturbed};
  out.k = H.min_degree(s_param);
  out.s_degree = H.degree(s_param);
  const MultiPoly fa = H.coefficient(s_param, static_cast<std::uint32_t>(out.k));
  std::vector<std::string> keep_names;
  for (std::size_t v = 0; v < H.nvars(); ++v) {
    if (v != s_param) keep_names.push_back((*H.vars())[v]);
  }
  const VarList out_vars = make_vars(keep_names);
  auto nf = make_primitive(fa.embed(out_vars));
  out.F_A = std::move(nf.poly);
  out.F_A_scalar = nf.scalar;
  const MultiPoly ch = H.coefficient(s_param, 0).embed(out_vars);
  out.Ch_A = ch.is_zero() ? ch : make_primitive(ch).poly;
  for (std::size_t i = 0; i < n; ++i) {
    SupportTuple t = pb.E;
    t[i] = pb.A;
    out.expected_s_degree += static_cast<int>(mixed_volume(t, opts.seed));
  }
  if (keep_H) out.H = H;
  const auto out_tags = range(out_vars->size() - pb.A.size(), pb.A.size());
  if (!out.F_A.is_homogeneous_in(out_tags) || out.F_A.degree_in(out_tags) != M) {
    throw Error("F_A is not homogeneous of degree M(E)");
  }
  return out;
}

MultiPoly chow_form(const std::vector<MultiPoly>& F, const SupportTuple& E, const Support& A,
                    const ResultantOptions& opts) {
  const std::size_t n = torus_dim(F);
  check_supports(F, E, n);
  if (A.size() < 2) throw PreconditionError("A needs at least two points");
  if (A.ambient_dim() != n) throw PreconditionError("A has wrong dimension");
  const Field field = F.front().field();
  const auto ext = extend_vars(F.front().vars(), false, A.size());
  std::vector<MultiPoly> polys;
  for (const auto& f : F) polys.push_back(f.embed(ext.vars));
  polys.push_back(generic_form(field, ext.vars, n, A, ext.first_tag));
  SupportTuple supports = E;
  supports.push_back(A);
  ResultantOptions ro = opts;
  const std::int64_t M = mixed_volume(E, opts.seed);
  if (M > 0) ro.homogeneous.push_back({range(ext.first_tag - n, A.size()), static_cast<int>(M)});
  return toric_resultant(supports, polys, ro).poly;
}

bool is_compatible(const Support& P, const Support& Q) {
  const std::size_t n = P.ambient_dim();
  if (Q.ambient_dim() != n) throw PreconditionError("supports live in different dimensions");
  if (Q.empty()) throw PreconditionError("empty support");
  const Polytope poly = Polytope::hull(n, P.points());
  for (std::size_t v = 0; v < poly.vertices().size(); ++v) {
    Support common = Q;
    for (const auto& f : poly.facets()) {
      if (!std::binary_search(f.vertices.begin(), f.vertices.end(), v)) continue;
      common = common.intersect(face(Q, f.normal));
      if (common.empty()) return false;
    }
  }
  return true;
}

std::vector<Support> simplex_product_catalog(std::size_t n) {
  std::vector<Support> out;
  auto add = [&](Support s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  add(block_product(n, {all}, {1}));
  add(block_product(n, {all}, {-1}));
  std::vector<std::vector<std::size_t>> singles;
  for (std::size_t j = 0; j < n; ++j) singles.push_back({j});
  add(block_product(n, singles, std::vector<int>(n, 1)));
  for (const auto& blocks : set_partitions(n)) {
    const std::size_t b = blocks.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << b); ++mask) {
      std::vector<int> orient(b);
      for (std::size_t i = 0; i < b; ++i) orient[i] = (mask >> i & 1) ? -1 : 1;
      add(block_product(n, blocks, orient));
    }
  }
  return out;
}

std::optional<Support> twisted_chow_support(const Support& P) {
  for (const auto& A : simplex_product_catalog(P.ambient_dim())) {
    if (is_compatible(P, A)) return A;
  }
  return std::nullopt;
}

Support standard_simplex(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  return block_product(n, {all}, {1});
}

Support unit_cube(std::size_t n) {
  std::vector<std::vector<std::size_t>> singles;
  for (std::size_t j = 0; j < n; ++j) singles.push_back({j});
  return block_product(n, singles, std::vector<int>(n, 1));
}

}  // namespace toricgcp
