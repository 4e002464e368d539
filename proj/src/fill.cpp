#include "toricgcp/fill.hpp"

#include <algorithm>

#include "toricgcp/errors.hpp"
#include "toricgcp/subdivision.hpp"

namespace toricgcp {

namespace {

// Dimension of sum_{j in J} C_j: rank of the union of difference sets.
int sum_dim(const SupportTuple& c, const IndexSet& j) {
  linalg::Matrix rows;
  for (auto i : j) {
    const auto& pts = c[i].points();
    for (std::size_t k = 1; k < pts.size(); ++k) {
      RationalVector r;
      for (std::size_t d = 0; d < pts[k].size(); ++d) r.emplace_back(pts[k][d] - pts[0][d]);
      rows.push_back(std::move(r));
    }
  }
  return rows.empty() ? 0 : linalg::rank(std::move(rows));
}

std::vector<IndexSet> all_subsets(const IndexSet& universe) {
  std::vector<IndexSet> out;
  const std::size_t m = universe.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) s.push_back(universe[i]);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

struct FaceData {
  Point w;
  SupportTuple face;
  std::vector<IndexSet> essential;
};

std::vector<FaceData> face_data(const SupportTuple& E) {
  std::vector<FaceData> out;
  for (const auto& w : normal_face_reps(E)) {
    FaceData fd;
    fd.w = w;
    for (const auto& e : E) fd.face.push_back(face(e, w));
    fd.essential = essential_subsets(fd.face);
    out.push_back(std::move(fd));
  }
  return out;
}

void check_inputs(const SupportTuple& D, const SupportTuple& E) {
  if (D.size() != E.size()) throw PreconditionError("D and E have different lengths");
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (D[i].empty()) throw PreconditionError("empty entry in D");
    if (!D[i].is_subset_of(E[i])) throw PreconditionError("D_i is not contained in E_i");
  }
}

void check_positive(const SupportTuple& E) {
  if (E.empty() || E.size() != E.front().ambient_dim()) {
    throw PreconditionError("E must hold n supports in Z^n");
  }
  for (const auto& e : E) {
    if (e.empty()) throw PreconditionError("empty entry in E");
  }
  if (mixed_volume(E) == 0) throw PreconditionError("unfilled hypothesis M(E)>0 violated");
}

// Witness for one face, if any.
std::optional<IndexSet> witness(const SupportTuple& D, const FaceData& fd) {
  IndexSet supp;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (!D[i].intersect(fd.face[i]).empty()) supp.push_back(i);
  }
  for (const auto& j : fd.essential) {
    if (std::includes(supp.begin(), supp.end(), j.begin(), j.end())) return j;
  }
  return std::nullopt;
}

bool fills_faces(const SupportTuple& D, const std::vector<FaceData>& faces) {
  return std::all_of(faces.begin(), faces.end(), [&](const FaceData& fd) { return witness(D, fd).has_value(); });
}

bool irreducible_given(const SupportTuple& D, const std::vector<FaceData>& faces) {
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (D[i].size() == 1) continue;
    for (const auto& p : D[i].points()) {
      SupportTuple trial = D;
      trial[i] = D[i].without(p);
      if (fills_faces(trial, faces)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_essential(const SupportTuple& c, const IndexSet& j) {
  if (j.empty()) throw PreconditionError("empty index set");
  for (auto i : j) {
    if (i >= c.size()) throw PreconditionError("index out of range");
  }
  IndexSet js = j;
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  for (auto i : js) {
    if (c[i].empty()) return false;
  }
  if (sum_dim(c, js) != static_cast<int>(js.size()) - 1) return false;
  for (const auto& sub : all_subsets(js)) {
    if (sub.size() == js.size()) continue;
    if (sum_dim(c, sub) < static_cast<int>(sub.size())) return false;
  }
  return true;
}

std::vector<IndexSet> essential_subsets(const SupportTuple& c) {
  IndexSet universe;
  for (std::size_t i = 0; i < c.size(); ++i) universe.push_back(i);
  std::vector<IndexSet> out;
  for (const auto& j : all_subsets(universe)) {
    if (is_essential(c, j)) out.push_back(j);
  }
  return out;
}

FillCertificate fills(const SupportTuple& D, const SupportTuple& E, bool check_irreducible) {
  check_inputs(D, E);
  check_positive(E);
  const auto faces = face_data(E);
  FillCertificate cert;
  cert.D = D;
  cert.E = E;
  cert.fills = true;
  for (const auto& fd : faces) {
    auto j = witness(D, fd);
    if (!j) {
      cert.fills = false;
      cert.failing_w = fd.w;
      cert.witnesses.clear();
      break;
    }
    cert.witnesses.push_back({fd.w, *j});
  }
  if (check_irreducible && cert.fills) cert.irreducible = irreducible_given(D, faces);
  return cert;
}

SupportTuple irreducible_fill(const SupportTuple& E) {
  check_inputs(E, E);
  check_positive(E);
  const auto faces = face_data(E);
  SupportTuple D = E;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < D.size(); ++i) {
      const auto snapshot = D[i].points();
      for (const auto& p : snapshot) {
        if (D[i].size() == 1) break;
        SupportTuple trial = D;
        trial[i] = D[i].without(p);
        if (fills_faces(trial, faces)) {
          D = std::move(trial);
          changed = true;
        }
      }
    }
  }
  return D;
}

}  // namespace toricgcp
