#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toricgcp/commands.hpp"
#include "toricgcp/errors.hpp"
#include "toricgcp/fill.hpp"
#include "toricgcp/gcp.hpp"
#include "toricgcp/subdivision.hpp"

namespace py = pybind11;
using namespace toricgcp;

namespace {

using Points = std::vector<std::vector<std::int64_t>>;

Support to_support(const Points& pts) {
  if (pts.empty()) throw PreconditionError("empty support");
  return Support(pts.front().size(), pts);
}

SupportTuple to_tuple(const std::vector<Points>& t) {
  SupportTuple out;
  std::size_t n = 0;
  for (const auto& s : t) {
    if (!s.empty()) n = s.front().size();
  }
  for (const auto& s : t) out.push_back(Support(n, s));
  return out;
}

std::vector<Points> from_tuple(const SupportTuple& t) {
  std::vector<Points> out;
  for (const auto& s : t) out.push_back(s.points());
  return out;
}

py::tuple run(const std::string& command, const std::string& problem, const std::string& options) {
  RunOptions opts;
  const auto o = io::json::parse(options.empty() ? "{}" : options);
  if (o.contains("seed")) opts.seed = o.at("seed").get<std::uint64_t>();
  if (o.contains("field")) opts.field = o.at("field").get<std::string>();
  if (o.contains("max_retries")) opts.max_retries = o.at("max_retries").get<int>();
  if (o.contains("cap")) opts.cap = o.at("cap").get<std::size_t>();
  if (o.contains("emit_H")) opts.emit_H = o.at("emit_H").get<bool>();
  if (o.contains("A")) opts.A = o.at("A");
  if (o.contains("fill")) opts.fill = o.at("fill");
  if (o.contains("candidate")) opts.candidate = o.at("candidate");
  RunResult res;
  {
    py::gil_scoped_release nogil;
    res = run_command(command, io::json::parse(problem), opts);
  }
  return py::make_tuple(res.exit_code, res.output.dump(), res.summary);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toric generalized characteristic polynomials";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<RetryExhausted>(m, "RetryExhausted", PyExc_RuntimeError);

  m.def("run", &run, py::arg("command"), py::arg("problem"), py::arg("options") = "{}",
        "Run a subcommand on a problem (JSON text). Returns (exit_code, output_json, summary).");
  m.def(
      "mixed_volume", [](const std::vector<Points>& t, std::uint64_t seed) { return mixed_volume(to_tuple(t), seed); },
      py::arg("supports"), py::arg("seed") = 0);
  m.def(
      "mixed_volume_by_volumes", [](const std::vector<Points>& t) { return mixed_volume_by_volumes(to_tuple(t)); },
      py::arg("supports"));
  m.def(
      "fills", [](const std::vector<Points>& D, const std::vector<Points>& E) { return fills(to_tuple(D), to_tuple(E)).fills; },
      py::arg("D"), py::arg("E"));
  m.def(
      "irreducible_fill", [](const std::vector<Points>& E) { return from_tuple(irreducible_fill(to_tuple(E))); },
      py::arg("E"));
  m.def(
      "essential_subsets", [](const std::vector<Points>& C) { return essential_subsets(to_tuple(C)); },
      py::arg("C"));
  m.def(
      "is_compatible", [](const Points& P, const Points& Q) { return is_compatible(to_support(P), to_support(Q)); },
      py::arg("P"), py::arg("Q"));
}
