#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toricgcp/commands.hpp"

namespace {

using toricgcp::io::json;

// Inline JSON when it looks like JSON, otherwise a file path.
json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open " + arg);
  return json::parse(in);
}

json mode_or_json(const std::string& arg, std::initializer_list<const char*> modes) {
  if (arg.empty()) return nullptr;
  for (const char* m : modes) {
    if (arg == m) return arg;
  }
  return load_json(arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric generalized characteristic polynomials"};
  app.require_subcommand(1);

  std::string file, a_arg, fill_arg, candidate_arg, field;
  std::uint64_t seed = 0;
  toricgcp::RunOptions opts;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"mixedvol", "mixed volume of the supports"},
      {"fill", "fill certificate for a candidate D (default: a computed irreducible fill)"},
      {"resultant", "toric resultant of n+1 polynomials"},
      {"gcp", "toric generalized characteristic polynomial and F_A"},
      {"chow", "Chow form Res(F, g) for a given A"},
      {"solve", "gcp, linear factors of F_A and the roots they give"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("problem", file, "problem file (JSON)")->required();
    sub->add_option("--seed", seed, "random seed (default: the problem's seed, else 0)");
    sub->add_option("--field", field, "Q or gfp:P");
    sub->add_option("--max-retries", opts.max_retries, "retries for randomized stages")->check(CLI::PositiveNumber);
    sub->add_option("--cap", opts.cap, "largest resultant matrix allowed (rows)");
    if (std::string(name) == "gcp" || std::string(name) == "solve") {
      sub->add_flag("--emit-H", opts.emit_H, "include H in the output");
      sub->add_option("--fill", fill_arg, "auto, or a support tuple (inline JSON or file)");
    }
    if (std::string(name) == "gcp" || std::string(name) == "solve" || std::string(name) == "chow") {
      sub->add_option("--A", a_arg, "simplex, cube, auto, or a point list (inline JSON or file)");
    }
    if (std::string(name) == "fill") sub->add_option("--candidate", candidate_arg, "candidate D (inline JSON or file)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opts.seed = seed;
  if (!field.empty()) opts.field = field;

  toricgcp::RunResult res;
  try {
    opts.A = mode_or_json(a_arg, {"simplex", "cube", "auto"});
    opts.fill = mode_or_json(fill_arg, {"auto"});
    opts.candidate = mode_or_json(candidate_arg, {});
    res = toricgcp::run_command(name, load_json(file), opts);
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.output = json{{"error", "schema"}, {"message", e.what()}};
    res.summary = std::string("schema error: ") + e.what();
  }
  std::cout << toricgcp::render(res.output);
  std::cerr << name << ": " << res.summary << "\n";
  return res.exit_code;
}
