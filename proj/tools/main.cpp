#include <CLI11.hpp>

#include <iostream>

#include "jumploci/cli.hpp"

using namespace jumploci;

namespace {

void add_common(CLI::App* sub, CommandRequest& req, std::string& format) {
  sub->add_option("--q", req.q, "Point field size (prime power); reduces Q inputs mod its characteristic");
  sub->add_option("--ext", req.ext, "Extension degree e: points are enumerated over F_{q^e}")->check(CLI::PositiveNumber);
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  sub->add_option("--max-degree", req.limits.max_degree, "Groebner degree limit");
  sub->add_option("--max-vars", req.limits.max_vars, "Groebner variable limit");
  sub->add_option("--max-points", req.enumeration.max_points, "Enumeration limit");
  sub->add_flag("--timing", req.timing, "Add wall-clock timing to the report");
}

void add_input(CLI::App* sub, std::map<std::string, std::string>& paths, const std::string& role, bool required) {
  auto* opt = sub->add_option("--" + role, paths[role], role + " document");
  if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homology jump loci, support and resonance varieties"};
  app.require_subcommand(1);
  CommandRequest req;
  std::string format = "text";
  std::map<std::string, std::string> paths;

  struct Spec {
    std::string name, help;
    std::vector<std::pair<std::string, bool>> inputs;
  };
  const std::vector<Spec> specs{
      {"resonance", "Resonance variety R^i_d of a cga", {{"cga", true}}},
      {"jumploci", "Jump locus V^i_d of a chain complex", {{"complex", true}}},
      {"supports", "Support variety W^i_d of a chain complex", {{"complex", true}}},
      {"e1", "First page E^1 from a cga and nu", {{"cga", true}, {"nu", false}, {"group", false}}},
      {"verify-cvres", "Compare V^i_d(E^1) with pulled-back resonance", {{"cga", true}, {"nu", false}}},
      {"finiteness", "Finiteness test over the resonance hypothesis",
       {{"cga", false}, {"presentation", false}, {"nu", false}}},
      {"alexander", "Alexander complex and invariant of a presentation", {{"presentation", true}, {"nu", false}}},
      {"charvar", "Characteristic variety of a presentation", {{"presentation", true}, {"nu", false}}},
      {"genres-experiment", "Sampling experiment on generic resonance vanishing", {}},
      {"validate", "Validate input documents",
       {{"cga", false}, {"complex", false}, {"presentation", false}, {"nu", false}, {"group", false}}},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    for (const auto& [role, required] : s.inputs) add_input(sub, paths, role, required);
    add_common(sub, req, format);
    if (s.name != "validate") {
      sub->add_option("--i", req.i, "Homological degree");
      sub->add_option("--d", req.d, "Depth");
    }
    if (s.name == "finiteness") sub->add_option("--k", req.k, "Top degree of the range 0..k");
    if (s.name == "jumploci" || s.name == "supports") sub->add_flag("--torus", req.torus, "Restrict to (F^x)^r");
    if (s.name == "supports" || s.name == "charvar")
      sub->add_flag("--compare-v", req.compare_v, "Also compare unions of V and W");
    if (s.name == "genres-experiment") {
      sub->add_option("--seed", req.seed, "Experiment seed");
      sub->add_option("--trials", req.trials, "Number of sampled algebras");
      sub->add_option("--shape", req.shape, "Shape 1,b1,b2")->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : exit_input;
  }
  for (auto* sub : app.get_subcommands()) req.command = sub->get_name();
  for (const auto& [role, path] : paths)
    if (!path.empty()) req.inputs[role] = path;

  const Report rep = run(req);
  std::cout << render(rep, format);
  if (rep.exit_code != exit_ok && rep.document.contains("error"))
    std::cerr << "error: " << rep.document["error"]["message"].get<std::string>() << "\n";
  return rep.exit_code;
}
