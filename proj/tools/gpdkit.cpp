#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace gpdkit::cli;
  CLI::App app{"Finite groupoids, group actions and orbit groupoids"};
  app.require_subcommand(1);
  app.fallthrough();

  Options     opts;
  std::size_t max_arrows = 0;
  app.add_option("--emit", opts.emit, "Write the result in the text format to this file");
  app.add_option("--base", opts.base, "Base vertex or object for vertex-group reports");
  app.add_option("--targets", opts.targets, "Groupoid file replacing the standard target family");
  app.add_option("--max-arrows", max_arrows, "Arrow limit (bounded by the compiled caps)");
  app.add_option("--name", opts.name, "Entity to use when the file has several");
  app.add_option("--action", opts.action, "Deck action for check-regular-cover");
  app.add_option("--morphism", opts.morphism, "Covering morphism for check-regular-cover");
  app.add_option("--arrows", opts.arrows, "Arrows generating a subgroupoid (repeatable)");
  app.add_option("--objects", opts.objects, "Object set for restrict-orbit (repeatable)");

  std::map<std::string, std::string> const about{
      {"semidirect", "Semidirect product of a groupoid action"},
      {"orbit", "Orbit groupoid of an action, or orbit presentation of a graph action"},
      {"quotient", "Quotient of a groupoid by the normal subgroupoid given by --arrows"},
      {"normal-closure", "Normal closure of --arrows, checked against the lattice oracle"},
      {"presentation", "Vertex-group presentations of a presented groupoid or graph action"},
      {"abelianize", "Abelian invariants of a presentation or group table"},
      {"symmetric-square", "Presentation of (H x H)/<(h, h^-1)> and its abelian invariants"},
      {"check-regular-cover", "Check that a regular covering is the orbit morphism of its deck group"},
      {"restrict-orbit", "Orbit groupoid of the full subgroupoid on --objects"},
      {"verify", "Run the built-in consistency checks over the action corpus"},
  };
  for (auto const& verb : verbs()) {
    auto const it  = about.find(verb);
    auto*      sub = app.add_subcommand(verb, it == about.end() ? "" : it->second);
    sub->add_option("file", opts.input, "Input file");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }
  if (app.count("--max-arrows") > 0) {
    opts.max_arrows = max_arrows;
  }
  auto const result = run_command(app.get_subcommands().front()->get_name(), opts);
  (result.exit_code == exit_ok || result.exit_code == exit_check ? std::cout : std::cerr)
      << result.output;
  return result.exit_code;
}
