// evac: simulate, sweep and check treasure evacuation on the unit disk.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "evac/cli.hpp"

namespace {

using evac::RunSpec;

void add_output(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("-o,--output", spec.output, "Write the result to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-robot treasure evacuation on the unit disk"};
  app.require_subcommand(1);

  RunSpec spec;
  std::string model = "wireless";
  std::string alpha = "0";
  std::string exit_angle = "0";
  std::string orient = "+1";
  std::string alphas;
  std::string format = "csv";

  auto* sim = app.add_subcommand("simulate", "Run one configuration and print its evacuation time");
  sim->add_option("--model", model, "wireless or f2f")->required();
  sim->add_option("--alpha", alpha, "Arc distance between treasure and exit, in [0, pi]")->required();
  sim->add_option("--exit", exit_angle, "Exit angle in radians (expressions such as 2*pi/3 allowed)")->required();
  sim->add_option("--orient", orient, "Treasure lies at exit + orient*alpha (+1 or -1)");
  sim->add_option("--dt", spec.dt, "Also run the time-stepped reference with this step");
  sim->add_option("--format", format, "Print the JSON trace to stdout with 'json'");
  add_output(sim, spec);

  auto* swp = app.add_subcommand("sweep", "Worst case over exit placements for each alpha");
  swp->add_option("--model", model, "wireless or f2f")->required();
  swp->add_option("--alphas", alphas, "List or range lo:hi:n of alpha values")->required();
  swp->add_option("--grid", spec.grid_n, "Exit-angle grid size");
  swp->add_option("--refine", spec.refine_iters, "Golden-section refinement steps");
  add_output(swp, spec);

  auto* bnd = app.add_subcommand("bounds", "Closed-form bound curves");
  bnd->add_option("--alphas", alphas, "List or range lo:hi:n of alpha values")->required();
  bnd->add_flag("--gap", spec.gap, "Add the ub_gap column");
  add_output(bnd, spec);

  auto* lem = app.add_subcommand("lemmas", "Check the trigonometric inequalities on dense grids");
  spec.grid_n = 8192;
  lem->add_option("--grid", spec.grid_n, "Points per alpha axis");
  add_output(lem, spec);

  auto* dep = app.add_subcommand("deploy", "Pair starting points for n robots");
  dep->add_option("--robots", spec.robots, "Even number of robots")->required();
  add_output(dep, spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) {
      spec.command = RunSpec::Command::simulate;
      spec.model = evac::parse_model(model);
      spec.alpha = evac::AngleExpr::parse(alpha);
      spec.exit_angle = evac::AngleExpr::parse(exit_angle);
      spec.orientation = evac::parse_orientation(orient);
      if (format == "json") {
        spec.format = RunSpec::Format::json;
      } else if (format != "csv") {
        throw std::invalid_argument("format must be csv or json");
      }
    } else if (swp->parsed()) {
      spec.command = RunSpec::Command::sweep;
      spec.model = evac::parse_model(model);
      spec.alphas = evac::parse_alpha_list(alphas);
    } else if (bnd->parsed()) {
      spec.command = RunSpec::Command::bounds;
      spec.alphas = evac::parse_alpha_list(alphas);
    } else if (lem->parsed()) {
      spec.command = RunSpec::Command::lemmas;
    } else {
      spec.command = RunSpec::Command::deploy;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  }
  return evac::run(spec, std::cout, std::cerr);
}
