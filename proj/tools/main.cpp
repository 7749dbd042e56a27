#include <iostream>

#include "CLI11.hpp"
#include "ecj/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Existential closedness checks for the j-function and exp"};
  app.require_subcommand(1);
  ecj::CommandRequest req;

  struct Spec {
    const char* name;
    const char* help;
    std::vector<const char*> inputs;
  };
  const std::vector<Spec> specs = {
      {"check-broad", "J-broadness (or j-broadness) of a variety", {"variety"}},
      {"check-free", "J-freeness up to level --nmax", {"variety"}},
      {"check-rotund", "rotundity of an exp variety up to entries --bound", {"variety"}},
      {"check-singular", "singular-locus hypothesis", {"variety"}},
      {"construct", "extend the base derivation to a point of the variety", {"variety"}},
      {"construct-nonconstant", "construction over the constants with every coordinate moving", {"variety"}},
      {"construct-multi", "one derivation per base parameter", {"variety"}},
      {"verify-witness", "check a witness against a variety", {"variety", "witness"}},
      {"verify-as-j", "Ax-Schanuel inequality for j on a witness", {"witness"}},
      {"verify-as-exp", "Ax-Schanuel inequality for exp on a witness", {"witness"}},
      {"reduce-fiber", "fiber over a point of a block with a constant coordinate (--block, --point)", {"variety"}},
      {"reduce-mobius", "remove a modularly related block (--block, --partner, --level)", {"variety"}},
      {"lift", "lift a witness on a reduction target back to its source", {"certificate", "witness"}},
      {"series-verify-ode", "check the j differential equation on q-expansions through --order", {}},
      {"series-modpoly", "modular polynomial of --level, checked through --order", {}},
      {"lift-j-to-J", "model j variety to model J", {"variety"}},
  };

  std::vector<std::string> inputs[16];
  std::string base, output, point;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    CLI::App* sub = app.add_subcommand(specs[s].name, specs[s].help);
    inputs[s].reserve(specs[s].inputs.size());  // options bind element addresses
    for (const char* in : specs[s].inputs) {
      inputs[s].emplace_back();
      sub->add_option(in, inputs[s].back(), std::string(in) + " file")->required()->check(CLI::ExistingFile);
    }
    sub->add_option("--nmax", req.nmax, "modular level bound")->capture_default_str();
    sub->add_option("--bound", req.bound, "rotundity entry bound")->capture_default_str();
    sub->add_option("--order", req.order, "q-expansion order")->capture_default_str();
    sub->add_option("--base", base, "base field override, e.g. Q(t1,t2)");
    sub->add_option("-o,--output", output, "file for the produced artifact");
    sub->add_option("--block", req.block, "1-based block");
    sub->add_option("--partner", req.partner, "partner block of the modular relation");
    sub->add_option("--level", req.level, "modular level N");
    sub->add_option("--point", point, "fiber point a,b,b',b''");
    sub->final_callback([&, s] {
      req.subcommand = specs[s].name;
      req.inputs = inputs[s];
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ecj::kExitInput;
  }
  if (!base.empty()) req.base = base;
  if (!output.empty()) req.output = output;
  if (!point.empty()) req.point = point;
  return ecj::run(req, std::cout);
}
