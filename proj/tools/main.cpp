#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "shamoduli/commands.hpp"

using namespace shamoduli;

int main(int argc, char** argv) {
  CLI::App app{"shamoduli: exact computations on moduli of line arrangements"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("SHAMODULI_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ParseError: SHAMODULI_SEED must be an unsigned integer\n";
      return 2;
    }
  }
  std::string weights, format = "json", m, I, mu, sha, out;
  const std::map<std::string, std::string> about{
      {"building-set", "index sets whose multiple points the weights destabilize"},
      {"strata", "boundary strata labels with codimensions and realizability"},
      {"blowup-order", "order in which the building set is blown up"},
      {"stable-replace", "replace a multiple point of a sha by a new component"},
      {"dual-graph", "dual graph of a sha"},
      {"cycle-class", "cycle class of a sha in the Chow ring"},
      {"exclusion", "Fourier-Motzkin certificate that the exclusion weight system is infeasible"},
      {"family-check", "evaluate the universal family identities at random points"},
      {"walls", "walls crossed between two weight vectors"},
      {"h-locus", "equations of the loci where given lines are concurrent"},
  };

  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--n", cfg.n, "number of marked lines");
    sub->add_option("--weights", weights, "comma separated rationals, e.g. 1,1,1/2");
    sub->add_option("--seed", cfg.seed, "seed for every generic choice");
    sub->add_option("--budget", cfg.budget, "node budget for enumerations");
    sub->add_option("--format", format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_flag("--oracle", cfg.oracle, "cross-check with the linear-system oracle");
    sub->add_flag("--timing", cfg.timing, "include elapsed microseconds in the report");
    sub->add_option("--depth", cfg.depth, "enumeration depth");
    sub->add_option("--sha", sha, "sha JSON file");
    sub->add_option("--m", m, "exponent vector, e.g. 1,1,1,0,0");
    sub->add_option("--trials", cfg.trials, "number of random evaluations");
    sub->add_option("--vertex", cfg.vertex, "component id");
    sub->add_option("--I", I, "index set, e.g. 1,2,3");
    sub->add_option("--mu", mu, "moduli point of the new component");
    sub->add_option("--out", out, "write the report here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!weights.empty()) cfg.weights = parse_rational_list(weights);
    if (!m.empty()) cfg.m = parse_int_list(m);
    if (!I.empty()) cfg.I = parse_int_list(I);
    if (!mu.empty()) cfg.mu = parse_rational_list(mu);
    if (!sha.empty()) cfg.sha_path = sha;
    Format fmt = format == "dot" ? Format::Dot : format == "text" ? Format::Text : Format::Json;
    cfg.format = fmt;

    const std::string name = app.get_subcommands().front()->get_name();
    std::string text = render(run_command(name, cfg), fmt);
    if (out.empty())
      std::cout << text;
    else
      write_text_file(out, text);
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  }
}
