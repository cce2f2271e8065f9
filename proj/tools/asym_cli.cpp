#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "asym/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic geometry of unbounded subsets of the line and plane"};
  app.require_subcommand(1);
  asym::RunOptions options;
  long horizon = 0;
  std::uint64_t seed = 0;
  const std::map<std::string, std::string> about{
      {"porosity", "porosity at infinity of a subset of [0, inf)"},
      {"epsilon", "the curve eps(t) between two subspaces"},
      {"equiv", "decide strong asymptotic equivalence"},
      {"spectrum", "compare distance-set spectra under two scalings"},
      {"lab", "stability graph, self-stable families and pretangent spaces of sequences"},
      {"classify-line", "test whether a subset of the line is isometric to R or R+"},
      {"pseudo", "finite pseudometric spaces: quotient, pseudoisometries, fuzzing"},
  };
  for (const auto& name : asym::commands()) {
    auto it = about.find(name);
    CLI::App* sub = app.add_subcommand(name, it == about.end() ? "" : it->second);
    sub->add_option("--config", options.config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_flag("--assert", options.assert_verdict, "exit 1 when the verdict contradicts the expectation");
    sub->add_option("--horizon", horizon, "probe horizon (meaning depends on the command)");
    sub->add_option("--seed", seed, "seed for the pseudo fuzz corpus");
    sub->callback([&options, &horizon, &seed, name, sub] {
      options.command = name;
      if (sub->count("--horizon")) options.horizon = horizon;
      if (sub->count("--seed")) options.seed = seed;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : asym::exit_input;
  }
  asym::RunResult result = asym::run(options);
  (result.exit_code == asym::exit_ok ? std::cout : std::cerr) << result.message << "\n";
  return result.exit_code;
}
