#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cck/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cck: a small kernel for the calculus of constructions with a finitary "
               "set-theoretic evaluator"};
  app.require_subcommand(1);

  cck::DriverOptions opts;
  std::string file;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "vernacular file to load")->required();
    cmd->add_option("--max-steps", opts.max_steps, "reduction fuel");
    cmd->add_option("--depth", opts.depth, "fixpoint iteration bound");
    cmd->add_option("--rank", opts.rank, "finite universe rank");
    cmd->add_option("--samples", opts.samples, "function-space membership samples");
    cmd->add_option("--report", opts.report_path, "write a flat key=value report");
  };

  CLI::App* check = app.add_subcommand("check", "type-check every item in the file");
  add_common(check);

  CLI::App* norm = app.add_subcommand("norm", "print the normal form of a term");
  add_common(norm);
  norm->add_option("--term", opts.term, "term to normalize")->required();

  CLI::App* model = app.add_subcommand("model", "evaluate a term in the set model");
  add_common(model);
  model->add_option("--term", opts.term, "term to evaluate")->required();
  model->add_option("--type", opts.type_name, "type to test membership against")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (check->parsed()) return cck::cmd_check(file, opts, std::cout, std::cerr);
  if (norm->parsed()) return cck::cmd_norm(file, opts, std::cout, std::cerr);
  if (model->parsed()) return cck::cmd_model(file, opts, std::cout, std::cerr);
  std::cerr << "no subcommand given\n";
  return 2;
}
