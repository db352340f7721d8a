#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "kbrec/driver.hpp"

namespace {

struct Args {
  std::string file;
  std::string goal;
  std::string term;
  std::string style = "history";
  kbrec::DriverOptions opts;
};

void add_shared_flags(CLI::App* cmd, Args& args) {
  cmd->add_option("--prec", args.opts.prec_text,
                  "precedence chains, e.g. \"f > g, a > b\" (overrides the "
                  "file's PREC section)");
  cmd->add_option("--fuel", args.opts.fuel,
                  "rewrite step bound per normalization");
  cmd->add_option("--max-steps", args.opts.max_steps,
                  "inference application bound per completion run");
  cmd->add_option("--style", args.style, "certificate justification style")
      ->check(CLI::IsMember({"conversion", "history"}));
  cmd->add_option("--out", args.opts.out_path, "certificate output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equational prover based on recording completion"};
  app.require_subcommand(1);

  Args args;

  CLI::App* complete =
      app.add_subcommand("complete", "run completion on an equation file");
  complete->add_option("file", args.file, "problem file")->required();
  add_shared_flags(complete, args);

  CLI::App* prove = app.add_subcommand(
      "prove", "decide a goal equation against an equation file");
  prove->add_option("file", args.file, "problem file")->required();
  prove->add_option("--goal", args.goal, "goal equation \"s = t\"")
      ->required();
  add_shared_flags(prove, args);

  CLI::App* check =
      app.add_subcommand("check", "verify a certificate file");
  check->add_option("file", args.file, "certificate file")->required();
  check->add_option("--fuel", args.opts.fuel,
                    "rewrite step bound per normalization");

  CLI::App* cps =
      app.add_subcommand("cps", "print the critical pairs of a rule file");
  cps->add_option("file", args.file, "problem file")->required();

  CLI::App* norm = app.add_subcommand(
      "normalize", "rewrite a term to normal form with a rule file");
  norm->add_option("file", args.file, "problem file")->required();
  norm->add_option("--term", args.term, "term to normalize")->required();
  norm->add_option("--fuel", args.opts.fuel,
                   "rewrite step bound per normalization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kbrec::kExitYes : kbrec::kExitError;
  }

  args.opts.style = args.style == "conversion" ? kbrec::Style::Conversion
                                               : kbrec::Style::History;
  for (CLI::App* sub : {complete, prove})
    if (sub->parsed() && sub->count("--prec") > 0) args.opts.has_prec = true;
  if (complete->parsed())
    return kbrec::cmd_complete(args.file, args.opts, std::cout, std::cerr);
  if (prove->parsed())
    return kbrec::cmd_prove(args.file, args.goal, args.opts, std::cout,
                            std::cerr);
  if (check->parsed())
    return kbrec::cmd_check(args.file, args.opts, std::cout, std::cerr);
  if (cps->parsed())
    return kbrec::cmd_cps(args.file, args.opts, std::cout, std::cerr);
  return kbrec::cmd_normalize(args.file, args.term, args.opts, std::cout,
                              std::cerr);
}
