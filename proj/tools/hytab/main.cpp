#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  hytab::cli::RunConfig cfg;
  CLI::App app{"Tableau decision procedure for hybrid logic over all, strict-partial-order and partial-order frames"};

  std::string formula, format = "text";
  std::size_t truncate = 0, oracle = 0;
  std::string nominals;

  app.add_option("formula", formula, "Formula to decide (validity)");
  app.add_option("-c,--calculus", cfg.calculus, "k, i4, i4d or po")->capture_default_str();
  app.add_flag("--proof", cfg.proof, "Print the tableau");
  app.add_flag("--countermodel", cfg.countermodel, "Print the countermodel of a non-theorem");
  app.add_option("--certificate", cfg.certificate_path, "Write the countermodel certificate (JSON) to this file");
  app.add_option("--dot", cfg.dot_path, "Write the truncated countermodel as DOT to this file");
  app.add_option("--truncate", truncate, "Cluster copies shown in truncations");
  app.add_option("--budget", cfg.budget, "Rule firings allowed per branch")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Scheduling seed (0 = fixed order)")->capture_default_str();
  app.add_option("--oracle", oracle, "Cross-check against finite models of up to K worlds (K <= 5)");
  app.add_flag("--dump-loopcheck", cfg.dump_loopcheck, "Print T-sets and the generation forest");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_flag("--unicode", cfg.unicode, "Print formulas with logical symbols");
  app.add_option("--nominals", nominals, "Comma-separated identifiers to read as nominals");
  app.add_option("--file", cfg.file, "Read the formula from a file");
  app.add_option("--batch", cfg.batch, "One formula per line; JSON lines out");
  app.add_option("--jobs", cfg.jobs, "Worker threads for --batch")->capture_default_str();
  app.add_flag("--experimental", cfg.experimental, "Allow --rules");
  app.add_option("--rules", cfg.rules, "Rule toggles such as +Trs,-D");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hytab::cli::kUsage;
  }

  if (!formula.empty()) cfg.formula = formula;
  if (truncate) cfg.truncate = truncate;
  if (app.count("--oracle")) cfg.oracle = oracle;
  cfg.format = format == "json" ? hytab::cli::Format::Json : hytab::cli::Format::Text;
  for (std::size_t pos = 0; pos < nominals.size();) {
    std::size_t comma = nominals.find(',', pos);
    if (comma == std::string::npos) comma = nominals.size();
    if (comma > pos) cfg.nominals.push_back(nominals.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return hytab::cli::run(cfg, std::cout, std::cerr);
}
