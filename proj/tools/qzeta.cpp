#include <iostream>

#include "CLI11.hpp"
#include "qzeta/cli.hpp"

namespace {

using qzeta::cli::Command;

struct ParamSpec {
  const char* name;
  const char* help;
  char delimiter;
};

const ParamSpec all_params[] = {
    {"index", "multi-index as comma-separated complex literals; repeat or separate with ';' for several", ';'},
    {"q", "q value(s) in (0,1)", ','},
    {"s", "complex s value(s)", ','},
    {"alpha", "complex alpha value(s)", ','},
    {"k", "weight(s)", ','},
    {"r", "depth(s)", ','},
    {"b", "length(s) of the interpolated tail", ','},
    {"D", "F-series offset(s)", ','},
    {"d", "F-series chain length(s)", ','},
    {"m1", "lemma1 shift(s)", ','},
    {"n-max", "truncation of the interpolated n-sum", ','},
    {"lemma", "lemma1, lemma2, dalpha or bounds", ','},
    {"points", "random points for the bounds scan", ','},
    {"u-max", "upper end of u in the bounds scan", ','},
    {"cont", "eval: use the analytic continuation (true/false)", ','},
};

const std::map<Command, std::vector<std::string>> command_params = {
    {Command::eval, {"index", "q", "cont"}},
    {Command::sum_formula, {"k", "r", "q"}},
    {Command::theorem3, {"s", "q", "n-max"}},
    {Command::theorem4, {"b", "s", "q"}},
    {Command::f_identity, {"D", "s", "d", "q"}},
    {Command::lemmas, {"lemma", "m1", "s", "alpha", "q", "points", "u-max"}},
    {Command::limit, {"index", "q"}},
};

const char* description(Command c) {
  switch (c) {
    case Command::eval:
      return "evaluate zeta_q at an index";
    case Command::sum_formula:
      return "check the weight-k depth-r sum formula";
    case Command::theorem3:
      return "check the interpolated depth-2 sum against zeta_q(s)";
    case Command::theorem4:
      return "check G^(0,b)(s) against zeta_q(s)";
    case Command::f_identity:
      return "check the F-series identity";
    case Command::lemmas:
      return "run the lemma checks";
    case Command::limit:
      return "extrapolate zeta_q to q = 1";
    case Command::scan:
      return "grid scan of another command";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-analogue multiple zeta evaluation and identity checks"};
  app.require_subcommand(1);

  qzeta::cli::RunConfig config;
  std::string format = "json";
  std::string output;
  std::string check;
  std::optional<double> tolerance;
  std::map<std::string, std::vector<std::string>> raw;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", output, "write the report to this file");
    sub->add_option("--seed", config.seed, "seed for randomized grids");
    sub->add_option("--tolerance", tolerance, "case tolerance, replacing the per-command default");
    sub->add_option("--tol", config.policy.tol, "series truncation tolerance");
    sub->add_option("--max-outer", config.policy.max_outer, "cap on outer series terms");
    sub->add_option("--stall-window", config.policy.stall_window, "consecutive small terms before stopping");
    sub->add_option("--quad-order", config.policy.quad_order, "Gauss-Legendre order per panel");
    sub->add_option("--tail-fit-window", config.policy.tail_fit_window, "terms used for the tail fit");
  };
  auto add_param = [&](CLI::App* sub, const std::string& name) {
    for (const ParamSpec& p : all_params)
      if (name == p.name) sub->add_option("--" + name, raw[name], p.help)->delimiter(p.delimiter);
  };

  std::map<CLI::App*, Command> subs;
  for (const auto& [cmd, params] : command_params) {
    CLI::App* sub = app.add_subcommand(qzeta::cli::command_name(cmd), description(cmd));
    add_common(sub);
    for (const std::string& p : params) add_param(sub, p);
    subs[sub] = cmd;
  }
  CLI::App* scan = app.add_subcommand("scan", description(Command::scan));
  add_common(scan);
  scan->add_option("--check", check, "command to scan")->required();
  scan->add_option("--grid", config.grids, "name=start:stop:count, repeatable");
  for (const ParamSpec& p : all_params) add_param(scan, p.name);
  subs[scan] = Command::scan;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qzeta::cli::exit_usage;
  }

  try {
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) config.command = cmd;
    if (config.command == Command::scan) config.scan_target = qzeta::cli::parse_command(check);
    for (auto& [name, values] : raw)
      if (!values.empty()) config.params[name] = values;
    config.format = format == "csv" ? qzeta::cli::OutputFormat::csv : qzeta::cli::OutputFormat::json;
    if (!output.empty()) config.output_path = output;
    if (tolerance) config.tolerance = *tolerance;
    return qzeta::cli::run(config, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return qzeta::cli::exit_usage;
  }
}
