// gml: experiment runner for the quasi-algebra / time-frequency toolkit.
//
//   gml <command> [--config PATH] [--N n] [--q q] [--s s] [--chi a,b,c,d]
//                 [--window NAME|PATH] [--symbol NAME|PATH] [--out DIR] [--seed k]
//
// Exit codes: 0 ok, 2 config error, 3 not invertible, 4 vanishing Fourier
// series, 5 numerical tolerance failure.

#include <iostream>

#include "CLI11.hpp"
#include "gml/experiment.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<long> n;
  std::optional<double> q, s;
  std::optional<std::string> chi, chi2, window, symbol, symbol2, out, options;
  std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--N", o.n, "modulus (odd; prime for metaplectic commands)");
  cmd->add_option("--q", o.q, "quasi-norm exponent in (0,1]");
  cmd->add_option("--s", o.s, "weight order >= 0");
  cmd->add_option("--chi", o.chi, "symplectic matrix a,b,c,d");
  cmd->add_option("--chi2", o.chi2, "second symplectic matrix (compose)");
  cmd->add_option("--window", o.window, "gaussian | delta | random | PATH");
  cmd->add_option("--symbol", o.symbol, "identity | gaussian-bump | random-smooth | PATH");
  cmd->add_option("--symbol2", o.symbol2, "second symbol (compose)");
  cmd->add_option("--options", o.options, "command options as inline JSON");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "seed for random suites");
}

void print_diagnostic(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Banach algebra and time-frequency operator experiments"};
  app.require_subcommand(1);
  Overrides o;
  for (const auto& name : gml::known_commands()) add_flags(app.add_subcommand(name), o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(gml::ExitCode::config_error);
  }

  gml::ExperimentConfig cfg;
  try {
    if (!o.config.empty()) gml::apply_json_config(cfg, gml::io::read_json_file(o.config));
    cfg.command = app.get_subcommands().front()->get_name();
    if (o.n) cfg.N = *o.n;
    if (o.q) cfg.q = *o.q;
    if (o.s) cfg.s = *o.s;
    if (o.chi) cfg.chi = gml::parse_chi(*o.chi);
    if (o.chi2) cfg.chi2 = gml::parse_chi(*o.chi2);
    if (o.window) cfg.window = *o.window;
    if (o.symbol) cfg.symbol = *o.symbol;
    if (o.symbol2) cfg.symbol2 = *o.symbol2;
    if (o.out) cfg.out = *o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (o.options) cfg.options.merge_patch(nlohmann::json::parse(*o.options));
  } catch (const std::exception& e) {
    print_diagnostic("invalid-config", e.what());
    return static_cast<int>(gml::ExitCode::config_error);
  }

  const gml::RunOutcome outcome = gml::run_experiment(cfg);
  if (outcome.code != gml::ExitCode::ok) {
    print_diagnostic(outcome.error_kind, outcome.message);
  } else {
    std::cout << "wrote " << cfg.out << "/report.json\n";
  }
  return static_cast<int>(outcome.code);
}
