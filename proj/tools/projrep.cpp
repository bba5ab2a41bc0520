// Command-line front end: projrep <command> [inputs...] [options]
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projrep/cli.hpp"

int main(int argc, char** argv) {
  using namespace projrep;
  CLI::App app{"Projective representation workbench"};
  app.set_help_all_flag("--help-all");
  std::string command;
  cli::RunArgs args;
  std::string config_path, out_path, matrix_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, radius;
  std::optional<std::size_t> samples;
  bool json_out = false, text_out = false;

  app.add_option("command", command, "validate | cocycle | gauge-fix | trivialize | equivalent | obstruct | "
                                     "weyl | extension | wigner | continuity-scan")
      ->required();
  app.add_option("inputs", args.inputs, "input files");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--alpha", alpha, "neighborhood bound in (0, 1)");
  app.add_option("--radius", radius, "SU(2) sample radius in (0, pi]");
  app.add_option("--samples", samples, "sample / trial count");
  app.add_option("--matrix", matrix_path, "unitary matrix file (wigner)");
  app.add_flag("--antilinear", args.antilinear, "wrap the matrix as V composed with conjugation (wigner)");
  auto* jf = app.add_flag("--json", json_out, "JSON report (default)");
  auto* tf = app.add_flag("--text", text_out, "plain-text report");
  jf->excludes(tf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (!matrix_path.empty()) args.matrix = matrix_path;

  try {
    cli::WorkbenchConfig cfg;
    if (!config_path.empty()) cli::apply_config_json(cfg, io::read_json(config_path));
    if (seed) cfg.seed = *seed;
    if (alpha) cfg.alpha = *alpha;
    if (radius) cfg.radius = *radius;
    if (samples) cfg.samples = *samples;

    const Report rep = cli::run(command, args, cfg);
    const std::string body = text_out ? rep.to_text() : rep.to_json().dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 3;
      }
      out << body;
    }
    return rep.exit_code();
  } catch (const Error& e) {
    nlohmann::ordered_json err{{"error", std::string(to_string(e.kind()))}, {"message", e.what()},
                               {"witness", nlohmann::ordered_json::parse(e.witness().dump())}};
    std::cerr << err.dump(2) << "\n";
    return cli::exit_code_for(e.kind());
  }
}
