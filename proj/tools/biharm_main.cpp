#include "CLI11.hpp"

#include "biharm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"biharm: fourth-order Schrodinger Strichartz toolkit"};
  app.require_subcommand(1);

  const char* commands[] = {"strichartz-norm", "refined-cap",  "decompose",
                            "extremize",       "verify-limits", "verify-orthogonality",
                            "bilinear-scaling"};
  biharm::cli::RunOptions opt;
  std::string out;
  for (const char* name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_flag("--strict", opt.strict, "escalate window warnings to errors");
    sub->add_flag("--no-cache", opt.no_cache, "bypass the result cache");
  }

  CLI11_PARSE(app, argc, argv);
  if (!out.empty()) opt.out_override = out;

  // the subcommand must match the config's command field
  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    std::ifstream in(opt.config_path);
    auto cfg = nlohmann::json::parse(in);
    if (cfg.value("command", "") != chosen) {
      std::fprintf(stderr, "error: config command '%s' does not match subcommand '%s'\n",
                   cfg.value("command", "").c_str(), chosen.c_str());
      return 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return biharm::cli::run(opt);
}
