#include <iostream>

#include "cli.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph::cli {
void register_pipeline_commands(CLI::App& app, Context& ctx);
void register_analysis_commands(CLI::App& app, Context& ctx);
}  // namespace lifegraph::cli

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  using namespace lifegraph;

  cli::Context ctx;
  for (int i = 1; i < argc; ++i) ctx.arguments.emplace_back(argv[i]);

  CLI::App app{"Kinship-graph lifespan analysis: ingest, graph, features, stats, regress, learn, synth"};
  app.name("lifegraph");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  cli::register_pipeline_commands(app, ctx);
  cli::register_analysis_commands(app, ctx);

  if (argc < 2) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    ctx.action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "lifegraph: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "lifegraph: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
