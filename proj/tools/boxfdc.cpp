#include <boxfdc/cli/commands.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace boxfdc::cli;
  CLI::App app{"Finite checks for box spaces, decompositions and decomposition games"};
  app.require_subcommand(1, 1);

  CommandOptions opts;
  std::string out, input, cache_dir;
  std::int64_t bound = -1;
  std::uint64_t seed = 0;
  bool exact = false, greedy = false;

  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config_path, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "report path (timing goes to <out>.timing.json)");
    sub->add_option("--input", input, "artifact for transform and verify");
    sub->add_option("--bound", bound, "override the bound B")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", seed, "seed for generated inputs");
    sub->add_option("--cache-dir", cache_dir, "distance cache directory (default $CLI_CACHE_DIR)");
    auto* ex = sub->add_flag("--exact", exact, "exact asdim search");
    sub->add_flag("--greedy", greedy, "greedy asdim coloring only")->excludes(ex);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  if (!out.empty()) opts.out_path = out;
  if (!input.empty()) opts.input_path = input;
  if (!cache_dir.empty()) opts.cache_dir = cache_dir;
  if (sub->count("--bound")) opts.bound = bound;
  if (sub->count("--seed")) opts.seed = seed;
  if (exact) opts.exact = true;
  if (greedy) opts.exact = false;

  const auto result = run_command(sub->get_name(), opts);
  try {
    write_outputs(result, opts);
  } catch (const std::exception& e) {
    std::cerr << "boxfdc: " << e.what() << "\n";
    return kUsage;
  }
  if (result.report.contains("error")) std::cerr << "boxfdc: " << result.report["error"].get<std::string>() << "\n";
  std::cerr << sub->get_name() << ": " << result.report.value("status", "unknown") << "\n";
  return result.exit_code;
}
