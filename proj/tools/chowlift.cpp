#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chowlift/errors.hpp"
#include "chowlift/pipeline.hpp"

namespace {

chowlift::OutputFormat parse_format(const std::string& format) {
  if (format == "machine") return chowlift::OutputFormat::Machine;
  if (format == "text") return chowlift::OutputFormat::Text;
  throw chowlift::ConfigError("semantic error at format: expected text or "
                              "machine");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Chow ring models with Chow-Kunneth projector "
               "construction and verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "text";
  int cases = 0;
  long long seed = -1;

  CLI::App* cmd_describe =
      app.add_subcommand("describe", "parse a config and summarize the datum");
  cmd_describe->add_option("config", config_path, "config file")->required();

  CLI::App* cmd_run =
      app.add_subcommand("run", "build the variety and run the checks");
  cmd_run->add_option("config", config_path, "config file")->required();
  cmd_run->add_option("--format", format, "text|machine");

  CLI::App* cmd_fuzz = app.add_subcommand(
      "fuzz", "seeded randomized comparison of the two composition routes");
  cmd_fuzz->add_option("config", config_path, "config file")->required();
  cmd_fuzz->add_option("--cases", cases, "number of random cases");
  cmd_fuzz->add_option("--seed", seed, "generator seed");
  cmd_fuzz->add_option("--format", format, "text|machine");

  CLI11_PARSE(app, argc, argv);

  try {
    chowlift::RunConfig config = chowlift::load_config(config_path);
    config.format = parse_format(format);

    if (cmd_describe->parsed()) {
      std::cout << chowlift::describe(config);
      return 0;
    }
    if (cmd_fuzz->parsed()) {
      config.tasks = {chowlift::Task::OracleFuzz};
      if (cases > 0) config.fuzz_cases = cases;
      if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    }
    const chowlift::RunResult result = chowlift::run(config);
    std::cout << result.report;
    return result.exit_code;
  } catch (const chowlift::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const chowlift::ChowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
