#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <iterator>
#include <string>

#include "cdyson/commands.hpp"
#include "cdyson/errors.hpp"

namespace {

cdyson::RunConfig load_config(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
    return cdyson::parse_config(text);
  }
  return cdyson::parse_config_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyson diffusion on smooth closed plane contours"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string cache_dir;

  const std::vector<std::string> commands = {"simulate", "sample",    "maps",
                                             "freeenergy", "partition", "validate"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file path, or - for stdin")
        ->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--format", format, "Output format: csv, bin (simulate/sample) or json")
        ->check(CLI::IsMember({"csv", "bin", "json"}));
    sub->add_option("--cache", cache_dir,
                    "Conformal map cache directory (default: CONTOUR_DYSON_CACHE)");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto config = load_config(config_path);
    cdyson::CommandOptions options;
    options.out_dir = out_dir;
    options.format = format;
    options.cache_dir = cache_dir;
    return cdyson::run_command(command, config, options);
  } catch (const cdyson::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cdyson::kExitConfig;
  } catch (const cdyson::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return cdyson::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cdyson::kExitComputation;
  }
}
