#include "cdyson/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "cdyson/io.hpp"
#include "cdyson/validation.hpp"
#include "json_util.hpp"

namespace cdyson {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void echo_config(const RunConfig& config, const CommandOptions& options) {
  write_file_atomic(join(options.out_dir, "effective_config.json"),
                    config.to_json_string() + "\n");
}

std::vector<double> equispaced(const Contour& contour, std::size_t n) {
  std::vector<double> s(n);
  const double step = contour.length() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = step * (static_cast<double>(i) + 0.5);
  return s;
}

std::string cache_directory(const CommandOptions& options) {
  if (!options.cache_dir.empty()) return options.cache_dir;
  if (const char* env = std::getenv("CONTOUR_DYSON_CACHE"); env && *env) return env;
  return join(options.out_dir, "cache");
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string maps_cache_key(const RunConfig& config) {
  std::ostringstream os;
  os << config.contour.canonical_key() << "|modes=" << config.conformal.modes
     << "|grid=" << config.grid_size;
  std::ostringstream name;
  name << "maps_" << std::hex << fnv1a(os.str()) << ".json";
  return name.str();
}

ConformalPair solve_or_load_maps(const RunConfig& config, const CommandOptions& options,
                                 const std::shared_ptr<const Contour>& contour) {
  const std::string cache_path = join(cache_directory(options), maps_cache_key(config));
  if (fs::exists(cache_path)) {
    try {
      return ConformalPair::from_json_string(read_file(cache_path), contour);
    } catch (const std::exception&) {
      // Stale or foreign cache entry: recompute and overwrite.
    }
  }
  auto pair = solve_maps(contour, config.conformal);
  write_file_atomic(cache_path, pair.to_json_string());
  return pair;
}

}  // namespace

int run_simulate(const RunConfig& config, const CommandOptions& options) {
  if (options.format != "csv" && options.format != "bin")
    throw ConfigError("simulate: format must be csv or bin");
  auto contour = config.build_contour();
  SdeSettings settings = config.sde;
  settings.seed = config.require_seed("simulate");
  Configuration cfg0(contour, equispaced(*contour, config.n_particles));
  const auto traj = run_trajectory(cfg0, config.gas(), settings);
  if (options.format == "bin")
    write_file_atomic(join(options.out_dir, "trajectory.bin"), trajectory_binary(traj));
  else
    write_file_atomic(join(options.out_dir, "trajectory.csv"), trajectory_csv(traj));
  echo_config(config, options);
  std::cout << "simulate: " << traj.samples.size() << " snapshots, "
            << traj.rejected_steps << " collision rejections\n";
  return kExitOk;
}

int run_sample(const RunConfig& config, const CommandOptions& options) {
  if (options.format != "csv")
    throw ConfigError("sample: format must be csv");
  auto contour = config.build_contour();
  McSettings settings = config.mcmc;
  settings.seed = config.require_seed("sample");
  Configuration cfg0(contour, equispaced(*contour, config.n_particles));
  const auto samples = mh_chain(cfg0, config.gas(), settings);
  write_file_atomic(join(options.out_dir, "samples.csv"),
                    samples_csv(samples, settings.thinning));
  echo_config(config, options);
  std::cout << "sample: " << samples.samples.size() << " configurations, acceptance "
            << samples.acceptance_rate << "\n";
  return kExitOk;
}

int run_maps(const RunConfig& config, const CommandOptions& options) {
  auto contour = config.build_contour();
  const auto pair = solve_or_load_maps(config, options, contour);
  write_file_atomic(join(options.out_dir, "maps.json"), pair.to_json_string());
  echo_config(config, options);
  std::cout << "maps: conformal radius r = " << format_double(pair.conformal_radius)
            << "\n";
  return kExitOk;
}

int run_freeenergy(const RunConfig& config, const CommandOptions& options) {
  auto contour = config.build_contour();
  const auto pair = solve_or_load_maps(config, options, contour);
  const auto psi = eval_psi(pair);
  const auto f01 = compute_F0_F1(pair, config.potential, config.beta, config.f1_convention);
  const auto f2q = compute_F2q(pair, psi, config.beta);

  FreeEnergyReport report;
  report.beta = config.beta;
  report.f0 = f01.f0;
  report.f1 = f01.f1;
  report.f1_convention = config.f1_convention;
  report.f2_cl = compute_F2cl(pair, psi, config.potential, config.beta);
  report.f2_q = f2q.f2_q;
  report.loewner_contour = f2q.loewner_contour;
  report.loewner_area = f2q.loewner_area;
  report.correspondence_tolerance = config.conformal.tolerance;
  report.loewner_consistent = f2q.consistent;

  write_file_atomic(join(options.out_dir, "free_energy.json"),
                    to_json_string(report) + "\n");
  echo_config(config, options);
  if (!report.loewner_consistent)
    std::cerr << "freeenergy: warning, Loewner energy routes disagree beyond tolerance\n";
  std::cout << "freeenergy: F0 = " << format_double(report.f0)
            << ", F2_q = " << format_double(report.f2_q) << "\n";
  return kExitOk;
}

int run_partition(const RunConfig& config, const CommandOptions& options) {
  auto contour = config.build_contour();
  std::ostringstream csv;
  csv << "N,beta,logZ,F_N,source\n";
  auto f_n = [&](std::size_t n, double log_z) {
    const double nn = static_cast<double>(n);
    return log_z - std::lgamma(nn + 1.0) - (config.beta - 1.0) * nn * std::log(nn);
  };
  QuadratureSettings q;
  q.nodes = config.partition.nodes;
  q.symmetry_reduction = config.partition.symmetry_reduction;
  for (std::size_t n : config.partition.quadrature_n) {
    GasParams p(n, config.beta, config.potential);
    const double log_z = log_z_quadrature(*contour, p, q);
    csv << n << "," << format_double(config.beta) << "," << format_double(log_z) << ","
        << format_double(f_n(n, log_z)) << ",quadrature\n";
  }
  std::vector<std::size_t> morris_rows = config.partition.morris_n;
  std::vector<double> morris_log_z;
  if (!morris_rows.empty() &&
      !(config.contour.is_circle() && config.potential.is_zero()))
    throw ConfigError(
        "partition.morris_n: exact circle rows require a circle contour and W = 0");
  for (std::size_t n : morris_rows) {
    const double log_z = log_z_morris(n, config.beta);
    morris_log_z.push_back(log_z);
    csv << n << "," << format_double(config.beta) << "," << format_double(log_z) << ","
        << format_double(f_n(n, log_z)) << ",morris\n";
  }
  write_file_atomic(join(options.out_dir, "partition.csv"), csv.str());

  if (config.partition.fit) {
    const auto fit = fit_expansion(morris_rows, morris_log_z, config.beta);
    detail::json j = {{"F0", fit.f0},
                      {"F1", fit.f1},
                      {"F2", fit.f2},
                      {"tail_coefficient", fit.tail_coefficient},
                      {"max_residual", fit.max_residual}};
    write_file_atomic(join(options.out_dir, "partition_fit.json"), j.dump(2) + "\n");
  }
  echo_config(config, options);
  std::cout << "partition: wrote partition.csv\n";
  return kExitOk;
}

int run_validate(const RunConfig& config, const CommandOptions& options) {
  const auto report = run_validation(config);
  write_file_atomic(join(options.out_dir, "validation.json"),
                    report.to_json_string() + "\n");
  echo_config(config, options);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured "
              << format_double(c.measured) << " vs threshold "
              << format_double(c.threshold) << " (" << c.detail << ")\n";
  }
  return report.all_pass ? kExitOk : kExitValidation;
}

int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options) {
  if (command == "simulate") return run_simulate(config, options);
  if (command == "sample") return run_sample(config, options);
  if (command == "maps") return run_maps(config, options);
  if (command == "freeenergy") return run_freeenergy(config, options);
  if (command == "partition") return run_partition(config, options);
  if (command == "validate") return run_validate(config, options);
  throw ConfigError("unknown command: " + command);
}

}  // namespace cdyson
