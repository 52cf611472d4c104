#include "cdyson/config.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace cdyson {

namespace {

using detail::json;

std::size_t as_positive_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ConfigError(path + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

void parse_sde(const json& j, SdeSettings& sde) {
  detail::check_keys(j, "sde", {"dt", "t_end", "burn_in", "thinning", "taming_cap"});
  sde.dt = detail::number_or(j, "sde", "dt", sde.dt);
  sde.t_end = detail::number_or(j, "sde", "t_end", sde.t_end);
  sde.burn_in = detail::number_or(j, "sde", "burn_in", sde.burn_in);
  sde.taming_cap = detail::number_or(j, "sde", "taming_cap", sde.taming_cap);
  if (j.contains("thinning")) sde.thinning = as_positive_size(j["thinning"], "sde.thinning");
  if (sde.dt < 0.0) throw ConfigError("sde.dt: must be >= 0 (0 selects the default)");
  if (sde.t_end < 0.0) throw ConfigError("sde.t_end: must be >= 0");
  if (!(sde.taming_cap > 0.0) || sde.taming_cap > 0.5)
    throw ConfigError("sde.taming_cap: must lie in (0, 0.5]");
  if (sde.thinning < 1) throw ConfigError("sde.thinning: must be >= 1");
}

void parse_mcmc(const json& j, McSettings& mc) {
  detail::check_keys(j, "mcmc",
                     {"proposal_sigma", "sweeps", "burn_in", "thinning", "adapt_sigma"});
  mc.proposal_sigma = detail::number_or(j, "mcmc", "proposal_sigma", mc.proposal_sigma);
  if (j.contains("sweeps")) mc.sweeps = as_positive_size(j["sweeps"], "mcmc.sweeps");
  if (j.contains("burn_in")) mc.burn_in = as_positive_size(j["burn_in"], "mcmc.burn_in");
  if (j.contains("thinning")) mc.thinning = as_positive_size(j["thinning"], "mcmc.thinning");
  if (j.contains("adapt_sigma")) {
    if (!j["adapt_sigma"].is_boolean())
      throw ConfigError("mcmc.adapt_sigma: expected a boolean");
    mc.adapt_sigma = j["adapt_sigma"].get<bool>();
  }
  if (mc.proposal_sigma < 0.0)
    throw ConfigError("mcmc.proposal_sigma: must be >= 0 (0 selects the default)");
  if (mc.thinning < 1) throw ConfigError("mcmc.thinning: must be >= 1");
}

void parse_conformal(const json& j, ConformalSettings& cs) {
  detail::check_keys(j, "conformal", {"modes", "tolerance", "max_iterations"});
  if (j.contains("modes")) cs.modes = as_positive_size(j["modes"], "conformal.modes");
  cs.tolerance = detail::number_or(j, "conformal", "tolerance", cs.tolerance);
  if (j.contains("max_iterations"))
    cs.max_iterations = as_positive_size(j["max_iterations"], "conformal.max_iterations");
  if (cs.modes < 16 || (cs.modes & (cs.modes - 1)) != 0)
    throw ConfigError("conformal.modes: must be a power of two >= 16");
  if (!(cs.tolerance > 0.0)) throw ConfigError("conformal.tolerance: must be positive");
}

void parse_partition(const json& j, PartitionConfig& pc) {
  detail::check_keys(j, "partition",
                     {"nodes", "symmetry_reduction", "quadrature_n", "morris_n", "fit"});
  if (j.contains("nodes")) pc.nodes = as_positive_size(j["nodes"], "partition.nodes");
  if (pc.nodes < 32) throw ConfigError("partition.nodes: must be >= 32");
  if (j.contains("symmetry_reduction")) {
    if (!j["symmetry_reduction"].is_boolean())
      throw ConfigError("partition.symmetry_reduction: expected a boolean");
    pc.symmetry_reduction = j["symmetry_reduction"].get<bool>();
  }
  auto read_list = [&](const char* key, std::vector<std::size_t>& out) {
    if (!j.contains(key)) return;
    const auto& arr = j[key];
    const std::string path = std::string("partition.") + key;
    if (!arr.is_array()) throw ConfigError(path + ": expected an array of integers");
    out.clear();
    for (const auto& v : arr) {
      const std::size_t n = as_positive_size(v, path + "[]");
      if (n < 1) throw ConfigError(path + ": entries must be >= 1");
      out.push_back(n);
    }
  };
  read_list("quadrature_n", pc.quadrature_n);
  read_list("morris_n", pc.morris_n);
  if (j.contains("fit")) {
    if (!j["fit"].is_boolean()) throw ConfigError("partition.fit: expected a boolean");
    pc.fit = j["fit"].get<bool>();
  }
}

}  // namespace

std::uint64_t RunConfig::require_seed(const std::string& command) const {
  if (!seed)
    throw ConfigError("seed: the " + command +
                      " command requires an explicit seed (reproducibility contract)");
  return *seed;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  detail::check_keys(j, "config",
                     {"contour", "grid_size", "N", "beta", "potential", "seed", "sde",
                      "mcmc", "conformal", "f1_convention", "partition"});

  RunConfig config;
  config.contour = ContourSpec::from_json_string(
      detail::require_field(j, "config", "contour").dump());
  if (j.contains("grid_size")) {
    config.grid_size = as_positive_size(j["grid_size"], "grid_size");
    if (config.grid_size < 64) throw ConfigError("grid_size: must be >= 64");
  }
  if (j.contains("N")) {
    config.n_particles = as_positive_size(j["N"], "N");
    if (config.n_particles < 1) throw ConfigError("N: must be >= 1");
  }
  config.beta = detail::number_or(j, "config", "beta", config.beta);
  if (!(config.beta > 0.0)) throw ConfigError("beta: must be positive");
  if (j.contains("potential"))
    config.potential = Potential::from_json_string(j["potential"].dump());
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      throw ConfigError("seed: expected a nonnegative integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("sde")) parse_sde(j["sde"], config.sde);
  if (j.contains("mcmc")) parse_mcmc(j["mcmc"], config.mcmc);
  if (j.contains("conformal")) parse_conformal(j["conformal"], config.conformal);
  if (j.contains("f1_convention")) {
    const auto& v = j["f1_convention"];
    if (!v.is_string()) throw ConfigError("f1_convention: expected a string");
    const std::string s = v.get<std::string>();
    if (s == "arclength") config.f1_convention = F1Convention::Arclength;
    else if (s == "morris") config.f1_convention = F1Convention::Morris;
    else throw ConfigError("f1_convention: must be \"arclength\" or \"morris\"");
  }
  if (j.contains("partition")) parse_partition(j["partition"], config.partition);
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string RunConfig::to_json_string() const {
  json j;
  j["contour"] = json::parse(contour.to_json_string());
  j["grid_size"] = grid_size;
  j["N"] = n_particles;
  j["beta"] = beta;
  j["potential"] = json::parse(potential.to_json_string());
  if (seed) j["seed"] = *seed;
  j["sde"] = {{"dt", sde.dt},
              {"t_end", sde.t_end},
              {"burn_in", sde.burn_in},
              {"thinning", sde.thinning},
              {"taming_cap", sde.taming_cap}};
  j["mcmc"] = {{"proposal_sigma", mcmc.proposal_sigma},
               {"sweeps", mcmc.sweeps},
               {"burn_in", mcmc.burn_in},
               {"thinning", mcmc.thinning},
               {"adapt_sigma", mcmc.adapt_sigma}};
  j["conformal"] = {{"modes", conformal.modes},
                    {"tolerance", conformal.tolerance},
                    {"max_iterations", conformal.max_iterations}};
  j["f1_convention"] = f1_convention == F1Convention::Arclength ? "arclength" : "morris";
  j["partition"] = {{"nodes", partition.nodes},
                    {"symmetry_reduction", partition.symmetry_reduction},
                    {"quadrature_n", partition.quadrature_n},
                    {"morris_n", partition.morris_n},
                    {"fit", partition.fit}};
  return j.dump(2);
}

}  // namespace cdyson
