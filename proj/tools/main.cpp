// sqpsk: command-line front end for the binary-PSK discrimination library.
//
// Subcommands: helstrom, homodyne, threshold-beta, threshold-sigma, g, scan.
// Point queries print one value (12 significant digits); scan emits a CSV or
// JSON dataset. Exit codes: 0 success, 2 validation error (message names the
// offending flag), 3 numerical/domain failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqpsk/analysis.hpp"
#include "sqpsk/errors.hpp"
#include "sqpsk/fock.hpp"
#include "sqpsk/receiver.hpp"
#include "sqpsk/table_io.hpp"
#include "sqpsk/version.hpp"

namespace {

// One record of everything the tool can be asked to do; filled from flags
// and/or a JSON config file (flags win).
struct RunConfig {
  std::string command;
  std::optional<double> energy;
  std::optional<double> beta;
  std::optional<double> sigma;
  std::optional<double> purity;
  std::optional<double> eta;
  std::optional<double> r_tilde;
  std::optional<std::string> metric;
  std::optional<std::string> figure;
  double cutoff_tail = 1e-12;
  int cutoff_hard_max = 512;
  int quad_nodes = 16;
  std::string format = "csv";
  std::optional<std::string> output;
};

// Thrown for CLI-level validation problems; mapped to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void merge_config_file(const std::string& path, const CLI::App& app,
                       RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("--config: '" + path + "' is not valid JSON: " + e.what());
  }

  const auto flag_given = [&app](const std::string& name) {
    return app.count(name) > 0;
  };
  const auto merge_double = [&](const nlohmann::json& section, const char* key,
                                const std::string& flag,
                                std::optional<double>& slot) {
    if (section.contains(key) && !flag_given(flag)) slot = section[key].get<double>();
  };

  if (doc.contains("command") && config.command.empty())
    config.command = doc["command"].get<std::string>();

  const nlohmann::json params =
      doc.contains("parameters") ? doc["parameters"] : nlohmann::json::object();
  merge_double(params, "energy", "--energy", config.energy);
  merge_double(params, "beta", "--beta", config.beta);
  merge_double(params, "sigma", "--sigma", config.sigma);
  merge_double(params, "purity", "--purity", config.purity);
  merge_double(params, "eta", "--eta", config.eta);
  merge_double(params, "r-tilde", "--r-tilde", config.r_tilde);
  if (params.contains("metric") && !flag_given("--metric"))
    config.metric = params["metric"].get<std::string>();
  if (params.contains("figure") && !flag_given("--figure"))
    config.figure = params["figure"].get<std::string>();

  const nlohmann::json numerics =
      doc.contains("numerics") ? doc["numerics"] : nlohmann::json::object();
  if (numerics.contains("cutoff-tail") && !flag_given("--cutoff-tail"))
    config.cutoff_tail = numerics["cutoff-tail"].get<double>();
  if (numerics.contains("cutoff-hard-max"))
    config.cutoff_hard_max = numerics["cutoff-hard-max"].get<int>();
  if (numerics.contains("quad-nodes") && !flag_given("--quad-nodes"))
    config.quad_nodes = numerics["quad-nodes"].get<int>();

  const nlohmann::json output =
      doc.contains("output") ? doc["output"] : nlohmann::json::object();
  if (output.contains("format") && !flag_given("--format"))
    config.format = output["format"].get<std::string>();
  if (output.contains("path") && !flag_given("--output"))
    config.output = output["path"].get<std::string>();
}

void require_range(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

double require_flag(const std::optional<double>& slot, const char* flag) {
  if (!slot) throw ValidationError(std::string(flag) + " is required for this command");
  return *slot;
}

// Resolves the purity / (eta, r-tilde) parameter group. The loss route also
// pins the squeezing fraction (the seed's squeezing is whatever survived the
// channel); beta_out is filled only when the route allows it.
struct SeedSpec {
  double purity = 1.0;
  std::optional<double> beta;  // set by the loss route
};

SeedSpec resolve_seed_group(const RunConfig& config, bool beta_allowed) {
  const bool loss_route = config.eta.has_value() || config.r_tilde.has_value();
  SeedSpec spec;
  if (!loss_route) {
    spec.purity = config.purity.value_or(1.0);
    require_range(spec.purity > 0.0 && spec.purity <= 1.0,
                  "--purity must lie in (0, 1]");
    return spec;
  }
  if (config.purity)
    throw ValidationError("--purity conflicts with --eta/--r-tilde (give one group)");
  if (!config.eta || !config.r_tilde)
    throw ValidationError("--eta and --r-tilde must be given together");
  require_range(*config.eta > 0.0 && *config.eta <= 1.0,
                "--eta must lie in (0, 1]");

  const sqpsk::LossResult loss =
      sqpsk::loss_map({*config.r_tilde, *config.eta});
  spec.purity = loss.purity;
  if (beta_allowed) {
    if (config.beta)
      throw ValidationError(
          "--beta conflicts with --eta/--r-tilde (the loss channel fixes the "
          "squeezing fraction)");
    const double energy = require_flag(config.energy, "--energy");
    const double sh = std::sinh(loss.squeezing);
    const double beta = sh * sh / energy;
    require_range(beta <= 1.0,
                  "--r-tilde: surviving squeezing exceeds the --energy budget");
    spec.beta = beta;
  }
  return spec;
}

void emit_point(const RunConfig& config, double value,
                const std::vector<std::pair<std::string, std::string>>& meta) {
  char line[64];
  std::snprintf(line, sizeof(line), "%.12g", value);
  if (config.output) {
    std::ofstream out(*config.output);
    if (!out)
      throw ValidationError("--output: cannot write '" + *config.output + "'");
    out << "# tool-version: " << sqpsk::kVersion << "\n";
    out << "# command: " << config.command << "\n";
    for (const auto& [key, val] : meta) out << "# " << key << ": " << val << "\n";
    out << line << "\n";
  } else {
    std::cout << line << "\n";
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

int run(const RunConfig& config) {
  using namespace sqpsk;

  require_range(config.cutoff_tail > 0.0 && config.cutoff_tail < 1.0,
                "--cutoff-tail must lie in (0, 1)");
  require_range(config.quad_nodes >= 16 && config.quad_nodes <= 1024 &&
                    (config.quad_nodes & (config.quad_nodes - 1)) == 0,
                "--quad-nodes must be a power of two in [16, 1024]");
  if (config.sigma) require_range(*config.sigma >= 0.0, "--sigma must be >= 0");
  if (config.beta)
    require_range(*config.beta >= 0.0 && *config.beta <= 1.0,
                  "--beta must lie in [0, 1]");
  if (config.energy) require_range(*config.energy >= 0.0, "--energy must be >= 0");

  ScanSettings settings;
  settings.cutoff = CutoffPolicy{config.cutoff_tail, config.cutoff_hard_max};
  settings.quad_start = config.quad_nodes;

  if (config.command == "helstrom") {
    const double energy = require_flag(config.energy, "--energy");
    const SeedSpec spec = resolve_seed_group(config, /*beta_allowed=*/true);
    const double beta = spec.beta.value_or(config.beta.value_or(0.0));
    const double sigma = config.sigma.value_or(0.0);
    const ChannelBudget budget{energy, beta};
    double value;
    if (sigma == 0.0 && spec.purity == 1.0) {
      value = helstrom_pure(budget);
    } else {
      const SeedState seed = budget_to_seed(budget, spec.purity);
      const FockDensityMatrix plus = build_state(seed, +1, settings.cutoff);
      const FockDensityMatrix minus = build_state(seed, -1, settings.cutoff);
      value = helstrom_mixed(dephase(plus, sigma), dephase(minus, sigma));
    }
    emit_point(config, value,
               {{"energy", fmt(energy)},
                {"beta", fmt(beta)},
                {"sigma", fmt(sigma)},
                {"purity", fmt(spec.purity)},
                {"cutoff-tail", fmt(config.cutoff_tail)}});
    return 0;
  }

  if (config.command == "homodyne") {
    const double energy = require_flag(config.energy, "--energy");
    const SeedSpec spec = resolve_seed_group(config, /*beta_allowed=*/true);
    const double beta = spec.beta.value_or(config.beta.value_or(0.0));
    const double sigma = config.sigma.value_or(0.0);
    const double value =
        error_probability({energy, beta}, spec.purity, PhaseNoise{sigma},
                          QuadratureRule::gauss_hermite(config.quad_nodes));
    emit_point(config, value,
               {{"energy", fmt(energy)},
                {"beta", fmt(beta)},
                {"sigma", fmt(sigma)},
                {"purity", fmt(spec.purity)},
                {"quad-nodes", std::to_string(config.quad_nodes)}});
    return 0;
  }

  if (config.command == "threshold-beta") {
    const double energy = require_flag(config.energy, "--energy");
    const SeedSpec spec = resolve_seed_group(config, /*beta_allowed=*/false);
    const double sigma = config.sigma.value_or(0.0);
    const std::string metric_name = config.metric.value_or("homodyne");
    if (metric_name != "helstrom" && metric_name != "homodyne")
      throw ValidationError("--metric must be helstrom or homodyne");
    const ThresholdResult result = beta_threshold_numeric(
        energy, PhaseNoise{sigma}, spec.purity, metric_from_string(metric_name),
        settings);
    if (result.no_advantage)
      std::cerr << "note: no advantage region; threshold reported as 0\n";
    emit_point(config, result.value,
               {{"energy", fmt(energy)},
                {"sigma", fmt(sigma)},
                {"purity", fmt(spec.purity)},
                {"metric", metric_name},
                {"no-advantage", result.no_advantage ? "true" : "false"},
                {"root-tol", "1e-9"}});
    return 0;
  }

  if (config.command == "threshold-sigma") {
    const double energy = require_flag(config.energy, "--energy");
    const SeedSpec spec = resolve_seed_group(config, /*beta_allowed=*/false);
    const ThresholdResult result = sigma_threshold(energy, spec.purity);
    emit_point(config, result.value,
               {{"energy", fmt(energy)},
                {"purity", fmt(spec.purity)},
                {"root-tol", "1e-9"}});
    return 0;
  }

  if (config.command == "g") {
    const double energy = require_flag(config.energy, "--energy");
    const double sigma = config.sigma.value_or(0.0);
    const double value = g_function(
        energy, sigma, QuadratureRule::gauss_hermite(config.quad_nodes));
    emit_point(config, value,
               {{"energy", fmt(energy)},
                {"sigma", fmt(sigma)},
                {"quad-nodes", std::to_string(config.quad_nodes)}});
    return 0;
  }

  if (config.command == "scan") {
    if (!config.figure) throw ValidationError("--figure is required for scan");
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), *config.figure) == ids.end()) {
      std::ostringstream msg;
      msg << "--figure: unknown id '" << *config.figure << "' (expected one of:";
      for (const auto& id : ids) msg << ' ' << id;
      msg << ')';
      throw ValidationError(msg.str());
    }
    if (config.format != "csv" && config.format != "json")
      throw ValidationError("--format must be csv or json");

    const ScanTable table = scan(*config.figure, settings);
    std::ostringstream buffer;
    if (config.format == "csv")
      write_csv(table, buffer);
    else
      write_json(table, buffer);
    if (config.output) {
      std::ofstream out(*config.output);
      if (!out)
        throw ValidationError("--output: cannot write '" + *config.output + "'");
      out << buffer.str();
    } else {
      std::cout << buffer.str();
    }
    return 0;
  }

  throw ValidationError("missing or unknown command (expected helstrom, homodyne, "
                        "threshold-beta, threshold-sigma, g or scan)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary PSK with displaced squeezed states: error probabilities, "
               "Helstrom bounds, thresholds and figure datasets"};
  app.set_version_flag("--version", sqpsk::kVersion);

  RunConfig config;
  std::string config_path;

  // All value flags live on the parent app; the subcommands are bare verbs
  // whose unrecognized flags fall through to the parent.
  app.add_option("--energy,-N", "total mean photon number N");
  app.add_option("--beta", "squeezing fraction in [0, 1]");
  app.add_option("--sigma", "phase-diffusion strength (>= 0)");
  app.add_option("--purity", "seed purity in (0, 1]");
  app.add_option("--eta", "preparation-loss transmissivity in (0, 1]");
  app.add_option("--r-tilde", "pre-loss squeezing parameter");
  app.add_option("--metric", "threshold metric: helstrom | homodyne");
  app.add_option("--figure", "scan figure id (see scan --help)");
  app.add_option("--cutoff-tail", "Fock truncation tail target (default 1e-12)");
  app.add_option("--quad-nodes", "starting Gauss-Hermite node count (default 16)");
  app.add_option("--format", "scan output format: csv | json (default csv)");
  app.add_option("--output", "write output to this file instead of stdout");
  app.add_option("--config", config_path, "JSON config file mirroring the flags");

  const char* const commands[] = {"helstrom",        "homodyne", "threshold-beta",
                                  "threshold-sigma", "g",        "scan"};
  const char* const descriptions[] = {
      "Helstrom bound (closed form; Fock oracle when sigma > 0 or purity < 1)",
      "homodyne error probability (phase-averaged quadrature)",
      "largest advantageous squeezing fraction",
      "largest phase noise at which squeezing still helps",
      "small-beta slope integral g(N; sigma)",
      "emit one figure dataset (fig1-left ... fig5-right)"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (const CLI::App* sub : app.get_subcommands())
      config.command = sub->get_name();

    const auto take_double = [&app](const char* flag, std::optional<double>& slot) {
      if (app.count(flag)) slot = app.get_option(flag)->as<double>();
    };
    take_double("--energy", config.energy);
    take_double("--beta", config.beta);
    take_double("--sigma", config.sigma);
    take_double("--purity", config.purity);
    take_double("--eta", config.eta);
    take_double("--r-tilde", config.r_tilde);
    if (app.count("--metric")) config.metric = app.get_option("--metric")->as<std::string>();
    if (app.count("--figure")) config.figure = app.get_option("--figure")->as<std::string>();
    if (app.count("--cutoff-tail"))
      config.cutoff_tail = app.get_option("--cutoff-tail")->as<double>();
    if (app.count("--quad-nodes"))
      config.quad_nodes = app.get_option("--quad-nodes")->as<int>();
    if (app.count("--format")) config.format = app.get_option("--format")->as<std::string>();
    if (app.count("--output")) config.output = app.get_option("--output")->as<std::string>();

    if (!config_path.empty()) merge_config_file(config_path, app, config);

    return run(config);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sqpsk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
