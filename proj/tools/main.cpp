#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using cli::json;

namespace {

fs::path make_run_dir(const fs::path& base, const std::string& cmd) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  fs::create_directories(base);
  const std::string stem = cmd + "_" + stamp;
  fs::path dir = base / stem;
  for (int k = 2; fs::exists(dir); ++k) dir = base / (stem + "_" + std::to_string(k));
  fs::create_directory(dir);
  return dir;
}

json certified_constants(const wwbnf_params& p) {
  json c = json::object();
  double v = 0.0;
  if (wwbnf_remainder_constant(&p, &v) == WWBNF_OK) c["remainder_constant"] = cli::real_json(v);
  if (wwbnf_resonance_cutoff(&p, &v) == WWBNF_OK) c["resonance_cutoff"] = cli::real_json(v);
  c["remainder_constant_is_certified_substitute"] = true;
  return c;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  os << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff normal form and water-wave numerics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "parent directory for run directories (default: runs)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1, 1024));

  const std::map<std::string, std::pair<std::string, std::function<int(cli::Context&)>>> commands = {
      {"resonances", {"enumerate exact three-wave resonances", cli::cmd_resonances}},
      {"min-gap", {"smallest non-resonant phase", cli::cmd_min_gap}},
      {"wilton", {"capillarity of the 2:1 Wilton ripple", cli::cmd_wilton}},
      {"coeffs", {"export cubic coefficient tables", cli::cmd_coeffs}},
      {"verify", {"run the property suites", cli::cmd_verify}},
      {"bnf-flow", {"integrate the resonant normal-form flow", cli::cmd_bnf_flow}},
      {"ww-sim", {"integrate the full water-wave system", cli::cmd_ww_sim}},
      {"lifespan", {"epsilon sweep of the stopping time", cli::cmd_lifespan}},
  };
  for (const auto& [name, c] : commands) app.add_subcommand(name, c.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = cli::RunConfig::load(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kUsage;
  }

  fs::path dir;
  int rc = cli::kOk;
  std::string error;
  json meta = json::object();
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<cli::Context> ctx;
  try {
    const auto cfg_seed = cfg.integer("run", "seed", 1);
    const auto cfg_threads = cfg.integer("run", "threads", 1);
    const auto cfg_out = cfg.text("run", "out", "runs");
    if (cfg_seed < 0) throw cli::ConfigError("run.seed must be >= 0");
    if (cfg_threads < 1 || cfg_threads > 1024) throw cli::ConfigError("run.threads must be in [1, 1024]");
    dir = make_run_dir(out_dir.empty() ? fs::path(cfg_out) : fs::path(out_dir), cmd);
    ctx.emplace(cli::Context{cfg, dir});
    ctx->seed = seed.value_or(static_cast<std::uint64_t>(cfg_seed));
    ctx->threads = threads.value_or(static_cast<int>(cfg_threads));
    std::cerr << "run directory: " << dir.string() << '\n';
    rc = commands.at(cmd).second(*ctx);
  } catch (const cli::ConfigError& e) {
    error = std::string("config error: ") + e.what();
    rc = cli::kUsage;
  } catch (const cli::ApiError& e) {
    error = e.what();
    rc = e.status == WWBNF_INVALID_ARGUMENT || e.status == WWBNF_DOMAIN ? cli::kUsage : cli::kCheckFailed;
  } catch (const std::exception& e) {
    error = e.what();
    rc = cli::kCheckFailed;
  }
  if (!error.empty()) std::cerr << cmd << ": " << error << '\n';
  if (!ctx) return rc;

  meta["command"] = cmd;
  meta["version"] = wwbnf_version();
  meta["config_file"] = config_path;
  meta["seed"] = ctx->seed;
  meta["threads"] = ctx->threads;
  try {
    const wwbnf_params p = cli::read_params(cfg);
    meta["resonance_tol"] = cli::real_json(cfg.real("resonance", "tol", wwbnf_default_resonance_tol()));
    meta["dno_order"] = cfg.integer("ww", "dno_order", 3);
    meta["certified_constants"] = certified_constants(p);
  } catch (const cli::ConfigError&) {
  }
  meta["config"] = cfg.echo();
  meta["result"] = ctx->meta;
  meta["outputs"] = ctx->outputs;
  meta["exit_code"] = rc;
  meta["partial"] = !error.empty() || ctx->meta.value("partial", false);
  if (!error.empty()) meta["error"] = error;
  write_json(dir / "metadata.json", meta);

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_json(dir / "timing.json", json{{"wall_time_s", wall}});
  return rc;
}
