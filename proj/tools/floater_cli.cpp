// Experiment harness for the mobile excitable lattice.
//
//   floater run   --preset fig5 --seed 42 --out runs/a
//   floater sweep --preset fig6a --seeds 10 --out runs/sweep
//   floater serve --port 8080 --preset fig5

#include <atomic>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "floater/config.hpp"
#include "floater/metrics.hpp"
#include "floater/presets.hpp"
#include "floater/simulation.hpp"
#include "floater/snapshot.hpp"
#include "floater/steering_server.hpp"
#include "floater/sweep.hpp"
#include "floater/trajectory_csv.hpp"

namespace fs = std::filesystem;
using namespace floater;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flags shared by run, sweep and serve.
struct SimFlags {
  std::string preset;
  std::string rule;
  std::string config_file;
  std::optional<int> size;
  std::optional<std::int64_t> steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> record_every;
  std::optional<std::int64_t> render_every;
  std::optional<double> light_x;
  std::optional<double> light_y;
  std::optional<double> kt;
  std::optional<double> kr;
  std::optional<double> p_excite;

  void attach(CLI::App& app) {
    auto* p = app.add_option("--preset", preset, "figure preset (fig5, fig6a..fig6f)");
    auto* r = app.add_option("--rule", rule, "four-digit rule code, e.g. 2201");
    p->excludes(r);
    app.add_option("--config", config_file, "key=value config file")->check(CLI::ExistingFile);
    app.add_option("--size", size, "lattice width and height in cells");
    app.add_option("--steps", steps, "number of steps");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--record-every", record_every, "trajectory record interval");
    app.add_option("--render-every", render_every, "snapshot interval");
    app.add_option("--light-x", light_x, "light x (world units)");
    app.add_option("--light-y", light_y, "light y (world units)");
    app.add_option("--kt", kt, "translation gain");
    app.add_option("--kr", kr, "rotation gain");
    app.add_option("--p-excite", p_excite, "edge excitation probability");
  }

  /// Preset defaults, then config file, then explicit flags.
  [[nodiscard]] SimConfig resolve(bool require_source) const {
    Settings settings;
    if (!preset.empty()) {
      const auto found = find_preset(preset);
      if (!found) throw UsageError("unknown preset '" + preset + "'");
      settings["rule"] = std::string(found->rule);
      settings["steps"] = std::to_string(preset_config(*found).steps);
    } else if (rule.empty() && require_source) {
      throw UsageError("exactly one of --preset or --rule is required");
    }
    if (!config_file.empty()) {
      for (auto& [k, v] : load_settings(config_file)) settings.insert_or_assign(k, v);
    }
    auto set = [&](const char* key, const auto& value) {
      if (value) {
        std::ostringstream os;
        os.precision(17);
        os << *value;
        settings.insert_or_assign(key, os.str());
      }
    };
    if (!rule.empty()) settings.insert_or_assign("rule", rule);
    if (size) {
      set("width", size);
      set("height", size);
    }
    set("steps", steps);
    set("seed", seed);
    set("record_every", record_every);
    set("render_every", render_every);
    set("light_x", light_x);
    set("light_y", light_y);
    set("k_translate", kt);
    set("k_rotate", kr);
    set("p_excite", p_excite);
    return resolve_config(settings);
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot write '" + path.string() + "'");
  }
  out << text;
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "write failed for '" + path.string() + "'");
  }
}

WorldWindow snapshot_window(const SimConfig& cfg) {
  const double reach = cfg.initial_distance() + std::max(cfg.width, cfg.height);
  return WorldWindow::centred(cfg.light, reach);
}

int cmd_run(const SimFlags& flags, const fs::path& out) {
  const SimConfig cfg = flags.resolve(true);
  fs::create_directories(out);

  const WorldWindow window = snapshot_window(cfg);
  const double ppu = 600.0 / (window.x_max - window.x_min);
  std::vector<Vec2> path;
  path.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  const auto records = run_simulation(cfg, [&](const Simulation& sim) {
    path.push_back(sim.pose().position);
    const auto step = sim.step_count();
    if (step % cfg.render_every == 0 || step == cfg.steps) {
      const Image img =
          render_snapshot(sim.lattice(), sim.pose(), sim.light(), path, window, ppu);
      write_ppm(img, out / ("snap_" + std::to_string(step) + ".ppm"));
    }
  });
  write_trajectory_csv(records, out / "trajectory.csv");
  const auto metrics = compute_metrics(records, cfg.light);
  write_text(out / "metrics.txt", "rule=" + cfg.rule + "\nseed=" + std::to_string(cfg.seed) +
                                      "\nsteps=" + std::to_string(cfg.steps) + "\n" +
                                      format_metrics(metrics));
  std::cout << format_metrics(metrics);
  return kExitOk;
}

int cmd_sweep(const SimFlags& flags, int n_seeds, unsigned threads, const fs::path& out) {
  const SimConfig cfg = flags.resolve(true);
  fs::create_directories(out);
  const std::uint64_t base = flags.seed.value_or(1);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_seeds; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));

  const auto result = run_sweep(cfg, seeds, threads,
                                [&](std::uint64_t seed, std::span<const TrajectoryRecord> recs) {
                                  write_trajectory_csv(
                                      recs, out / ("trajectory_seed" + std::to_string(seed) + ".csv"));
                                });
  write_text(out / "seeds.csv", format_seed_table(result.seeds));
  const std::string summary = "rule=" + cfg.rule + "\n" + format_summary(result.summary);
  write_text(out / "summary.txt", summary);
  std::cout << summary;
  return kExitOk;
}

std::atomic<bool>* g_stop_flag = nullptr;

extern "C" void handle_signal(int) {
  if (g_stop_flag) g_stop_flag->store(true);
}

int cmd_serve(const SimFlags& flags, int port, const std::string& bind, int steps_per_second) {
  SimFlags f = flags;
  if (f.preset.empty() && f.rule.empty()) f.preset = "fig5";
  const SimConfig cfg = f.resolve(false);
  SteeringServer::Options opts;
  opts.port = port;
  opts.bind_address = bind;
  opts.steps_per_second = steps_per_second;
  SteeringServer server(cfg, opts);
  try {
    server.start();
  } catch (const ServerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  g_stop_flag = &server.stop_flag();
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cout << "serving rule " << cfg.rule << " on " << bind << ":" << server.port() << std::endl;
  server.wait();
  g_stop_flag = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile excitable lattice: phototaxis experiments"};
  app.require_subcommand(1);

  SimFlags run_flags;
  std::string run_out = "runs/run";
  auto* run = app.add_subcommand("run", "simulate one seed; write trajectory, snapshots, metrics");
  run_flags.attach(*run);
  run->add_option("--out", run_out, "output directory");

  SimFlags sweep_flags;
  std::string sweep_out = "runs/sweep";
  int n_seeds = 10;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run consecutive seeds and summarise");
  sweep_flags.attach(*sweep);
  sweep->add_option("--seeds", n_seeds, "number of seeds")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_option("--out", sweep_out, "output directory");

  SimFlags serve_flags;
  int port = 8080;
  int speed = 100;
  std::string bind = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "interactive steering service (line-delimited JSON over TCP)");
  serve_flags.attach(*serve);
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--bind", bind, "bind address");
  serve->add_option("--speed", speed, "steps per second")->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags, run_out);
    if (*sweep) return cmd_sweep(sweep_flags, n_seeds, threads, sweep_out);
    if (*serve) return cmd_serve(serve_flags, port, bind, speed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RuleParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
