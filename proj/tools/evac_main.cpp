// evac: command-line front end for the evacuation routing toolkit.
//
// Exit codes: 0 success, 2 configuration/usage error (bad flags, unreadable
// or malformed inputs), 3 runtime failure (no route, unreachable cells,
// socket errors, ...).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "evac/crowd_sim.hpp"
#include "evac/density_map.hpp"
#include "evac/dispatch.hpp"
#include "evac/experiments.hpp"
#include "evac/grid_map.hpp"
#include "evac/rng.hpp"
#include "evac/router.hpp"
#include "evac/server.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;

void handle_stop(int) { g_stop = 1; }

evac::GridMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open map file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return evac::GridMap::parse(text);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out.flush()) throw std::runtime_error("short write to " + path);
}

std::string map_name_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

// Options shared by every planning-related subcommand.
struct CostOpts {
  double beta = 0.5;
  double gamma = 5.0;
  int patch_radius = 3;
};

void add_cost_opts(CLI::App* cmd, CostOpts& c) {
  cmd->add_option("--beta", c.beta, "distance/congestion trade-off in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--gamma", c.gamma, "density amplitude per person")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--patch-radius", c.patch_radius, "density footprint radius in cells")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

struct RunArgs {
  std::string map_path;
  std::string out_dir = "out";
  std::vector<double> densities{0.02, 0.06};
  std::vector<std::string> policies{"congestion_aware", "nearest_exit"};
  int trials = 30;
  std::uint64_t seed = 1;
  CostOpts cost;
  int replan_every = 5;
  double tick_seconds = 1.0;
  double v_max = 1.5;
  double v_min_frac = 0.1;
  double rho_cap = 6.0;
  int max_ticks = 10000;
  int threads = 1;
};

int do_run(const RunArgs& a) {
  const evac::GridMap map = load_map(a.map_path);

  evac::ExperimentConfig cfg;
  cfg.map = &map;
  cfg.map_name = map_name_of(a.map_path);
  cfg.densities = a.densities;
  cfg.policies.clear();
  for (const auto& name : a.policies) {
    const auto p = evac::policy_from_name(name);
    if (!p) throw std::invalid_argument("unknown policy: " + name);
    cfg.policies.push_back(*p);
  }
  cfg.trials = a.trials;
  cfg.seed0 = a.seed;
  cfg.beta = a.cost.beta;
  cfg.gamma = a.cost.gamma;
  cfg.patch_radius = a.cost.patch_radius;
  cfg.replan_every = a.replan_every;
  cfg.tick_seconds = a.tick_seconds;
  cfg.v_max = a.v_max;
  cfg.v_min_frac = a.v_min_frac;
  cfg.rho_cap = a.rho_cap;
  cfg.max_ticks = a.max_ticks;
  cfg.planning_threads = a.threads;

  const evac::ExperimentResult res = evac::run_experiment(cfg);

  std::filesystem::create_directories(a.out_dir);
  const std::string runs = a.out_dir + "/runs.csv";
  const std::string curves = a.out_dir + "/curves.csv";
  const std::string summary = a.out_dir + "/summary.csv";
  write_file(runs, res.runs_csv);
  write_file(curves, res.curves_csv);
  write_file(summary, res.summary_csv);

  std::cout << res.summary_csv;
  std::cerr << "wrote " << runs << "\nwrote " << curves << "\nwrote " << summary << "\n";
  return 0;
}

struct BenchArgs {
  std::string map_path;
  std::string out_file;  // empty = stdout
  std::vector<int> agents{10, 100, 500, 1000};
  std::vector<int> workers{1, 2, 4, 8};
  int trials = 5;
  std::uint64_t seed = 1;
  CostOpts cost;
  bool no_repeated = false;
  bool no_dijkstra = false;
};

int do_bench(const BenchArgs& a) {
  const evac::GridMap map = load_map(a.map_path);

  evac::BenchConfig cfg;
  cfg.map = &map;
  cfg.map_name = map_name_of(a.map_path);
  cfg.agent_counts = a.agents;
  cfg.worker_counts = a.workers;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.beta = a.cost.beta;
  cfg.gamma = a.cost.gamma;
  cfg.patch_radius = a.cost.patch_radius;
  cfg.include_repeated = !a.no_repeated;
  cfg.include_dijkstra = !a.no_dijkstra;

  const std::string csv = evac::bench_planners(cfg);
  if (a.out_file.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out_file, csv);
    std::cerr << "wrote " << a.out_file << "\n";
  }
  return 0;
}

struct PlanArgs {
  std::string map_path;
  std::vector<int> src;  // x y
  int agents = 0;
  std::uint64_t seed = 1;
  CostOpts cost;
  std::string dump_density;  // empty = skip
};

int do_plan(const PlanArgs& a) {
  const evac::GridMap map = load_map(a.map_path);

  evac::PopulationCounts counts;
  if (a.agents > 0) {
    std::vector<evac::GridCoord> free_cells;
    for (int y = 0; y < map.height(); ++y)
      for (int x = 0; x < map.width(); ++x)
        if (map.kind(x, y) == evac::CellKind::Free) free_cells.push_back({x, y});
    if (free_cells.empty()) throw std::invalid_argument("map has no free cells to populate");
    evac::Rng rng(a.seed);
    for (int i = 0; i < a.agents; ++i) ++counts[free_cells[rng.below(free_cells.size())]];
  }
  const evac::DensityMap dmap =
      evac::build_density(counts, map, {a.cost.gamma, a.cost.patch_radius});

  if (!a.dump_density.empty()) {
    write_file(a.dump_density, evac::render_heatmap_csv(dmap));
    std::cerr << "wrote " << a.dump_density << "\n";
  }

  const evac::GridCoord src{a.src[0], a.src[1]};
  evac::SearchStats stats;
  const auto route = evac::plan_route(map, dmap, src, map.exits(), {a.cost.beta}, &stats);

  std::cout << "# map=" << map_name_of(a.map_path) << " beta=" << a.cost.beta
            << " gamma=" << a.cost.gamma << " patch_radius=" << a.cost.patch_radius
            << " agents=" << a.agents << " seed=" << a.seed << "\n";
  if (!route) {
    std::cout << "no route from (" << src.x << "," << src.y << ") to any exit\n";
    return 3;
  }
  char line[128];
  std::snprintf(line, sizeof line, "route: %zu cells, cost %.17g, exit (%d,%d)",
                route->cells.size(), route->total_cost, route->chosen_exit.x,
                route->chosen_exit.y);
  std::cout << line << "\n";
  std::cout << "expanded " << stats.expansions << " cells (" << stats.pops << " pops, "
            << stats.reopens << " reopens)\n";
  for (std::size_t i = 0; i < route->cells.size(); ++i) {
    std::cout << (i % 10 == 0 ? (i == 0 ? "" : "\n  ") : " ");
    if (i == 0) std::cout << "  ";
    std::cout << "(" << route->cells[i].x << "," << route->cells[i].y << ")";
  }
  std::cout << "\n";
  return 0;
}

struct ServeArgs {
  std::string map_path;
  std::string host = "127.0.0.1";
  int port = 5555;
  int workers = 4;
  int queue_capacity = 4096;
  CostOpts cost;
};

int do_serve(const ServeArgs& a) {
  const evac::GridMap map = load_map(a.map_path);

  evac::ServiceConfig scfg;
  scfg.map = &map;
  scfg.workers = a.workers;
  scfg.beta = a.cost.beta;
  scfg.gamma = a.cost.gamma;
  scfg.patch_radius = a.cost.patch_radius;
  scfg.queue_capacity = static_cast<std::size_t>(a.queue_capacity);
  evac::PlanningService service(scfg);

  evac::LineServer server(service, {a.host, static_cast<std::uint16_t>(a.port)});
  server.start();
  std::cout << "listening on " << a.host << ":" << server.port() << "\n" << std::flush;

  std::signal(SIGINT, handle_stop);
  std::signal(SIGTERM, handle_stop);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));

  std::cerr << "shutting down\n";
  server.stop();
  return 0;
}

struct ValidateArgs {
  std::string map_path;
};

int do_validate(const ValidateArgs& a) {
  const evac::GridMap map = load_map(a.map_path);
  const evac::MapDiagnostics diag = evac::validate_map(map);

  const auto labels = map.exit_labels();
  const int exit_groups =
      labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
  const int walls = map.cell_count() - map.free_cell_count() -
                    static_cast<int>(map.exits().size());

  std::cout << "map: " << a.map_path << "\n";
  std::cout << "size: " << map.width() << "x" << map.height() << " cells, cell_size "
            << map.cell_size() << " m\n";
  std::cout << "free: " << map.free_cell_count() << "  walls: " << walls
            << "  exit cells: " << map.exits().size() << " (" << exit_groups
            << " exits)\n";
  std::cout << "unreachable free cells: " << diag.unreachable_free_cells << "\n";
  const std::size_t shown = std::min<std::size_t>(diag.unreachable.size(), 10);
  for (std::size_t i = 0; i < shown; ++i)
    std::cout << "  (" << diag.unreachable[i].x << "," << diag.unreachable[i].y << ")\n";
  if (diag.unreachable.size() > shown)
    std::cout << "  ... and " << (diag.unreachable.size() - shown) << " more\n";

  if (diag.unreachable_free_cells > 0) {
    std::cerr << "error: map has unreachable free cells\n";
    return 3;
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congestion-aware evacuation routing"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; sections name subcommands");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run the evacuation experiment grid");
  run->add_option("map", run_args.map_path, "floorplan file")->required();
  run->add_option("--out-dir", run_args.out_dir, "directory for runs/curves/summary CSVs")
      ->capture_default_str();
  run->add_option("--densities", run_args.densities, "agents per free cell, one run set each")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--policies", run_args.policies, "routing policies to compare")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--trials", run_args.trials, "seeds per (density, policy) cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--seed", run_args.seed, "base seed; trial i uses seed+i")
      ->capture_default_str();
  add_cost_opts(run, run_args.cost);
  run->add_option("--replan-every", run_args.replan_every, "ticks between replans")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--tick-seconds", run_args.tick_seconds, "simulated seconds per tick")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--v-max", run_args.v_max, "walking speed in m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--v-min-frac", run_args.v_min_frac, "speed floor as a fraction of v-max")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--rho-cap", run_args.rho_cap, "density where speed hits the floor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--max-ticks", run_args.max_ticks, "tick limit per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--threads", run_args.threads, "planning threads per simulation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "time the planner variants");
  bench->add_option("map", bench_args.map_path, "floorplan file")->required();
  bench->add_option("--out", bench_args.out_file, "CSV output file (default stdout)");
  bench->add_option("--agents", bench_args.agents, "population sizes to time")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--workers", bench_args.workers, "thread counts for the shared-frontier planner")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--trials", bench_args.trials, "timing repetitions per row")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "seed for agent placement")
      ->capture_default_str();
  add_cost_opts(bench, bench_args.cost);
  bench->add_flag("--no-repeated", bench_args.no_repeated, "skip the repeated-search baseline");
  bench->add_flag("--no-dijkstra", bench_args.no_dijkstra, "skip the uniform-cost baseline");

  PlanArgs plan_args;
  CLI::App* plan = app.add_subcommand("plan", "plan one route on a populated map");
  plan->add_option("map", plan_args.map_path, "floorplan file")->required();
  plan->add_option("--src", plan_args.src, "start cell as X Y")->expected(2)->required();
  plan->add_option("--agents", plan_args.agents, "ambient population to scatter")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  plan->add_option("--seed", plan_args.seed, "seed for the ambient population")
      ->capture_default_str();
  add_cost_opts(plan, plan_args.cost);
  plan->add_option("--dump-density", plan_args.dump_density, "write the density field as CSV");

  ServeArgs serve_args;
  CLI::App* serve = app.add_subcommand("serve", "serve the line protocol over TCP");
  serve->add_option("map", serve_args.map_path, "floorplan file")->required();
  serve->add_option("--host", serve_args.host, "bind address")->capture_default_str();
  serve->add_option("--port", serve_args.port, "TCP port (0 = ephemeral)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve->add_option("--workers", serve_args.workers, "planning worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve->add_option("--queue-capacity", serve_args.queue_capacity, "jobs per worker before shedding")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_cost_opts(serve, serve_args.cost);

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "check a floorplan for problems");
  validate->add_option("map", validate_args.map_path, "floorplan file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return do_run(run_args);
    if (*bench) return do_bench(bench_args);
    if (*plan) return do_plan(plan_args);
    if (*serve) return do_serve(serve_args);
    if (*validate) return do_validate(validate_args);
  } catch (const evac::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
