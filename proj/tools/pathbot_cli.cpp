/*
 * Copyright (C) 2026 The pathbot authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <pathbot/pathbot.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

enum ExitCode
{
  ExitOk = 0,
  ExitInput = 1,
  ExitNoPath = 2,
  ExitEpisode = 3,
};

struct InputError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Throws InputError carrying the library message when status is not PB_OK.
void check(pb_status status)
{
  if (status != PB_OK)
    throw InputError(std::string(pb_status_name(status)) + ": " + pb_last_error());
}

struct MapDeleter { void operator()(pb_map* m) const { pb_map_free(m); } };
struct PlanDeleter { void operator()(pb_plan* p) const { pb_plan_free(p); } };
struct EpisodeDeleter { void operator()(pb_episode* e) const { pb_episode_free(e); } };
struct StringDeleter { void operator()(char* s) const { pb_string_free(s); } };

using MapPtr = std::unique_ptr<pb_map, MapDeleter>;
using PlanPtr = std::unique_ptr<pb_plan, PlanDeleter>;
using EpisodePtr = std::unique_ptr<pb_episode, EpisodeDeleter>;

std::string take(char* s)
{
  std::unique_ptr<char, StringDeleter> owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw InputError("cannot write " + path);
}

std::uint64_t parse_u64(const std::string& text)
{
  std::size_t used = 0;
  unsigned long long v = 0;
  try
  {
    v = std::stoull(text, &used);
  }
  catch (const std::exception&)
  {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw InputError("not a non-negative integer: '" + text + "'");
  return v;
}

/// "1..100", "1,2,7", "1..5,9" and "5..30:5" (with a step).
std::vector<std::uint64_t> parse_list(const std::string& text)
{
  std::vector<std::uint64_t> out;
  std::size_t begin = 0;
  while (begin <= text.size())
  {
    const auto end = std::min(text.find(',', begin), text.size());
    const auto item = text.substr(begin, end - begin);
    const auto dots = item.find("..");
    if (dots == std::string::npos)
    {
      out.push_back(parse_u64(item));
    }
    else
    {
      auto rest = item.substr(dots + 2);
      std::uint64_t step = 1;
      if (const auto colon = rest.find(':'); colon != std::string::npos)
      {
        step = parse_u64(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const auto lo = parse_u64(item.substr(0, dots));
      const auto hi = parse_u64(rest);
      if (step == 0 || hi < lo || (hi - lo) / step > 1000000)
        throw InputError("bad range '" + item + "'");
      for (auto v = lo; v <= hi; v += step)
        out.push_back(v);
    }
    begin = end + 1;
  }
  return out;
}

//==============================================================================
struct Options
{
  std::string map;
  std::string heuristic = "manhattan";
  std::string heading = "E";
  std::string noise = "on";
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string sizes = "5..30:5";
  double density = 0.2;
  std::string out;
  std::string overlay;
  std::string bind = "127.0.0.1:8400";
  bool no_timing = false;
  std::string transport = "inprocess";
  double pacing = 0.0;
  double min_success_rate = 0.95;
  double run_for = 0.0;
  bool controller_offline = false;
  pb_episode_config episode{};
};

pb_heuristic heuristic_of(const Options& o)
{
  pb_heuristic h = PB_HEURISTIC_MANHATTAN;
  check(pb_heuristic_parse(o.heuristic.c_str(), &h));
  return h;
}

MapPtr load_map(const std::string& path)
{
  pb_map* raw = nullptr;
  check(pb_map_load(path.c_str(), &raw));
  return MapPtr(raw);
}

/// Map used when a verb that drives the robot gets no --map.
MapPtr default_map()
{
  std::string text;
  for (int r = 0; r < 10; ++r)
  {
    std::string row(10, '.');
    if (r == 0)
      row[0] = 'S';
    if (r == 9)
      row[9] = 'G';
    text += row + "\n";
  }
  pb_map* raw = nullptr;
  check(pb_map_parse(text.c_str(), &raw));
  return MapPtr(raw);
}

pb_episode_config episode_config(const Options& o)
{
  auto c = o.episode;
  c.drive.noise = o.noise == "on" ? 1 : 0;
  c.heuristic = heuristic_of(o);
  c.transport = o.transport == "socket" ? PB_TRANSPORT_SOCKET : PB_TRANSPORT_IN_PROCESS;
  c.pacing_bytes_per_s = o.pacing;
  c.controller_online = o.controller_offline ? 0 : 1;
  return c;
}

std::vector<std::uint64_t> seed_list(const Options& o, std::uint64_t fallback)
{
  if (!o.seeds.empty())
    return parse_list(o.seeds);
  return {o.seed.value_or(fallback)};
}

//==============================================================================
int cmd_plan(const Options& o)
{
  if (o.map.empty())
    throw InputError("plan needs --map");

  const auto map = load_map(o.map);
  const auto heading = o.heading.empty() ? 'E' : o.heading.front();
  const pb_heading initial = heading == 'N' ? PB_HEADING_NORTH
    : heading == 'S' ? PB_HEADING_SOUTH
    : heading == 'W' ? PB_HEADING_WEST : PB_HEADING_EAST;

  pb_plan* raw = nullptr;
  check(pb_plan_astar(map.get(), heuristic_of(o), &raw));
  const PlanPtr plan(raw);

  char* text = nullptr;
  if (!o.out.empty())
  {
    check(pb_plan_json(plan.get(), initial, &text));
    write_file(o.out, take(text));
  }

  if (!pb_plan_found(plan.get()))
  {
    std::cout << "no path\n"
              << "nodes_expanded: " << pb_plan_nodes_expanded(plan.get()) << "\n";
    return ExitNoPath;
  }

  check(pb_plan_overlay(plan.get(), &text));
  const auto overlay = take(text);
  if (!o.overlay.empty())
    write_file(o.overlay, overlay);

  check(pb_plan_actions(plan.get(), initial, &text));
  std::cout << "cost: " << pb_plan_cost(plan.get()) << "\n"
            << "nodes_expanded: " << pb_plan_nodes_expanded(plan.get()) << "\n"
            << "max_open_size: " << pb_plan_max_open_size(plan.get()) << "\n"
            << "actions: " << take(text) << "\n"
            << overlay;
  return ExitOk;
}

int cmd_bench(const Options& o)
{
  std::vector<int> sizes;
  for (const auto s : parse_list(o.sizes))
  {
    if (s < 1 || s > 1000)
      throw InputError("grid size out of range: " + std::to_string(s));
    sizes.push_back(static_cast<int>(s));
  }
  auto seeds = o.seeds.empty() ? parse_list("1..20") : parse_list(o.seeds);
  if (o.seeds.empty() && o.seed)
    seeds = {*o.seed};

  const pb_bench_config config{sizes.data(), sizes.size(), o.density, seeds.data(),
    seeds.size(), o.no_timing ? 0 : 1};

  char* csv = nullptr;
  char* summary = nullptr;
  check(pb_bench_run(&config, o.out.empty() ? nullptr : &csv, &summary));
  if (!o.out.empty())
    write_file(o.out, take(csv));
  std::cout << take(summary);
  return ExitOk;
}

int cmd_simulate(const Options& o)
{
  const auto map = o.map.empty() ? default_map() : load_map(o.map);
  const auto seeds = seed_list(o, o.episode.drive.seed);
  auto config = episode_config(o);

  if (seeds.size() == 1)
  {
    config.drive.seed = seeds.front();
    pb_episode* raw = nullptr;
    check(pb_episode_run(map.get(), &config, &raw));
    const EpisodePtr episode(raw);

    char* text = nullptr;
    if (!o.out.empty())
    {
      check(pb_episode_json(episode.get(), &text));
      write_file(o.out, take(text));
    }

    const std::string outcome = pb_episode_outcome(episode.get());
    std::cout << "seed " << seeds.front() << ": " << outcome << "\n";
    if (outcome == "NoPath")
      return ExitNoPath;
    return pb_episode_success(episode.get()) ? ExitOk : ExitEpisode;
  }

  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::size_t successes = 0;
  bool no_path = false;
  for (const auto seed : seeds)
  {
    config.drive.seed = seed;
    pb_episode* raw = nullptr;
    check(pb_episode_run(map.get(), &config, &raw));
    const EpisodePtr episode(raw);

    const std::string outcome = pb_episode_outcome(episode.get());
    const bool success = pb_episode_success(episode.get()) != 0;
    successes += success ? 1 : 0;
    no_path = no_path || outcome == "NoPath";
    if (!success)
      std::cout << "seed " << seed << ": " << outcome << "\n";
    runs.push_back({{"seed", seed}, {"outcome", outcome}, {"success", success}});
  }

  const double rate = static_cast<double>(successes) / static_cast<double>(seeds.size());
  char line[128];
  std::snprintf(line, sizeof(line), "success rate: %zu/%zu = %.3f\n", successes,
    seeds.size(), rate);
  std::cout << line;

  if (!o.out.empty())
  {
    nlohmann::ordered_json j;
    j["episodes"] = seeds.size();
    j["successes"] = successes;
    j["success_rate"] = rate;
    j["runs"] = std::move(runs);
    write_file(o.out, j.dump(2) + "\n");
  }

  if (no_path)
    return ExitNoPath;
  return rate >= o.min_success_rate ? ExitOk : ExitEpisode;
}

std::atomic<bool> interrupted = false;

extern "C" void on_signal(int)
{
  interrupted = true;
}

int cmd_serve(const Options& o)
{
  const auto map = o.map.empty() ? default_map() : load_map(o.map);
  auto config = episode_config(o);
  config.drive.seed = o.seed.value_or(config.drive.seed);

  pb_server* server = nullptr;
  check(pb_server_start(map.get(), &config, o.bind.c_str(), &server));

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  const auto host = o.bind.substr(0, o.bind.rfind(':'));
  std::cout << "gateway listening on ws://" << host << ":" << pb_server_port(server)
            << std::endl;

  const auto start = std::chrono::steady_clock::now();
  while (!interrupted)
  {
    if (o.run_for > 0.0
      && std::chrono::steady_clock::now() - start >= std::chrono::duration<double>(o.run_for))
      break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }

  pb_server_stop(server);
  std::cout << "gateway stopped" << std::endl;
  return ExitOk;
}

} // anonymous namespace

//==============================================================================
int main(int argc, char** argv)
{
  Options o;
  pb_episode_config_default(&o.episode);
  auto& d = o.episode.drive;

  CLI::App app{"pathbot: grid planner, drive simulator and station bus"};
  app.set_version_flag("--version", std::string(pb_version()));
  app.set_config("--config", "", "Flat key = value file; flags on the command line win");
  app.allow_config_extras(false);
  app.require_subcommand(1);
  app.fallthrough();

  auto* plan = app.add_subcommand("plan", "Plan a path with A* and print the actions");
  auto* bench = app.add_subcommand("bench", "Compare DFS, BFS and A* on random grids");
  auto* simulate = app.add_subcommand("simulate", "Run planned episodes on the simulated robot");
  auto* serve = app.add_subcommand("serve", "Host the stations and the WebSocket gateway");

  app.add_option("--map", o.map, "Map file")->check(CLI::ExistingFile);
  app.add_option("--heuristic", o.heuristic, "manhattan, euclidean, half or zero")
    ->capture_default_str();
  app.add_option("--heading", o.heading, "Initial heading for the action list: N, E, S or W")
    ->check(CLI::IsMember({"N", "E", "S", "W"}))
    ->capture_default_str();
  app.add_option("--noise", o.noise, "Drive noise")
    ->check(CLI::IsMember({"on", "off"}))
    ->capture_default_str();
  app.add_option("--seed", o.seed, "Single seed");
  app.add_option("--seeds", o.seeds, "Seed list such as 1..100 or 1,4,9");
  app.add_option("--sizes", o.sizes, "Grid sizes such as 5..30:5 or 5,10")->capture_default_str();
  app.add_option("--density", o.density, "Obstacle density")->capture_default_str();
  app.add_option("--out", o.out, "Machine-readable output file");
  app.add_option("--overlay", o.overlay, "Write the map with the path drawn as '*'");
  app.add_option("--bind", o.bind, "Gateway address host:port")->capture_default_str();
  app.add_flag("--no-timing", o.no_timing, "Leave the wall_time_us column empty");
  app.add_option("--transport", o.transport, "Station transport")
    ->check(CLI::IsMember({"inprocess", "socket"}))
    ->capture_default_str();
  app.add_option("--pacing", o.pacing, "Link throttle in bytes/s, 0 for none")
    ->check(CLI::NonNegativeNumber);
  app.add_option("--min-success-rate", o.min_success_rate,
       "Multi-seed simulate fails below this rate")
    ->check(CLI::Range(0.0, 1.0))
    ->capture_default_str();
  app.add_option("--run-for", o.run_for, "serve: stop after this many seconds, 0 waits for a signal")
    ->check(CLI::NonNegativeNumber);
  app.add_flag("--controller-offline", o.controller_offline,
    "simulate: leave the controller station down");
  app.add_option("--ack-timeout-ms", o.episode.ack_timeout_ms)->capture_default_str();

  app.add_option("--wheel-base", d.wheel_base, "inches")->capture_default_str();
  app.add_option("--inches-per-rev", d.inches_per_rev)->capture_default_str();
  app.add_option("--pulses-per-rev", d.pulses_per_rev)->capture_default_str();
  app.add_option("--max-speed", d.max_speed, "inches/s at full duty")->capture_default_str();
  app.add_option("--slip-sd", d.slip_sd)->capture_default_str();
  app.add_option("--overshoot-lo", d.overshoot_lo, "pulses")->capture_default_str();
  app.add_option("--overshoot-hi", d.overshoot_hi, "pulses")->capture_default_str();
  app.add_option("--tail-time-constant", d.tail_time_constant, "seconds")->capture_default_str();
  app.add_option("--kp", d.kp)->capture_default_str();
  app.add_option("--kc", d.kc)->capture_default_str();
  app.add_option("--duty-min", d.duty_min)->capture_default_str();
  app.add_option("--duty-limit", d.duty_limit)->capture_default_str();
  app.add_option("--settle-tolerance", d.settle_tolerance, "pulses")->capture_default_str();
  app.add_option("--max-ticks", d.max_ticks)->capture_default_str();
  app.add_option("--dt", d.dt, "seconds")->capture_default_str();
  app.add_option("--quiet-ticks", d.quiet_ticks)->capture_default_str();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const auto code = app.exit(e);
    return code == 0 ? ExitOk : ExitInput;
  }

  try
  {
    if (*plan)
      return cmd_plan(o);
    if (*bench)
      return cmd_bench(o);
    if (*simulate)
      return cmd_simulate(o);
    if (*serve)
      return cmd_serve(o);
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return ExitInput;
  }
  return ExitInput;
}
