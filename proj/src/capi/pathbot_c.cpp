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

#include <pathbot/error.hpp>
#include <pathbot/messages.hpp>
#include <pathbot/service.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

struct pb_map
{
  pathbot::GridMap map;
};

struct pb_plan
{
  pathbot::GridMap map;
  pathbot::HeuristicKind heuristic;
  pathbot::PlanResult result;
};

struct pb_episode
{
  pathbot::EpisodeReport report;
  double step_len;
};

struct pb_server
{
  std::unique_ptr<pathbot::Service> service;
};

namespace {

thread_local std::string last_error;

pb_status fail(pb_status status, const std::string& message)
{
  last_error = message;
  return status;
}

/// Runs f and converts exceptions to a status plus the thread's last error.
template<typename F>
pb_status guarded(F&& f)
{
  try
  {
    last_error.clear();
    f();
    return PB_OK;
  }
  catch (const pathbot::Error& e)
  {
    return fail(static_cast<pb_status>(e.code()), e.what());
  }
  catch (const std::exception& e)
  {
    return fail(PB_ERR_INTERNAL, e.what());
  }
  catch (...)
  {
    return fail(PB_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool condition, const char* message)
{
  if (!condition)
    throw pathbot::Error(pathbot::ErrorCode::InvalidArgument, message);
}

char* copy_string(const std::string& s)
{
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pathbot::HeuristicKind to_kind(pb_heuristic h)
{
  switch (h)
  {
    case PB_HEURISTIC_MANHATTAN: return pathbot::HeuristicKind::Manhattan;
    case PB_HEURISTIC_EUCLIDEAN: return pathbot::HeuristicKind::Euclidean;
    case PB_HEURISTIC_HALF_SUM: return pathbot::HeuristicKind::HalfSum;
    case PB_HEURISTIC_ZERO: return pathbot::HeuristicKind::Zero;
  }
  throw pathbot::Error(pathbot::ErrorCode::InvalidArgument, "unknown heuristic");
}

pathbot::Heading to_heading(pb_heading h)
{
  switch (h)
  {
    case PB_HEADING_NORTH: return pathbot::Heading::North;
    case PB_HEADING_EAST: return pathbot::Heading::East;
    case PB_HEADING_SOUTH: return pathbot::Heading::South;
    case PB_HEADING_WEST: return pathbot::Heading::West;
  }
  throw pathbot::Error(pathbot::ErrorCode::InvalidArgument, "unknown heading");
}

pathbot::DriveConfig to_drive(const pb_drive_config& c)
{
  pathbot::DriveConfig d;
  d.wheel = {c.wheel_base, c.inches_per_rev, static_cast<double>(c.pulses_per_rev)};
  d.noise.slip_sd = c.slip_sd;
  d.noise.overshoot_lo = c.overshoot_lo;
  d.noise.overshoot_hi = c.overshoot_hi;
  d.noise.tail_time_constant = c.tail_time_constant;
  d.noise.enabled = c.noise != 0;
  d.control.kp = c.kp;
  d.control.kc = c.kc;
  d.control.duty_min = c.duty_min;
  d.control.duty_limit = c.duty_limit;
  d.control.settle_tolerance = c.settle_tolerance;
  d.control.max_ticks = c.max_ticks;
  d.control.dt = c.dt;
  d.control.quiet_ticks = c.quiet_ticks;
  d.max_speed = c.max_speed;
  d.seed = c.seed;
  pathbot::validate(d.wheel);
  pathbot::validate(d.noise);
  require(d.max_speed > 0.0, "max_speed must be positive");
  require(d.control.dt > 0.0, "dt must be positive");
  require(d.control.max_ticks > 0, "max_ticks must be positive");
  return d;
}

} // anonymous namespace

//==============================================================================
extern "C" {

const char* pb_last_error(void)
{
  return last_error.c_str();
}

const char* pb_status_name(pb_status status)
{
  if (status == PB_OK)
    return "Ok";
  if (status == PB_ERR_INTERNAL)
    return "Internal";
  return pathbot::to_string(static_cast<pathbot::ErrorCode>(status));
}

const char* pb_version(void)
{
  return PATHBOT_VERSION;
}

void pb_string_free(char* s)
{
  std::free(s);
}

//==============================================================================
pb_status pb_map_parse(const char* text, pb_map** out)
{
  return guarded([&] {
    require(text && out, "null argument");
    *out = new pb_map{pathbot::parse_map(text)};
  });
}

pb_status pb_map_load(const char* path, pb_map** out)
{
  return guarded([&] {
    require(path && out, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw pathbot::Error(pathbot::ErrorCode::Io, std::string("cannot open ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    try
    {
      *out = new pb_map{pathbot::parse_map(text.str())};
    }
    catch (const pathbot::Error& e)
    {
      throw pathbot::Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void pb_map_free(pb_map* map)
{
  delete map;
}

int pb_map_rows(const pb_map* map)
{
  return map ? map->map.rows() : 0;
}

int pb_map_cols(const pb_map* map)
{
  return map ? map->map.cols() : 0;
}

pb_status pb_map_serialize(const pb_map* map, char** out)
{
  return guarded([&] {
    require(map && out, "null argument");
    *out = copy_string(pathbot::serialize_map(map->map));
  });
}

//==============================================================================
pb_status pb_heuristic_parse(const char* name, pb_heuristic* out)
{
  return guarded([&] {
    require(name && out, "null argument");
    const auto kind = pathbot::parse_heuristic(name);
    if (!kind)
    {
      throw pathbot::Error(pathbot::ErrorCode::InvalidArgument,
        std::string("unknown heuristic '") + name + "'");
    }
    switch (*kind)
    {
      case pathbot::HeuristicKind::Manhattan: *out = PB_HEURISTIC_MANHATTAN; break;
      case pathbot::HeuristicKind::Euclidean: *out = PB_HEURISTIC_EUCLIDEAN; break;
      case pathbot::HeuristicKind::HalfSum: *out = PB_HEURISTIC_HALF_SUM; break;
      case pathbot::HeuristicKind::Zero: *out = PB_HEURISTIC_ZERO; break;
    }
  });
}

pb_status pb_plan_astar(const pb_map* map, pb_heuristic heuristic, pb_plan** out)
{
  return guarded([&] {
    require(map && out, "null argument");
    const auto kind = to_kind(heuristic);
    *out = new pb_plan{map->map, kind, pathbot::astar(map->map, kind)};
  });
}

void pb_plan_free(pb_plan* plan)
{
  delete plan;
}

int pb_plan_found(const pb_plan* plan)
{
  return plan && plan->result.found ? 1 : 0;
}

int pb_plan_cost(const pb_plan* plan)
{
  return plan && plan->result.found ? plan->result.cost : -1;
}

uint64_t pb_plan_nodes_expanded(const pb_plan* plan)
{
  return plan ? plan->result.nodes_expanded : 0;
}

uint64_t pb_plan_max_open_size(const pb_plan* plan)
{
  return plan ? plan->result.max_open_size : 0;
}

size_t pb_plan_length(const pb_plan* plan)
{
  return plan ? plan->result.path.size() : 0;
}

pb_status pb_plan_cell(const pb_plan* plan, size_t index, int* row, int* col)
{
  return guarded([&] {
    require(plan && row && col, "null argument");
    require(index < plan->result.path.size(), "path index out of range");
    *row = plan->result.path[index].row;
    *col = plan->result.path[index].col;
  });
}

pb_status pb_plan_actions(const pb_plan* plan, pb_heading initial, char** out)
{
  return guarded([&] {
    require(plan && out, "null argument");
    std::string text;
    if (plan->result.found)
    {
      for (const auto a : pathbot::path_to_actions(plan->result.path, to_heading(initial)))
      {
        if (!text.empty())
          text += ' ';
        text += pathbot::to_string(a);
      }
    }
    *out = copy_string(text);
  });
}

pb_status pb_plan_overlay(const pb_plan* plan, char** out)
{
  return guarded([&] {
    require(plan && out, "null argument");
    *out = copy_string(pathbot::overlay_path(plan->map, plan->result.path));
  });
}

pb_status pb_plan_json(const pb_plan* plan, pb_heading initial, char** out)
{
  return guarded([&] {
    require(plan && out, "null argument");
    const auto& r = plan->result;

    pathbot::Json actions = pathbot::Json::array();
    if (r.found)
    {
      for (const auto a : pathbot::path_to_actions(r.path, to_heading(initial)))
        actions.push_back(std::string(pathbot::to_string(a)));
    }

    pathbot::Json expansions = pathbot::Json::array();
    for (const auto& n : r.expansions)
    {
      expansions.push_back({{"cell", pathbot::cell_json(n.cell)}, {"g", n.g},
        {"h", n.h}, {"f", n.f},
        {"parent", n.parent ? pathbot::cell_json(*n.parent) : pathbot::Json()}});
    }

    pathbot::Json j = pathbot::path_payload(r);
    j["heuristic"] = pathbot::to_string(plan->heuristic);
    j["nodes_expanded"] = r.nodes_expanded;
    j["max_open_size"] = r.max_open_size;
    j["actions"] = std::move(actions);
    j["expansions"] = std::move(expansions);
    *out = copy_string(j.dump(2) + "\n");
  });
}

//==============================================================================
pb_status pb_bench_run(const pb_bench_config* config, char** csv, char** summary)
{
  return guarded([&] {
    require(config, "null argument");
    require(config->size_count == 0 || config->sizes, "null sizes");
    require(config->seed_count == 0 || config->seeds, "null seeds");

    pathbot::BenchmarkConfig bc;
    bc.sizes.assign(config->sizes, config->sizes + config->size_count);
    bc.seeds.assign(config->seeds, config->seeds + config->seed_count);
    bc.density = config->density;
    require(!bc.sizes.empty(), "at least one size is required");
    require(!bc.seeds.empty(), "at least one seed is required");

    const auto rows = pathbot::benchmark(bc);
    if (csv)
      *csv = copy_string(pathbot::benchmark_csv(rows, config->include_timing != 0));
    if (summary)
      *summary = copy_string(pathbot::benchmark_summary(rows));
  });
}

//==============================================================================
void pb_episode_config_default(pb_episode_config* config)
{
  if (!config)
    return;

  const pathbot::DriveConfig d;
  auto& c = config->drive;
  c.wheel_base = d.wheel.wheel_base;
  c.inches_per_rev = d.wheel.inches_per_rev;
  c.pulses_per_rev = d.wheel.pulses_per_rev;
  c.max_speed = d.max_speed;
  c.noise = d.noise.enabled ? 1 : 0;
  c.slip_sd = d.noise.slip_sd;
  c.overshoot_lo = d.noise.overshoot_lo;
  c.overshoot_hi = d.noise.overshoot_hi;
  c.tail_time_constant = d.noise.tail_time_constant;
  c.kp = d.control.kp;
  c.kc = d.control.kc;
  c.duty_min = d.control.duty_min;
  c.duty_limit = d.control.duty_limit;
  c.settle_tolerance = d.control.settle_tolerance;
  c.max_ticks = d.control.max_ticks;
  c.dt = d.control.dt;
  c.quiet_ticks = d.control.quiet_ticks;
  c.seed = d.seed;

  const pathbot::EpisodeConfig e;
  config->heuristic = PB_HEURISTIC_MANHATTAN;
  config->transport = PB_TRANSPORT_IN_PROCESS;
  config->pacing_bytes_per_s = 0.0;
  config->controller_online = 1;
  config->ack_timeout_ms = static_cast<int>(e.ack_timeout.count());
}

pb_status pb_episode_run(const pb_map* map, const pb_episode_config* config, pb_episode** out)
{
  return guarded([&] {
    require(map && config && out, "null argument");
    require(config->ack_timeout_ms > 0, "ack timeout must be positive");
    require(config->pacing_bytes_per_s >= 0.0, "pacing must not be negative");

    pathbot::EpisodeConfig ec;
    ec.drive = to_drive(config->drive);
    ec.heuristic = to_kind(config->heuristic);
    ec.ack_timeout = std::chrono::milliseconds(config->ack_timeout_ms);
    for (auto& s : ec.stations)
    {
      s.transport = config->transport == PB_TRANSPORT_SOCKET
        ? pathbot::TransportKind::Socket : pathbot::TransportKind::InProcess;
      if (config->pacing_bytes_per_s > 0.0 && s.role != pathbot::StationRole::Host)
        s.pacing_bytes_per_s = config->pacing_bytes_per_s;
      if (s.role == pathbot::StationRole::Controller)
        s.online = config->controller_online != 0;
    }

    *out = new pb_episode{pathbot::run_episode(map->map, ec), ec.drive.wheel.inches_per_rev};
  });
}

void pb_episode_free(pb_episode* episode)
{
  delete episode;
}

int pb_episode_success(const pb_episode* episode)
{
  return episode && episode->report.success ? 1 : 0;
}

const char* pb_episode_outcome(const pb_episode* episode)
{
  return episode ? pathbot::to_string(episode->report.outcome) : "";
}

pb_status pb_episode_json(const pb_episode* episode, char** out)
{
  return guarded([&] {
    require(episode && out, "null argument");
    *out = copy_string(
      pathbot::episode_report_json(episode->report, episode->step_len).dump(2) + "\n");
  });
}

//==============================================================================
pb_status pb_server_start(
  const pb_map* map, const pb_episode_config* config, const char* bind, pb_server** out)
{
  return guarded([&] {
    require(map && config && bind && out, "null argument");
    pathbot::ServiceConfig sc;
    sc.drive = to_drive(config->drive);
    sc.heuristic = to_kind(config->heuristic);
    sc.ack_timeout = std::chrono::milliseconds(config->ack_timeout_ms);
    sc.bind = pathbot::parse_bind_address(bind);
    *out = new pb_server{std::make_unique<pathbot::Service>(map->map, sc)};
  });
}

uint16_t pb_server_port(const pb_server* server)
{
  return server ? server->service->port() : 0;
}

void pb_server_stop(pb_server* server)
{
  delete server;
}

} // extern "C"
