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

#include <pathbot/episode.hpp>
#include <pathbot/error.hpp>
#include <pathbot/messages.hpp>

#include <algorithm>

namespace pathbot {

//==============================================================================
HostStation::HostStation(BusPort& port, double step_len)
: _port(port),
  _step_len(step_len)
{
  _port.subscribe(topics::PlanAck, [this](const BusMessage& msg) {
    std::lock_guard lock(_mutex);
    _acked = msg.payload.at("seq_of_cmd").get<std::uint64_t>();
    _cv.notify_all();
  });

  _port.subscribe(topics::Pose, [this](const BusMessage& msg) {
    const auto& p = msg.payload;
    const Pose pose = from_map_frame({p.at("x_in").get<double>(),
      p.at("y_in").get<double>(), p.at("theta_rad").get<double>()});
    const auto cell = cell_from_json(p.at("cell"));
    std::lock_guard lock(_mutex);
    _pose = pose;
    if (_cells.empty() || _cells.back() != cell)
      _cells.push_back(cell);
  });
}

HostStation::Outcome HostStation::run(const GridMap& map, HeuristicKind heuristic,
  Heading initial, std::chrono::milliseconds ack_timeout)
{
  {
    std::lock_guard lock(_mutex);
    _acked.reset();
    _pose.reset();
    _cells = {map.start()};
  }

  Outcome out;
  out.plan = astar(map, heuristic);
  _port.publish(topics::Map, map_payload(map));
  _port.publish(topics::PlanPath, path_payload(out.plan));

  if (out.plan.found)
  {
    out.actions = path_to_actions(out.plan.path, initial);
    for (const auto action : out.actions)
    {
      const auto steps = action == Action::Stop ? 0 : 1;
      const auto seq = _port.publish(topics::PlanActions,
        command_payload({action, steps}));
      if (action == Action::Stop)
        break;

      std::unique_lock lock(_mutex);
      if (!_cv.wait_for(lock, ack_timeout, [&] { return _acked == seq; }))
      {
        out.ack_timeout = true;
        break;
      }
    }
  }

  // Handlers may still be running for messages that arrived with the last ack.
  _port.drain();
  std::lock_guard lock(_mutex);
  out.executed_cells = _cells;
  out.final_pose = _pose;
  return out;
}

//==============================================================================
BridgeStation::BridgeStation(BusPort& port)
: _port(port)
{
  _port.subscribe(topics::PlanActions, [this](const BusMessage& msg) {
    const auto cmd = command_from_payload(msg.payload);
    if (cmd.action == Action::Stop)
      return;
    {
      std::lock_guard lock(_mutex);
      _pending = msg.seq;
    }
    _port.publish(topics::DriveCmd, msg.payload);
  });

  _port.subscribe(topics::DriveAck, [this](const BusMessage&) {
    std::optional<std::uint64_t> pending;
    {
      std::lock_guard lock(_mutex);
      std::swap(pending, _pending);
    }
    // Acks for commands the bridge did not send (teleop) stay local.
    if (pending)
      _port.publish(topics::PlanAck, {{"seq_of_cmd", *pending}});
  });
}

//==============================================================================
ControllerStation::ControllerStation(BusPort& port, const DriveConfig& config)
: _port(port),
  _config(config),
  _sim(config.wheel, config.noise, config.seed, Pose{}, config.max_speed)
{
  _port.subscribe(topics::Map, [this](const BusMessage& msg) { on_map(msg); });
  _port.subscribe(topics::DriveCmd, [this](const BusMessage& msg) { on_command(msg); });
}

void ControllerStation::on_map(const BusMessage& msg)
{
  const auto map = map_from_payload(msg.payload);
  std::lock_guard lock(_mutex);
  _sim.reset_pose(pose_at(map.start(), Heading::East, _config.wheel.inches_per_rev));
}

void ControllerStation::on_command(const BusMessage& msg)
{
  const auto cmd = command_from_payload(msg.payload);
  StepReport report;
  Pose pose;
  {
    std::lock_guard lock(_mutex);
    report = run_step(cmd, _sim, _config.control);
    pose = _sim.pose();
    _reports.push_back(report);
  }
  _port.publish(topics::Pose, pose_payload(pose, _config.wheel.inches_per_rev));
  _port.publish(topics::DriveAck, ack_payload(report));
}

Pose ControllerStation::pose() const
{
  std::lock_guard lock(_mutex);
  return _sim.pose();
}

std::vector<StepReport> ControllerStation::reports() const
{
  std::lock_guard lock(_mutex);
  return _reports;
}

//==============================================================================
const StationConfig& EpisodeConfig::station(StationRole role) const
{
  for (const auto& s : stations)
  {
    if (s.role == role)
      return s;
  }
  throw Error(ErrorCode::InvalidArgument, "episode config lacks a station role");
}

const char* to_string(EpisodeOutcome outcome)
{
  switch (outcome)
  {
    case EpisodeOutcome::Success: return "Success";
    case EpisodeOutcome::OffGoal: return "OffGoal";
    case EpisodeOutcome::NoPath: return "NoPath";
    case EpisodeOutcome::AckTimeout: return "AckTimeout";
  }
  return "Unknown";
}

namespace {

void check_roles(const EpisodeConfig& config)
{
  for (const auto role :
    {StationRole::Host, StationRole::Bridge, StationRole::Controller})
  {
    const auto n = std::count_if(config.stations.begin(), config.stations.end(),
      [role](const StationConfig& s) { return s.role == role; });
    if (n != 1)
      throw Error(ErrorCode::InvalidArgument, "exactly one station per role is required");
  }
  if (!config.station(StationRole::Host).online)
    throw Error(ErrorCode::InvalidArgument, "the host station must be online");
}

} // anonymous namespace

EpisodeReport run_episode(const GridMap& map, const EpisodeConfig& config)
{
  check_roles(config);
  validate(config.drive.wheel);
  validate(config.drive.noise);

  Bus bus;
  bus.enable_trace();

  std::unique_ptr<BusEndpoint> endpoint;
  const bool any_socket = std::any_of(config.stations.begin(), config.stations.end(),
    [](const StationConfig& s) { return s.online && s.transport == TransportKind::Socket; });
  if (any_socket)
    endpoint = std::make_unique<BusEndpoint>(bus);

  const auto open_port = [&](StationRole role, const char* name) {
    const auto& sc = config.station(role);
    if (sc.transport == TransportKind::Socket)
      return connect_port(endpoint->host(), endpoint->port(), name, sc.pacing_bytes_per_s);
    return make_local_port(bus, name, sc.pacing_bytes_per_s);
  };

  std::unique_ptr<BusPort> controller_port;
  std::unique_ptr<BusPort> bridge_port;
  std::unique_ptr<BusPort> host_port;
  std::unique_ptr<ControllerStation> controller;
  std::unique_ptr<BridgeStation> bridge;
  std::unique_ptr<HostStation> host;

  const double step_len = config.drive.wheel.inches_per_rev;
  if (config.station(StationRole::Controller).online)
  {
    controller_port = open_port(StationRole::Controller, "controller");
    controller = std::make_unique<ControllerStation>(*controller_port, config.drive);
  }
  if (config.station(StationRole::Bridge).online)
  {
    bridge_port = open_port(StationRole::Bridge, "bridge");
    bridge = std::make_unique<BridgeStation>(*bridge_port);
  }
  host_port = open_port(StationRole::Host, "host");
  host = std::make_unique<HostStation>(*host_port, step_len);

  auto outcome =
    host->run(map, config.heuristic, config.initial_heading, config.ack_timeout);

  EpisodeReport report;
  if (controller)
    report.steps = controller->reports();

  // Ports first: their executors are the only callers into the stations.
  host_port.reset();
  bridge_port.reset();
  controller_port.reset();
  bus.drain();

  report.trace = bus.trace();
  report.plan = std::move(outcome.plan);
  report.actions = std::move(outcome.actions);
  report.executed_cells = std::move(outcome.executed_cells);
  report.final_pose =
    outcome.final_pose.value_or(pose_at(map.start(), config.initial_heading, step_len));
  report.final_cell = cell_of(*report.final_pose, step_len);

  if (!report.plan.found)
    report.outcome = EpisodeOutcome::NoPath;
  else if (outcome.ack_timeout)
    report.outcome = EpisodeOutcome::AckTimeout;
  else if (report.final_cell == map.goal())
    report.outcome = EpisodeOutcome::Success;
  else
    report.outcome = EpisodeOutcome::OffGoal;
  report.success = report.outcome == EpisodeOutcome::Success;
  return report;
}

//==============================================================================
Json episode_report_json(const EpisodeReport& report, double step_len)
{
  Json cells = Json::array();
  for (const auto& c : report.executed_cells)
    cells.push_back(cell_json(c));

  Json actions = Json::array();
  for (const auto a : report.actions)
    actions.push_back(std::string(to_string(a)));

  Json trace = Json::array();
  for (const auto& m : report.trace)
  {
    trace.push_back({{"topic", m.topic}, {"seq", m.seq}, {"publisher", m.publisher},
      {"payload", m.payload}});
  }

  Json out;
  out["outcome"] = to_string(report.outcome);
  out["success"] = report.success;
  out["plan"] = path_payload(report.plan);
  out["actions"] = std::move(actions);
  out["executed_cells"] = std::move(cells);
  out["final_pose"] =
    report.final_pose ? pose_payload(*report.final_pose, step_len) : Json();
  out["final_cell"] = report.final_cell ? cell_json(*report.final_cell) : Json();
  out["trace"] = std::move(trace);
  return out;
}

bool ack_gated(const std::vector<BusMessage>& trace)
{
  int acks = -1;
  for (const auto& m : trace)
  {
    if (m.topic == topics::PlanActions)
    {
      if (acks != -1 && acks != 1)
        return false;
      acks = 0;
    }
    else if (m.topic == topics::DriveAck && acks != -1)
    {
      ++acks;
    }
  }
  return true;
}

} // namespace pathbot
