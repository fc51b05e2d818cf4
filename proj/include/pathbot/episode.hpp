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

#ifndef PATHBOT__EPISODE_HPP
#define PATHBOT__EPISODE_HPP

#include <pathbot/bus.hpp>
#include <pathbot/controller.hpp>
#include <pathbot/planner.hpp>
#include <pathbot/transport.hpp>

#include <array>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>

namespace pathbot {

enum class StationRole
{
  Host,
  Bridge,
  Controller,
};

enum class TransportKind
{
  /// Direct calls into the bus.
  InProcess,
  /// Loopback TCP through a BusEndpoint, using the serial frame format.
  Socket,
};

struct StationConfig
{
  StationRole role = StationRole::Host;
  TransportKind transport = TransportKind::InProcess;
  /// Optional throttle; 115200 baud is 11520 bytes/s with 8N1 framing.
  std::optional<double> pacing_bytes_per_s;
  /// false simulates a station that never came up.
  bool online = true;
};

struct DriveConfig
{
  WheelSpec wheel;
  NoiseParams noise;
  ControllerParams control;
  double max_speed = 16.0;
  std::uint64_t seed = 1;
};

//==============================================================================
/// Planner station. Publishes the map and the plan, then dispatches one
/// action at a time on /plan/actions, waiting for the matching /plan/ack
/// before the next. Ends every plan with STOP.
class HostStation
{
public:
  struct Outcome
  {
    PlanResult plan;
    std::vector<Action> actions;
    /// Start cell followed by each distinct cell reported on /pose.
    std::vector<Cell> executed_cells;
    std::optional<Pose> final_pose;
    bool ack_timeout = false;
  };

  HostStation(BusPort& port, double step_len);

  Outcome run(const GridMap& map, HeuristicKind heuristic, Heading initial,
    std::chrono::milliseconds ack_timeout);

private:
  BusPort& _port;
  double _step_len;
  std::mutex _mutex;
  std::condition_variable _cv;
  std::optional<std::uint64_t> _acked;
  std::optional<Pose> _pose;
  std::vector<Cell> _cells;
};

/// On-board computer. Relays /plan/actions to /drive/cmd (the closing STOP
/// is not relayed) and /drive/ack back to the host as /plan/ack.
class BridgeStation
{
public:
  explicit BridgeStation(BusPort& port);

private:
  BusPort& _port;
  std::mutex _mutex;
  std::optional<std::uint64_t> _pending;
};

/// Control box. Owns the simulated drive; runs one closed-loop step per
/// /drive/cmd, then publishes /pose and /drive/ack. A /map message places the
/// robot on the start cell facing east.
class ControllerStation
{
public:
  ControllerStation(BusPort& port, const DriveConfig& config);

  /// Snapshot of the drive, for diagnostics.
  Pose pose() const;
  std::vector<StepReport> reports() const;

private:
  void on_map(const BusMessage& msg);
  void on_command(const BusMessage& msg);

  BusPort& _port;
  DriveConfig _config;
  mutable std::mutex _mutex;
  DriveState _sim;
  std::vector<StepReport> _reports;
};

//==============================================================================
struct EpisodeConfig
{
  std::array<StationConfig, 3> stations = {
    StationConfig{StationRole::Host, TransportKind::InProcess, {}, true},
    StationConfig{StationRole::Bridge, TransportKind::InProcess, {}, true},
    StationConfig{StationRole::Controller, TransportKind::InProcess, {}, true}};
  HeuristicKind heuristic = HeuristicKind::Manhattan;
  Heading initial_heading = Heading::East;
  DriveConfig drive;
  std::chrono::milliseconds ack_timeout{5000};

  const StationConfig& station(StationRole role) const;
};

enum class EpisodeOutcome
{
  Success,
  /// Every action was acknowledged but the robot ended off the goal cell.
  OffGoal,
  NoPath,
  AckTimeout,
};

const char* to_string(EpisodeOutcome outcome);

struct EpisodeReport
{
  EpisodeOutcome outcome = EpisodeOutcome::NoPath;
  bool success = false;
  PlanResult plan;
  std::vector<Action> actions;
  std::vector<Cell> executed_cells;
  std::vector<BusMessage> trace;
  std::vector<StepReport> steps;
  std::optional<Pose> final_pose;
  std::optional<Cell> final_cell;
};

/// Wires host, bridge and controller onto a fresh bus (in-process or over
/// loopback sockets per station) and runs the map to completion. A missing
/// acknowledgement yields outcome AckTimeout with the partial trace.
EpisodeReport run_episode(const GridMap& map, const EpisodeConfig& config);

/// Report file: outcome, success, plan, actions, executed cells, final pose
/// and cell, and the full message trace.
Json episode_report_json(const EpisodeReport& report, double step_len);

/// Checks that every pair of consecutive /plan/actions messages has exactly
/// one /drive/ack between them.
bool ack_gated(const std::vector<BusMessage>& trace);

} // namespace pathbot

#endif // PATHBOT__EPISODE_HPP
