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

#ifndef PATHBOT__CONTROLLER_HPP
#define PATHBOT__CONTROLLER_HPP

#include <pathbot/action.hpp>
#include <pathbot/drive_sim.hpp>

#include <cstdint>

namespace pathbot {

/// One discrete drive order. A step is one wheel revolution for FORWARD and
/// BACK, and one in-place quarter turn for LEFT and RIGHT.
struct StepCommand
{
  Action action = Action::Stop;
  int steps = 0;

  friend bool operator==(const StepCommand&, const StepCommand&) = default;
};

/// Throws Error(InvalidCommand) when steps < 1 for a moving action or
/// steps < 0 for STOP.
void validate(const StepCommand& cmd);

struct ControllerParams
{
  /// Proportional gain, duty per pulse of remaining error.
  double kp = 1.0 / 440.0;
  /// Comparator gain, duty per pulse of inter-wheel progress difference.
  double kc = 0.5 / 440.0;
  double duty_min = 0.05;
  /// Hard cap applied after everything else (fault injection uses 0).
  double duty_limit = 1.0;
  int settle_tolerance = 4;
  int max_ticks = 10000;
  double dt = 1e-3;
  /// Encoders must stay unchanged this many ticks after settling.
  int quiet_ticks = 100;
};

template<typename T>
struct PerWheel
{
  T left{};
  T right{};

  friend bool operator==(const PerWheel&, const PerWheel&) = default;
};

/// Feedback state for one step. Pulse quantities are relative to the encoder
/// readings at begin_step.
struct LoopState
{
  PerWheel<std::int64_t> target_pulses;
  PerWheel<std::int64_t> counted_pulses;
  /// target - counted.
  PerWheel<std::int64_t> delta_steps;
  EncoderReading origin;
  bool settled = false;
};

LoopState begin_step(const StepCommand& cmd, const WheelSpec& spec,
  EncoderReading origin = {});

/// One pass of both per-wheel loops plus the cross-wheel comparator.
///
/// Each wheel is driven toward its target at duty clamp(kp * |delta|,
/// duty_min, 1). A wheel brakes once it has reached its target or passed it
/// by no more than settle_tolerance; undershoot is always driven out. The
/// wheel with the larger |delta| gets kc * |progress_R - progress_L| of extra
/// duty, and if that pushes it past 1 both duties are scaled down together.
/// settled is set when both wheels brake.
struct TickOutput
{
  MotorCommand command;
  LoopState state;
};

TickOutput control_tick(const LoopState& state, EncoderReading encoders,
  const ControllerParams& params);

enum class StepStatus
{
  Settled,
  SettleTimeout,
};

struct StepReport
{
  StepCommand command;
  StepStatus status = StepStatus::Settled;
  /// counted - target, per wheel.
  PerWheel<std::int64_t> pulse_error;
  /// Distance between the final position and the nominal end position.
  double distance_error_in = 0.0;
  /// Final heading minus nominal heading, normalized.
  double heading_error_rad = 0.0;
  int ticks = 0;
  Pose start_pose;
  Pose final_pose;

  bool ok() const noexcept { return status == StepStatus::Settled; }
};

/// Closes the loop on the simulator until settled and quiet, or until
/// max_ticks. A timeout is reported through status, never thrown.
StepReport run_step(const StepCommand& cmd, DriveState& sim,
  const ControllerParams& params = {});

/// Nominal pose after executing cmd from start.
Pose nominal_end_pose(const Pose& start, const StepCommand& cmd,
  const WheelSpec& spec);

} // namespace pathbot

#endif // PATHBOT__CONTROLLER_HPP
