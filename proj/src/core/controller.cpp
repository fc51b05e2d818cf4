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

#include <pathbot/controller.hpp>
#include <pathbot/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pathbot {

void validate(const StepCommand& cmd)
{
  if (cmd.action == Action::Stop ? cmd.steps < 0 : cmd.steps < 1)
  {
    throw Error(ErrorCode::InvalidCommand,
      std::string(to_string(cmd.action)) + " needs a positive step count, got "
        + std::to_string(cmd.steps));
  }
}

LoopState begin_step(const StepCommand& cmd, const WheelSpec& spec,
  EncoderReading origin)
{
  validate(cmd);
  validate(spec);

  const auto rev = static_cast<std::int64_t>(std::llround(spec.pulses_per_rev));
  const auto quarter = static_cast<std::int64_t>(quarter_turn_pulses(spec));
  const std::int64_t n = cmd.steps;

  LoopState ls;
  ls.origin = origin;
  switch (cmd.action)
  {
    case Action::Forward: ls.target_pulses = {n * rev, n * rev}; break;
    case Action::Back: ls.target_pulses = {-n * rev, -n * rev}; break;
    case Action::Right: ls.target_pulses = {n * quarter, -n * quarter}; break;
    case Action::Left: ls.target_pulses = {-n * quarter, n * quarter}; break;
    case Action::Stop: ls.target_pulses = {0, 0}; break;
  }
  ls.delta_steps = ls.target_pulses;
  ls.settled = cmd.action == Action::Stop;
  return ls;
}

namespace {

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

// At the target, or past it by no more than the tolerance.
bool in_band(std::int64_t target, std::int64_t delta, int tolerance)
{
  if (std::abs(delta) > tolerance)
    return false;
  return sign(target) == 0 || delta * sign(target) <= 0;
}

} // anonymous namespace

TickOutput control_tick(const LoopState& state, EncoderReading encoders,
  const ControllerParams& params)
{
  TickOutput out;
  auto& ls = out.state;
  ls = state;
  ls.counted_pulses = {encoders.left - state.origin.left,
    encoders.right - state.origin.right};
  ls.delta_steps = {ls.target_pulses.left - ls.counted_pulses.left,
    ls.target_pulses.right - ls.counted_pulses.right};

  const bool brake_l =
    in_band(ls.target_pulses.left, ls.delta_steps.left, params.settle_tolerance);
  const bool brake_r =
    in_band(ls.target_pulses.right, ls.delta_steps.right, params.settle_tolerance);
  ls.settled = brake_l && brake_r;
  if (ls.settled)
  {
    out.command = MotorCommand::brake();
    return out;
  }

  const auto base = [&](bool brake, std::int64_t delta) {
    if (brake)
      return 0.0;
    return std::clamp(params.kp * static_cast<double>(std::abs(delta)),
      params.duty_min, 1.0);
  };
  double duty_l = base(brake_l, ls.delta_steps.left);
  double duty_r = base(brake_r, ls.delta_steps.right);

  // Comparator: progress is measured along each wheel's commanded direction
  // so that quarter turns (opposite wheel signs) compare like straight runs.
  const auto progress_l = ls.counted_pulses.left * sign(ls.target_pulses.left);
  const auto progress_r = ls.counted_pulses.right * sign(ls.target_pulses.right);
  const double boost =
    params.kc * static_cast<double>(std::abs(progress_r - progress_l));
  if (boost > 0.0)
  {
    const bool left_lags =
      std::abs(ls.delta_steps.left) >= std::abs(ls.delta_steps.right);
    double& lag = left_lags ? duty_l : duty_r;
    if ((left_lags ? !brake_l : !brake_r))
    {
      lag += boost;
      if (lag > 1.0)
      {
        const double scale = 1.0 / lag;
        duty_l *= scale;
        duty_r *= scale;
      }
    }
  }

  const auto wheel = [&](bool brake, std::int64_t delta, double duty) {
    if (brake)
      return WheelCommand{};
    return WheelCommand{
      delta > 0 ? WheelDirection::Forward : WheelDirection::Reverse,
      std::min(duty, params.duty_limit)};
  };
  out.command.left = wheel(brake_l, ls.delta_steps.left, duty_l);
  out.command.right = wheel(brake_r, ls.delta_steps.right, duty_r);
  return out;
}

//==============================================================================
Pose nominal_end_pose(const Pose& start, const StepCommand& cmd,
  const WheelSpec& spec)
{
  const double n = cmd.steps;
  const double half_pi = std::numbers::pi / 2.0;
  Pose end = start;
  switch (cmd.action)
  {
    case Action::Forward:
    case Action::Back:
    {
      const double d =
        (cmd.action == Action::Forward ? 1.0 : -1.0) * n * spec.inches_per_rev;
      end.x += d * std::cos(start.theta);
      end.y += d * std::sin(start.theta);
      break;
    }
    case Action::Left:
      end.theta = normalize_angle(start.theta + n * half_pi);
      break;
    case Action::Right:
      end.theta = normalize_angle(start.theta - n * half_pi);
      break;
    case Action::Stop:
      break;
  }
  return end;
}

StepReport run_step(const StepCommand& cmd, DriveState& sim,
  const ControllerParams& params)
{
  StepReport report;
  report.command = cmd;
  report.start_pose = sim.pose();

  LoopState ls = begin_step(cmd, sim.spec(), sim.read_encoders());
  auto last = sim.read_encoders();
  int quiet = 0;
  int ticks = 0;
  bool done = false;

  while (true)
  {
    const auto enc = sim.read_encoders();
    const auto out = control_tick(ls, enc, params);
    ls = out.state;
    sim.apply_command(out.command);

    quiet = (ls.settled && enc == last) ? quiet + 1 : 0;
    last = enc;
    if (ls.settled && quiet >= params.quiet_ticks)
    {
      done = true;
      break;
    }

    if (ticks >= params.max_ticks)
      break;

    sim.tick(params.dt);
    ++ticks;
  }

  sim.apply_command(MotorCommand::brake());

  const auto enc = sim.read_encoders();
  report.status = done ? StepStatus::Settled : StepStatus::SettleTimeout;
  report.ticks = ticks;
  report.pulse_error = {enc.left - ls.origin.left - ls.target_pulses.left,
    enc.right - ls.origin.right - ls.target_pulses.right};
  report.final_pose = sim.pose();

  const auto nominal = nominal_end_pose(report.start_pose, cmd, sim.spec());
  report.distance_error_in =
    std::hypot(report.final_pose.x - nominal.x, report.final_pose.y - nominal.y);
  report.heading_error_rad = normalize_angle(report.final_pose.theta - nominal.theta);
  return report;
}

} // namespace pathbot
