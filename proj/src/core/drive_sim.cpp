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

#include <pathbot/drive_sim.hpp>
#include <pathbot/error.hpp>

#include <algorithm>
#include <cmath>

namespace pathbot {

void validate(const NoiseParams& noise)
{
  if (!(noise.slip_sd >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "slip_sd must be non-negative");
  if (!(noise.overshoot_lo >= 0.0) || !(noise.overshoot_lo <= noise.overshoot_hi))
    throw Error(ErrorCode::InvalidArgument,
      "overshoot range must satisfy 0 <= lo <= hi");
  if (!(noise.tail_time_constant > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tail_time_constant must be positive");
}

namespace {

constexpr double RestSpeed = 1e-6;

// Whole pulses crossed by a signed phase; the small slack absorbs rounding
// in accumulated tick sums.
std::int64_t whole_pulses(double phase)
{
  constexpr double slack = 1e-9;
  if (phase >= 0.0)
    return static_cast<std::int64_t>(std::floor(phase + slack));
  return -static_cast<std::int64_t>(std::floor(-phase + slack));
}

double signed_speed(const WheelCommand& cmd, double max_speed)
{
  const double duty = std::clamp(cmd.duty, 0.0, 1.0);
  switch (cmd.direction)
  {
    case WheelDirection::Forward: return duty * max_speed;
    case WheelDirection::Reverse: return -duty * max_speed;
    case WheelDirection::Brake: return 0.0;
  }
  return 0.0;
}

} // anonymous namespace

//==============================================================================
DriveState::DriveState(WheelSpec spec, NoiseParams noise, std::uint64_t seed,
  Pose initial, double max_speed)
: _spec(spec),
  _noise(noise),
  _max_speed(max_speed),
  _pose(initial),
  _rng(seed)
{
  validate(_spec);
  validate(_noise);
  if (!(max_speed > 0.0))
    throw Error(ErrorCode::InvalidArgument, "max_speed must be positive");
  _pose.theta = normalize_angle(_pose.theta);
}

void DriveState::apply_command(const MotorCommand& cmd)
{
  set_target(_left, cmd.left);
  set_target(_right, cmd.right);
}

void DriveState::set_target(Wheel& wheel, const WheelCommand& cmd)
{
  const double next = signed_speed(cmd, _max_speed);
  const double prev = wheel.target;
  wheel.target = next;

  if (!_noise.enabled)
    return;

  const bool same_direction = (prev > 0.0 && next > 0.0) || (prev < 0.0 && next < 0.0);
  const double kept = same_direction ? next : 0.0;

  if (std::abs(kept) < std::abs(prev))
  {
    const double fraction = (prev * prev - kept * kept) / (_max_speed * _max_speed);
    const double extra_in = convert(wheel.overshoot * fraction, DistanceUnit::Pulses,
      DistanceUnit::Inches, _spec);
    wheel.tail_speed += std::copysign(extra_in / _noise.tail_time_constant, prev);
  }

  if (next != 0.0 && !same_direction)
  {
    std::uniform_real_distribution<double> draw(_noise.overshoot_lo, _noise.overshoot_hi);
    wheel.overshoot = draw(_rng);
  }
}

double DriveState::advance(Wheel& wheel, double dt)
{
  double distance = wheel.target * dt;
  if (_noise.enabled)
  {
    if (wheel.target != 0.0 && _noise.slip_sd > 0.0)
      distance *= 1.0 + _noise.slip_sd * _slip(_rng);

    if (wheel.tail_speed != 0.0)
    {
      const double tau = _noise.tail_time_constant;
      const double decay = std::exp(-dt / tau);
      distance += wheel.tail_speed * tau * (1.0 - decay);
      wheel.tail_speed *= decay;
      if (std::abs(wheel.tail_speed) < RestSpeed)
        wheel.tail_speed = 0.0;
    }
  }

  wheel.travel += distance;
  wheel.phase += convert(distance, DistanceUnit::Inches, DistanceUnit::Pulses, _spec);
  wheel.count = whole_pulses(wheel.phase);
  return distance;
}

void DriveState::tick(double dt)
{
  if (!(dt > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tick dt must be positive");

  const double dl = advance(_left, dt);
  const double dr = advance(_right, dt);
  _pose = integrate_pose(_pose, dr / dt, dl / dt, dt, _spec);
  _time += dt;
}

bool DriveState::at_rest() const noexcept
{
  return _left.target == 0.0 && _right.target == 0.0 && _left.tail_speed == 0.0
    && _right.tail_speed == 0.0;
}

//==============================================================================
OpenLoopResult open_loop_step(DriveState& state, double dt)
{
  const auto before = state.read_encoders();
  const double rev_per_s = state.max_speed() / state.spec().inches_per_rev;
  const auto burst_ticks = static_cast<long>(std::lround(1.0 / rev_per_s / dt));

  const WheelCommand full{WheelDirection::Forward, 1.0};
  state.apply_command({full, full});
  for (long i = 0; i < burst_ticks; ++i)
    state.tick(dt);

  state.apply_command(MotorCommand::brake());
  // Bounded wait for the run-on to die out.
  for (long i = 0; i < static_cast<long>(60.0 / dt) && !state.at_rest(); ++i)
    state.tick(dt);

  const auto after = state.read_encoders();
  const double nominal = state.spec().pulses_per_rev;
  return {static_cast<double>(after.left - before.left) - nominal,
    static_cast<double>(after.right - before.right) - nominal};
}

} // namespace pathbot
