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

#ifndef PATHBOT__DRIVE_SIM_HPP
#define PATHBOT__DRIVE_SIM_HPP

#include <pathbot/kinematics.hpp>

#include <cstdint>
#include <random>

namespace pathbot {

enum class WheelDirection
{
  Forward,
  Reverse,
  Brake,
};

struct WheelCommand
{
  WheelDirection direction = WheelDirection::Brake;
  /// PWM duty in [0, 1]; ignored under Brake.
  double duty = 0.0;

  friend bool operator==(const WheelCommand&, const WheelCommand&) = default;
};

/// H-bridge input for both motors.
struct MotorCommand
{
  WheelCommand left;
  WheelCommand right;

  static MotorCommand brake() { return {}; }

  friend bool operator==(const MotorCommand&, const MotorCommand&) = default;
};

struct NoiseParams
{
  /// Standard deviation of the per-tick multiplicative speed noise.
  double slip_sd = 0.05;
  /// Range of the pulse overshoot a full-speed stop produces.
  double overshoot_lo = 66.0;
  double overshoot_hi = 190.0;
  /// Decay time constant (s) of the run-on that carries the overshoot.
  double tail_time_constant = 0.15;
  bool enabled = true;

  static NoiseParams off()
  {
    NoiseParams p;
    p.enabled = false;
    return p;
  }
};

/// Throws Error(InvalidArgument) on negative or inverted ranges.
void validate(const NoiseParams& noise);

struct EncoderReading
{
  std::int64_t left = 0;
  std::int64_t right = 0;

  friend bool operator==(const EncoderReading&, const EncoderReading&) = default;
};

//==============================================================================
/// Simulated motors, wheels and Hall encoders.
///
/// Duty maps linearly onto a wheel speed target (direction sign x duty x
/// max_speed). With noise enabled each tick scales the target speed by
/// (1 + e), e ~ Normal(0, slip_sd), and every time a wheel slows down it runs
/// on: a decaying extra speed whose integral is overshoot x (v_old^2 -
/// v_new^2) / max_speed^2 pulses, with overshoot drawn uniformly from
/// [overshoot_lo, overshoot_hi] whenever the wheel starts a new burst. A full
/// speed stop therefore overshoots by exactly the drawn amount.
///
/// Encoders count whole pulses of effective wheel travel; the fractional part
/// is carried between ticks. Copying a DriveState copies the generator, so a
/// copy replays identically.
class DriveState
{
public:
  DriveState(WheelSpec spec, NoiseParams noise, std::uint64_t seed,
    Pose initial = {}, double max_speed = 16.0);

  void apply_command(const MotorCommand& cmd);

  /// Advances the plant by dt seconds (dt > 0).
  void tick(double dt);

  EncoderReading read_encoders() const noexcept { return {_left.count, _right.count}; }

  const Pose& pose() const noexcept { return _pose; }
  double time() const noexcept { return _time; }
  const WheelSpec& spec() const noexcept { return _spec; }
  const NoiseParams& noise() const noexcept { return _noise; }
  double max_speed() const noexcept { return _max_speed; }

  double target_left() const noexcept { return _left.target; }
  double target_right() const noexcept { return _right.target; }

  /// Signed wheel travel in inches since construction (exact, not quantized).
  double travel_left() const noexcept { return _left.travel; }
  double travel_right() const noexcept { return _right.travel; }

  /// No commanded speed and no run-on left on either wheel.
  bool at_rest() const noexcept;

  /// Places the robot without touching the encoders.
  void reset_pose(const Pose& pose) { _pose = pose; }

private:
  struct Wheel
  {
    double target = 0.0;
    double tail_speed = 0.0;
    double overshoot = 0.0;
    double travel = 0.0;
    double phase = 0.0;
    std::int64_t count = 0;
  };

  void set_target(Wheel& wheel, const WheelCommand& cmd);
  double advance(Wheel& wheel, double dt);

  WheelSpec _spec;
  NoiseParams _noise;
  double _max_speed;
  Pose _pose;
  double _time = 0.0;
  Wheel _left;
  Wheel _right;
  std::mt19937_64 _rng;
  std::normal_distribution<double> _slip{0.0, 1.0};
};

//==============================================================================
struct OpenLoopResult
{
  /// Pulses counted beyond the nominal one revolution, per wheel.
  double overshoot_left = 0.0;
  double overshoot_right = 0.0;
};

/// Drives both wheels at full duty for the time one revolution nominally takes
/// at max_speed, brakes, and waits until the wheels are at rest. No feedback.
OpenLoopResult open_loop_step(DriveState& state, double dt = 1e-3);

} // namespace pathbot

#endif // PATHBOT__DRIVE_SIM_HPP
