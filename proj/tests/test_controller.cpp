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

#include "support/oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace pathbot;

namespace {

constexpr double pi = std::numbers::pi;

double duty_of(const WheelCommand& w)
{
  return w.direction == WheelDirection::Brake ? 0.0 : w.duty;
}

bool in_band(std::int64_t target, std::int64_t delta, int tolerance)
{
  const int s = (target > 0) - (target < 0);
  return std::abs(delta) <= tolerance && (s == 0 || delta * s <= 0);
}

} // anonymous namespace

TEST_SUITE("controller")
{

TEST_CASE("step targets")
{
  const WheelSpec spec;
  const auto target = [&](Action a, int n) {
    return begin_step({a, n}, spec).target_pulses;
  };
  CHECK(target(Action::Forward, 1) == PerWheel<std::int64_t>{440, 440});
  CHECK(target(Action::Back, 2) == PerWheel<std::int64_t>{-880, -880});
  CHECK(target(Action::Left, 1) == PerWheel<std::int64_t>{-432, 432});
  CHECK(target(Action::Right, 1) == PerWheel<std::int64_t>{432, -432});
  CHECK(target(Action::Right, 3) == PerWheel<std::int64_t>{1296, -1296});

  const auto stop = begin_step({Action::Stop, 0}, spec);
  CHECK(stop.settled);
  CHECK(stop.target_pulses == PerWheel<std::int64_t>{0, 0});

  const auto origin = begin_step({Action::Forward, 1}, spec, {17, -3});
  CHECK(origin.origin == EncoderReading{17, -3});
  CHECK(origin.counted_pulses == PerWheel<std::int64_t>{0, 0});
}

TEST_CASE("invalid step commands")
{
  const WheelSpec spec;
  for (const auto& cmd : {StepCommand{Action::Forward, 0}, StepCommand{Action::Left, -1}})
  {
    try
    {
      begin_step(cmd, spec);
      FAIL("expected InvalidCommand");
    }
    catch (const Error& e)
    {
      CHECK(e.code() == ErrorCode::InvalidCommand);
    }
  }
  CHECK_NOTHROW(begin_step({Action::Stop, 0}, spec));
}

TEST_CASE("a quarter turn target rotates the robot by 90 degrees")
{
  const WheelSpec spec;
  const double pulse_in = spec.inches_per_rev / spec.pulses_per_rev;
  for (const auto a : {Action::Left, Action::Right})
  {
    DriveState sim(spec, NoiseParams::off(), 1);
    const auto r = run_step({a, 1}, sim);
    REQUIRE(r.ok());
    CHECK(r.pulse_error == PerWheel<std::int64_t>{0, 0});
    const double expected = a == Action::Left ? pi / 2.0 : -pi / 2.0;
    // One pulse on each wheel, in opposite directions, is 2 * pulse / base.
    CHECK(oracle::angle_diff(sim.pose().theta, expected) <= 2.0 * pulse_in / spec.wheel_base);
    CHECK(std::hypot(sim.pose().x, sim.pose().y) <= 1e-9);
  }
}

TEST_CASE("symmetric start gets equal duties")
{
  const WheelSpec spec;
  const ControllerParams params;
  const auto ls = begin_step({Action::Forward, 1}, spec);
  const auto out = control_tick(ls, {0, 0}, params);
  CHECK(out.command.left == out.command.right);
  CHECK(out.command.left.direction == WheelDirection::Forward);
  CHECK(out.state.delta_steps == PerWheel<std::int64_t>{440, 440});
  CHECK_FALSE(out.state.settled);
}

TEST_CASE("a lagging wheel is boosted until the lag closes")
{
  const WheelSpec spec;
  const ControllerParams params;
  // counted (410, 440): the left wheel is 30 pulses behind.
  auto ls = begin_step({Action::Forward, 1}, spec, {-410, -440});
  const auto first = control_tick(ls, {0, 0}, params);
  CHECK(first.state.counted_pulses == PerWheel<std::int64_t>{410, 440});
  CHECK(duty_of(first.command.left) > duty_of(first.command.right));

  DriveState sim(spec, NoiseParams::off(), 1);
  auto lag = std::abs(first.state.counted_pulses.right - first.state.counted_pulses.left);
  for (int k = 0; k < 5000; ++k)
  {
    const auto out = control_tick(ls, sim.read_encoders(), params);
    ls = out.state;
    const auto now = std::abs(ls.counted_pulses.right - ls.counted_pulses.left);
    REQUIRE(now <= lag);
    lag = now;
    if (ls.settled)
      break;
    sim.apply_command(out.command);
    sim.tick(params.dt);
  }
  CHECK(ls.settled);
  CHECK(lag == 0);
}

TEST_CASE("reaching the target brakes both wheels")
{
  const WheelSpec spec;
  const auto ls = begin_step({Action::Forward, 1}, spec);
  const auto out = control_tick(ls, {440, 440}, ControllerParams{});
  CHECK(out.command == MotorCommand::brake());
  CHECK(out.state.settled);
  CHECK(out.state.delta_steps == PerWheel<std::int64_t>{0, 0});
}

TEST_CASE("settled wheels are inside the tolerance band")
{
  const WheelSpec spec;
  const ControllerParams params;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> offset(-8, 8);
  for (int i = 0; i < 5000; ++i)
  {
    const auto ls = begin_step({Action::Forward, 1}, spec);
    const auto out = control_tick(ls, {440 + offset(rng), 440 + offset(rng)}, params);
    const auto d = out.state.delta_steps;
    const bool band = in_band(440, d.left, params.settle_tolerance)
      && in_band(440, d.right, params.settle_tolerance);
    CHECK(out.state.settled == band);
    if (out.state.settled)
    {
      CHECK(std::abs(d.left) <= params.settle_tolerance);
      CHECK(std::abs(d.right) <= params.settle_tolerance);
    }
  }
}

TEST_CASE("the comparator favors the wheel that lags its target")
{
  const WheelSpec spec;
  const ControllerParams params;
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> steps(1, 3);
  std::uniform_int_distribution<int> back(0, 1);
  int undershoot_cases = 0;
  for (int i = 0; i < 20000; ++i)
  {
    const StepCommand cmd{back(rng) ? Action::Back : Action::Forward, steps(rng)};
    const auto ls = begin_step(cmd, spec);
    const auto t = ls.target_pulses.left;
    std::uniform_int_distribution<std::int64_t> progress(-40, std::abs(t) + 40);
    const auto sgn = t > 0 ? 1 : -1;
    const EncoderReading enc{progress(rng) * sgn, progress(rng) * sgn};
    if (enc.left == enc.right)
      continue;

    const auto out = control_tick(ls, enc, params);
    const auto d = out.state.delta_steps;
    const bool left_lags = std::abs(d.left) > std::abs(d.right);
    const bool right_lags = std::abs(d.right) > std::abs(d.left);
    const double dl = duty_of(out.command.left);
    const double dr = duty_of(out.command.right);

    if (left_lags && !in_band(t, d.left, params.settle_tolerance))
      CHECK(dl > dr);
    if (right_lags && !in_band(t, d.right, params.settle_tolerance))
      CHECK(dr > dl);

    // Both wheels short of the target: fewer counted pulses means more duty.
    if (d.left * sgn > 0 && d.right * sgn > 0)
    {
      ++undershoot_cases;
      const bool left_behind = enc.left * sgn < enc.right * sgn;
      CHECK((left_behind ? dl > dr : dr > dl));
    }
  }
  CHECK(undershoot_cases > 1000);
}

TEST_CASE("noiseless steps settle with zero pulse error")
{
  const WheelSpec spec;
  for (const auto a : {Action::Forward, Action::Back, Action::Left, Action::Right})
  {
    for (int n = 1; n <= 5; ++n)
    {
      DriveState sim(spec, NoiseParams::off(), 1);
      const auto r = run_step({a, n}, sim);
      CAPTURE(n);
      CHECK(r.ok());
      CHECK(r.pulse_error == PerWheel<std::int64_t>{0, 0});
    }
  }
}

TEST_CASE("one noiseless forward step advances 8 inches")
{
  const WheelSpec spec;
  DriveState sim(spec, NoiseParams::off(), 1);
  const auto r = run_step({Action::Forward, 1}, sim);
  CHECK(r.ok());
  CHECK(sim.read_encoders() == EncoderReading{440, 440});
  CHECK(std::abs(sim.pose().x - 8.0) <= spec.inches_per_rev / spec.pulses_per_rev);
  CHECK(std::abs(sim.pose().y) <= 1e-12);
  CHECK(r.distance_error_in <= spec.inches_per_rev / spec.pulses_per_rev);
  CHECK(r.ticks < ControllerParams{}.max_ticks);
}

TEST_CASE("STOP completes immediately")
{
  DriveState sim({}, NoiseParams::off(), 1);
  const auto r = run_step({Action::Stop, 0}, sim);
  CHECK(r.ok());
  CHECK(r.pulse_error == PerWheel<std::int64_t>{0, 0});
  CHECK(r.distance_error_in == 0.0);
}

TEST_CASE("a noisy step settles within the tolerance")
{
  const WheelSpec spec;
  const ControllerParams params;
  const double pulse_in = spec.inches_per_rev / spec.pulses_per_rev;
  DriveState sim(spec, NoiseParams{}, 7);
  const auto r = run_step({Action::Forward, 1}, sim);
  REQUIRE(r.ok());
  // Distance as the encoders measure it.
  CHECK(std::abs(r.pulse_error.left) * pulse_in <= params.settle_tolerance * pulse_in);
  CHECK(std::abs(r.pulse_error.right) * pulse_in <= params.settle_tolerance * pulse_in);
  // Slip also moves the robot sideways, which the encoders cannot see.
  CHECK(r.distance_error_in < 0.36 + 0.15);
}

TEST_CASE("noisy steps keep the wheels together")
{
  const ControllerParams params;
  double diff = 0.0;
  const int seeds = 100;
  for (int seed = 1; seed <= seeds; ++seed)
  {
    DriveState sim({}, NoiseParams{}, static_cast<std::uint64_t>(seed));
    const auto r = run_step({Action::Forward, 1}, sim);
    REQUIRE(r.ok());
    diff += static_cast<double>(std::abs(r.pulse_error.right - r.pulse_error.left));
  }
  CHECK(diff / seeds <= params.settle_tolerance);
}

TEST_CASE("a dead drive times out")
{
  ControllerParams params;
  params.duty_limit = 0.0;
  params.max_ticks = 1500;
  DriveState sim({}, NoiseParams::off(), 1);
  const auto r = run_step({Action::Forward, 1}, sim, params);
  CHECK(r.status == StepStatus::SettleTimeout);
  CHECK_FALSE(r.ok());
  CHECK(r.ticks == params.max_ticks);
  CHECK(r.pulse_error == PerWheel<std::int64_t>{-440, -440});
}

TEST_CASE("noiseless progress never goes backwards")
{
  const WheelSpec spec;
  const ControllerParams params;
  for (const auto a : {Action::Forward, Action::Back, Action::Left, Action::Right})
  {
    for (int n = 1; n <= 3; ++n)
    {
      DriveState sim(spec, NoiseParams::off(), 1);
      auto ls = begin_step({a, n}, spec, sim.read_encoders());
      auto prev = ls.target_pulses;
      auto abs_wheels = [](const PerWheel<std::int64_t>& d) {
        return PerWheel<std::int64_t>{std::abs(d.left), std::abs(d.right)};
      };
      prev = abs_wheels(prev);
      for (int k = 0; k < params.max_ticks; ++k)
      {
        const auto out = control_tick(ls, sim.read_encoders(), params);
        ls = out.state;
        const auto now = abs_wheels(ls.delta_steps);
        REQUIRE(now.left <= prev.left);
        REQUIRE(now.right <= prev.right);
        prev = now;
        if (ls.settled)
          break;
        sim.apply_command(out.command);
        sim.tick(params.dt);
      }
      CHECK(ls.settled);
    }
  }
}

TEST_CASE("nominal end poses")
{
  const WheelSpec spec;
  const Pose start{1.0, 2.0, pi / 2.0};
  const auto f = nominal_end_pose(start, {Action::Forward, 2}, spec);
  CHECK(f.x == doctest::Approx(1.0));
  CHECK(f.y == doctest::Approx(18.0));
  const auto b = nominal_end_pose(start, {Action::Back, 1}, spec);
  CHECK(b.y == doctest::Approx(-6.0));
  CHECK(nominal_end_pose(start, {Action::Left, 1}, spec).theta == doctest::Approx(pi));
  CHECK(nominal_end_pose(start, {Action::Right, 1}, spec).theta == doctest::Approx(0.0));
}

} // TEST_SUITE
