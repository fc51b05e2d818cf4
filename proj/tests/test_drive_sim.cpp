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

#include "support/oracles.hpp"

#include <doctest.h>

#include <cstring>

using namespace pathbot;

namespace {

const WheelCommand fwd_full{WheelDirection::Forward, 1.0};
const WheelCommand rev_full{WheelDirection::Reverse, 1.0};

MotorCommand both(WheelDirection d, double duty)
{
  return {{d, duty}, {d, duty}};
}

MotorCommand random_command(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> dir(0, 2);
  std::uniform_real_distribution<double> duty(0.0, 1.0);
  const auto pick = [&] {
    return WheelCommand{static_cast<WheelDirection>(dir(rng)), duty(rng)};
  };
  return {pick(), pick()};
}

bool same_bits(double a, double b)
{
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // anonymous namespace

TEST_SUITE("drive_sim")
{

TEST_CASE("commands set wheel speed targets")
{
  DriveState sim({}, NoiseParams::off(), 1);
  sim.apply_command(both(WheelDirection::Forward, 1.0));
  CHECK(sim.target_left() == 16.0);
  CHECK(sim.target_right() == 16.0);

  sim.apply_command(MotorCommand::brake());
  CHECK(sim.target_left() == 0.0);
  CHECK(sim.target_right() == 0.0);

  sim.apply_command({fwd_full, rev_full});
  CHECK(sim.target_left() == 16.0);
  CHECK(sim.target_right() == -16.0);

  sim.apply_command({{WheelDirection::Brake, 0.7}, {WheelDirection::Forward, 0.25}});
  CHECK(sim.target_left() == 0.0);
  CHECK(sim.target_right() == 4.0);
}

TEST_CASE("one noiseless second at 8 in/s is one revolution")
{
  DriveState sim({}, NoiseParams::off(), 1);
  sim.apply_command(both(WheelDirection::Forward, 0.5));
  sim.tick(1.0);
  CHECK(sim.pose().x == 8.0);
  CHECK(sim.pose().y == 0.0);
  CHECK(sim.read_encoders() == EncoderReading{440, 440});
}

TEST_CASE("zero targets only advance the clock")
{
  DriveState sim({}, NoiseParams::off(), 1, {1.0, 2.0, 0.5});
  sim.tick(0.25);
  CHECK(sim.pose().x == 1.0);
  CHECK(sim.pose().y == 2.0);
  CHECK(sim.pose().theta == 0.5);
  CHECK(sim.read_encoders() == EncoderReading{0, 0});
  CHECK(sim.time() == 0.25);
}

TEST_CASE("noisy straight drive is reproducible per seed")
{
  const auto run = [](std::uint64_t seed) {
    DriveState sim({}, NoiseParams{}, seed);
    sim.apply_command(both(WheelDirection::Forward, 1.0));
    for (int i = 0; i < 1000; ++i)
      sim.tick(1e-3);
    return sim;
  };
  const auto a = run(42);
  const auto b = run(42);
  CHECK(a.read_encoders().left != a.read_encoders().right);
  CHECK(a.read_encoders() == b.read_encoders());
  CHECK(same_bits(a.pose().x, b.pose().x));
  CHECK(same_bits(a.pose().y, b.pose().y));
  CHECK(same_bits(a.pose().theta, b.pose().theta));
  CHECK(run(43).read_encoders() != a.read_encoders());
}

TEST_CASE("encoder readings")
{
  DriveState sim({}, NoiseParams::off(), 1);
  CHECK(sim.read_encoders() == EncoderReading{0, 0});

  // Two steps at full duty: 16 in, two revolutions.
  sim.apply_command(both(WheelDirection::Forward, 1.0));
  for (int i = 0; i < 1000; ++i)
    sim.tick(1e-3);
  CHECK(sim.read_encoders() == EncoderReading{880, 880});
  CHECK(sim.pose().x == doctest::Approx(16.0).epsilon(1e-12));

  DriveState spin({}, NoiseParams::off(), 1);
  spin.apply_command({rev_full, fwd_full});
  for (int i = 0; i < 491; ++i)
    spin.tick(1e-3);
  const auto enc = spin.read_encoders();
  CHECK(enc.left < 0);
  CHECK(enc.left == -enc.right);
  CHECK(spin.pose().theta > 0.0);
}

TEST_CASE("noiseless ticks compose")
{
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> ticks(1, 400);
  std::uniform_real_distribution<double> dt(1e-4, 5e-3);
  for (int trial = 0; trial < 300; ++trial)
  {
    const auto cmd = random_command(rng);
    const int n = ticks(rng);
    const double h = dt(rng);

    DriveState many({}, NoiseParams::off(), 1);
    DriveState once({}, NoiseParams::off(), 1);
    many.apply_command(cmd);
    once.apply_command(cmd);
    for (int i = 0; i < n; ++i)
      many.tick(h);
    once.tick(n * h);

    CHECK(std::hypot(many.pose().x - once.pose().x, many.pose().y - once.pose().y) <= 1e-9);
    CHECK(oracle::angle_diff(many.pose().theta, once.pose().theta) <= 1e-9);
    CHECK(many.read_encoders() == once.read_encoders());
  }
}

TEST_CASE("identical seeds and commands give identical counts")
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
  {
    std::mt19937_64 script(seed * 7);
    std::vector<MotorCommand> commands;
    for (int i = 0; i < 40; ++i)
      commands.push_back(random_command(script));

    const auto run = [&] {
      DriveState sim({}, NoiseParams{}, seed);
      std::vector<EncoderReading> readings;
      for (const auto& c : commands)
      {
        sim.apply_command(c);
        for (int k = 0; k < 50; ++k)
        {
          sim.tick(1e-3);
          readings.push_back(sim.read_encoders());
        }
      }
      return std::make_pair(readings, sim.pose());
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.first == b.first);
    CHECK(same_bits(a.second.x, b.second.x));
    CHECK(same_bits(a.second.theta, b.second.theta));
  }
}

TEST_CASE("a copied state replays identically")
{
  DriveState sim({}, NoiseParams{}, 5);
  sim.apply_command(both(WheelDirection::Forward, 0.8));
  for (int i = 0; i < 100; ++i)
    sim.tick(1e-3);
  auto copy = sim;
  for (auto* s : {&sim, &copy})
  {
    s->apply_command(MotorCommand::brake());
    for (int i = 0; i < 500; ++i)
      s->tick(1e-3);
  }
  CHECK(sim.read_encoders() == copy.read_encoders());
  CHECK(same_bits(sim.pose().x, copy.pose().x));
}

TEST_CASE("pulse counts track wheel travel within one pulse")
{
  const WheelSpec spec;
  const double pulse_in = spec.inches_per_rev / spec.pulses_per_rev;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial)
  {
    DriveState sim(spec, NoiseParams::off(), 1);
    for (int c = 0; c < 20; ++c)
    {
      sim.apply_command(random_command(rng));
      for (int k = 0; k < 37; ++k)
      {
        sim.tick(1e-3);
        const auto enc = sim.read_encoders();
        REQUIRE(std::abs(enc.left * pulse_in - sim.travel_left()) < pulse_in);
        REQUIRE(std::abs(enc.right * pulse_in - sim.travel_right()) < pulse_in);
      }
    }
  }

  // On a straight run the pose arc length is the wheel travel.
  DriveState line(spec, NoiseParams::off(), 1);
  line.apply_command(both(WheelDirection::Forward, 0.61));
  for (int k = 0; k < 777; ++k)
  {
    line.tick(1e-3);
    const auto enc = line.read_encoders();
    REQUIRE(std::abs(enc.left * pulse_in - line.pose().x) < pulse_in);
  }
}

TEST_CASE("counts move only in the commanded direction")
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
  {
    DriveState sim({}, NoiseParams{}, seed);
    sim.apply_command({fwd_full, rev_full});
    auto prev = sim.read_encoders();
    for (int k = 0; k < 800; ++k)
    {
      sim.tick(1e-3);
      const auto enc = sim.read_encoders();
      REQUIRE(enc.left >= prev.left);
      REQUIRE(enc.right <= prev.right);
      prev = enc;
    }
  }
}

TEST_CASE("braking with noise runs on before stopping")
{
  DriveState sim({}, NoiseParams{}, 3);
  sim.apply_command(both(WheelDirection::Forward, 1.0));
  for (int k = 0; k < 500; ++k)
    sim.tick(1e-3);
  sim.apply_command(MotorCommand::brake());
  CHECK_FALSE(sim.at_rest());
  const auto at_brake = sim.read_encoders();
  for (int k = 0; k < 5000 && !sim.at_rest(); ++k)
    sim.tick(1e-3);
  CHECK(sim.at_rest());
  CHECK(sim.read_encoders().left - at_brake.left >= 60);

  DriveState quiet({}, NoiseParams::off(), 3);
  quiet.apply_command(both(WheelDirection::Forward, 1.0));
  quiet.tick(0.1);
  quiet.apply_command(MotorCommand::brake());
  CHECK(quiet.at_rest());
}

TEST_CASE("open loop overshoot matches the calibration range")
{
  // The run-on after a full-speed stop carries overshoot ~ U[66, 190]; slip
  // adds a few pulses of spread on top.
  int inside = 0;
  double sum = 0.0;
  const int trials = 300;
  for (int seed = 1; seed <= trials; ++seed)
  {
    DriveState sim({}, NoiseParams{}, static_cast<std::uint64_t>(seed));
    const auto r = open_loop_step(sim);
    for (const double o : {r.overshoot_left, r.overshoot_right})
    {
      inside += (o >= 66.0 && o <= 190.0) ? 1 : 0;
      sum += o;
    }
  }
  CHECK(inside >= static_cast<int>(0.99 * 2 * trials));
  CHECK(sum / (2 * trials) == doctest::Approx(128.0).epsilon(0.05));

  DriveState clean({}, NoiseParams::off(), 1);
  const auto r = open_loop_step(clean);
  CHECK(r.overshoot_left == 0.0);
  CHECK(r.overshoot_right == 0.0);
}

TEST_CASE("invalid parameters are rejected")
{
  const auto code_of = [](auto&& f) {
    try
    {
      f();
    }
    catch (const Error& e)
    {
      return e.code();
    }
    return ErrorCode::Io;
  };

  NoiseParams n;
  n.slip_sd = -0.1;
  CHECK(code_of([&] { validate(n); }) == ErrorCode::InvalidArgument);
  n = {};
  n.overshoot_lo = 200.0;
  CHECK(code_of([&] { validate(n); }) == ErrorCode::InvalidArgument);
  n = {};
  n.overshoot_lo = -1.0;
  CHECK(code_of([&] { validate(n); }) == ErrorCode::InvalidArgument);

  CHECK(code_of([] { DriveState({}, NoiseParams{}, 1, {}, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DriveState(WheelSpec{-1.0, 8.0, 440.0}, NoiseParams{}, 1); })
    == ErrorCode::NonPositiveWheelBase);
  CHECK(code_of([] { DriveState({}, NoiseParams{}, 1).tick(0.0); })
    == ErrorCode::InvalidArgument);
}

} // TEST_SUITE
