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

#include <pathbot/kinematics.hpp>
#include <pathbot/error.hpp>

#include <cmath>
#include <numbers>

namespace pathbot {

void validate(const WheelSpec& spec)
{
  if (!(spec.wheel_base > 0.0))
    throw Error(ErrorCode::NonPositiveWheelBase, "wheel_base must be positive");
  if (!(spec.inches_per_rev > 0.0) || !(spec.pulses_per_rev > 0.0))
    throw Error(ErrorCode::InvalidArgument,
      "inches_per_rev and pulses_per_rev must be positive");
}

const char* to_string(MotionCase motion)
{
  switch (motion)
  {
    case MotionCase::Forward: return "FORWARD";
    case MotionCase::Back: return "BACK";
    case MotionCase::Right: return "RIGHT";
    case MotionCase::Left: return "LEFT";
    case MotionCase::Stop: return "STOP";
    case MotionCase::Arc: return "ARC";
  }
  return "ARC";
}

double normalize_angle(double theta)
{
  constexpr double pi = std::numbers::pi;
  theta = std::remainder(theta, 2.0 * pi);
  if (theta <= -pi)
    theta += 2.0 * pi;
  return theta;
}

double angular_velocity(double vr, double vl, double wheel_base)
{
  if (!(wheel_base > 0.0))
    throw Error(ErrorCode::NonPositiveWheelBase, "wheel_base must be positive");
  return (vr - vl) / wheel_base;
}

MotionCase classify_motion(double vr, double vl)
{
  if (vr == 0.0 && vl == 0.0)
    return MotionCase::Stop;
  if (vr == vl)
    return vr > 0.0 ? MotionCase::Forward : MotionCase::Back;
  if (vr == -vl)
    return vl > 0.0 ? MotionCase::Right : MotionCase::Left;
  return MotionCase::Arc;
}

Pose integrate_pose(const Pose& p, double vr, double vl, double dt,
  const WheelSpec& spec)
{
  const double omega = angular_velocity(vr, vl, spec.wheel_base);
  const double v = 0.5 * (vr + vl);

  if (std::abs(omega) < StraightLineOmega)
  {
    return {p.x + v * dt * std::cos(p.theta), p.y + v * dt * std::sin(p.theta),
      normalize_angle(p.theta)};
  }

  // Rotation about the ICC in chord form: the chord of an arc swept by phi
  // has length v * dt * sinc(phi / 2) and points along the mean heading.
  const double half = 0.5 * omega * dt;
  const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
  const double chord = v * dt * sinc;
  const double mid = p.theta + half;
  return {p.x + chord * std::cos(mid), p.y + chord * std::sin(mid),
    normalize_angle(p.theta + 2.0 * half)};
}

//==============================================================================
double convert(double value, DistanceUnit from, DistanceUnit to,
  const WheelSpec& spec)
{
  const auto per_rev = [&](DistanceUnit unit) {
    switch (unit)
    {
      case DistanceUnit::Steps:
      case DistanceUnit::Revolutions: return 1.0;
      case DistanceUnit::Pulses: return spec.pulses_per_rev;
      case DistanceUnit::Inches: return spec.inches_per_rev;
    }
    return 1.0;
  };

  if (from == to)
    return value;
  return value / per_rev(from) * per_rev(to);
}

int quarter_turn_pulses(const WheelSpec& spec)
{
  const double arc = std::numbers::pi * spec.wheel_base / 4.0;
  return static_cast<int>(
    std::lround(convert(arc, DistanceUnit::Inches, DistanceUnit::Pulses, spec)));
}

//==============================================================================
// 0.0 - v keeps zero positive where -v would give -0.0.
MapPose to_map_frame(const Pose& pose)
{
  return {pose.x, 0.0 - pose.y, normalize_angle(0.0 - pose.theta)};
}

Pose from_map_frame(const MapPose& pose)
{
  return {pose.x, 0.0 - pose.y, normalize_angle(0.0 - pose.heading)};
}

double heading_angle(Heading heading)
{
  constexpr double half_pi = std::numbers::pi / 2.0;
  switch (heading)
  {
    case Heading::East: return 0.0;
    case Heading::North: return half_pi;
    case Heading::West: return std::numbers::pi;
    case Heading::South: return -half_pi;
  }
  return 0.0;
}

Pose pose_at(Cell cell, Heading heading, double step_len)
{
  const auto p = cell_to_world(cell, step_len);
  return {p.x, 0.0 - p.y, heading_angle(heading)};
}

Cell cell_of(const Pose& pose, double step_len)
{
  const auto m = to_map_frame(pose);
  return world_to_cell({m.x, m.y}, step_len);
}

} // namespace pathbot
