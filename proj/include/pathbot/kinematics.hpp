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

#ifndef PATHBOT__KINEMATICS_HPP
#define PATHBOT__KINEMATICS_HPP

#include <pathbot/action.hpp>
#include <pathbot/grid_world.hpp>

namespace pathbot {

/// Planar pose in the ground frame: x east, y north (right-handed), theta in
/// radians counter-clockwise from east, always normalized to (-pi, pi].
struct Pose
{
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct WheelSpec
{
  double wheel_base = 10.0;
  double inches_per_rev = 8.0;
  double pulses_per_rev = 440.0;
};

/// Throws Error(NonPositiveWheelBase) or Error(InvalidArgument).
void validate(const WheelSpec& spec);

enum class MotionCase
{
  Forward,
  Back,
  Right,
  Left,
  Stop,
  Arc,
};

const char* to_string(MotionCase motion);

double normalize_angle(double theta);

/// (vr - vl) / wheel_base. Positive means counter-clockwise (a LEFT turn).
double angular_velocity(double vr, double vl, double wheel_base);

/// Exact comparison; anything that is not one of the five drive patterns is
/// Arc.
MotionCase classify_motion(double vr, double vl);

/// Below this |omega| (rad/s) the motion is integrated as a straight line.
inline constexpr double StraightLineOmega = 1e-9;

/// Exact integration for constant wheel speeds: a straight segment, or a
/// rotation about the instantaneous center of curvature.
Pose integrate_pose(const Pose& p, double vr, double vl, double dt,
  const WheelSpec& spec);

//==============================================================================
enum class DistanceUnit
{
  Steps,
  Revolutions,
  Pulses,
  Inches,
};

/// One step is one revolution; conversions are exact ratios of the spec.
double convert(double value, DistanceUnit from, DistanceUnit to,
  const WheelSpec& spec);

/// Pulses each wheel travels (in opposite directions) for an in-place quarter
/// turn, rounded to the nearest pulse: arc length pi * wheel_base / 4.
int quarter_turn_pulses(const WheelSpec& spec);

//==============================================================================
// The map frame has y growing with the row index, so it is the ground frame
// mirrored about the x axis: y_map = -y_ground, heading_map = -theta.

/// Map-frame pose published to viewers. heading is measured from +x toward +y
/// of the map frame, i.e. clockwise on a map drawn with row 0 at the top.
struct MapPose
{
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

MapPose to_map_frame(const Pose& pose);
Pose from_map_frame(const MapPose& pose);

double heading_angle(Heading heading);

/// Ground pose at the center of a cell, facing the given grid heading.
Pose pose_at(Cell cell, Heading heading, double step_len);

/// Nearest cell to the pose position.
Cell cell_of(const Pose& pose, double step_len);

} // namespace pathbot

#endif // PATHBOT__KINEMATICS_HPP
