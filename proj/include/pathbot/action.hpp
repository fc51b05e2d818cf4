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

#ifndef PATHBOT__ACTION_HPP
#define PATHBOT__ACTION_HPP

#include <optional>
#include <string_view>

namespace pathbot {

/// Discrete motion primitive shared by the planner, the controller and the bus.
enum class Action
{
  Forward,
  Back,
  Left,
  Right,
  Stop,
};

/// Grid heading. North is toward row 0.
enum class Heading
{
  North,
  East,
  South,
  West,
};

std::string_view to_string(Action action);
std::optional<Action> parse_action(std::string_view name);

std::string_view to_string(Heading heading);

/// Quarter turn clockwise on the map (North -> East -> South -> West).
Heading turned_right(Heading heading);
Heading turned_left(Heading heading);

} // namespace pathbot

#endif // PATHBOT__ACTION_HPP
