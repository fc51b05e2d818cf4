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

#include <pathbot/action.hpp>

namespace pathbot {

std::string_view to_string(Action action)
{
  switch (action)
  {
    case Action::Forward: return "FORWARD";
    case Action::Back: return "BACK";
    case Action::Left: return "LEFT";
    case Action::Right: return "RIGHT";
    case Action::Stop: return "STOP";
  }
  return "STOP";
}

std::optional<Action> parse_action(std::string_view name)
{
  for (auto a : {Action::Forward, Action::Back, Action::Left, Action::Right,
         Action::Stop})
  {
    if (to_string(a) == name)
      return a;
  }
  return std::nullopt;
}

std::string_view to_string(Heading heading)
{
  switch (heading)
  {
    case Heading::North: return "N";
    case Heading::East: return "E";
    case Heading::South: return "S";
    case Heading::West: return "W";
  }
  return "E";
}

Heading turned_right(Heading heading)
{
  return static_cast<Heading>((static_cast<int>(heading) + 1) % 4);
}

Heading turned_left(Heading heading)
{
  return static_cast<Heading>((static_cast<int>(heading) + 3) % 4);
}

} // namespace pathbot
