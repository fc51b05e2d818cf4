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

#include <pathbot/messages.hpp>
#include <pathbot/error.hpp>
#include <pathbot/kinematics.hpp>

#include <initializer_list>

namespace pathbot {

namespace {

[[noreturn]] void mismatch(const std::string& what)
{
  throw Error(ErrorCode::SchemaMismatch, what);
}

void expect_keys(const Json& j, std::initializer_list<const char*> keys)
{
  if (!j.is_object())
    mismatch("payload must be a JSON object");
  for (const char* k : keys)
  {
    if (!j.contains(k))
      mismatch(std::string("missing field '") + k + "'");
  }
  if (j.size() != keys.size())
    mismatch("unexpected extra fields in payload");
}

std::int64_t integer(const Json& j, const char* key)
{
  const auto& v = j.at(key);
  if (!v.is_number_integer())
    mismatch(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double number(const Json& j, const char* key)
{
  const auto& v = j.at(key);
  if (!v.is_number())
    mismatch(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

} // anonymous namespace

//==============================================================================
Json cell_json(Cell c)
{
  return Json::array({c.row, c.col});
}

Cell cell_from_json(const Json& j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer()
    || !j[1].is_number_integer())
  {
    mismatch("cell must be [row, col]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

//==============================================================================
Json map_payload(const GridMap& map)
{
  Json grid = Json::array();
  for (int r = 0; r < map.rows(); ++r)
  {
    std::string row;
    for (int c = 0; c < map.cols(); ++c)
      row.push_back(map.occupied({r, c}) ? '#' : '.');
    grid.push_back(std::move(row));
  }
  return {{"grid", std::move(grid)}, {"start", cell_json(map.start())},
    {"goal", cell_json(map.goal())}};
}

GridMap map_from_payload(const Json& payload)
{
  expect_keys(payload, {"grid", "start", "goal"});
  const auto& grid = payload.at("grid");
  if (!grid.is_array() || grid.empty())
    mismatch("grid must be a non-empty array of rows");

  std::vector<bool> occupancy;
  std::size_t cols = 0;
  for (const auto& row : grid)
  {
    if (!row.is_string())
      mismatch("grid rows must be strings");
    const auto& s = row.get_ref<const std::string&>();
    if (cols == 0)
      cols = s.size();
    if (s.empty() || s.size() != cols)
      mismatch("grid rows must be non-empty and of equal length");
    for (char ch : s)
    {
      if (ch != '.' && ch != '#')
        mismatch("grid rows may only contain '.' and '#'");
      occupancy.push_back(ch == '#');
    }
  }

  const auto start = cell_from_json(payload.at("start"));
  const auto goal = cell_from_json(payload.at("goal"));
  try
  {
    return GridMap(static_cast<int>(grid.size()), static_cast<int>(cols),
      std::move(occupancy), start, goal);
  }
  catch (const Error& e)
  {
    mismatch(e.what());
  }
}

//==============================================================================
Json command_payload(const StepCommand& cmd)
{
  return {{"action", std::string(to_string(cmd.action))}, {"steps", cmd.steps}};
}

StepCommand command_from_payload(const Json& payload)
{
  expect_keys(payload, {"action", "steps"});
  const auto& action = payload.at("action");
  if (!action.is_string())
    mismatch("action must be a string");
  const auto parsed = parse_action(action.get_ref<const std::string&>());
  if (!parsed)
    mismatch("unknown action '" + action.get<std::string>() + "'");

  const auto steps = integer(payload, "steps");
  StepCommand cmd{*parsed, static_cast<int>(steps)};
  if (steps > 1000000)
    mismatch("steps out of range");
  try
  {
    validate(cmd);
  }
  catch (const Error& e)
  {
    mismatch(e.what());
  }
  return cmd;
}

//==============================================================================
Json ack_payload(const StepReport& report)
{
  return {{"pulse_error_l", report.pulse_error.left},
    {"pulse_error_r", report.pulse_error.right}, {"ticks", report.ticks},
    {"ok", report.ok()}};
}

Json pose_payload(const Pose& pose, double step_len)
{
  const auto m = to_map_frame(pose);
  return {{"x_in", m.x}, {"y_in", m.y}, {"theta_rad", m.heading},
    {"cell", cell_json(cell_of(pose, step_len))}};
}

Json path_payload(const PlanResult& result)
{
  Json cells = Json::array();
  for (const auto& c : result.path)
    cells.push_back(cell_json(c));
  return {{"found", result.found}, {"cost", result.found ? result.cost : -1},
    {"cells", std::move(cells)}};
}

Json plan_request_payload(HeuristicKind kind)
{
  return {{"heuristic", std::string(to_string(kind))}};
}

//==============================================================================
TopicRegistry TopicRegistry::standard()
{
  TopicRegistry r;
  r.add(std::string(topics::Map), [](const Json& j) { map_from_payload(j); });

  const auto command = [](const Json& j) { command_from_payload(j); };
  r.add(std::string(topics::PlanActions), command);
  r.add(std::string(topics::DriveCmd), command);

  r.add(std::string(topics::DriveAck), [](const Json& j) {
    expect_keys(j, {"pulse_error_l", "pulse_error_r", "ticks", "ok"});
    integer(j, "pulse_error_l");
    integer(j, "pulse_error_r");
    if (integer(j, "ticks") < 0)
      mismatch("ticks must be non-negative");
    if (!j.at("ok").is_boolean())
      mismatch("ok must be a boolean");
  });

  r.add(std::string(topics::Pose), [](const Json& j) {
    expect_keys(j, {"x_in", "y_in", "theta_rad", "cell"});
    number(j, "x_in");
    number(j, "y_in");
    number(j, "theta_rad");
    cell_from_json(j.at("cell"));
  });

  r.add(std::string(topics::PlanAck), [](const Json& j) {
    expect_keys(j, {"seq_of_cmd"});
    if (integer(j, "seq_of_cmd") < 0)
      mismatch("seq_of_cmd must be non-negative");
  });

  r.add(std::string(topics::PlanRequest), [](const Json& j) {
    expect_keys(j, {"heuristic"});
    const auto& h = j.at("heuristic");
    if (!h.is_string() || !parse_heuristic(h.get_ref<const std::string&>()))
      mismatch("heuristic must be one of manhattan, euclidean, half, zero");
  });

  r.add(std::string(topics::PlanPath), [](const Json& j) {
    expect_keys(j, {"found", "cost", "cells"});
    if (!j.at("found").is_boolean())
      mismatch("found must be a boolean");
    integer(j, "cost");
    if (!j.at("cells").is_array())
      mismatch("cells must be an array");
    for (const auto& c : j.at("cells"))
      cell_from_json(c);
  });
  return r;
}

} // namespace pathbot
