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

#ifndef PATHBOT__MESSAGES_HPP
#define PATHBOT__MESSAGES_HPP

#include <pathbot/bus.hpp>
#include <pathbot/controller.hpp>
#include <pathbot/grid_world.hpp>
#include <pathbot/planner.hpp>

namespace pathbot {

// Payload builders and readers for the standard topics. Readers throw
// Error(SchemaMismatch) on payloads that do not fit the schema.

/// /map {grid: ["..#", ...], start: [row, col], goal: [row, col]}
Json map_payload(const GridMap& map);
GridMap map_from_payload(const Json& payload);

/// /plan/actions and /drive/cmd {action, steps}
Json command_payload(const StepCommand& cmd);
StepCommand command_from_payload(const Json& payload);

/// /drive/ack {pulse_error_l, pulse_error_r, ticks, ok}
Json ack_payload(const StepReport& report);

/// /pose {x_in, y_in, theta_rad, cell}, in the map frame.
Json pose_payload(const Pose& pose, double step_len);

/// /plan/path {found, cost, cells}
Json path_payload(const PlanResult& result);

/// /plan/request {heuristic}
Json plan_request_payload(HeuristicKind kind);

Json cell_json(Cell c);
Cell cell_from_json(const Json& j);

} // namespace pathbot

#endif // PATHBOT__MESSAGES_HPP
