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

#ifndef PATHBOT__PATHBOT_H
#define PATHBOT__PATHBOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PB_API __declspec(dllexport)
#else
#  define PB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 1..13 match pathbot::ErrorCode. */
typedef enum pb_status
{
  PB_OK = 0,
  PB_ERR_MALFORMED_MAP = 1,
  PB_ERR_START_OR_GOAL_BLOCKED = 2,
  PB_ERR_UNSOLVABLE = 3,
  PB_ERR_NON_POSITIVE_WHEEL_BASE = 4,
  PB_ERR_INVALID_COMMAND = 5,
  PB_ERR_UNKNOWN_TOPIC = 6,
  PB_ERR_SCHEMA_MISMATCH = 7,
  PB_ERR_SERIAL_FRAME_CORRUPT = 8,
  PB_ERR_ACK_TIMEOUT = 9,
  PB_ERR_SETTLE_TIMEOUT = 10,
  PB_ERR_BIND_FAILURE = 11,
  PB_ERR_INVALID_ARGUMENT = 12,
  PB_ERR_IO = 13,
  PB_ERR_INTERNAL = 100
} pb_status;

/* Message of the last failed call on this thread; empty after success. */
PB_API const char* pb_last_error(void);
PB_API const char* pb_status_name(pb_status status);
PB_API const char* pb_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
PB_API void pb_string_free(char* s);

/*----------------------------------------------------------------------------*/
typedef struct pb_map pb_map;

PB_API pb_status pb_map_parse(const char* text, pb_map** out);
PB_API pb_status pb_map_load(const char* path, pb_map** out);
PB_API void pb_map_free(pb_map* map);
PB_API int pb_map_rows(const pb_map* map);
PB_API int pb_map_cols(const pb_map* map);
PB_API pb_status pb_map_serialize(const pb_map* map, char** out);

/*----------------------------------------------------------------------------*/
typedef enum pb_heuristic
{
  PB_HEURISTIC_MANHATTAN = 0,
  PB_HEURISTIC_EUCLIDEAN = 1,
  PB_HEURISTIC_HALF_SUM = 2,
  PB_HEURISTIC_ZERO = 3
} pb_heuristic;

/* Accepts "manhattan", "euclidean", "half" (or "half_sum") and "zero". */
PB_API pb_status pb_heuristic_parse(const char* name, pb_heuristic* out);

typedef enum pb_heading
{
  PB_HEADING_NORTH = 0,
  PB_HEADING_EAST = 1,
  PB_HEADING_SOUTH = 2,
  PB_HEADING_WEST = 3
} pb_heading;

typedef struct pb_plan pb_plan;

/* A missing path is not an error: the call succeeds and pb_plan_found is 0. */
PB_API pb_status pb_plan_astar(const pb_map* map, pb_heuristic heuristic, pb_plan** out);
PB_API void pb_plan_free(pb_plan* plan);
PB_API int pb_plan_found(const pb_plan* plan);
/* -1 when no path was found. */
PB_API int pb_plan_cost(const pb_plan* plan);
PB_API uint64_t pb_plan_nodes_expanded(const pb_plan* plan);
PB_API uint64_t pb_plan_max_open_size(const pb_plan* plan);
PB_API size_t pb_plan_length(const pb_plan* plan);
PB_API pb_status pb_plan_cell(const pb_plan* plan, size_t index, int* row, int* col);
/* Space separated action names ending with STOP; empty without a path. */
PB_API pb_status pb_plan_actions(const pb_plan* plan, pb_heading initial, char** out);
/* Map text with '*' on the path. */
PB_API pb_status pb_plan_overlay(const pb_plan* plan, char** out);
/* Plan, action list and the expansion trace as JSON. */
PB_API pb_status pb_plan_json(const pb_plan* plan, pb_heading initial, char** out);

/*----------------------------------------------------------------------------*/
typedef struct pb_bench_config
{
  const int* sizes;
  size_t size_count;
  double density;
  const uint64_t* seeds;
  size_t seed_count;
  int include_timing;
} pb_bench_config;

/* Writes the CSV to *csv and the mean-expansion table to *summary; either
   pointer may be NULL. */
PB_API pb_status pb_bench_run(const pb_bench_config* config, char** csv, char** summary);

/*----------------------------------------------------------------------------*/
typedef struct pb_drive_config
{
  double wheel_base;
  double inches_per_rev;
  int pulses_per_rev;
  double max_speed;

  int noise;
  double slip_sd;
  double overshoot_lo;
  double overshoot_hi;
  double tail_time_constant;

  double kp;
  double kc;
  double duty_min;
  double duty_limit;
  int settle_tolerance;
  int max_ticks;
  double dt;
  int quiet_ticks;

  uint64_t seed;
} pb_drive_config;

typedef enum pb_transport
{
  PB_TRANSPORT_IN_PROCESS = 0,
  PB_TRANSPORT_SOCKET = 1
} pb_transport;

typedef struct pb_episode_config
{
  pb_drive_config drive;
  pb_heuristic heuristic;
  pb_transport transport;
  /* Throttle on the bridge and controller links; 0 disables it. */
  double pacing_bytes_per_s;
  int controller_online;
  int ack_timeout_ms;
} pb_episode_config;

PB_API void pb_episode_config_default(pb_episode_config* config);

typedef struct pb_episode pb_episode;

/* Failures of the robot (ack timeout, ending off the goal, no path) are
   reported through the episode outcome, not the status. */
PB_API pb_status pb_episode_run(
  const pb_map* map, const pb_episode_config* config, pb_episode** out);
PB_API void pb_episode_free(pb_episode* episode);
PB_API int pb_episode_success(const pb_episode* episode);
/* "Success", "OffGoal", "NoPath" or "AckTimeout". */
PB_API const char* pb_episode_outcome(const pb_episode* episode);
PB_API pb_status pb_episode_json(const pb_episode* episode, char** out);

/*----------------------------------------------------------------------------*/
typedef struct pb_server pb_server;

/* Starts the stations and the WebSocket gateway on "host:port". */
PB_API pb_status pb_server_start(
  const pb_map* map, const pb_episode_config* config, const char* bind, pb_server** out);
PB_API uint16_t pb_server_port(const pb_server* server);
/* Stops and frees the server. */
PB_API void pb_server_stop(pb_server* server);

#ifdef __cplusplus
}
#endif

#endif /* PATHBOT__PATHBOT_H */
