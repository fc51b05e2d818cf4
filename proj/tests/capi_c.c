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

/* Compiles the public header as C and runs a plan end to end. */

#include <pathbot/pathbot.h>

#include <stdio.h>
#include <string.h>

int main(void)
{
  pb_map* map = NULL;
  pb_plan* plan = NULL;
  char* actions = NULL;
  int rc = 1;

  if (pb_map_parse("S.\n.G\n", &map) != PB_OK)
    goto done;
  if (pb_plan_astar(map, PB_HEURISTIC_MANHATTAN, &plan) != PB_OK)
    goto done;
  if (pb_plan_cost(plan) != 2)
    goto done;
  if (pb_plan_actions(plan, PB_HEADING_EAST, &actions) != PB_OK)
    goto done;
  if (strcmp(actions, "RIGHT FORWARD LEFT FORWARD STOP") != 0)
    goto done;
  rc = 0;

done:
  if (rc != 0)
    fprintf(stderr, "capi_c: %s\n", pb_last_error());
  pb_string_free(actions);
  pb_plan_free(plan);
  pb_map_free(map);
  return rc;
}
