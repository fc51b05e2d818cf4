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

#ifndef PATHBOT__PLANNER_HPP
#define PATHBOT__PLANNER_HPP

#include <pathbot/action.hpp>
#include <pathbot/grid_world.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathbot {

enum class HeuristicKind
{
  Manhattan,
  Euclidean,
  HalfSum,
  Zero,
};

std::string_view to_string(HeuristicKind kind);

/// Accepts "manhattan", "euclidean", "half" (or "half_sum") and "zero".
std::optional<HeuristicKind> parse_heuristic(std::string_view name);

/// Estimated remaining cost between two cells. With dx and dy the absolute
/// column and row differences: Manhattan dx+dy, Euclidean sqrt(dx^2+dy^2),
/// HalfSum (dx+dy)/2, Zero 0.
double heuristic(HeuristicKind kind, Cell a, Cell b);

/// One node moved from the frontier into the closed set.
struct SearchNode
{
  Cell cell;
  int g = 0;
  double h = 0.0;
  double f = 0.0;
  std::optional<Cell> parent;
};

struct PlanResult
{
  bool found = false;
  CellPath path;
  /// Total g at the goal; equals path.size() - 1 when found.
  int cost = 0;
  std::size_t nodes_expanded = 0;
  std::size_t max_open_size = 0;
  std::chrono::nanoseconds wall_time{0};
  /// Every expansion in order. The three algorithms fill it identically
  /// (BFS and DFS report h = 0).
  std::vector<SearchNode> expansions;
};

/// A* with uniform unit step cost on the 4-connected grid. Among equal f the
/// node with larger g is expanded first, then the most recently inserted one.
/// A cheaper route to a node already on the frontier re-parents it.
PlanResult astar(const GridMap& map, HeuristicKind kind);

/// FIFO frontier; always returns a minimum-cost path.
PlanResult bfs(const GridMap& map);

/// LIFO frontier. Neighbors are pushed in reverse so Up is explored first.
PlanResult dfs(const GridMap& map);

/// Walks parent pointers from goal back to start.
CellPath trace_back(const std::vector<int>& parent, const GridMap& map);

//==============================================================================
/// Heading needed to move from one cell to a 4-adjacent one.
Heading heading_between(Cell from, Cell to);

/// Converts a path into in-place quarter turns and unit FORWARD moves, ending
/// with STOP. A reversal is emitted as two RIGHT turns; BACK is never emitted.
std::vector<Action> path_to_actions(const CellPath& path, Heading initial);

//==============================================================================
struct BenchmarkConfig
{
  /// Square grid sizes (5 means 5x5).
  std::vector<int> sizes;
  double density = 0.2;
  std::vector<std::uint64_t> seeds;
  /// Re-draw limit for finding a solvable random grid.
  int max_redraws = 1000;
};

struct BenchmarkRow
{
  std::string algorithm;
  int grid_rows = 0;
  int grid_cols = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  bool found = false;
  int path_cost = 0;
  std::size_t nodes_expanded = 0;
  std::size_t max_open_size = 0;
  std::int64_t wall_time_us = 0;
};

/// Algorithm labels in the order they appear for each (size, seed).
const std::vector<std::string>& benchmark_algorithms();

/// Random grid with obstacles drawn i.i.d. at the given density, start at the
/// top-left and goal at the bottom-right corner. Re-draws until BFS finds a
/// path; throws Error(Unsolvable) after max_redraws attempts.
GridMap random_solvable_grid(
  int rows, int cols, double density, std::uint64_t seed, int max_redraws = 1000);

/// Rows ordered by (size, seed, algorithm); repeated sizes and seeds run
/// once. Deterministic except for
/// wall_time_us.
std::vector<BenchmarkRow> benchmark(const BenchmarkConfig& config);

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, bool include_timing);

/// Mean nodes_expanded per algorithm for every size, as a fixed-width table.
std::string benchmark_summary(const std::vector<BenchmarkRow>& rows);

} // namespace pathbot

#endif // PATHBOT__PLANNER_HPP
