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

#include <pathbot/planner.hpp>
#include <pathbot/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <sstream>

namespace pathbot {

std::string_view to_string(HeuristicKind kind)
{
  switch (kind)
  {
    case HeuristicKind::Manhattan: return "manhattan";
    case HeuristicKind::Euclidean: return "euclidean";
    case HeuristicKind::HalfSum: return "half";
    case HeuristicKind::Zero: return "zero";
  }
  return "manhattan";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name)
{
  if (name == "manhattan")
    return HeuristicKind::Manhattan;
  if (name == "euclidean")
    return HeuristicKind::Euclidean;
  if (name == "half" || name == "half_sum")
    return HeuristicKind::HalfSum;
  if (name == "zero")
    return HeuristicKind::Zero;
  return std::nullopt;
}

double heuristic(HeuristicKind kind, Cell a, Cell b)
{
  const double dx = std::abs(a.col - b.col);
  const double dy = std::abs(a.row - b.row);
  switch (kind)
  {
    case HeuristicKind::Manhattan: return dx + dy;
    case HeuristicKind::Euclidean: return std::sqrt(dx * dx + dy * dy);
    case HeuristicKind::HalfSum: return (dx + dy) / 2.0;
    case HeuristicKind::Zero: return 0.0;
  }
  return 0.0;
}

//==============================================================================
CellPath trace_back(const std::vector<int>& parent, const GridMap& map)
{
  CellPath path;
  auto i = static_cast<int>(map.index(map.goal()));
  while (i >= 0)
  {
    path.push_back(map.cell_at(static_cast<std::size_t>(i)));
    i = parent[static_cast<std::size_t>(i)];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr int NoParent = -1;

SearchNode make_node(const GridMap& map, std::size_t index, int g, double h,
  const std::vector<int>& parent)
{
  SearchNode node;
  node.cell = map.cell_at(index);
  node.g = g;
  node.h = h;
  node.f = g + h;
  if (parent[index] != NoParent)
    node.parent = map.cell_at(static_cast<std::size_t>(parent[index]));
  return node;
}

void finish(PlanResult& result, const GridMap& map, const std::vector<int>& parent,
  Clock::time_point started)
{
  if (result.found)
  {
    result.path = trace_back(parent, map);
    result.cost = static_cast<int>(result.path.size()) - 1;
  }
  result.wall_time = Clock::now() - started;
}

//==============================================================================
struct OpenEntry
{
  double f;
  int g;
  std::uint64_t stamp;
  std::size_t index;
};

// std::priority_queue pops the greatest element, so "greater" here means
// "expanded sooner": lower f, then higher g, then newer insertion.
struct ExpandsLater
{
  bool operator()(const OpenEntry& a, const OpenEntry& b) const
  {
    if (a.f != b.f)
      return a.f > b.f;
    if (a.g != b.g)
      return a.g < b.g;
    return a.stamp < b.stamp;
  }
};

enum class State : unsigned char { Unseen, Open, Closed };

} // anonymous namespace

//==============================================================================
PlanResult astar(const GridMap& map, HeuristicKind kind)
{
  const auto started = Clock::now();
  const auto n = map.cell_count();
  const auto goal = map.goal();

  std::vector<int> g(n, std::numeric_limits<int>::max());
  std::vector<int> parent(n, NoParent);
  std::vector<State> state(n, State::Unseen);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, ExpandsLater> open;

  PlanResult result;
  std::uint64_t stamp = 0;
  std::size_t open_count = 0;

  const auto start = map.index(map.start());
  g[start] = 0;
  state[start] = State::Open;
  open.push({heuristic(kind, map.start(), goal), 0, stamp++, start});
  open_count = 1;
  result.max_open_size = 1;

  Cell buffer[4];
  while (!open.empty())
  {
    const auto top = open.top();
    open.pop();

    // Lazy deletion: skip entries superseded by a cheaper re-insertion.
    if (state[top.index] == State::Closed || top.g != g[top.index])
      continue;

    state[top.index] = State::Closed;
    --open_count;
    ++result.nodes_expanded;

    const auto cell = map.cell_at(top.index);
    result.expansions.push_back(
      make_node(map, top.index, top.g, heuristic(kind, cell, goal), parent));

    if (cell == goal)
    {
      result.found = true;
      break;
    }

    const auto count = neighbors(map, cell, buffer);
    for (std::size_t k = 0; k < count; ++k)
    {
      const auto next = map.index(buffer[k]);
      if (state[next] == State::Closed)
        continue;

      const int tentative = top.g + 1;
      if (tentative >= g[next])
        continue;

      g[next] = tentative;
      parent[next] = static_cast<int>(top.index);
      if (state[next] == State::Unseen)
      {
        state[next] = State::Open;
        ++open_count;
      }
      open.push(
        {tentative + heuristic(kind, buffer[k], goal), tentative, stamp++, next});
    }
    result.max_open_size = std::max(result.max_open_size, open_count);
  }

  finish(result, map, parent, started);
  return result;
}

//==============================================================================
PlanResult bfs(const GridMap& map)
{
  const auto started = Clock::now();
  const auto n = map.cell_count();
  const auto goal = map.index(map.goal());

  std::vector<int> parent(n, NoParent);
  std::vector<int> depth(n, 0);
  std::vector<bool> discovered(n, false);
  std::deque<std::size_t> frontier;

  PlanResult result;
  const auto start = map.index(map.start());
  discovered[start] = true;
  frontier.push_back(start);
  result.max_open_size = 1;

  Cell buffer[4];
  while (!frontier.empty())
  {
    const auto current = frontier.front();
    frontier.pop_front();
    ++result.nodes_expanded;
    result.expansions.push_back(make_node(map, current, depth[current], 0.0, parent));

    if (current == goal)
    {
      result.found = true;
      break;
    }

    const auto count = neighbors(map, map.cell_at(current), buffer);
    for (std::size_t k = 0; k < count; ++k)
    {
      const auto next = map.index(buffer[k]);
      if (discovered[next])
        continue;
      discovered[next] = true;
      parent[next] = static_cast<int>(current);
      depth[next] = depth[current] + 1;
      frontier.push_back(next);
    }
    result.max_open_size = std::max(result.max_open_size, frontier.size());
  }

  finish(result, map, parent, started);
  return result;
}

//==============================================================================
PlanResult dfs(const GridMap& map)
{
  const auto started = Clock::now();
  const auto n = map.cell_count();
  const auto goal = map.index(map.goal());

  struct Entry
  {
    std::size_t index;
    int parent;
    int depth;
  };

  std::vector<int> parent(n, NoParent);
  std::vector<bool> closed(n, false);
  std::vector<Entry> stack;

  PlanResult result;
  stack.push_back({map.index(map.start()), NoParent, 0});
  result.max_open_size = 1;

  Cell buffer[4];
  while (!stack.empty())
  {
    const auto top = stack.back();
    stack.pop_back();
    if (closed[top.index])
      continue;

    closed[top.index] = true;
    parent[top.index] = top.parent;
    ++result.nodes_expanded;
    result.expansions.push_back(make_node(map, top.index, top.depth, 0.0, parent));

    if (top.index == goal)
    {
      result.found = true;
      break;
    }

    const auto count = neighbors(map, map.cell_at(top.index), buffer);
    for (std::size_t k = count; k-- > 0;)
    {
      const auto next = map.index(buffer[k]);
      if (!closed[next])
        stack.push_back({next, static_cast<int>(top.index), top.depth + 1});
    }
    result.max_open_size = std::max(result.max_open_size, stack.size());
  }

  finish(result, map, parent, started);
  return result;
}

//==============================================================================
Heading heading_between(Cell from, Cell to)
{
  if (to.row < from.row)
    return Heading::North;
  if (to.row > from.row)
    return Heading::South;
  if (to.col > from.col)
    return Heading::East;
  return Heading::West;
}

std::vector<Action> path_to_actions(const CellPath& path, Heading initial)
{
  std::vector<Action> actions;
  auto heading = initial;
  for (std::size_t i = 1; i < path.size(); ++i)
  {
    const auto wanted = heading_between(path[i - 1], path[i]);
    const int clockwise = (static_cast<int>(wanted) - static_cast<int>(heading) + 4) % 4;
    switch (clockwise)
    {
      case 1:
        actions.push_back(Action::Right);
        break;
      case 2:
        actions.push_back(Action::Right);
        actions.push_back(Action::Right);
        break;
      case 3:
        actions.push_back(Action::Left);
        break;
      default:
        break;
    }
    heading = wanted;
    actions.push_back(Action::Forward);
  }
  actions.push_back(Action::Stop);
  return actions;
}

//==============================================================================
const std::vector<std::string>& benchmark_algorithms()
{
  static const std::vector<std::string> names = {
    "dfs", "bfs", "astar_manhattan", "astar_euclidean", "astar_half"};
  return names;
}

GridMap random_solvable_grid(
  int rows, int cols, double density, std::uint64_t seed, int max_redraws)
{
  if (!(density >= 0.0 && density < 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1)");

  std::seed_seq seq{static_cast<std::uint32_t>(seed),
    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(rows),
    static_cast<std::uint32_t>(cols)};
  std::mt19937_64 rng(seq);

  const Cell start{0, 0};
  const Cell goal{rows - 1, cols - 1};
  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

  for (int attempt = 0; attempt < max_redraws; ++attempt)
  {
    std::vector<bool> occupancy(n, false);
    for (std::size_t i = 0; i < n; ++i)
    {
      // 53-bit uniform in [0, 1); independent of the standard library's
      // distribution implementation.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      occupancy[i] = u < density;
    }
    occupancy[0] = false;
    occupancy[n - 1] = false;

    GridMap map(rows, cols, std::move(occupancy), start, goal);
    if (bfs(map).found)
      return map;
  }

  throw Error(ErrorCode::Unsolvable,
    "no solvable " + std::to_string(rows) + "x" + std::to_string(cols)
      + " grid at density " + std::to_string(density) + " for seed "
      + std::to_string(seed) + " after " + std::to_string(max_redraws)
      + " draws");
}

std::vector<BenchmarkRow> benchmark(const BenchmarkConfig& config)
{
  auto sizes = config.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  auto seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<BenchmarkRow> rows;
  for (const int size : sizes)
  {
    if (size < 1)
      throw Error(ErrorCode::InvalidArgument, "grid size must be positive");

    for (const auto seed : seeds)
    {
      const auto map =
        random_solvable_grid(size, size, config.density, seed, config.max_redraws);

      const PlanResult results[] = {
        dfs(map),
        bfs(map),
        astar(map, HeuristicKind::Manhattan),
        astar(map, HeuristicKind::Euclidean),
        astar(map, HeuristicKind::HalfSum),
      };

      for (std::size_t a = 0; a < std::size(results); ++a)
      {
        const auto& r = results[a];
        BenchmarkRow row;
        row.algorithm = benchmark_algorithms()[a];
        row.grid_rows = size;
        row.grid_cols = size;
        row.density = config.density;
        row.seed = seed;
        row.found = r.found;
        row.path_cost = r.found ? r.cost : -1;
        row.nodes_expanded = r.nodes_expanded;
        row.max_open_size = r.max_open_size;
        row.wall_time_us =
          std::chrono::duration_cast<std::chrono::microseconds>(r.wall_time).count();
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, bool include_timing)
{
  std::ostringstream out;
  out << "algorithm,grid_rows,grid_cols,density,seed,found,path_cost,"
         "nodes_expanded,max_open_size,wall_time_us\n";
  char density[32];
  for (const auto& r : rows)
  {
    std::snprintf(density, sizeof(density), "%g", r.density);
    out << r.algorithm << ',' << r.grid_rows << ',' << r.grid_cols << ','
        << density << ',' << r.seed << ',' << (r.found ? "true" : "false") << ','
        << r.path_cost << ',' << r.nodes_expanded << ',' << r.max_open_size << ',';
    if (include_timing)
      out << r.wall_time_us;
    out << '\n';
  }
  return out.str();
}

std::string benchmark_summary(const std::vector<BenchmarkRow>& rows)
{
  // size -> algorithm -> (sum, count)
  std::map<int, std::map<std::string, std::pair<double, int>>> table;
  for (const auto& r : rows)
  {
    auto& cell = table[r.grid_rows][r.algorithm];
    cell.first += static_cast<double>(r.nodes_expanded);
    cell.second += 1;
  }

  std::ostringstream out;
  char buf[64];
  out << "mean nodes_expanded\n";
  std::snprintf(buf, sizeof(buf), "%-8s", "size");
  out << buf;
  for (const auto& name : benchmark_algorithms())
  {
    std::snprintf(buf, sizeof(buf), "%16s", name.c_str());
    out << buf;
  }
  out << '\n';

  for (const auto& [size, algos] : table)
  {
    std::snprintf(buf, sizeof(buf), "%-8s",
      (std::to_string(size) + "x" + std::to_string(size)).c_str());
    out << buf;
    for (const auto& name : benchmark_algorithms())
    {
      const auto it = algos.find(name);
      const double mean =
        it == algos.end() ? 0.0 : it->second.first / it->second.second;
      std::snprintf(buf, sizeof(buf), "%16.1f", mean);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

} // namespace pathbot
