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

#include <pathbot/grid_world.hpp>
#include <pathbot/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

namespace pathbot {

//==============================================================================
GridMap::GridMap(
  int rows, int cols, std::vector<bool> occupancy, Cell start, Cell goal)
: _rows(rows),
  _cols(cols),
  _occupancy(std::move(occupancy)),
  _start(start),
  _goal(goal)
{
  if (rows < 1 || cols < 1)
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");

  if (_occupancy.size() != static_cast<std::size_t>(rows) * cols)
    throw Error(ErrorCode::InvalidArgument, "occupancy size does not match grid");

  if (!contains(start) || !contains(goal))
    throw Error(ErrorCode::InvalidArgument, "start or goal outside the grid");

  if (occupied(start) || occupied(goal))
    throw Error(ErrorCode::StartOrGoalBlocked, "start or goal cell is occupied");
}

//==============================================================================
GridMap GridMap::empty(int rows, int cols, Cell start, Cell goal)
{
  return GridMap(rows, cols,
    std::vector<bool>(static_cast<std::size_t>(std::max(rows, 0))
      * static_cast<std::size_t>(std::max(cols, 0)), false),
    start, goal);
}

//==============================================================================
GridMap parse_map(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size())
  {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos)
      break;
    pos = nl + 1;
  }

  if (lines.empty())
    throw MalformedMapError("map is empty", 0, 0);

  const auto cols = lines.front().size();
  if (cols == 0)
    throw MalformedMapError("empty row", 1, 1);

  std::vector<bool> occupancy;
  occupancy.reserve(lines.size() * cols);
  std::optional<Cell> start;
  std::optional<Cell> goal;

  for (std::size_t r = 0; r < lines.size(); ++r)
  {
    const auto line_no = static_cast<int>(r + 1);
    const auto& line = lines[r];
    if (line.size() != cols)
    {
      throw MalformedMapError(
        "ragged row: expected " + std::to_string(cols) + " columns, found "
          + std::to_string(line.size()),
        line_no, static_cast<int>(std::min(line.size(), cols) + 1));
    }

    for (std::size_t c = 0; c < cols; ++c)
    {
      const Cell cell{static_cast<int>(r), static_cast<int>(c)};
      const auto column_no = static_cast<int>(c + 1);
      switch (line[c])
      {
        case '.':
          occupancy.push_back(false);
          break;
        case '#':
          occupancy.push_back(true);
          break;
        case 'S':
          if (start)
            throw MalformedMapError("duplicate start 'S'", line_no, column_no);
          start = cell;
          occupancy.push_back(false);
          break;
        case 'G':
          if (goal)
            throw MalformedMapError("duplicate goal 'G'", line_no, column_no);
          goal = cell;
          occupancy.push_back(false);
          break;
        default:
          throw MalformedMapError(
            std::string("unknown glyph '") + line[c] + "'", line_no, column_no);
      }
    }
  }

  if (!start)
    throw MalformedMapError("missing start 'S'", 0, 0);
  if (!goal)
    throw MalformedMapError("missing goal 'G'", 0, 0);

  return GridMap(static_cast<int>(lines.size()), static_cast<int>(cols),
    std::move(occupancy), *start, *goal);
}

//==============================================================================
namespace {

std::string render(const GridMap& map, const CellPath* path)
{
  std::string out;
  out.reserve(static_cast<std::size_t>(map.rows()) * (map.cols() + 1));
  for (int r = 0; r < map.rows(); ++r)
  {
    for (int c = 0; c < map.cols(); ++c)
      out.push_back(map.occupied({r, c}) ? '#' : '.');
    out.push_back('\n');
  }

  const auto at = [&](Cell c) -> char& {
    return out[static_cast<std::size_t>(c.row) * (map.cols() + 1) + c.col];
  };

  if (path)
  {
    for (const auto& c : *path)
      at(c) = '*';
  }
  at(map.start()) = 'S';
  at(map.goal()) = 'G';
  return out;
}

} // anonymous namespace

std::string serialize_map(const GridMap& map)
{
  return render(map, nullptr);
}

std::string overlay_path(const GridMap& map, const CellPath& path)
{
  return render(map, &path);
}

//==============================================================================
std::size_t neighbors(const GridMap& map, Cell c, Cell (&out)[4])
{
  static constexpr int dr[4] = {-1, 0, 1, 0};
  static constexpr int dc[4] = {0, 1, 0, -1};

  std::size_t n = 0;
  for (int k = 0; k < 4; ++k)
  {
    const Cell next{c.row + dr[k], c.col + dc[k]};
    if (map.contains(next) && !map.occupied(next))
      out[n++] = next;
  }
  return n;
}

std::vector<Cell> neighbors(const GridMap& map, Cell c)
{
  Cell buffer[4];
  const auto n = neighbors(map, c, buffer);
  return std::vector<Cell>(buffer, buffer + n);
}

bool adjacent(Cell a, Cell b) noexcept
{
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

//==============================================================================
Point2 cell_to_world(Cell c, double step_len)
{
  return {c.col * step_len, c.row * step_len};
}

Cell world_to_cell(Point2 p, double step_len)
{
  return {static_cast<int>(std::lround(p.y / step_len)),
    static_cast<int>(std::lround(p.x / step_len))};
}

} // namespace pathbot
