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

#ifndef PATHBOT__GRID_WORLD_HPP
#define PATHBOT__GRID_WORLD_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pathbot {

//==============================================================================
struct Cell
{
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

using CellPath = std::vector<Cell>;

/// Planar point in inches, in the map frame: x grows with the column index and
/// y grows with the row index (row 0 is the top line of the map file).
struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

//==============================================================================
/// Occupancy grid with a start and a goal. Immutable once constructed.
class GridMap
{
public:
  /// Throws Error(StartOrGoalBlocked) if start or goal is occupied, and
  /// Error(InvalidArgument) for empty dimensions, a size mismatch or an
  /// out-of-bounds start/goal.
  GridMap(int rows, int cols, std::vector<bool> occupancy, Cell start, Cell goal);

  /// Obstacle-free grid.
  static GridMap empty(int rows, int cols, Cell start, Cell goal);

  int rows() const noexcept { return _rows; }
  int cols() const noexcept { return _cols; }
  Cell start() const noexcept { return _start; }
  Cell goal() const noexcept { return _goal; }
  std::size_t cell_count() const noexcept { return _occupancy.size(); }

  bool contains(Cell c) const noexcept
  {
    return c.row >= 0 && c.col >= 0 && c.row < _rows && c.col < _cols;
  }

  bool occupied(Cell c) const { return _occupancy[index(c)]; }

  /// Row-major linear index.
  std::size_t index(Cell c) const noexcept
  {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(_cols)
      + static_cast<std::size_t>(c.col);
  }

  Cell cell_at(std::size_t index) const noexcept
  {
    return Cell{static_cast<int>(index / static_cast<std::size_t>(_cols)),
      static_cast<int>(index % static_cast<std::size_t>(_cols))};
  }

  const std::vector<bool>& occupancy() const noexcept { return _occupancy; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

private:
  int _rows;
  int _cols;
  std::vector<bool> _occupancy;
  Cell _start;
  Cell _goal;
};

/// Parses the ASCII map format: '.' free, '#' obstacle, 'S' start, 'G' goal,
/// newline-separated rows of equal length, trailing newline optional. A
/// trailing '\r' on each row is tolerated. Throws MalformedMapError.
GridMap parse_map(std::string_view text);

/// Inverse of parse_map. Always ends with a newline.
std::string serialize_map(const GridMap& map);

/// Same as serialize_map with '*' drawn on every path cell that is neither
/// start nor goal.
std::string overlay_path(const GridMap& map, const CellPath& path);

/// In-bounds, unoccupied 4-neighbors ordered Up, Right, Down, Left. The
/// caller guarantees that c is inside the grid.
std::vector<Cell> neighbors(const GridMap& map, Cell c);

/// Writes the neighbors into out and returns how many were written. Same
/// ordering as neighbors(); used in the search inner loops.
std::size_t neighbors(const GridMap& map, Cell c, Cell (&out)[4]);

bool adjacent(Cell a, Cell b) noexcept;

/// Center of a cell in map-frame inches.
Point2 cell_to_world(Cell c, double step_len);

/// Nearest cell center. The result is not clamped to any grid.
Cell world_to_cell(Point2 p, double step_len);

} // namespace pathbot

#endif // PATHBOT__GRID_WORLD_HPP
