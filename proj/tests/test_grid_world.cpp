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

#include <pathbot/error.hpp>
#include <pathbot/grid_world.hpp>

#include "support/oracles.hpp"


#include <tuple>
#include <doctest.h>

using namespace pathbot;

TEST_SUITE("grid_world")
{

TEST_CASE("smallest legal map")
{
  const auto map = parse_map("S.\n.G");
  CHECK(map.rows() == 2);
  CHECK(map.cols() == 2);
  CHECK(map.start() == Cell{0, 0});
  CHECK(map.goal() == Cell{1, 1});
  for (const bool blocked : map.occupancy())
    CHECK_FALSE(blocked);
}

TEST_CASE("an unsolvable map still parses")
{
  const auto map = parse_map("S#G");
  CHECK(map.rows() == 1);
  CHECK(map.cols() == 3);
  CHECK(map.occupied({0, 1}));
  CHECK(map.goal() == Cell{0, 2});
}

TEST_CASE("malformed maps report where the problem is")
{
  const auto code_of = [](const char* text) {
    try
    {
      parse_map(text);
    }
    catch (const MalformedMapError& e)
    {
      return std::make_tuple(e.code(), e.line(), e.column());
    }
    return std::make_tuple(ErrorCode::Io, -1, -1);
  };

  CHECK(code_of("S.\n..") == std::make_tuple(ErrorCode::MalformedMap, 0, 0));
  CHECK(code_of("..\n.G") == std::make_tuple(ErrorCode::MalformedMap, 0, 0));
  CHECK(code_of("S..\n.G\n...") == std::make_tuple(ErrorCode::MalformedMap, 2, 3));
  CHECK(code_of("S.x\n..G") == std::make_tuple(ErrorCode::MalformedMap, 1, 3));
  CHECK(code_of("SS\n.G") == std::make_tuple(ErrorCode::MalformedMap, 1, 2));
  CHECK(code_of("S.\nGG") == std::make_tuple(ErrorCode::MalformedMap, 2, 2));
  CHECK(code_of("") == std::make_tuple(ErrorCode::MalformedMap, 0, 0));
  CHECK(code_of("S.G\n\n") == std::make_tuple(ErrorCode::MalformedMap, 2, 1));

  try
  {
    parse_map("S..\n.G\n");
    FAIL("expected a parse error");
  }
  catch (const MalformedMapError& e)
  {
    CHECK(std::string(e.what()).find("line 2, column 3") != std::string::npos);
  }
}

TEST_CASE("trailing newline and carriage returns are accepted")
{
  const auto a = parse_map("S.\n.G");
  CHECK(parse_map("S.\n.G\n") == a);
  CHECK(parse_map("S.\r\n.G\r\n") == a);
}

TEST_CASE("programmatic grids are validated")
{
  CHECK_THROWS_AS(GridMap(0, 3, {}, {0, 0}, {0, 0}), Error);
  CHECK_THROWS_AS(GridMap::empty(2, 2, {0, 0}, {2, 2}), Error);

  try
  {
    GridMap(1, 2, {true, false}, {0, 0}, {0, 1});
    FAIL("expected StartOrGoalBlocked");
  }
  catch (const Error& e)
  {
    CHECK(e.code() == ErrorCode::StartOrGoalBlocked);
  }
}

TEST_CASE("parse, serialize, parse is the identity")
{
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 40);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  for (int trial = 0; trial < 300; ++trial)
  {
    const auto map = oracle::random_grid_anywhere(rng, dim(rng), dim(rng), density(rng));
    if (map.start() == map.goal())
      continue;
    const auto text = serialize_map(map);
    const auto parsed = parse_map(text);
    REQUIRE(parsed == map);
    CHECK(serialize_map(parsed) == text);
  }
}

TEST_CASE("overlay marks path cells and keeps start and goal")
{
  const auto map = parse_map("S..\n.#.\n..G\n");
  const CellPath path{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 2}};
  CHECK(overlay_path(map, path) == "S**\n.#*\n..G\n");
}

TEST_CASE("neighbors follow Up, Right, Down, Left")
{
  const auto empty = GridMap::empty(3, 3, {0, 0}, {2, 2});
  CHECK(neighbors(empty, {1, 1}) == std::vector<Cell>{{0, 1}, {1, 2}, {2, 1}, {1, 0}});
  CHECK(neighbors(empty, {0, 0}) == std::vector<Cell>{{0, 1}, {1, 0}});

  const auto walled = parse_map("S#.\n...\n..G");
  CHECK(neighbors(walled, {0, 0}) == std::vector<Cell>{{1, 0}});
}

TEST_CASE("neighbors are free, in bounds, adjacent and at most four")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial)
  {
    const auto map = oracle::random_grid(rng, 1 + trial % 17, 1 + trial % 13 + 1, 0.35);
    for (std::size_t i = 0; i < map.cell_count(); ++i)
    {
      const auto c = map.cell_at(i);
      const auto ns = neighbors(map, c);
      CHECK(ns.size() <= 4);
      for (const auto& n : ns)
      {
        CHECK(map.contains(n));
        CHECK_FALSE(map.occupied(n));
        CHECK(adjacent(c, n));
      }
    }
  }
}

TEST_CASE("cell to world transform")
{
  const auto origin = cell_to_world({0, 0}, 8.0);
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);

  // One step is one 8 inch revolution: column 3 is 24 in across, row 2 is
  // 16 in down.
  const auto p = cell_to_world({2, 3}, 8.0);
  CHECK(p.x == 24.0);
  CHECK(p.y == 16.0);

  CHECK(world_to_cell({24.9, 16.2}, 8.0) == Cell{2, 3});
}

TEST_CASE("inverse transform picks the nearest cell center")
{
  const double step = 8.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-3.9, 35.9);
  for (int trial = 0; trial < 2000; ++trial)
  {
    const Point2 p{coord(rng), coord(rng)};
    Cell best{};
    double best_d = 1e300;
    for (int r = 0; r < 5; ++r)
    {
      for (int c = 0; c < 5; ++c)
      {
        const auto center = cell_to_world({r, c}, step);
        const double d = std::hypot(center.x - p.x, center.y - p.y);
        if (d < best_d)
        {
          best_d = d;
          best = {r, c};
        }
      }
    }
    CHECK(world_to_cell(p, step) == best);
  }
}

TEST_CASE("transform round trip on every cell up to 50x50")
{
  for (const double step : {8.0, 1.0, 0.3, 12.5})
  {
    for (int r = 0; r < 50; ++r)
    {
      for (int c = 0; c < 50; ++c)
        REQUIRE(world_to_cell(cell_to_world({r, c}, step), step) == Cell{r, c});
    }
  }
}

} // TEST_SUITE
