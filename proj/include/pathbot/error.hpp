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

#ifndef PATHBOT__ERROR_HPP
#define PATHBOT__ERROR_HPP

#include <stdexcept>
#include <string>

namespace pathbot {

// Values mirror the pb_status codes of the C API.
enum class ErrorCode
{
  MalformedMap = 1,
  StartOrGoalBlocked = 2,
  Unsolvable = 3,
  NonPositiveWheelBase = 4,
  InvalidCommand = 5,
  UnknownTopic = 6,
  SchemaMismatch = 7,
  SerialFrameCorrupt = 8,
  AckTimeout = 9,
  SettleTimeout = 10,
  BindFailure = 11,
  InvalidArgument = 12,
  Io = 13,
};

const char* to_string(ErrorCode code);

//==============================================================================
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
  : std::runtime_error(what),
    _code(code)
  {
  }

  ErrorCode code() const noexcept { return _code; }

private:
  ErrorCode _code;
};

//==============================================================================
/// Map text rejected by the parser. line and column are 1-based and point at
/// the offending glyph or row; both are 0 when the problem is global (for
/// example a missing goal).
class MalformedMapError : public Error
{
public:
  MalformedMapError(const std::string& what, int line, int column);

  int line() const noexcept { return _line; }
  int column() const noexcept { return _column; }

private:
  int _line;
  int _column;
};

} // namespace pathbot

#endif // PATHBOT__ERROR_HPP
