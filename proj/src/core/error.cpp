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

namespace pathbot {

const char* to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::MalformedMap: return "MalformedMap";
    case ErrorCode::StartOrGoalBlocked: return "StartOrGoalBlocked";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::NonPositiveWheelBase: return "NonPositiveWheelBase";
    case ErrorCode::InvalidCommand: return "InvalidCommand";
    case ErrorCode::UnknownTopic: return "UnknownTopic";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::SerialFrameCorrupt: return "SerialFrameCorrupt";
    case ErrorCode::AckTimeout: return "AckTimeout";
    case ErrorCode::SettleTimeout: return "SettleTimeout";
    case ErrorCode::BindFailure: return "BindFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

MalformedMapError::MalformedMapError(const std::string& what, int line, int column)
: Error(ErrorCode::MalformedMap,
    line > 0
      ? what + " (line " + std::to_string(line) + ", column "
        + std::to_string(column) + ")"
      : what),
  _line(line),
  _column(column)
{
}

} // namespace pathbot
