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

#ifndef PATHBOT__GATEWAY_HPP
#define PATHBOT__GATEWAY_HPP

#include <pathbot/bus.hpp>

#include <cstdint>
#include <memory>
#include <string>

namespace pathbot {

struct BindAddress
{
  std::string host = "127.0.0.1";
  std::uint16_t port = 8400;
};

/// Parses "host:port"; throws Error(InvalidArgument).
BindAddress parse_bind_address(const std::string& text);

/// WebSocket bridge between the bus and external clients.
///
/// Client to gateway, one JSON object per text frame:
///   {"op":"subscribe","topic":"/pose"}
///   {"op":"publish","topic":"/drive/cmd","payload":{"action":"LEFT","steps":1}}
/// Gateway to client:
///   {"topic":"/pose","seq":7,"payload":{...}}        bus traffic
///   {"op":"subscribed","topic":"/pose"}
///   {"op":"published","topic":"/drive/cmd","seq":3}
///   {"op":"error","error":"SchemaMismatch","message":"..."}
/// A newly connected client first receives the latest /map, if any. Rejected
/// requests produce an error reply and leave the connection open.
class Gateway
{
public:
  /// Starts serving immediately on a background thread. Port 0 picks a free
  /// port. Throws Error(BindFailure).
  Gateway(Bus& bus, const BindAddress& bind);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  std::uint16_t port() const noexcept;

  void stop();

private:
  class Impl;
  std::unique_ptr<Impl> _impl;
};

} // namespace pathbot

#endif // PATHBOT__GATEWAY_HPP
