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

#ifndef PATHBOT__TRANSPORT_HPP
#define PATHBOT__TRANSPORT_HPP

#include <pathbot/bus.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace pathbot {

/// A node's attachment to the bus. All handlers subscribed through one port
/// run on that port's executor, one at a time, in delivery order.
class BusPort
{
public:
  virtual ~BusPort() = default;

  virtual const std::string& name() const = 0;

  /// Returns the seq of the published message. Throws Error(UnknownTopic) or
  /// Error(SchemaMismatch) before anything reaches the bus.
  virtual std::uint64_t publish(std::string_view topic, Json payload) = 0;

  /// The subscription lives as long as the port. Returns once the bus is
  /// guaranteed to deliver every later publish.
  virtual void subscribe(std::string_view topic, Bus::Handler handler) = 0;

  /// Waits until everything published through this port has reached the bus
  /// and handlers have run for everything delivered so far.
  virtual void drain() = 0;
};

/// Direct in-process attachment. pacing_bytes_per_s, when set, delays each
/// publish by the time its serial frame would take on the wire.
std::unique_ptr<BusPort> make_local_port(Bus& bus, std::string name,
  std::optional<double> pacing_bytes_per_s = std::nullopt);

//==============================================================================
/// TCP endpoint on which remote ports reach a bus. Frames are the serial wire
/// frames; topics under /_bus/ carry the attach, subscribe, sync and
/// acknowledge handshakes.
class BusEndpoint
{
public:
  /// port 0 picks a free port. Throws Error(BindFailure).
  explicit BusEndpoint(Bus& bus, const std::string& host = "127.0.0.1",
    std::uint16_t port = 0);
  ~BusEndpoint();

  BusEndpoint(const BusEndpoint&) = delete;
  BusEndpoint& operator=(const BusEndpoint&) = delete;

  std::uint16_t port() const noexcept;
  const std::string& host() const noexcept;

private:
  class Impl;
  std::unique_ptr<Impl> _impl;
};

/// Attaches to a BusEndpoint over TCP. Throws Error(Io) when the endpoint is
/// unreachable.
std::unique_ptr<BusPort> connect_port(const std::string& host, std::uint16_t port,
  std::string name, std::optional<double> pacing_bytes_per_s = std::nullopt);

} // namespace pathbot

#endif // PATHBOT__TRANSPORT_HPP
