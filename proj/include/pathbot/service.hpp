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

#ifndef PATHBOT__SERVICE_HPP
#define PATHBOT__SERVICE_HPP

#include <pathbot/episode.hpp>
#include <pathbot/gateway.hpp>

#include <atomic>
#include <memory>
#include <thread>

namespace pathbot {

struct ServiceConfig
{
  DriveConfig drive;
  HeuristicKind heuristic = HeuristicKind::Manhattan;
  std::chrono::milliseconds ack_timeout{5000};
  BindAddress bind;
};

/// Long-running twin: all three stations on one in-process bus plus the
/// WebSocket gateway. The initial map is published at startup. A message on
/// /plan/request plans on the latest /map and drives the robot there; a
/// request that arrives while a run is in progress is dropped.
class Service
{
public:
  Service(const GridMap& map, const ServiceConfig& config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Bus& bus() noexcept { return _bus; }
  std::uint16_t port() const noexcept { return _gateway->port(); }

  /// Number of completed /plan/request runs.
  std::uint64_t runs_completed() const noexcept { return _runs.load(); }

  void stop();

private:
  void on_request(const BusMessage& msg);

  ServiceConfig _config;
  Bus _bus;
  std::unique_ptr<BusPort> _controller_port;
  std::unique_ptr<BusPort> _bridge_port;
  std::unique_ptr<BusPort> _host_port;
  std::unique_ptr<BusPort> _request_port;
  std::unique_ptr<ControllerStation> _controller;
  std::unique_ptr<BridgeStation> _bridge;
  std::unique_ptr<HostStation> _host;
  std::unique_ptr<Gateway> _gateway;
  std::atomic<bool> _busy = false;
  std::atomic<std::uint64_t> _runs = 0;
  std::thread _worker;
  bool _stopped = false;
};

} // namespace pathbot

#endif // PATHBOT__SERVICE_HPP
