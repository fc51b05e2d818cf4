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

#include <pathbot/service.hpp>
#include <pathbot/messages.hpp>

#include <iostream>

namespace pathbot {

Service::Service(const GridMap& map, const ServiceConfig& config)
: _config(config)
{
  validate(config.drive.wheel);
  validate(config.drive.noise);

  _controller_port = make_local_port(_bus, "controller");
  _controller = std::make_unique<ControllerStation>(*_controller_port, config.drive);
  _bridge_port = make_local_port(_bus, "bridge");
  _bridge = std::make_unique<BridgeStation>(*_bridge_port);
  _host_port = make_local_port(_bus, "host");
  _host = std::make_unique<HostStation>(*_host_port, config.drive.wheel.inches_per_rev);

  _request_port = make_local_port(_bus, "host/requests");
  _request_port->subscribe(topics::PlanRequest,
    [this](const BusMessage& msg) { on_request(msg); });

  _host_port->publish(topics::Map, map_payload(map));
  _bus.drain();

  _gateway = std::make_unique<Gateway>(_bus, config.bind);
}

Service::~Service()
{
  stop();
}

void Service::stop()
{
  if (_stopped)
    return;
  _stopped = true;

  _gateway->stop();
  _request_port.reset();
  if (_worker.joinable())
    _worker.join();
  _host_port.reset();
  _bridge_port.reset();
  _controller_port.reset();
  _bus.drain();
}

void Service::on_request(const BusMessage& msg)
{
  if (_busy.exchange(true))
    return;

  const auto latest = _bus.latest(topics::Map);
  const auto heuristic =
    parse_heuristic(msg.payload.at("heuristic").get<std::string>()).value_or(_config.heuristic);

  if (_worker.joinable())
    _worker.join();

  _worker = std::thread([this, map = map_from_payload(latest->payload), heuristic] {
    try
    {
      _host->run(map, heuristic, Heading::East, _config.ack_timeout);
    }
    catch (const std::exception& e)
    {
      std::cerr << "plan request failed: " << e.what() << "\n";
    }
    ++_runs;
    _busy = false;
  });
}

} // namespace pathbot
