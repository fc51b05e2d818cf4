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

#include <pathbot/gateway.hpp>
#include <pathbot/error.hpp>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <charconv>
#include <deque>
#include <thread>

namespace pathbot {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

BindAddress parse_bind_address(const std::string& text)
{
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw Error(ErrorCode::InvalidArgument, "bind address must look like host:port");

  unsigned port = 0;
  const auto* first = text.data() + colon + 1;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || port > 65535)
    throw Error(ErrorCode::InvalidArgument, "invalid port in bind address '" + text + "'");

  return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

namespace {

Json error_reply(const std::string& code, const std::string& message)
{
  return {{"op", "error"}, {"error", code}, {"message", message}};
}

//==============================================================================
class Session : public std::enable_shared_from_this<Session>
{
public:
  Session(tcp::socket socket, Bus& bus, std::string name)
  : _ws(std::move(socket)),
    _bus(bus),
    _name(std::move(name)),
    _executor(std::make_shared<Executor>())
  {
  }

  void start()
  {
    _ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    _ws.async_accept(
      [self = shared_from_this()](beast::error_code ec) { self->on_accept(ec); });
  }

  void send(std::string text)
  {
    asio::post(_ws.get_executor(),
      [self = shared_from_this(), text = std::move(text)]() mutable {
        self->_outbox.push_back(std::move(text));
        if (self->_outbox.size() == 1)
          self->write_next();
      });
  }

private:
  void on_accept(beast::error_code ec)
  {
    if (ec)
      return;
    if (auto map = _bus.latest("/map"))
      send(message_to_json(*map).dump());
    read_next();
  }

  void read_next()
  {
    _ws.async_read(_buffer,
      [self = shared_from_this()](beast::error_code ec, std::size_t) {
        self->on_read(ec);
      });
  }

  void on_read(beast::error_code ec)
  {
    if (ec)
    {
      _subscriptions.clear();
      return;
    }

    const auto text = beast::buffers_to_string(_buffer.data());
    _buffer.consume(_buffer.size());
    send(handle(text).dump());
    read_next();
  }

  Json handle(const std::string& text)
  {
    const Json request = Json::parse(text, nullptr, false);
    if (request.is_discarded() || !request.is_object())
      return error_reply("SchemaMismatch", "request is not a JSON object");

    const auto op = request.value("op", std::string());
    const auto topic_it = request.find("topic");
    if (topic_it == request.end() || !topic_it->is_string())
      return error_reply("SchemaMismatch", "request needs a string 'topic'");
    const auto topic = topic_it->get<std::string>();

    try
    {
      if (op == "subscribe")
      {
        std::weak_ptr<Session> weak = weak_from_this();
        _subscriptions.push_back(_bus.subscribe(topic,
          [weak](const BusMessage& m) {
            if (auto self = weak.lock())
              self->send(message_to_json(m).dump());
          },
          _executor));
        return {{"op", "subscribed"}, {"topic", topic}};
      }
      if (op == "publish")
      {
        if (!request.contains("payload"))
          return error_reply("SchemaMismatch", "publish needs a 'payload'");
        const auto seq = _bus.publish(_name, topic, request.at("payload"));
        return {{"op", "published"}, {"topic", topic}, {"seq", seq}};
      }
      return error_reply("SchemaMismatch", "unknown op '" + op + "'");
    }
    catch (const Error& e)
    {
      return error_reply(to_string(e.code()), e.what());
    }
  }

  void write_next()
  {
    _ws.text(true);
    _ws.async_write(asio::buffer(_outbox.front()),
      [self = shared_from_this()](beast::error_code ec, std::size_t) {
        if (ec)
        {
          self->_outbox.clear();
          return;
        }
        self->_outbox.pop_front();
        if (!self->_outbox.empty())
          self->write_next();
      });
  }

  websocket::stream<beast::tcp_stream> _ws;
  beast::flat_buffer _buffer;
  std::deque<std::string> _outbox;
  Bus& _bus;
  std::string _name;
  std::shared_ptr<Executor> _executor;
  std::vector<Subscription> _subscriptions;
};

} // anonymous namespace

//==============================================================================
class Gateway::Impl
{
public:
  Impl(Bus& bus, const BindAddress& bind)
  : _bus(bus),
    _acceptor(_io)
  {
    beast::error_code ec;
    const auto address = asio::ip::make_address(bind.host, ec);
    if (!ec)
    {
      const tcp::endpoint endpoint(address, bind.port);
      _acceptor.open(endpoint.protocol(), ec);
      if (!ec)
        _acceptor.set_option(asio::socket_base::reuse_address(true), ec);
      if (!ec)
        _acceptor.bind(endpoint, ec);
      if (!ec)
        _acceptor.listen(asio::socket_base::max_listen_connections, ec);
    }
    if (ec)
    {
      throw Error(ErrorCode::BindFailure, "cannot bind gateway to " + bind.host + ":"
        + std::to_string(bind.port) + ": " + ec.message());
    }
    _port = _acceptor.local_endpoint().port();

    accept_next();
    _thread = std::thread([this] { _io.run(); });
  }

  ~Impl() { stop(); }

  void stop()
  {
    if (!_thread.joinable())
      return;
    _io.stop();
    _thread.join();
  }

  std::uint16_t port() const noexcept { return _port; }

private:
  void accept_next()
  {
    _acceptor.async_accept(asio::make_strand(_io),
      [this](beast::error_code ec, tcp::socket socket) {
        if (ec)
          return;
        const auto name = "gateway/client" + std::to_string(++_clients);
        std::make_shared<Session>(std::move(socket), _bus, name)->start();
        accept_next();
      });
  }

  Bus& _bus;
  asio::io_context _io{1};
  tcp::acceptor _acceptor;
  std::uint16_t _port = 0;
  std::uint64_t _clients = 0;
  std::thread _thread;
};

Gateway::Gateway(Bus& bus, const BindAddress& bind)
: _impl(std::make_unique<Impl>(bus, bind))
{
}

Gateway::~Gateway() = default;

std::uint16_t Gateway::port() const noexcept
{
  return _impl->port();
}

void Gateway::stop()
{
  _impl->stop();
}

} // namespace pathbot
