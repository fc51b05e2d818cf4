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

#include <pathbot/transport.hpp>
#include <pathbot/error.hpp>

#include <boost/asio/connect.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/read_until.hpp>
#include <boost/asio/streambuf.hpp>
#include <boost/asio/write.hpp>

#include <sys/socket.h>

#include <atomic>
#include <chrono>
#include <iostream>
#include <list>
#include <set>

namespace pathbot {

namespace asio = boost::asio;
using tcp = asio::ip::tcp;

namespace {

constexpr std::string_view HelloTopic = "/_bus/hello";
constexpr std::string_view SubscribeTopic = "/_bus/subscribe";
constexpr std::string_view AckTopic = "/_bus/ack";
constexpr std::string_view SyncTopic = "/_bus/sync";
constexpr std::string_view ErrorTopic = "/_bus/error";

constexpr auto HandshakeTimeout = std::chrono::seconds(5);

void pace(std::size_t bytes, const std::optional<double>& bytes_per_s)
{
  if (bytes_per_s && *bytes_per_s > 0.0)
  {
    std::this_thread::sleep_for(std::chrono::duration<double>(
      static_cast<double>(bytes) / *bytes_per_s));
  }
}

// Unblocks any thread sitting in a blocking read on the socket.
void hard_shutdown(tcp::socket& socket)
{
  if (socket.is_open())
    ::shutdown(socket.native_handle(), SHUT_RDWR);
}

//==============================================================================
class LocalPort final : public BusPort
{
public:
  LocalPort(Bus& bus, std::string name, std::optional<double> pacing)
  : _bus(bus),
    _name(std::move(name)),
    _pacing(pacing),
    _executor(std::make_shared<Executor>())
  {
  }

  ~LocalPort() override
  {
    _subscriptions.clear();
    _executor->drain();
  }

  const std::string& name() const override { return _name; }

  std::uint64_t publish(std::string_view topic, Json payload) override
  {
    if (_pacing)
    {
      BusMessage probe{std::string(topic), 0, payload, {}};
      pace(frame_encode(probe).size(), _pacing);
    }
    return _bus.publish(_name, topic, std::move(payload));
  }

  void subscribe(std::string_view topic, Bus::Handler handler) override
  {
    _subscriptions.push_back(_bus.subscribe(topic, std::move(handler), _executor));
  }

  void drain() override { _executor->drain(); }

private:
  Bus& _bus;
  std::string _name;
  std::optional<double> _pacing;
  std::shared_ptr<Executor> _executor;
  std::vector<Subscription> _subscriptions;
};

//==============================================================================
// Per-topic outgoing seq counters plus a mutex-guarded blocking writer.
class FrameWriter
{
public:
  explicit FrameWriter(tcp::socket& socket) : _socket(socket) {}

  std::uint64_t send(std::string_view topic, Json payload)
  {
    std::lock_guard lock(_mutex);
    const auto seq = ++_seq[std::string(topic)];
    write_locked(frame_encode({std::string(topic), seq, std::move(payload), {}}));
    return seq;
  }

  void send_message(const BusMessage& msg)
  {
    std::lock_guard lock(_mutex);
    write_locked(frame_encode(msg));
  }

private:
  void write_locked(const std::string& frame)
  {
    boost::system::error_code ec;
    asio::write(_socket, asio::buffer(frame), ec);
    if (ec)
      throw Error(ErrorCode::Io, "bus link write failed: " + ec.message());
  }

  tcp::socket& _socket;
  std::mutex _mutex;
  std::map<std::string, std::uint64_t> _seq;
};

//==============================================================================
class SocketPort final : public BusPort
{
public:
  SocketPort(const std::string& host, std::uint16_t port, std::string name,
    std::optional<double> pacing)
  : _name(std::move(name)),
    _pacing(pacing),
    _socket(_io),
    _writer(_socket),
    _executor(std::make_shared<Executor>()),
    _registry(TopicRegistry::standard())
  {
    boost::system::error_code ec;
    tcp::resolver resolver(_io);
    const auto endpoints = resolver.resolve(host, std::to_string(port), ec);
    if (!ec)
      asio::connect(_socket, endpoints, ec);
    if (ec)
    {
      throw Error(ErrorCode::Io, "cannot reach bus endpoint " + host + ":"
        + std::to_string(port) + ": " + ec.message());
    }
    _socket.set_option(tcp::no_delay(true));

    _reader = std::thread([this] { read_loop(); });
    _writer.send(HelloTopic, {{"name", _name}});
  }

  ~SocketPort() override
  {
    sync();
    hard_shutdown(_socket);
    if (_reader.joinable())
      _reader.join();
    _executor->drain();
  }

  const std::string& name() const override { return _name; }

  std::uint64_t publish(std::string_view topic, Json payload) override
  {
    _registry.validate(topic, payload);
    const auto frame_size =
      frame_encode({std::string(topic), 0, payload, {}}).size();
    const auto seq = _writer.send(topic, std::move(payload));
    pace(frame_size, _pacing);
    return seq;
  }

  void subscribe(std::string_view topic, Bus::Handler handler) override
  {
    if (!_registry.contains(topic))
      throw Error(ErrorCode::UnknownTopic, "unknown topic '" + std::string(topic) + "'");

    std::uint64_t token = 0;
    {
      std::lock_guard lock(_mutex);
      _handlers[std::string(topic)].push_back(
        std::make_shared<Bus::Handler>(std::move(handler)));
      token = ++_next_token;
    }

    _writer.send(SubscribeTopic, {{"topic", std::string(topic)}, {"token", token}});
    if (!await_ack(token))
      throw Error(ErrorCode::Io, "bus endpoint did not confirm subscription");
  }

  void drain() override
  {
    sync();
    _executor->drain();
  }

private:
  bool await_ack(std::uint64_t token)
  {
    std::unique_lock lock(_mutex);
    return _cv.wait_for(lock, HandshakeTimeout,
             [&] { return _acked.count(token) > 0 || _closed; })
      && !_closed;
  }

  /// Round trip through the endpoint. Its ack follows everything this port
  /// sent before and everything the endpoint delivered to it before.
  void sync()
  {
    std::uint64_t token = 0;
    {
      std::lock_guard lock(_mutex);
      if (_closed)
        return;
      token = ++_next_token;
    }
    try
    {
      _writer.send(SyncTopic, {{"token", token}});
    }
    catch (const Error&)
    {
      return;
    }
    await_ack(token);
  }

  void read_loop()
  {
    asio::streambuf buffer;
    boost::system::error_code ec;
    while (true)
    {
      const auto n = asio::read_until(_socket, buffer, '\n', ec);
      if (ec)
        break;

      std::string line(asio::buffers_begin(buffer.data()),
        asio::buffers_begin(buffer.data()) + static_cast<std::ptrdiff_t>(n));
      buffer.consume(n);

      BusMessage msg;
      try
      {
        msg = frame_decode(line);
      }
      catch (const Error& e)
      {
        std::cerr << "pathbot: dropped frame on '" << _name << "': " << e.what() << '\n';
        continue;
      }

      if (msg.topic == AckTopic)
      {
        std::lock_guard lock(_mutex);
        _acked.insert(msg.payload.value("token", std::uint64_t{0}));
        _cv.notify_all();
        continue;
      }
      if (msg.topic == ErrorTopic)
      {
        std::cerr << "pathbot: bus endpoint rejected a frame from '" << _name
                  << "': " << msg.payload.value("message", std::string()) << '\n';
        continue;
      }

      std::vector<std::shared_ptr<Bus::Handler>> handlers;
      {
        std::lock_guard lock(_mutex);
        const auto it = _handlers.find(msg.topic);
        if (it != _handlers.end())
          handlers = it->second;
      }
      auto shared = std::make_shared<const BusMessage>(std::move(msg));
      for (auto& h : handlers)
        _executor->post([h, shared] { (*h)(*shared); });
    }

    std::lock_guard lock(_mutex);
    _closed = true;
    _cv.notify_all();
  }

  std::string _name;
  std::optional<double> _pacing;
  asio::io_context _io;
  tcp::socket _socket;
  FrameWriter _writer;
  std::shared_ptr<Executor> _executor;
  TopicRegistry _registry;

  std::mutex _mutex;
  std::condition_variable _cv;
  std::map<std::string, std::vector<std::shared_ptr<Bus::Handler>>> _handlers;
  std::set<std::uint64_t> _acked;
  std::uint64_t _next_token = 0;
  bool _closed = false;
  std::thread _reader;
};

} // anonymous namespace

std::unique_ptr<BusPort> make_local_port(Bus& bus, std::string name,
  std::optional<double> pacing_bytes_per_s)
{
  return std::make_unique<LocalPort>(bus, std::move(name), pacing_bytes_per_s);
}

std::unique_ptr<BusPort> connect_port(const std::string& host, std::uint16_t port,
  std::string name, std::optional<double> pacing_bytes_per_s)
{
  return std::make_unique<SocketPort>(host, port, std::move(name), pacing_bytes_per_s);
}

//==============================================================================
class BusEndpoint::Impl
{
public:
  Impl(Bus& bus, const std::string& host, std::uint16_t port)
  : _bus(bus),
    _host(host),
    _acceptor(_io)
  {
    boost::system::error_code ec;
    const auto address = asio::ip::make_address(host, ec);
    if (!ec)
    {
      const tcp::endpoint endpoint(address, port);
      _acceptor.open(endpoint.protocol(), ec);
      if (!ec)
        _acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
      if (!ec)
        _acceptor.bind(endpoint, ec);
      if (!ec)
        _acceptor.listen(asio::socket_base::max_listen_connections, ec);
    }
    if (ec)
    {
      throw Error(ErrorCode::BindFailure,
        "cannot bind bus endpoint " + host + ":" + std::to_string(port) + ": "
          + ec.message());
    }
    _port = _acceptor.local_endpoint().port();
    _accept_thread = std::thread([this] { accept_loop(); });
  }

  ~Impl()
  {
    _stopping = true;
    {
      // Wake the blocking accept with a throwaway connection.
      boost::system::error_code ec;
      asio::io_context io;
      tcp::socket poke(io);
      poke.connect(tcp::endpoint(asio::ip::make_address(_host), _port), ec);
    }
    _accept_thread.join();

    std::lock_guard lock(_mutex);
    for (auto& c : _connections)
      hard_shutdown(c->socket);
    for (auto& c : _connections)
    {
      if (c->reader.joinable())
        c->reader.join();
    }
    _connections.clear();
  }

  std::uint16_t port() const noexcept { return _port; }
  const std::string& host() const noexcept { return _host; }

private:
  struct Connection
  {
    explicit Connection(asio::io_context& io)
    : socket(io),
      writer(socket),
      executor(std::make_shared<Executor>())
    {
    }

    ~Connection()
    {
      subscriptions.clear();
      executor->drain();
    }

    tcp::socket socket;
    FrameWriter writer;
    std::shared_ptr<Executor> executor;
    std::vector<Subscription> subscriptions;
    std::string name;
    std::thread reader;
  };

  void accept_loop()
  {
    while (!_stopping)
    {
      auto conn = std::make_unique<Connection>(_io);
      boost::system::error_code ec;
      _acceptor.accept(conn->socket, ec);
      if (_stopping || ec)
        break;
      conn->socket.set_option(tcp::no_delay(true), ec);
      auto* raw = conn.get();
      std::lock_guard lock(_mutex);
      _connections.push_back(std::move(conn));
      raw->reader = std::thread([this, raw] { serve(*raw); });
    }
  }

  void reply(Connection& c, std::string_view topic, Json payload)
  {
    // Through the delivery executor so replies stay ordered with deliveries.
    auto shared = std::make_shared<Json>(std::move(payload));
    c.executor->post([&c, topic = std::string(topic), shared] {
      try
      {
        c.writer.send(topic, std::move(*shared));
      }
      catch (const Error&)
      {
      }
    });
  }

  void serve(Connection& c)
  {
    asio::streambuf buffer;
    boost::system::error_code ec;
    while (true)
    {
      const auto n = asio::read_until(c.socket, buffer, '\n', ec);
      if (ec)
        break;

      std::string line(asio::buffers_begin(buffer.data()),
        asio::buffers_begin(buffer.data()) + static_cast<std::ptrdiff_t>(n));
      buffer.consume(n);

      try
      {
        auto msg = frame_decode(line);
        if (msg.topic == HelloTopic)
        {
          c.name = msg.payload.value("name", std::string("remote"));
        }
        else if (msg.topic == SubscribeTopic)
        {
          const auto topic = msg.payload.at("topic").get<std::string>();
          c.subscriptions.push_back(_bus.subscribe(topic,
            [&c](const BusMessage& m) {
              try
              {
                c.writer.send_message(m);
              }
              catch (const Error&)
              {
              }
            },
            c.executor));
          reply(c, AckTopic, {{"token", msg.payload.value("token", std::uint64_t{0})}});
        }
        else if (msg.topic == SyncTopic)
        {
          reply(c, AckTopic, {{"token", msg.payload.value("token", std::uint64_t{0})}});
        }
        else
        {
          _bus.publish_with_seq(c.name, msg.topic, std::move(msg.payload), msg.seq);
        }
      }
      catch (const std::exception& e)
      {
        reply(c, ErrorTopic, {{"message", e.what()}});
      }
    }
    c.subscriptions.clear();
  }

  Bus& _bus;
  std::string _host;
  asio::io_context _io;
  tcp::acceptor _acceptor;
  std::uint16_t _port = 0;
  std::atomic<bool> _stopping{false};
  std::thread _accept_thread;
  std::mutex _mutex;
  std::list<std::unique_ptr<Connection>> _connections;
};

BusEndpoint::BusEndpoint(Bus& bus, const std::string& host, std::uint16_t port)
: _impl(std::make_unique<Impl>(bus, host, port))
{
}

BusEndpoint::~BusEndpoint() = default;

std::uint16_t BusEndpoint::port() const noexcept
{
  return _impl->port();
}

const std::string& BusEndpoint::host() const noexcept
{
  return _impl->host();
}

} // namespace pathbot
