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

#ifndef PATHBOT__BUS_HPP
#define PATHBOT__BUS_HPP

#include <json.hpp>

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace pathbot {

using Json = nlohmann::json;

namespace topics {
inline constexpr std::string_view Map = "/map";
inline constexpr std::string_view PlanActions = "/plan/actions";
inline constexpr std::string_view PlanAck = "/plan/ack";
inline constexpr std::string_view PlanPath = "/plan/path";
inline constexpr std::string_view PlanRequest = "/plan/request";
inline constexpr std::string_view DriveCmd = "/drive/cmd";
inline constexpr std::string_view DriveAck = "/drive/ack";
inline constexpr std::string_view Pose = "/pose";
} // namespace topics

//==============================================================================
struct BusMessage
{
  std::string topic;
  std::uint64_t seq = 0;
  Json payload;
  /// Name of the publishing node. Bus-local bookkeeping; not part of the wire
  /// frame.
  std::string publisher;

  /// Compares topic, seq and payload.
  friend bool operator==(const BusMessage& a, const BusMessage& b)
  {
    return a.topic == b.topic && a.seq == b.seq && a.payload == b.payload;
  }
};

/// One newline-terminated line:
///   {"topic":"/drive/cmd","seq":3,"payload":{...},"crc":"1a2b3c4d"}\n
/// where crc is the lowercase hex CRC-32 of the same line without the crc
/// member and without the newline.
std::string frame_encode(const BusMessage& msg);

/// Accepts exactly one frame including its terminating newline. Throws
/// Error(SerialFrameCorrupt) on a checksum mismatch, a truncated or empty
/// line, or a malformed body.
BusMessage frame_decode(std::string_view frame);

/// The envelope without crc, as used on the WebSocket gateway.
Json message_to_json(const BusMessage& msg);

//==============================================================================
/// Validates a payload; throws Error(SchemaMismatch).
using PayloadValidator = std::function<void(const Json&)>;

class TopicRegistry
{
public:
  /// Throws Error(InvalidArgument) when the name is already taken.
  void add(std::string name, PayloadValidator validator);

  bool contains(std::string_view name) const;

  /// Throws Error(UnknownTopic) or Error(SchemaMismatch).
  void validate(std::string_view topic, const Json& payload) const;

  std::vector<std::string> names() const;

  /// /map, /plan/actions, /plan/ack, /plan/path, /plan/request, /drive/cmd,
  /// /drive/ack and /pose with their payload schemas.
  static TopicRegistry standard();

private:
  std::map<std::string, PayloadValidator, std::less<>> _validators;
};

//==============================================================================
/// Single worker thread running posted tasks in order. Handlers for one
/// station share an Executor so they never run concurrently.
class Executor
{
public:
  Executor();
  ~Executor();

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  void post(std::function<void()> task);

  /// Blocks until every task posted so far has run.
  void drain();

private:
  void run();

  std::mutex _mutex;
  std::condition_variable _cv;
  std::condition_variable _idle;
  std::deque<std::function<void()>> _tasks;
  bool _busy = false;
  bool _stopping = false;
  std::thread _thread;
};

//==============================================================================
class Bus;

/// Keeps a subscription alive; unsubscribes on destruction.
class Subscription
{
public:
  Subscription() = default;
  Subscription(Subscription&&) noexcept = default;
  Subscription& operator=(Subscription&& other) noexcept;
  ~Subscription();

  void reset();
  explicit operator bool() const noexcept { return _id != 0; }

private:
  friend class Bus;
  Subscription(std::weak_ptr<void> bus_alive, Bus* bus, std::uint64_t id)
  : _alive(std::move(bus_alive)), _bus(bus), _id(id) {}

  std::weak_ptr<void> _alive;
  Bus* _bus = nullptr;
  std::uint64_t _id = 0;
};

/// In-process publish/subscribe hub.
///
/// Every publish is validated against the topic registry, stamped with the
/// next sequence number of its (publisher, topic) pair, appended to the trace
/// when tracing is on, and queued on each subscriber's executor. Publishes
/// are serialized, so every subscriber sees one publisher's messages in seq
/// order with no gaps. A slow handler only delays its own executor.
class Bus
{
public:
  using Handler = std::function<void(const BusMessage&)>;

  explicit Bus(TopicRegistry registry = TopicRegistry::standard());
  ~Bus();

  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  const TopicRegistry& registry() const noexcept { return _registry; }

  /// Returns the assigned seq (starting at 1). Throws Error(UnknownTopic) or
  /// Error(SchemaMismatch).
  std::uint64_t publish(std::string_view publisher, std::string_view topic,
    Json payload);

  /// Publish on behalf of a remote node that numbers its own messages. seq
  /// must be exactly one past the previous seq of that (publisher, topic)
  /// pair; otherwise Error(InvalidArgument).
  std::uint64_t publish_with_seq(std::string_view publisher,
    std::string_view topic, Json payload, std::uint64_t seq);

  /// Handlers run on the given executor, or on a private one when none is
  /// given. Throws Error(UnknownTopic).
  Subscription subscribe(std::string_view topic, Handler handler,
    std::shared_ptr<Executor> executor = nullptr);

  /// Most recent message on a topic.
  std::optional<BusMessage> latest(std::string_view topic) const;

  void enable_trace(bool on = true);
  std::vector<BusMessage> trace() const;

  /// Waits until every subscriber executor has run what was queued so far.
  void drain();

private:
  friend class Subscription;

  struct Subscriber
  {
    std::uint64_t id;
    std::string topic;
    std::shared_ptr<Handler> handler;
    std::shared_ptr<Executor> executor;
  };

  std::uint64_t deliver(std::string_view publisher, std::string_view topic,
    Json payload, std::optional<std::uint64_t> seq);
  void unsubscribe(std::uint64_t id);

  TopicRegistry _registry;
  mutable std::mutex _mutex;
  std::map<std::pair<std::string, std::string>, std::uint64_t> _seq;
  std::vector<Subscriber> _subscribers;
  std::map<std::string, BusMessage, std::less<>> _latest;
  std::vector<BusMessage> _trace;
  bool _tracing = false;
  std::uint64_t _next_id = 1;
  std::shared_ptr<void> _alive;
};

} // namespace pathbot

#endif // PATHBOT__BUS_HPP
