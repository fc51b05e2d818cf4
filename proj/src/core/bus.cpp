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

#include <pathbot/bus.hpp>
#include <pathbot/error.hpp>

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <iostream>

namespace pathbot {

//==============================================================================
namespace {

// ,"crc":"xxxxxxxx"}
constexpr std::string_view CrcPrefix = ",\"crc\":\"";
constexpr std::size_t CrcHexDigits = 8;
constexpr std::size_t CrcSuffixSize = CrcPrefix.size() + CrcHexDigits + 2;

std::uint32_t crc32_of(std::string_view bytes)
{
  return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0),
    reinterpret_cast<const Bytef*>(bytes.data()),
    static_cast<uInt>(bytes.size())));
}

[[noreturn]] void corrupt(const std::string& what)
{
  throw Error(ErrorCode::SerialFrameCorrupt, what);
}

std::string envelope(const BusMessage& msg)
{
  nlohmann::ordered_json env;
  env["topic"] = msg.topic;
  env["seq"] = msg.seq;
  env["payload"] = msg.payload;
  try
  {
    return env.dump();
  }
  catch (const nlohmann::json::exception& e)
  {
    throw Error(ErrorCode::InvalidArgument,
      std::string("payload is not serializable: ") + e.what());
  }
}

} // anonymous namespace

std::string frame_encode(const BusMessage& msg)
{
  std::string body = envelope(msg);
  char hex[CrcHexDigits + 1];
  std::snprintf(hex, sizeof(hex), "%08x", crc32_of(body));

  body.pop_back();
  body.append(CrcPrefix);
  body.append(hex, CrcHexDigits);
  body.append("\"}\n");
  return body;
}

BusMessage frame_decode(std::string_view frame)
{
  if (frame.empty() || frame.back() != '\n')
    corrupt("frame is not newline-terminated");
  frame.remove_suffix(1);
  if (frame.empty())
    corrupt("empty frame");
  if (frame.find('\n') != std::string_view::npos)
    corrupt("embedded newline in frame");
  if (frame.size() < CrcSuffixSize + 2)
    corrupt("frame too short");

  const auto suffix = frame.substr(frame.size() - CrcSuffixSize);
  if (suffix.substr(0, CrcPrefix.size()) != CrcPrefix
    || suffix.substr(CrcSuffixSize - 2) != "\"}")
  {
    corrupt("missing crc field");
  }

  std::uint32_t expected = 0;
  for (const char ch : suffix.substr(CrcPrefix.size(), CrcHexDigits))
  {
    std::uint32_t digit = 0;
    if (ch >= '0' && ch <= '9')
      digit = static_cast<std::uint32_t>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      digit = static_cast<std::uint32_t>(ch - 'a' + 10);
    else
      corrupt("crc is not lowercase hex");
    expected = (expected << 4) | digit;
  }

  std::string body(frame.substr(0, frame.size() - CrcSuffixSize));
  body.push_back('}');
  if (crc32_of(body) != expected)
    corrupt("crc mismatch");

  Json env = Json::parse(body, nullptr, false);
  if (env.is_discarded() || !env.is_object() || env.size() != 3)
    corrupt("malformed frame body");

  const auto topic = env.find("topic");
  const auto seq = env.find("seq");
  const auto payload = env.find("payload");
  if (topic == env.end() || !topic->is_string() || seq == env.end()
    || !seq->is_number_unsigned() || payload == env.end())
  {
    corrupt("frame body lacks topic, seq or payload");
  }

  BusMessage msg;
  msg.topic = topic->get<std::string>();
  msg.seq = seq->get<std::uint64_t>();
  msg.payload = std::move(*payload);
  return msg;
}

Json message_to_json(const BusMessage& msg)
{
  return {{"topic", msg.topic}, {"seq", msg.seq}, {"payload", msg.payload}};
}

//==============================================================================
void TopicRegistry::add(std::string name, PayloadValidator validator)
{
  if (name.empty() || name.front() != '/')
    throw Error(ErrorCode::InvalidArgument, "topic names start with '/'");
  if (!_validators.emplace(std::move(name), std::move(validator)).second)
    throw Error(ErrorCode::InvalidArgument, "topic already registered");
}

bool TopicRegistry::contains(std::string_view name) const
{
  return _validators.find(name) != _validators.end();
}

void TopicRegistry::validate(std::string_view topic, const Json& payload) const
{
  const auto it = _validators.find(topic);
  if (it == _validators.end())
    throw Error(ErrorCode::UnknownTopic, "unknown topic '" + std::string(topic) + "'");
  if (it->second)
    it->second(payload);
}

std::vector<std::string> TopicRegistry::names() const
{
  std::vector<std::string> out;
  for (const auto& [name, _] : _validators)
    out.push_back(name);
  return out;
}

//==============================================================================
Executor::Executor()
: _thread([this] { run(); })
{
}

Executor::~Executor()
{
  {
    std::lock_guard lock(_mutex);
    _stopping = true;
  }
  _cv.notify_all();
  // The last owner can be a task running on this very thread.
  if (_thread.get_id() == std::this_thread::get_id())
    _thread.detach();
  else
    _thread.join();
}

void Executor::post(std::function<void()> task)
{
  {
    std::lock_guard lock(_mutex);
    _tasks.push_back(std::move(task));
  }
  _cv.notify_one();
}

void Executor::drain()
{
  std::unique_lock lock(_mutex);
  _idle.wait(lock, [this] { return _tasks.empty() && !_busy; });
}

void Executor::run()
{
  std::unique_lock lock(_mutex);
  while (true)
  {
    _cv.wait(lock, [this] { return _stopping || !_tasks.empty(); });
    if (_tasks.empty())
      break;

    auto task = std::move(_tasks.front());
    _tasks.pop_front();
    _busy = true;
    lock.unlock();
    try
    {
      task();
    }
    catch (const std::exception& e)
    {
      std::cerr << "pathbot: handler failed: " << e.what() << '\n';
    }
    lock.lock();
    _busy = false;
    if (_tasks.empty())
      _idle.notify_all();
  }
  _idle.notify_all();
}

//==============================================================================
Subscription& Subscription::operator=(Subscription&& other) noexcept
{
  if (this != &other)
  {
    reset();
    _alive = std::move(other._alive);
    _bus = other._bus;
    _id = other._id;
    other._bus = nullptr;
    other._id = 0;
  }
  return *this;
}

Subscription::~Subscription()
{
  reset();
}

void Subscription::reset()
{
  if (_id != 0 && _alive.lock())
    _bus->unsubscribe(_id);
  _bus = nullptr;
  _id = 0;
  _alive.reset();
}

//==============================================================================
Bus::Bus(TopicRegistry registry)
: _registry(std::move(registry)),
  _alive(std::make_shared<int>(0))
{
}

Bus::~Bus()
{
  _alive.reset();
  std::vector<Subscriber> subscribers;
  {
    std::lock_guard lock(_mutex);
    subscribers.swap(_subscribers);
  }
  for (auto& s : subscribers)
    s.executor->drain();
}

std::uint64_t Bus::publish(std::string_view publisher, std::string_view topic,
  Json payload)
{
  return deliver(publisher, topic, std::move(payload), std::nullopt);
}

std::uint64_t Bus::publish_with_seq(std::string_view publisher,
  std::string_view topic, Json payload, std::uint64_t seq)
{
  return deliver(publisher, topic, std::move(payload), seq);
}

std::uint64_t Bus::deliver(std::string_view publisher, std::string_view topic,
  Json payload, std::optional<std::uint64_t> seq)
{
  _registry.validate(topic, payload);

  std::lock_guard lock(_mutex);
  auto& counter = _seq[{std::string(publisher), std::string(topic)}];
  if (seq && *seq != counter + 1)
  {
    throw Error(ErrorCode::InvalidArgument,
      "out-of-order seq " + std::to_string(*seq) + " from '"
        + std::string(publisher) + "' on " + std::string(topic));
  }
  counter += 1;

  auto msg = std::make_shared<const BusMessage>(BusMessage{
    std::string(topic), counter, std::move(payload), std::string(publisher)});

  if (_tracing)
    _trace.push_back(*msg);
  _latest.insert_or_assign(msg->topic, *msg);

  for (const auto& s : _subscribers)
  {
    if (s.topic != topic)
      continue;
    s.executor->post([handler = s.handler, msg] { (*handler)(*msg); });
  }
  return counter;
}

Subscription Bus::subscribe(std::string_view topic, Handler handler,
  std::shared_ptr<Executor> executor)
{
  if (!_registry.contains(topic))
    throw Error(ErrorCode::UnknownTopic, "unknown topic '" + std::string(topic) + "'");
  if (!executor)
    executor = std::make_shared<Executor>();

  std::lock_guard lock(_mutex);
  const auto id = _next_id++;
  _subscribers.push_back({id, std::string(topic),
    std::make_shared<Handler>(std::move(handler)), std::move(executor)});
  return Subscription(_alive, this, id);
}

void Bus::unsubscribe(std::uint64_t id)
{
  std::lock_guard lock(_mutex);
  std::erase_if(_subscribers, [id](const Subscriber& s) { return s.id == id; });
}

std::optional<BusMessage> Bus::latest(std::string_view topic) const
{
  std::lock_guard lock(_mutex);
  const auto it = _latest.find(topic);
  if (it == _latest.end())
    return std::nullopt;
  return it->second;
}

void Bus::enable_trace(bool on)
{
  std::lock_guard lock(_mutex);
  _tracing = on;
}

std::vector<BusMessage> Bus::trace() const
{
  std::lock_guard lock(_mutex);
  return _trace;
}

void Bus::drain()
{
  std::vector<std::shared_ptr<Executor>> executors;
  {
    std::lock_guard lock(_mutex);
    for (const auto& s : _subscribers)
      executors.push_back(s.executor);
  }
  for (auto& e : executors)
    e->drain();
}

} // namespace pathbot
