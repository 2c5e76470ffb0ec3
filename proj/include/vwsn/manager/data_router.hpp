/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/units.hpp"
#include "vwsn/core/error.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace vwsn::manager
{

struct Endpoint
{
    std::string host;
    std::uint16_t port = 0;
};

/// Parses `host:port`; nullopt when malformed.
std::optional<Endpoint> parse_endpoint(std::string_view text);

/// One line delivered to an application endpoint:
/// `DATA <vs_id> <seq> <ts_ms> <value> <unit>\n` for every sample of a VS
/// without a rule, `EVENT ...` (same fields) when a rule becomes satisfied.
struct Delivery
{
    bool event = false;
    std::string vs_id;
    std::uint64_t seq = 0;
    TimeMs ts_ms = 0;
    double value = 0.0;
    Unit unit = Unit::Celsius;

    std::string line() const;
    /// Throws Error{BadFrame}.
    static Delivery parse(std::string_view line);
    friend bool operator==(const Delivery&, const Delivery&) = default;
};

/// Sends delivery lines to endpoints: attached in-process sinks first,
/// otherwise one UDP datagram per line. Thread-safe.
class DataRouter
{
public:
    using Sink = std::function<void(const std::string& line)>;

    DataRouter() = default;
    ~DataRouter();
    DataRouter(const DataRouter&) = delete;
    DataRouter& operator=(const DataRouter&) = delete;

    void attach(const std::string& endpoint, Sink sink);
    void detach(const std::string& endpoint);
    void deliver(const std::string& endpoint, const std::string& line);

    std::uint64_t delivered() const noexcept { return delivered_; }
    std::uint64_t dropped() const noexcept { return dropped_; }

private:
    bool send_udp(const std::string& endpoint, const std::string& line);

    std::mutex mutex_;
    std::map<std::string, Sink> sinks_;
    std::map<std::string, std::optional<std::string>> resolved_; // endpoint -> raw sockaddr bytes
    int socket_ = -1;
    std::atomic<std::uint64_t> delivered_{0};
    std::atomic<std::uint64_t> dropped_{0};
};

} // namespace vwsn::manager
