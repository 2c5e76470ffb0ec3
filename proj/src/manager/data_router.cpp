/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/manager/data_router.hpp"

#include "vwsn/core/text.hpp"

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

namespace vwsn::manager
{

std::optional<Endpoint> parse_endpoint(std::string_view text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        return std::nullopt;
    const auto host = text.substr(0, colon);
    const auto port = parse_uint(text.substr(colon + 1));
    if (!port || *port == 0 || *port > 65535)
        return std::nullopt;
    for (char c : host)
        if (c == ' ' || c == '\n' || c == ':' || c == '=' || static_cast<unsigned char>(c) < 0x21)
            return std::nullopt;
    return Endpoint{std::string(host), static_cast<std::uint16_t>(*port)};
}

std::string Delivery::line() const
{
    return std::string(event ? "EVENT " : "DATA ") + vs_id + " " + std::to_string(seq) + " " +
           std::to_string(ts_ms) + " " + format_double(value) + " " + std::string(to_string(unit)) + "\n";
}

Delivery Delivery::parse(std::string_view line)
{
    if (line.empty() || line.back() != '\n')
        throw Error(Errc::BadFrame, "delivery line must end with LF");
    line.remove_suffix(1);
    const auto f = split_spaces(line);
    if (f.size() != 6 || (f[0] != "DATA" && f[0] != "EVENT"))
        throw Error(Errc::BadFrame, "malformed delivery line");
    Delivery d;
    d.event = f[0] == "EVENT";
    d.vs_id = std::string(f[1]);
    const auto seq = parse_uint(f[2]);
    const auto ts = parse_int(f[3]);
    const auto value = parse_double(f[4]);
    const auto unit = parse_unit(f[5]);
    if (!seq || !ts || !value || !unit)
        throw Error(Errc::BadFrame, "malformed delivery field");
    d.seq = *seq;
    d.ts_ms = *ts;
    d.value = *value;
    d.unit = *unit;
    return d;
}

DataRouter::~DataRouter()
{
    if (socket_ >= 0)
        ::close(socket_);
}

void DataRouter::attach(const std::string& endpoint, Sink sink)
{
    std::lock_guard lock(mutex_);
    sinks_[endpoint] = std::move(sink);
}

void DataRouter::detach(const std::string& endpoint)
{
    std::lock_guard lock(mutex_);
    sinks_.erase(endpoint);
}

void DataRouter::deliver(const std::string& endpoint, const std::string& line)
{
    Sink sink;
    {
        std::lock_guard lock(mutex_);
        if (auto it = sinks_.find(endpoint); it != sinks_.end())
            sink = it->second;
    }
    if (sink)
    {
        sink(line);
        ++delivered_;
        return;
    }
    if (send_udp(endpoint, line))
        ++delivered_;
    else
        ++dropped_;
}

bool DataRouter::send_udp(const std::string& endpoint, const std::string& line)
{
    std::lock_guard lock(mutex_);
    auto it = resolved_.find(endpoint);
    if (it == resolved_.end())
    {
        std::optional<std::string> addr;
        if (const auto ep = parse_endpoint(endpoint))
        {
            addrinfo hints{};
            hints.ai_family = AF_INET;
            hints.ai_socktype = SOCK_DGRAM;
            addrinfo* res = nullptr;
            if (::getaddrinfo(ep->host.c_str(), std::to_string(ep->port).c_str(), &hints, &res) == 0 && res)
            {
                addr = std::string(reinterpret_cast<const char*>(res->ai_addr), res->ai_addrlen);
                ::freeaddrinfo(res);
            }
        }
        it = resolved_.emplace(endpoint, std::move(addr)).first;
    }
    if (!it->second)
        return false;
    if (socket_ < 0)
        socket_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (socket_ < 0)
        return false;
    const auto& a = *it->second;
    const auto sent = ::sendto(socket_, line.data(), line.size(), 0, reinterpret_cast<const sockaddr*>(a.data()),
                               static_cast<socklen_t>(a.size()));
    return sent == static_cast<ssize_t>(line.size());
}

} // namespace vwsn::manager
