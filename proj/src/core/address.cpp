/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/address.hpp"

#include "vwsn/core/error.hpp"

#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid_io.hpp>

namespace vwsn
{

namespace
{

constexpr std::string_view kScheme = "vs://";

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

} // namespace

std::string GlobalAddress::uuid_text() const { return boost::uuids::to_string(uuid); }

std::string GlobalAddress::to_string() const { return std::string(kScheme) + iaas_id + "/" + uuid_text(); }

std::optional<boost::uuids::uuid> parse_uuid(std::string_view text)
{
    if (text.size() != 36)
        return std::nullopt;
    boost::uuids::uuid u{};
    std::size_t byte = 0;
    for (std::size_t i = 0; i < text.size();)
    {
        if (i == 8 || i == 13 || i == 18 || i == 23)
        {
            if (text[i] != '-')
                return std::nullopt;
            ++i;
            continue;
        }
        const int hi = hex_value(text[i]);
        const int lo = hex_value(text[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        u.data[byte++] = static_cast<std::uint8_t>(hi * 16 + lo);
        i += 2;
    }
    return u;
}

GlobalAddress GlobalAddress::parse(std::string_view text)
{
    if (!text.starts_with(kScheme))
        throw Error(Errc::InvalidArgument, "global address must start with vs://");
    text.remove_prefix(kScheme.size());
    const auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 0)
        throw Error(Errc::InvalidArgument, "global address lacks iaas id");
    auto uuid = parse_uuid(text.substr(slash + 1));
    if (!uuid)
        throw Error(Errc::InvalidArgument, "global address has malformed uuid");
    return GlobalAddress{std::string(text.substr(0, slash)), *uuid};
}

std::string to_string(const LocalAddress& l) { return l.node_id + "#" + std::to_string(l.slot); }

boost::uuids::uuid UuidSource::next()
{
    boost::uuids::basic_random_generator<std::mt19937_64> gen(rng_);
    return gen();
}

AddressMap::AddressMap(const AddressMap& other)
{
    std::shared_lock lock(other.mutex_);
    forward_ = other.forward_;
    backward_ = other.backward_;
}

AddressMap& AddressMap::operator=(const AddressMap& other)
{
    if (this != &other)
    {
        std::scoped_lock lock(mutex_);
        std::shared_lock other_lock(other.mutex_);
        forward_ = other.forward_;
        backward_ = other.backward_;
    }
    return *this;
}

void AddressMap::bind(const GlobalAddress& g, const LocalAddress& l)
{
    std::unique_lock lock(mutex_);
    if (forward_.contains(g))
        throw Error(Errc::AlreadyBound, g.to_string() + " already bound");
    if (backward_.contains(l))
        throw Error(Errc::AlreadyBound, to_string(l) + " already occupied");
    forward_.emplace(g, l);
    backward_.emplace(l, g);
}

LocalAddress AddressMap::unbind(const GlobalAddress& g)
{
    std::unique_lock lock(mutex_);
    auto it = forward_.find(g);
    if (it == forward_.end())
        throw Error(Errc::NotBound, g.to_string() + " not bound");
    LocalAddress l = it->second;
    backward_.erase(l);
    forward_.erase(it);
    return l;
}

void AddressMap::rebind_atomic(const GlobalAddress& g, const LocalAddress& new_l)
{
    std::unique_lock lock(mutex_);
    auto it = forward_.find(g);
    if (it == forward_.end())
        throw Error(Errc::NotBound, g.to_string() + " not bound");
    if (backward_.contains(new_l))
        throw Error(Errc::AlreadyBound, to_string(new_l) + " already occupied");
    backward_.erase(it->second);
    it->second = new_l;
    backward_.emplace(new_l, g);
}

std::optional<LocalAddress> AddressMap::resolve(const GlobalAddress& g) const
{
    std::shared_lock lock(mutex_);
    auto it = forward_.find(g);
    if (it == forward_.end())
        return std::nullopt;
    return it->second;
}

std::optional<GlobalAddress> AddressMap::resolve_local(const LocalAddress& l) const
{
    std::shared_lock lock(mutex_);
    auto it = backward_.find(l);
    if (it == backward_.end())
        return std::nullopt;
    return it->second;
}

std::size_t AddressMap::size() const
{
    std::shared_lock lock(mutex_);
    return forward_.size();
}

std::vector<std::pair<GlobalAddress, LocalAddress>> AddressMap::entries() const
{
    std::shared_lock lock(mutex_);
    return {forward_.begin(), forward_.end()};
}

} // namespace vwsn
