/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <boost/uuid/uuid.hpp>

#include <compare>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vwsn
{

/// IaaS-wide VS address, rendered `vs://<iaas_id>/<lowercase-hex-uuid>`.
struct GlobalAddress
{
    std::string iaas_id;
    boost::uuids::uuid uuid{};

    std::string to_string() const;
    /// Canonical 36-character lowercase uuid text (the REST vs_id).
    std::string uuid_text() const;

    /// Throws Error{InvalidArgument} on anything that does not round-trip.
    static GlobalAddress parse(std::string_view text);

    friend std::strong_ordering operator<=>(const GlobalAddress&, const GlobalAddress&) = default;
    friend bool operator==(const GlobalAddress&, const GlobalAddress&) = default;
};

/// Platform-local VS handle: the node and the slot index on it.
struct LocalAddress
{
    std::string node_id;
    std::uint32_t slot = 0;

    friend auto operator<=>(const LocalAddress&, const LocalAddress&) = default;
    friend bool operator==(const LocalAddress&, const LocalAddress&) = default;
};

std::string to_string(const LocalAddress& l);

/// Parses lowercase canonical uuid text; nullopt otherwise.
std::optional<boost::uuids::uuid> parse_uuid(std::string_view text);

/// Seeded uuid source; identical seeds give identical address sequences.
class UuidSource
{
public:
    explicit UuidSource(std::uint64_t seed) : rng_(seed) {}
    boost::uuids::uuid next();

private:
    std::mt19937_64 rng_;
};

/// Thread-safe bijection between global and local addresses. Each operation
/// is atomic with respect to concurrent resolves.
class AddressMap
{
public:
    AddressMap() = default;
    AddressMap(const AddressMap& other);
    AddressMap& operator=(const AddressMap& other);

    /// Throws Error{AlreadyBound} when either side is already present.
    void bind(const GlobalAddress& g, const LocalAddress& l);
    /// Throws Error{NotBound}.
    LocalAddress unbind(const GlobalAddress& g);
    /// Moves g to new_l in one step; the old local is freed.
    /// Throws Error{NotBound} or Error{AlreadyBound}.
    void rebind_atomic(const GlobalAddress& g, const LocalAddress& new_l);

    std::optional<LocalAddress> resolve(const GlobalAddress& g) const;
    std::optional<GlobalAddress> resolve_local(const LocalAddress& l) const;

    std::size_t size() const;
    std::vector<std::pair<GlobalAddress, LocalAddress>> entries() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<GlobalAddress, LocalAddress> forward_;
    std::map<LocalAddress, GlobalAddress> backward_;
};

} // namespace vwsn
