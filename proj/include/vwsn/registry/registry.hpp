/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/core/geo.hpp"
#include "vwsn/core/units.hpp"
#include "vwsn/sim/node.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn::registry
{

enum class Protocol : std::uint8_t
{
    SpotSim,
    MoteSimViaGto,
};

enum class DataFormat : std::uint8_t
{
    TextLine,
    Tlv,
};

std::string_view to_string(Protocol p) noexcept;
std::string_view to_string(DataFormat f) noexcept;

struct SensorDescription
{
    std::string node_id;
    sim::Platform platform = sim::Platform::Spot;
    std::optional<std::string> gateway;
    std::vector<sim::CapabilityDecl> capabilities;
    GeoPoint location;
    Protocol protocol = Protocol::SpotSim;
    DataFormat data_format = DataFormat::TextLine;
    sim::DutyCycle duty_cycle;
    std::uint32_t capacity = sim::kSpotDefaultCapacity;
    /// Battery fraction at or below which the node is unavailable.
    double reserve_fraction = 0.0;

    // live fields
    std::uint32_t active = 0;
    double battery_fraction = 0.0;
    bool reachable = false;
    /// False after a snapshot load until the first update_live.
    bool live_known = false;
    /// Computed at query time.
    bool available = false;

    double load() const noexcept { return capacity == 0 ? 1.0 : static_cast<double>(active) / capacity; }
    bool supports(Capability c, std::optional<Unit> unit, std::optional<std::int64_t> max_interval_ms) const;
};

/// Description of a freshly spawned node; live fields start at full battery.
SensorDescription describe(const sim::NodeConfig& node, std::int64_t reserve_uj);

struct DiscoveryQuery
{
    std::optional<Capability> capability;
    std::optional<Unit> unit;
    std::optional<GeoPoint> center;
    std::optional<double> radius_m;
    /// Node must be able to sample at least this fast.
    std::optional<std::int64_t> max_interval_ms;
    bool available_only = false;
    std::optional<double> min_battery;
};

/// Throws Error{InvalidQuery}.
void validate(const DiscoveryQuery& q);

/// Sensor description repository with criteria discovery.
///
/// Availability is evaluated against the injected clock: the node must be
/// reachable, above its energy reserve, and awake now or within the grace
/// window. Thread-safe.
class Registry
{
public:
    using Clock = std::function<TimeMs()>;

    explicit Registry(Clock clock = {}, TimeMs grace_ms = 5'000);

    /// Throws Error{DuplicateNodeId}.
    void register_node(SensorDescription desc);
    /// Throws Error{UnknownNode}.
    void update_live(std::string_view node_id, std::uint32_t active, double battery_fraction, bool reachable);

    /// Throws Error{InvalidQuery}.
    std::vector<SensorDescription> query(const DiscoveryQuery& q) const;
    /// Evaluates the query predicate for one node now. Throws Error{InvalidQuery}.
    bool satisfies(std::string_view node_id, const DiscoveryQuery& q) const;

    std::optional<SensorDescription> get(std::string_view node_id) const;
    std::size_t size() const;

    /// Throws Error{IoFailure}.
    void snapshot(const std::filesystem::path& path) const;
    /// Replaces the contents. Throws Error{IoFailure} or Error{CorruptSnapshot}.
    void load_snapshot(const std::filesystem::path& path);

    std::string snapshot_text() const;
    void load_snapshot_text(std::string_view text);

private:
    bool available(const SensorDescription& d, TimeMs now) const;
    bool matches(const SensorDescription& d, const DiscoveryQuery& q, TimeMs now) const;
    TimeMs now() const { return clock_ ? clock_() : 0; }

    Clock clock_;
    TimeMs grace_ms_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, SensorDescription, std::less<>> nodes_;
};

} // namespace vwsn::registry
