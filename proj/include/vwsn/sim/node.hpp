/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/core/geo.hpp"
#include "vwsn/core/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn::sim
{

/// SPOTSIM: capable node speaking the text-line protocol, hosts several VSs
/// and can act as a gateway. MOTESIM: constrained single-slot node reached
/// only through its GTO parent with the binary TLV protocol.
enum class Platform : std::uint8_t
{
    Spot,
    Mote,
};

std::string_view to_string(Platform p) noexcept;
std::optional<Platform> parse_platform(std::string_view text) noexcept;

inline constexpr std::uint32_t kSpotDefaultCapacity = 4;
inline constexpr std::uint32_t kMoteCapacity = 1;

struct SignalParams
{
    double base = 0.0;
    double amplitude = 0.0;
    std::int64_t period_ms = 60'000;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const SignalParams&, const SignalParams&) = default;
};

struct IntervalRange
{
    std::int64_t min_ms = 100;
    std::int64_t max_ms = 3'600'000;

    friend bool operator==(const IntervalRange&, const IntervalRange&) = default;
};

/// One sensing capability. The signal is expressed in units.front().
struct CapabilityDecl
{
    Capability capability = Capability::Temperature;
    std::vector<Unit> units;
    IntervalRange sampling_interval_ms;
    SignalParams signal;

    Unit native_unit() const { return units.front(); }
    bool supports(Unit u) const;

    friend bool operator==(const CapabilityDecl&, const CapabilityDecl&) = default;
};

/// Node is awake while (t mod period_ms) < awake_ms.
struct DutyCycle
{
    std::int64_t period_ms = 1000;
    std::int64_t awake_ms = 1000;

    bool awake_at(TimeMs t) const noexcept;
    /// Earliest instant >= t at which the node is awake.
    TimeMs next_awake(TimeMs t) const noexcept;

    friend bool operator==(const DutyCycle&, const DutyCycle&) = default;
};

struct NodeConfig
{
    std::string node_id;
    Platform platform = Platform::Spot;
    std::optional<std::string> gto_parent;
    std::vector<CapabilityDecl> capabilities;
    GeoPoint location;
    double battery_j = 1000.0;
    DutyCycle duty_cycle;
    std::uint32_t capacity = kSpotDefaultCapacity;

    const CapabilityDecl* find(Capability c) const noexcept;

    friend bool operator==(const NodeConfig&, const NodeConfig&) = default;
};

/// Checks the node-local invariants; throws Error{InvalidConfig}.
/// The gto_parent cross-reference is checked by the simulation at spawn.
void validate(const NodeConfig& config);

} // namespace vwsn::sim
