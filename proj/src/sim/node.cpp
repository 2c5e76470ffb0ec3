/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/node.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vwsn::sim
{

std::string_view to_string(Platform p) noexcept { return p == Platform::Spot ? "SPOTSIM" : "MOTESIM"; }

std::optional<Platform> parse_platform(std::string_view text) noexcept
{
    if (text == "SPOTSIM")
        return Platform::Spot;
    if (text == "MOTESIM")
        return Platform::Mote;
    return std::nullopt;
}

bool CapabilityDecl::supports(Unit u) const { return std::find(units.begin(), units.end(), u) != units.end(); }

bool DutyCycle::awake_at(TimeMs t) const noexcept { return (t % period_ms) < awake_ms; }

TimeMs DutyCycle::next_awake(TimeMs t) const noexcept
{
    if (awake_at(t))
        return t;
    return (t / period_ms + 1) * period_ms;
}

const CapabilityDecl* NodeConfig::find(Capability c) const noexcept
{
    for (const auto& d : capabilities)
        if (d.capability == c)
            return &d;
    return nullptr;
}

void validate(const NodeConfig& config)
{
    auto fail = [&](const std::string& why) {
        throw Error(Errc::InvalidConfig, "node '" + config.node_id + "': " + why);
    };
    if (config.node_id.empty() || config.node_id.size() > 255)
        fail("node_id must be 1..255 bytes");
    if (config.node_id.find_first_of(" \n\r/#") != std::string::npos)
        fail("node_id contains a reserved character");
    if (config.platform == Platform::Mote)
    {
        if (!config.gto_parent)
            fail("MOTESIM node requires a gto_parent");
        if (config.capacity != kMoteCapacity)
            fail("MOTESIM capacity is fixed at 1");
    }
    else if (config.gto_parent)
    {
        fail("only MOTESIM nodes have a gto_parent");
    }
    if (config.capacity == 0 || config.capacity > 254)
        fail("capacity must be 1..254");
    if (!(config.battery_j >= 0.0) || !std::isfinite(config.battery_j))
        fail("battery_j must be >= 0");
    if (config.duty_cycle.period_ms <= 0 || config.duty_cycle.awake_ms <= 0 ||
        config.duty_cycle.awake_ms > config.duty_cycle.period_ms)
        fail("duty cycle needs 0 < awake_ms <= period_ms");
    if (config.capabilities.empty())
        fail("at least one capability required");
    std::set<Capability> seen;
    for (const auto& d : config.capabilities)
    {
        if (!seen.insert(d.capability).second)
            fail("duplicate capability");
        if (d.units.empty())
            fail("capability without units");
        for (auto u : d.units)
            if (family_of(u) != d.capability)
                fail("unit outside capability family");
        if (d.sampling_interval_ms.min_ms <= 0 || d.sampling_interval_ms.min_ms > d.sampling_interval_ms.max_ms)
            fail("sampling interval range invalid");
        if (d.signal.period_ms <= 0 || !(d.signal.noise_sigma >= 0.0))
            fail("signal parameters invalid");
    }
}

} // namespace vwsn::sim
