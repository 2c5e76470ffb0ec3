/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/sim/simulation.hpp"
#include "vwsn/sim/wire.hpp"

#include <map>
#include <string>
#include <vector>

namespace vwsn::testing
{

inline sim::CapabilityDecl temperature_decl(double base = 21.5, double amplitude = 0.0, std::int64_t period = 60'000,
                                            double sigma = 0.0, std::uint64_t seed = 1)
{
    sim::CapabilityDecl d;
    d.capability = Capability::Temperature;
    d.units = {Unit::Celsius, Unit::Fahrenheit};
    d.sampling_interval_ms = {100, 60'000};
    d.signal = {base, amplitude, period, sigma, seed};
    return d;
}

inline sim::CapabilityDecl light_decl(double base = 400.0, double amplitude = 0.0, std::int64_t period = 60'000)
{
    sim::CapabilityDecl d;
    d.capability = Capability::Light;
    d.units = {Unit::Lux};
    d.sampling_interval_ms = {100, 60'000};
    d.signal = {base, amplitude, period, 0.0, 2};
    return d;
}

inline sim::NodeConfig spot(const std::string& id, std::vector<sim::CapabilityDecl> caps = {temperature_decl()})
{
    sim::NodeConfig n;
    n.node_id = id;
    n.platform = sim::Platform::Spot;
    n.capabilities = std::move(caps);
    n.location = GeoPoint(45.5, -73.6);
    n.battery_j = 1000.0;
    n.capacity = 4;
    return n;
}

inline sim::NodeConfig mote(const std::string& id, const std::string& gateway,
                            std::vector<sim::CapabilityDecl> caps = {temperature_decl()})
{
    sim::NodeConfig n = spot(id, std::move(caps));
    n.platform = sim::Platform::Mote;
    n.gto_parent = gateway;
    n.capacity = 1;
    return n;
}

inline TaskManifest manifest(const std::string& vs_id, std::int64_t interval = 1000,
                             Capability cap = Capability::Temperature, Unit unit = Unit::Celsius)
{
    TaskManifest m;
    m.vs_id = vs_id;
    m.capability = cap;
    m.sampling_interval_ms = interval;
    m.unit = unit;
    m.endpoint = "sink:1";
    return m;
}

/// Sends raw commands and waits for the decoded reply; collects uplinked data.
class NodeDriver
{
public:
    explicit NodeDriver(sim::Simulation& sim) : sim_(sim)
    {
        sim_.set_uplink([this](const std::string& via, const std::string& frame, bool relayed) {
            if (!relayed)
            {
                data[via].push_back(wire::text::decode_data(frame));
            }
            else
            {
                auto [id, inner] = wire::gto::unwrap(frame);
                data[id].push_back(wire::tlv::decode_data(inner));
            }
        });
    }

    wire::Reply spot(const std::string& node, const wire::Command& c)
    {
        std::optional<std::string> got;
        sim_.transmit(node, wire::text::encode_command(c), [&](std::string f) { got = std::move(f); });
        sim_.run_until([&] { return got.has_value(); });
        return wire::text::decode_reply(*got);
    }

    wire::Reply mote(const std::string& node, const wire::Command& c)
    {
        const auto& cfg = sim_.node(node).config();
        std::optional<std::string> got;
        sim_.relay(*cfg.gto_parent, wire::gto::wrap(node, wire::tlv::encode_command(c)),
                   [&](std::string f) { got = std::move(f); });
        sim_.run_until([&] { return got.has_value(); });
        auto [id, inner] = wire::gto::unwrap(*got);
        return wire::tlv::decode_reply(inner);
    }

    std::map<std::string, std::vector<wire::DataMessage>> data;

private:
    sim::Simulation& sim_;
};

inline wire::Command deploy(const TaskManifest& m, std::optional<std::uint32_t> slot = std::nullopt)
{
    return wire::Command{wire::CommandKind::Deploy, slot, m.serialize(), {}};
}

inline wire::Command cmd(wire::CommandKind k, std::uint32_t slot) { return wire::Command{k, slot, {}, {}}; }

} // namespace vwsn::testing
