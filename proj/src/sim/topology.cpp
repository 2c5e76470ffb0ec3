/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/topology.hpp"

#include <fstream>

namespace vwsn::sim
{

using nlohmann::json;

namespace
{

Unit unit_from(const json& j)
{
    auto u = parse_unit(j.get<std::string>());
    if (!u)
        throw Error(Errc::InvalidConfig, "unknown unit " + j.dump());
    return *u;
}

} // namespace

void to_json(json& j, const SignalParams& s)
{
    j = json{{"base", s.base},
             {"amplitude", s.amplitude},
             {"period_ms", s.period_ms},
             {"noise_sigma", s.noise_sigma},
             {"seed", s.seed}};
}

void from_json(const json& j, SignalParams& s)
{
    s.base = j.value("base", 0.0);
    s.amplitude = j.value("amplitude", 0.0);
    s.period_ms = j.value("period_ms", std::int64_t{60'000});
    s.noise_sigma = j.value("noise_sigma", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const CapabilityDecl& c)
{
    json units = json::array();
    for (auto u : c.units)
        units.push_back(std::string(to_string(u)));
    j = json{{"capability", std::string(to_string(c.capability))},
             {"units", units},
             {"sampling_interval_ms", {{"min", c.sampling_interval_ms.min_ms}, {"max", c.sampling_interval_ms.max_ms}}},
             {"signal", c.signal}};
}

void from_json(const json& j, CapabilityDecl& c)
{
    auto cap = parse_capability(j.at("capability").get<std::string>());
    if (!cap)
        throw Error(Errc::InvalidConfig, "unknown capability " + j.at("capability").dump());
    c.capability = *cap;
    c.units.clear();
    for (const auto& u : j.at("units"))
        c.units.push_back(unit_from(u));
    const auto& range = j.at("sampling_interval_ms");
    c.sampling_interval_ms.min_ms = range.at("min").get<std::int64_t>();
    c.sampling_interval_ms.max_ms = range.at("max").get<std::int64_t>();
    c.signal = j.value("signal", SignalParams{});
}

void to_json(json& j, const NodeConfig& n)
{
    j = json{{"node_id", n.node_id},
             {"platform", std::string(to_string(n.platform))},
             {"location", {{"lat", n.location.lat()}, {"lon", n.location.lon()}}},
             {"battery_j", n.battery_j},
             {"duty_cycle", {{"period_ms", n.duty_cycle.period_ms}, {"awake_ms", n.duty_cycle.awake_ms}}},
             {"capacity", n.capacity},
             {"capabilities", n.capabilities}};
    if (n.gto_parent)
        j["gto_parent"] = *n.gto_parent;
}

void from_json(const json& j, NodeConfig& n)
{
    n.node_id = j.at("node_id").get<std::string>();
    auto platform = parse_platform(j.at("platform").get<std::string>());
    if (!platform)
        throw Error(Errc::InvalidConfig, "unknown platform " + j.at("platform").dump());
    n.platform = *platform;
    n.gto_parent.reset();
    if (j.contains("gto_parent") && !j.at("gto_parent").is_null())
        n.gto_parent = j.at("gto_parent").get<std::string>();
    const auto& loc = j.at("location");
    n.location = GeoPoint(loc.at("lat").get<double>(), loc.at("lon").get<double>());
    n.battery_j = j.value("battery_j", 1000.0);
    if (j.contains("duty_cycle"))
    {
        n.duty_cycle.period_ms = j.at("duty_cycle").at("period_ms").get<std::int64_t>();
        n.duty_cycle.awake_ms = j.at("duty_cycle").at("awake_ms").get<std::int64_t>();
    }
    else
    {
        n.duty_cycle = DutyCycle{};
    }
    n.capacity = j.value("capacity", n.platform == Platform::Mote ? kMoteCapacity : kSpotDefaultCapacity);
    n.capabilities = j.at("capabilities").get<std::vector<CapabilityDecl>>();
}

void to_json(json& j, const DelayProfile& p)
{
    j = json{{"build_ms", p.build_ms},           {"per_kb_ms", p.per_kb_ms},   {"sync_ms", p.sync_ms},
             {"start_sync_ms", p.start_sync_ms}, {"stop_ms", p.stop_ms},       {"delete_ms", p.delete_ms},
             {"migrate_ms", p.migrate_ms},       {"jitter_sigma_ms", p.jitter_sigma_ms}};
}

void from_json(const json& j, DelayProfile& p)
{
    const DelayProfile d{};
    p.build_ms = j.value("build_ms", d.build_ms);
    p.per_kb_ms = j.value("per_kb_ms", d.per_kb_ms);
    p.sync_ms = j.value("sync_ms", d.sync_ms);
    p.start_sync_ms = j.value("start_sync_ms", d.start_sync_ms);
    p.stop_ms = j.value("stop_ms", d.stop_ms);
    p.delete_ms = j.value("delete_ms", d.delete_ms);
    p.migrate_ms = j.value("migrate_ms", d.migrate_ms);
    p.jitter_sigma_ms = j.value("jitter_sigma_ms", d.jitter_sigma_ms);
    if (p.build_ms < 0 || p.per_kb_ms < 0 || p.sync_ms < 0 || p.start_sync_ms < 0 || p.stop_ms < 0 ||
        p.delete_ms < 0 || p.migrate_ms < 0 || !(p.jitter_sigma_ms >= 0.0))
        throw Error(Errc::InvalidConfig, "delay profile values must be >= 0");
}

Topology parse_topology(const json& doc)
{
    try
    {
        Topology t;
        t.iaas_id = doc.value("iaas_id", std::string("vwsn"));
        if (t.iaas_id.empty() || t.iaas_id.find('/') != std::string::npos)
            throw Error(Errc::InvalidConfig, "iaas_id must be non-empty and slash-free");
        t.nodes = doc.at("nodes").get<std::vector<NodeConfig>>();
        for (const auto& n : t.nodes)
            validate(n);
        return t;
    }
    catch (const json::exception& e)
    {
        throw Error(Errc::InvalidConfig, std::string("topology: ") + e.what());
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::InvalidConfig)
            throw;
        throw Error(Errc::InvalidConfig, std::string("topology: ") + e.what());
    }
}

Topology load_topology(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot read topology " + path.string());
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::exception& e)
    {
        throw Error(Errc::InvalidConfig, std::string("topology: ") + e.what());
    }
    return parse_topology(doc);
}

json topology_to_json(const Topology& t) { return json{{"iaas_id", t.iaas_id}, {"nodes", t.nodes}}; }

void spawn_topology(Simulation& sim, const Topology& topology)
{
    for (const auto& n : topology.nodes)
        if (n.platform == Platform::Spot)
            sim.spawn_node(n);
    for (const auto& n : topology.nodes)
        if (n.platform == Platform::Mote)
            sim.spawn_node(n);
}

} // namespace vwsn::sim
