/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/registry/registry.hpp"

#include "vwsn/sim/topology.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace vwsn::registry
{

namespace
{

constexpr std::string_view kFormat = "vwsn-registry";
constexpr int kVersion = 1;

struct Ranked
{
    const SensorDescription* desc;
    double distance;
};

// Fewest active VSs relative to capacity, then distance, then battery, then id.
bool rank_less(const Ranked& a, const Ranked& b)
{
    const auto la = static_cast<std::uint64_t>(a.desc->active) * b.desc->capacity;
    const auto lb = static_cast<std::uint64_t>(b.desc->active) * a.desc->capacity;
    if (la != lb)
        return la < lb;
    if (a.distance != b.distance)
        return a.distance < b.distance;
    if (a.desc->battery_fraction != b.desc->battery_fraction)
        return a.desc->battery_fraction > b.desc->battery_fraction;
    return a.desc->node_id < b.desc->node_id;
}

nlohmann::json to_json(const SensorDescription& d)
{
    nlohmann::json caps = nlohmann::json::array();
    for (const auto& c : d.capabilities)
        caps.push_back(c);
    return {
        {"node_id", d.node_id},
        {"platform", to_string(d.platform)},
        {"gateway", d.gateway ? nlohmann::json(*d.gateway) : nlohmann::json(nullptr)},
        {"capabilities", caps},
        {"location", {{"lat", d.location.lat()}, {"lon", d.location.lon()}}},
        {"protocol", to_string(d.protocol)},
        {"data_format", to_string(d.data_format)},
        {"duty_cycle", {{"period_ms", d.duty_cycle.period_ms}, {"awake_ms", d.duty_cycle.awake_ms}}},
        {"capacity", d.capacity},
        {"reserve_fraction", d.reserve_fraction},
    };
}

template <typename E>
E parse_enum(const nlohmann::json& j, std::initializer_list<E> values)
{
    const auto text = j.get<std::string>();
    for (E v : values)
        if (to_string(v) == text)
            return v;
    throw Error(Errc::CorruptSnapshot, "unknown value " + text);
}

SensorDescription from_json(const nlohmann::json& j)
{
    SensorDescription d;
    d.node_id = j.at("node_id").get<std::string>();
    const auto platform = sim::parse_platform(j.at("platform").get<std::string>());
    if (!platform)
        throw Error(Errc::CorruptSnapshot, "unknown platform");
    d.platform = *platform;
    if (!j.at("gateway").is_null())
        d.gateway = j.at("gateway").get<std::string>();
    for (const auto& c : j.at("capabilities"))
        d.capabilities.push_back(c.get<sim::CapabilityDecl>());
    d.location = GeoPoint(j.at("location").at("lat").get<double>(), j.at("location").at("lon").get<double>());
    d.protocol = parse_enum(j.at("protocol"), {Protocol::SpotSim, Protocol::MoteSimViaGto});
    d.data_format = parse_enum(j.at("data_format"), {DataFormat::TextLine, DataFormat::Tlv});
    d.duty_cycle.period_ms = j.at("duty_cycle").at("period_ms").get<std::int64_t>();
    d.duty_cycle.awake_ms = j.at("duty_cycle").at("awake_ms").get<std::int64_t>();
    d.capacity = j.at("capacity").get<std::uint32_t>();
    d.reserve_fraction = j.at("reserve_fraction").get<double>();
    if (d.node_id.empty() || d.capacity == 0 || d.duty_cycle.period_ms <= 0 || d.duty_cycle.awake_ms <= 0 ||
        d.duty_cycle.awake_ms > d.duty_cycle.period_ms)
        throw Error(Errc::CorruptSnapshot, "invalid node " + d.node_id);
    return d;
}

} // namespace

std::string_view to_string(Protocol p) noexcept
{
    return p == Protocol::SpotSim ? "SPOTSIM" : "MOTESIM-via-GTO";
}

std::string_view to_string(DataFormat f) noexcept
{
    return f == DataFormat::TextLine ? "text-line" : "tlv";
}

bool SensorDescription::supports(Capability c, std::optional<Unit> unit,
                                 std::optional<std::int64_t> max_interval_ms) const
{
    return std::any_of(capabilities.begin(), capabilities.end(), [&](const sim::CapabilityDecl& d) {
        return d.capability == c && (!unit || d.supports(*unit)) &&
               (!max_interval_ms || d.sampling_interval_ms.min_ms <= *max_interval_ms);
    });
}

SensorDescription describe(const sim::NodeConfig& node, std::int64_t reserve_uj)
{
    SensorDescription d;
    d.node_id = node.node_id;
    d.platform = node.platform;
    d.gateway = node.gto_parent;
    d.capabilities = node.capabilities;
    d.location = node.location;
    d.protocol = node.platform == sim::Platform::Spot ? Protocol::SpotSim : Protocol::MoteSimViaGto;
    d.data_format = node.platform == sim::Platform::Spot ? DataFormat::TextLine : DataFormat::Tlv;
    d.duty_cycle = node.duty_cycle;
    d.capacity = node.capacity;
    const auto initial = sim::joules_to_uj(node.battery_j);
    d.reserve_fraction = initial > 0 ? std::min(1.0, static_cast<double>(reserve_uj) / static_cast<double>(initial)) : 1.0;
    d.battery_fraction = initial > 0 ? 1.0 : 0.0;
    d.reachable = true;
    d.live_known = true;
    return d;
}

void validate(const DiscoveryQuery& q)
{
    if (q.radius_m && !q.center)
        throw Error(Errc::InvalidQuery, "radius_m requires center");
    if (q.radius_m && !(*q.radius_m >= 0.0 && std::isfinite(*q.radius_m)))
        throw Error(Errc::InvalidQuery, "radius_m must be a finite non-negative number");
    if (q.max_interval_ms && *q.max_interval_ms <= 0)
        throw Error(Errc::InvalidQuery, "max_interval_ms must be positive");
    if (q.min_battery && !(*q.min_battery >= 0.0 && *q.min_battery <= 1.0))
        throw Error(Errc::InvalidQuery, "min_battery must lie in [0, 1]");
}

Registry::Registry(Clock clock, TimeMs grace_ms) : clock_(std::move(clock)), grace_ms_(grace_ms) {}

void Registry::register_node(SensorDescription desc)
{
    std::unique_lock lock(mutex_);
    if (nodes_.count(desc.node_id))
        throw Error(Errc::DuplicateNodeId, "node already registered: " + desc.node_id);
    auto id = desc.node_id;
    nodes_.emplace(std::move(id), std::move(desc));
}

void Registry::update_live(std::string_view node_id, std::uint32_t active, double battery_fraction, bool reachable)
{
    std::unique_lock lock(mutex_);
    auto it = nodes_.find(node_id);
    if (it == nodes_.end())
        throw Error(Errc::UnknownNode, "unknown node: " + std::string(node_id));
    if (!std::isfinite(battery_fraction))
        throw Error(Errc::InvalidArgument, "battery_fraction must be finite");
    auto& d = it->second;
    d.active = std::min(active, d.capacity);
    d.battery_fraction = std::clamp(battery_fraction, 0.0, 1.0);
    d.reachable = reachable;
    d.live_known = true;
}

bool Registry::available(const SensorDescription& d, TimeMs now) const
{
    if (!d.live_known || !d.reachable || d.battery_fraction <= d.reserve_fraction)
        return false;
    return d.duty_cycle.next_awake(now) - now <= grace_ms_;
}

bool Registry::matches(const SensorDescription& d, const DiscoveryQuery& q, TimeMs now) const
{
    if (q.capability && !d.supports(*q.capability, q.unit, q.max_interval_ms))
        return false;
    if (!q.capability && (q.unit || q.max_interval_ms))
    {
        const bool any = std::any_of(d.capabilities.begin(), d.capabilities.end(), [&](const auto& c) {
            return d.supports(c.capability, q.unit, q.max_interval_ms);
        });
        if (!any)
            return false;
    }
    if (q.radius_m && geo_distance_m(*q.center, d.location) > *q.radius_m)
        return false;
    if (q.available_only && !available(d, now))
        return false;
    if (q.min_battery && d.battery_fraction < *q.min_battery)
        return false;
    return true;
}

std::vector<SensorDescription> Registry::query(const DiscoveryQuery& q) const
{
    validate(q);
    const TimeMs t = now();
    std::shared_lock lock(mutex_);
    std::vector<Ranked> hits;
    for (const auto& [id, d] : nodes_)
        if (matches(d, q, t))
            hits.push_back({&d, q.center ? geo_distance_m(*q.center, d.location) : 0.0});
    std::sort(hits.begin(), hits.end(), rank_less);
    std::vector<SensorDescription> out;
    out.reserve(hits.size());
    for (const auto& h : hits)
    {
        out.push_back(*h.desc);
        out.back().available = available(*h.desc, t);
    }
    return out;
}

bool Registry::satisfies(std::string_view node_id, const DiscoveryQuery& q) const
{
    validate(q);
    const TimeMs t = now();
    std::shared_lock lock(mutex_);
    auto it = nodes_.find(node_id);
    return it != nodes_.end() && matches(it->second, q, t);
}

std::optional<SensorDescription> Registry::get(std::string_view node_id) const
{
    const TimeMs t = now();
    std::shared_lock lock(mutex_);
    auto it = nodes_.find(node_id);
    if (it == nodes_.end())
        return std::nullopt;
    auto d = it->second;
    d.available = available(d, t);
    return d;
}

std::size_t Registry::size() const
{
    std::shared_lock lock(mutex_);
    return nodes_.size();
}

std::string Registry::snapshot_text() const
{
    std::shared_lock lock(mutex_);
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& [id, d] : nodes_)
        nodes.push_back(to_json(d));
    const nlohmann::json doc = {{"format", kFormat}, {"version", kVersion}, {"nodes", nodes}};
    return doc.dump(2) + "\n";
}

void Registry::load_snapshot_text(std::string_view text)
{
    std::map<std::string, SensorDescription, std::less<>> loaded;
    try
    {
        const auto doc = nlohmann::json::parse(text);
        if (doc.at("format").get<std::string>() != kFormat || doc.at("version").get<int>() != kVersion)
            throw Error(Errc::CorruptSnapshot, "unsupported snapshot format");
        for (const auto& n : doc.at("nodes"))
        {
            auto d = from_json(n);
            auto id = d.node_id;
            if (!loaded.emplace(std::move(id), std::move(d)).second)
                throw Error(Errc::CorruptSnapshot, "duplicate node in snapshot");
        }
    }
    catch (const Error& e)
    {
        throw Error(Errc::CorruptSnapshot, e.what());
    }
    catch (const std::exception& e)
    {
        throw Error(Errc::CorruptSnapshot, std::string("corrupt snapshot: ") + e.what());
    }
    std::unique_lock lock(mutex_);
    nodes_ = std::move(loaded);
}

void Registry::snapshot(const std::filesystem::path& path) const
{
    const auto text = snapshot_text();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())).flush())
        throw Error(Errc::IoFailure, "cannot write " + path.string());
}

void Registry::load_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::IoFailure, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(Errc::IoFailure, "cannot read " + path.string());
    load_snapshot_text(buf.str());
}

} // namespace vwsn::registry
