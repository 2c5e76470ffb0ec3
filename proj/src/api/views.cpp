/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/api/views.hpp"

#include "vwsn/sim/topology.hpp"

#include <charconv>
#include <cmath>

namespace vwsn::api
{

using nlohmann::json;
using provisioning::CreateRequest;
using provisioning::TaskParams;
using registry::DiscoveryQuery;

namespace
{

json optional_json(const auto& v)
{
    return v ? json(*v) : json(nullptr);
}

double number(std::string_view text, Errc code, std::string_view name)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw Error(code, std::string(name) + " is not a number");
    return v;
}

std::int64_t integer(std::string_view text, Errc code, std::string_view name)
{
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw Error(code, std::string(name) + " is not an integer");
    return v;
}

bool boolean(std::string_view text, Errc code, std::string_view name)
{
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw Error(code, std::string(name) + " is not a boolean");
}

GeoPoint point(double lat, double lon, Errc code)
{
    try
    {
        return GeoPoint(lat, lon);
    }
    catch (const Error& e)
    {
        throw Error(code, e.what());
    }
}

Capability capability_of(const std::string& text, Errc code)
{
    const auto c = parse_capability(text);
    if (!c)
        throw Error(code, "unknown capability " + text);
    return *c;
}

Unit unit_of(const std::string& text, Errc code)
{
    const auto u = parse_unit(text);
    if (!u)
        throw Error(code, "unknown unit " + text);
    return *u;
}

template <typename T>
T field(const json& j, const char* name, Errc code)
{
    try
    {
        return j.at(name).get<T>();
    }
    catch (const json::exception&)
    {
        throw Error(code, std::string("missing or mistyped field ") + name);
    }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* name, Errc code)
{
    if (!j.contains(name) || j.at(name).is_null())
        return std::nullopt;
    return field<T>(j, name, code);
}

} // namespace

json sensor_view(const registry::SensorDescription& d)
{
    json caps = json::array();
    for (const auto& c : d.capabilities)
        caps.push_back(c);
    return {
        {"node_id", d.node_id},
        {"platform", to_string(d.platform)},
        {"gateway", optional_json(d.gateway)},
        {"protocol", to_string(d.protocol)},
        {"data_format", to_string(d.data_format)},
        {"location", {{"lat", d.location.lat()}, {"lon", d.location.lon()}}},
        {"duty_cycle", {{"period_ms", d.duty_cycle.period_ms}, {"awake_ms", d.duty_cycle.awake_ms}}},
        {"capabilities", caps},
        {"capacity", d.capacity},
        {"active", d.active},
        {"load", d.load()},
        {"battery_fraction", d.battery_fraction},
        {"reserve_fraction", d.reserve_fraction},
        {"reachable", d.reachable},
        {"available", d.available},
    };
}

json vs_view(const VirtualSensorRecord& r)
{
    json j{
        {"vs_id", r.global.uuid_text()},
        {"global_address", r.global.to_string()},
        {"app_id", r.app_id},
        {"state", to_string(r.state)},
        {"node_id", nullptr},
        {"slot", nullptr},
        {"capability", to_string(r.manifest.capability)},
        {"sampling_interval_ms", r.manifest.sampling_interval_ms},
        {"unit", to_string(r.requested_unit)},
        {"manifest_unit", to_string(r.manifest.unit)},
        {"endpoint", r.manifest.endpoint},
        {"manifest", r.manifest.serialize()},
        {"created_at_ms", r.created_at},
        {"state_changed_at_ms", r.state_changed_at},
        {"last_seq", r.last_seq},
    };
    if (r.local)
    {
        j["node_id"] = r.local->node_id;
        j["slot"] = r.local->slot;
    }
    return j;
}

json metrics_view(const manager::MetricsView& m)
{
    auto samples = [](const std::vector<manager::MetricSample>& v) {
        json out = json::array();
        for (const auto& s : v)
            out.push_back({{"vs_id", s.vs_id}, {"value_ms", s.value_ms}});
        return out;
    };
    const auto& c = m.counters;
    return {
        {"vscd", samples(m.vscd)},
        {"vsst", samples(m.vsst)},
        {"counters",
         {{"creates", c.creates},
          {"starts", c.starts},
          {"stops", c.stops},
          {"deletes", c.deletes},
          {"migrations", c.migrations},
          {"failures", c.failures}}},
    };
}

json schedule_view(const provisioning::ScheduleEntry& e)
{
    json j{
        {"schedule_id", e.id},
        {"action", to_string(e.action)},
        {"due_ms", e.due_ms},
        {"status", to_string(e.status)},
        {"outcome", e.outcome},
    };
    if (e.vs)
        j["vs_id"] = e.vs->uuid_text();
    if (e.request)
        j["request"] = create_request_to_json(*e.request);
    return j;
}

DiscoveryQuery query_from_params(const std::multimap<std::string, std::string>& params)
{
    constexpr auto code = Errc::InvalidQuery;
    DiscoveryQuery q;
    std::optional<double> lat;
    std::optional<double> lon;
    for (const auto& [key, value] : params)
    {
        if (value.empty())
            continue;
        if (key == "capability")
            q.capability = capability_of(value, code);
        else if (key == "unit")
            q.unit = unit_of(value, code);
        else if (key == "lat")
            lat = number(value, code, key);
        else if (key == "lon")
            lon = number(value, code, key);
        else if (key == "radius_m")
            q.radius_m = number(value, code, key);
        else if (key == "max_interval_ms")
            q.max_interval_ms = integer(value, code, key);
        else if (key == "available")
            q.available_only = boolean(value, code, key);
        else if (key == "min_battery")
            q.min_battery = number(value, code, key);
        else
            throw Error(code, "unknown parameter " + key);
    }
    if (lat.has_value() != lon.has_value())
        throw Error(code, "lat and lon go together");
    if (lat)
        q.center = point(*lat, *lon, code);
    registry::validate(q);
    return q;
}

DiscoveryQuery query_from_json(const json& j)
{
    constexpr auto code = Errc::InvalidQuery;
    if (!j.is_object())
        throw Error(code, "query must be an object");
    DiscoveryQuery q;
    if (auto c = optional_field<std::string>(j, "capability", code))
        q.capability = capability_of(*c, code);
    if (auto u = optional_field<std::string>(j, "unit", code))
        q.unit = unit_of(*u, code);
    if (j.contains("center") && !j.at("center").is_null())
    {
        const auto& c = j.at("center");
        q.center = point(field<double>(c, "lat", code), field<double>(c, "lon", code), code);
    }
    q.radius_m = optional_field<double>(j, "radius_m", code);
    q.max_interval_ms = optional_field<std::int64_t>(j, "max_interval_ms", code);
    q.available_only = optional_field<bool>(j, "available", code).value_or(false);
    q.min_battery = optional_field<double>(j, "min_battery", code);
    registry::validate(q);
    return q;
}

json query_to_json(const DiscoveryQuery& q)
{
    json j = json::object();
    if (q.capability)
        j["capability"] = to_string(*q.capability);
    if (q.unit)
        j["unit"] = to_string(*q.unit);
    if (q.center)
        j["center"] = {{"lat", q.center->lat()}, {"lon", q.center->lon()}};
    if (q.radius_m)
        j["radius_m"] = *q.radius_m;
    if (q.max_interval_ms)
        j["max_interval_ms"] = *q.max_interval_ms;
    if (q.available_only)
        j["available"] = true;
    if (q.min_battery)
        j["min_battery"] = *q.min_battery;
    return j;
}

CreateRequest create_request_from_json(const json& j)
{
    constexpr auto code = Errc::InvalidParams;
    if (!j.is_object())
        throw Error(code, "request must be an object");
    CreateRequest r;
    r.app_id = field<std::string>(j, "app_id", code);
    const bool by_node = j.contains("node_id") && !j.at("node_id").is_null();
    const bool by_query = j.contains("query") && !j.at("query").is_null();
    if (by_node == by_query)
        throw Error(code, "exactly one of node_id and query is required");
    if (by_node)
        r.selector = field<std::string>(j, "node_id", code);
    else
        r.selector = query_from_json(j.at("query"));

    if (!j.contains("task") || !j.at("task").is_object())
        throw Error(code, "task object is required");
    const auto& t = j.at("task");
    TaskParams p;
    p.capability = capability_of(field<std::string>(t, "capability", code), code);
    p.sampling_interval_ms = field<std::int64_t>(t, "sampling_interval_ms", code);
    p.unit = unit_of(field<std::string>(t, "unit", code), code);
    p.endpoint = field<std::string>(t, "endpoint", code);
    p.threshold = optional_field<double>(t, "threshold", code);
    if (auto c = optional_field<std::string>(t, "comparator", code))
    {
        p.comparator = parse_comparator(*c);
        if (!p.comparator)
            throw Error(code, "unknown comparator " + *c);
    }
    r.task = p;
    r.start_at = optional_field<TimeMs>(j, "start_at", code);
    r.autostart = optional_field<bool>(j, "autostart", code).value_or(true);
    provisioning::validate(r);
    return r;
}

json create_request_to_json(const CreateRequest& r)
{
    json task{
        {"capability", to_string(r.task.capability)},
        {"sampling_interval_ms", r.task.sampling_interval_ms},
        {"unit", to_string(r.task.unit)},
        {"endpoint", r.task.endpoint},
    };
    if (r.task.threshold)
        task["threshold"] = *r.task.threshold;
    if (r.task.comparator)
        task["comparator"] = to_string(*r.task.comparator);
    json j{{"app_id", r.app_id}, {"task", task}};
    if (const auto* node = std::get_if<std::string>(&r.selector))
        j["node_id"] = *node;
    else
        j["query"] = query_to_json(std::get<DiscoveryQuery>(r.selector));
    if (r.start_at)
        j["start_at"] = *r.start_at;
    if (!r.autostart)
        j["autostart"] = false;
    return j;
}

json parse_body(const std::string& body)
{
    auto j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(Errc::InvalidArgument, "body must be a JSON object");
    return j;
}

} // namespace vwsn::api
