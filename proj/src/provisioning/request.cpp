/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/provisioning/request.hpp"

#include "vwsn/core/text.hpp"
#include "vwsn/manager/data_router.hpp"

#include <cmath>

namespace vwsn::provisioning
{

void validate(const TaskParams& p)
{
    if (p.sampling_interval_ms <= 0)
        throw Error(Errc::InvalidParams, "sampling_interval_ms must be positive");
    if (!manager::parse_endpoint(p.endpoint))
        throw Error(Errc::InvalidParams, "endpoint must be host:port, got '" + p.endpoint + "'");
    if (p.threshold.has_value() != p.comparator.has_value())
        throw Error(Errc::InvalidParams, "threshold and comparator go together");
    if (p.threshold && !std::isfinite(*p.threshold))
        throw Error(Errc::InvalidParams, "threshold must be finite");
    if (family_of(p.unit) != p.capability)
        throw Error(Errc::UnitUnsupported,
                    std::string(to_string(p.unit)) + " does not measure " + std::string(to_string(p.capability)));
}

void validate(const CreateRequest& r)
{
    if (r.app_id.empty() || r.app_id.find_first_of(" \n=") != std::string::npos)
        throw Error(Errc::InvalidParams, "app_id must be a non-empty token");
    if (const auto* node = std::get_if<std::string>(&r.selector); node && node->empty())
        throw Error(Errc::InvalidParams, "node_id must not be empty");
    if (const auto* q = std::get_if<registry::DiscoveryQuery>(&r.selector))
        registry::validate(*q);
    if (r.start_at && *r.start_at < 0)
        throw Error(Errc::InvalidParams, "start_at must be non-negative");
    validate(r.task);
}

std::string canonical_key(const std::string& app_id, const registry::DiscoveryQuery& q)
{
    std::string k = "app=" + app_id;
    if (q.capability)
        k += ";capability=" + std::string(to_string(*q.capability));
    if (q.unit)
        k += ";unit=" + std::string(to_string(*q.unit));
    if (q.center)
        k += ";center=" + format_double(q.center->lat()) + "," + format_double(q.center->lon());
    if (q.radius_m)
        k += ";radius_m=" + format_double(*q.radius_m);
    if (q.max_interval_ms)
        k += ";max_interval_ms=" + std::to_string(*q.max_interval_ms);
    k += q.available_only ? ";available=1" : ";available=0";
    if (q.min_battery)
        k += ";min_battery=" + format_double(*q.min_battery);
    return k;
}

} // namespace vwsn::provisioning
