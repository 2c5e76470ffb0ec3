/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/record.hpp"
#include "vwsn/manager/metrics.hpp"
#include "vwsn/provisioning/request.hpp"
#include "vwsn/provisioning/scheduler.hpp"
#include "vwsn/registry/registry.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace vwsn::api
{

/// JSON documents exchanged over /v1, see README.md for the schemas.
nlohmann::json sensor_view(const registry::SensorDescription& d);
nlohmann::json vs_view(const VirtualSensorRecord& r);
nlohmann::json metrics_view(const manager::MetricsView& m);
nlohmann::json schedule_view(const provisioning::ScheduleEntry& e);

/// Query-string form of a discovery query. Throws Error{InvalidQuery}.
registry::DiscoveryQuery query_from_params(const std::multimap<std::string, std::string>& params);
/// Body form of a discovery query. Throws Error{InvalidQuery}.
registry::DiscoveryQuery query_from_json(const nlohmann::json& j);
nlohmann::json query_to_json(const registry::DiscoveryQuery& q);

/// Throws Error{InvalidParams} or Error{InvalidQuery}.
provisioning::CreateRequest create_request_from_json(const nlohmann::json& j);
nlohmann::json create_request_to_json(const provisioning::CreateRequest& r);

/// Parses a request body; throws Error{InvalidArgument} when it is not a JSON object.
nlohmann::json parse_body(const std::string& body);

} // namespace vwsn::api
