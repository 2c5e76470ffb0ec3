/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/core/manifest.hpp"
#include "vwsn/core/units.hpp"
#include "vwsn/registry/registry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace vwsn::provisioning
{

/// What the application asks a VS to do. The threshold is in `unit`.
struct TaskParams
{
    Capability capability = Capability::Temperature;
    std::int64_t sampling_interval_ms = 1000;
    Unit unit = Unit::Celsius;
    std::string endpoint;
    std::optional<double> threshold;
    std::optional<Comparator> comparator;
};

/// Throws Error{InvalidParams}.
void validate(const TaskParams& p);

struct CreateRequest
{
    std::string app_id;
    /// Explicit node or a discovery query.
    std::variant<std::string, registry::DiscoveryQuery> selector;
    TaskParams task;
    /// Deferred start on the virtual clock.
    std::optional<TimeMs> start_at;
    /// Without start_at: start right after deployment, or leave Deployed.
    bool autostart = true;
};

/// Throws Error{InvalidParams} or Error{InvalidQuery}.
void validate(const CreateRequest& r);

/// Cache key: the application id plus the canonical query text.
std::string canonical_key(const std::string& app_id, const registry::DiscoveryQuery& q);

} // namespace vwsn::provisioning
