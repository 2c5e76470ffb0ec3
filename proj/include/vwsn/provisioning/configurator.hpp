/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/manifest.hpp"
#include "vwsn/provisioning/request.hpp"
#include "vwsn/registry/registry.hpp"

#include <string>

namespace vwsn::provisioning
{

/// Validates the parameters against the node and emits the canonical
/// manifest. A unit the node lacks but can reach by conversion is replaced by
/// the node-native unit (threshold converted along); the data path converts
/// back. Throws Error{UnsupportedCapability}, Error{IntervalOutOfRange},
/// Error{UnitUnsupported} or Error{InvalidParams}.
TaskManifest configure(const TaskParams& params, const registry::SensorDescription& node, const std::string& vs_id);

} // namespace vwsn::provisioning
