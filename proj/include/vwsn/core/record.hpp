/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/address.hpp"
#include "vwsn/core/error.hpp"
#include "vwsn/core/lifecycle.hpp"
#include "vwsn/core/manifest.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace vwsn
{

/// One virtual sensor. `local` is present iff holds_local(state).
struct VirtualSensorRecord
{
    GlobalAddress global;
    std::optional<LocalAddress> local;
    VsState state = VsState::Requested;
    TaskManifest manifest;
    std::string app_id;
    TimeMs created_at = 0;
    TimeMs state_changed_at = 0;
    std::uint64_t last_seq = 0;
    /// Unit the application asked for; data is converted from manifest.unit.
    Unit requested_unit = Unit::Celsius;
};

} // namespace vwsn
