/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/sim/node.hpp"

#include <cstdint>

namespace vwsn::sim
{

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Standard normal draw that depends only on (seed, counter).
double keyed_gaussian(std::uint64_t seed, std::uint64_t counter) noexcept;

/// base + amplitude*sin(2*pi*t/period) + noise, in the capability's native unit.
double sample_value(const CapabilityDecl& cap, TimeMs t_ms) noexcept;

} // namespace vwsn::sim
