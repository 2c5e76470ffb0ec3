/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/signal.hpp"

#include <cmath>
#include <numbers>

namespace vwsn::sim
{

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double keyed_gaussian(std::uint64_t seed, std::uint64_t counter) noexcept
{
    const std::uint64_t k1 = splitmix64(seed ^ splitmix64(counter));
    const std::uint64_t k2 = splitmix64(k1);
    constexpr double scale = 1.0 / 9007199254740992.0; // 2^-53
    const double u1 = (static_cast<double>(k1 >> 11) + 1.0) * scale; // (0, 1]
    const double u2 = static_cast<double>(k2 >> 11) * scale;         // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_value(const CapabilityDecl& cap, TimeMs t_ms) noexcept
{
    const auto& s = cap.signal;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t_ms) / static_cast<double>(s.period_ms);
    double v = s.base + s.amplitude * std::sin(phase);
    if (s.noise_sigma > 0.0)
        v += s.noise_sigma * keyed_gaussian(s.seed, static_cast<std::uint64_t>(t_ms));
    return v;
}

} // namespace vwsn::sim
