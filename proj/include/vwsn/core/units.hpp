/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vwsn
{

/// Wire values are fixed: the TLV data frame carries this enum as one byte.
enum class Unit : std::uint8_t
{
    Celsius = 0,
    Fahrenheit = 1,
    Kelvin = 2,
    Lux = 3,
    PercentRh = 4,
};

enum class Capability : std::uint8_t
{
    Temperature,
    Light,
    Humidity,
};

inline constexpr std::array kAllUnits{Unit::Celsius, Unit::Fahrenheit, Unit::Kelvin, Unit::Lux, Unit::PercentRh};
inline constexpr std::array kAllCapabilities{Capability::Temperature, Capability::Light, Capability::Humidity};

/// Capability family a unit measures.
constexpr Capability family_of(Unit u) noexcept
{
    switch (u)
    {
    case Unit::Celsius:
    case Unit::Fahrenheit:
    case Unit::Kelvin: return Capability::Temperature;
    case Unit::Lux: return Capability::Light;
    case Unit::PercentRh: return Capability::Humidity;
    }
    return Capability::Temperature;
}

/// Affine conversion within one family; throws Error{IncompatibleUnits} across families.
double convert_unit(double value, Unit from, Unit to);

std::string_view to_string(Unit u) noexcept;
std::string_view to_string(Capability c) noexcept;
std::optional<Unit> parse_unit(std::string_view text) noexcept;
std::optional<Capability> parse_capability(std::string_view text) noexcept;

} // namespace vwsn
