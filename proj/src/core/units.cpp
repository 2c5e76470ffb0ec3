/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/units.hpp"

#include "vwsn/core/error.hpp"

#include <string>

namespace vwsn
{

namespace
{

// Temperatures go through kelvin; both legs are exact affine maps.
double to_kelvin(double v, Unit u)
{
    switch (u)
    {
    case Unit::Celsius: return v + 273.15;
    case Unit::Fahrenheit: return (v - 32.0) * 5.0 / 9.0 + 273.15;
    default: return v;
    }
}

double from_kelvin(double k, Unit u)
{
    switch (u)
    {
    case Unit::Celsius: return k - 273.15;
    case Unit::Fahrenheit: return (k - 273.15) * 9.0 / 5.0 + 32.0;
    default: return k;
    }
}

} // namespace

double convert_unit(double value, Unit from, Unit to)
{
    if (family_of(from) != family_of(to))
        throw Error(Errc::IncompatibleUnits,
                    "cannot convert " + std::string(to_string(from)) + " to " + std::string(to_string(to)));
    if (from == to)
        return value;
    // Only temperature has more than one unit.
    if (from == Unit::Celsius && to == Unit::Fahrenheit)
        return value * 9.0 / 5.0 + 32.0;
    if (from == Unit::Fahrenheit && to == Unit::Celsius)
        return (value - 32.0) * 5.0 / 9.0;
    return from_kelvin(to_kelvin(value, from), to);
}

std::string_view to_string(Unit u) noexcept
{
    switch (u)
    {
    case Unit::Celsius: return "celsius";
    case Unit::Fahrenheit: return "fahrenheit";
    case Unit::Kelvin: return "kelvin";
    case Unit::Lux: return "lux";
    case Unit::PercentRh: return "percent_rh";
    }
    return "?";
}

std::string_view to_string(Capability c) noexcept
{
    switch (c)
    {
    case Capability::Temperature: return "temperature";
    case Capability::Light: return "light";
    case Capability::Humidity: return "humidity";
    }
    return "?";
}

std::optional<Unit> parse_unit(std::string_view text) noexcept
{
    for (auto u : kAllUnits)
        if (to_string(u) == text)
            return u;
    return std::nullopt;
}

std::optional<Capability> parse_capability(std::string_view text) noexcept
{
    for (auto c : kAllCapabilities)
        if (to_string(c) == text)
            return c;
    return std::nullopt;
}

} // namespace vwsn
