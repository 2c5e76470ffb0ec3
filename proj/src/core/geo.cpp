/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/geo.hpp"

#include "vwsn/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vwsn
{

GeoPoint::GeoPoint(double lat, double lon) : lat_(lat), lon_(lon)
{
    if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0))
        throw Error(Errc::InvalidArgument, "geo point out of range");
}

double geo_distance_m(const GeoPoint& a, const GeoPoint& b) noexcept
{
    if (a == b)
        return 0.0;
    constexpr double rad = std::numbers::pi / 180.0;
    const double phi1 = a.lat() * rad;
    const double phi2 = b.lat() * rad;
    const double dphi = (b.lat() - a.lat()) * rad;
    const double dlambda = (b.lon() - a.lon()) * rad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

} // namespace vwsn
