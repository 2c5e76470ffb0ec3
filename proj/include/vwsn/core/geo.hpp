/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

namespace vwsn
{

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// WGS84-style point in degrees. Construction rejects out-of-range values.
class GeoPoint
{
public:
    GeoPoint() = default;
    GeoPoint(double lat, double lon);

    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

/// Haversine great-circle distance in meters.
double geo_distance_m(const GeoPoint& a, const GeoPoint& b) noexcept;

} // namespace vwsn
