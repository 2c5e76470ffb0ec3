/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/bench/stats.hpp"

#include "vwsn/core/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <charconv>
#include <cmath>

namespace vwsn::bench
{

double t975(std::size_t dof)
{
    if (dof == 0)
        throw Error(Errc::InsufficientData, "t quantile needs dof >= 1");
    return boost::math::quantile(boost::math::students_t(static_cast<double>(dof)), 0.975);
}

Summary stats(const std::vector<double>& samples)
{
    const auto n = samples.size();
    if (n < 2)
        throw Error(Errc::InsufficientData, "need at least two samples, got " + std::to_string(n));
    Summary s;
    s.n = n;
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    s.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples)
        ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
    s.ci95_half_width = t975(n - 1) * s.stddev / std::sqrt(static_cast<double>(n));
    return s;
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace vwsn::bench
