/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vwsn::bench
{

struct Summary
{
    std::size_t n = 0;
    double mean = 0.0;
    /// Sample standard deviation (n - 1).
    double stddev = 0.0;
    /// t(0.975, n - 1) * stddev / sqrt(n).
    double ci95_half_width = 0.0;
};

/// Two-sided 95% Student-t quantile t(0.975, dof). dof must be >= 1.
double t975(std::size_t dof);

/// Throws Error{InsufficientData} for fewer than two samples.
Summary stats(const std::vector<double>& samples);

/// Shortest text that parses back to the same double.
std::string format_number(double v);

} // namespace vwsn::bench
