/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

/// Independent statistics: long-double moments and a Student-t quantile from
/// the regularized incomplete beta function (continued fraction) by bisection.
namespace vwsn::testing::reference
{

inline long double beta_cf(long double a, long double b, long double x)
{
    constexpr long double tiny = 1e-300L;
    long double c = 1.0L;
    long double d = 1.0L - (a + b) * x / (a + 1.0L);
    d = std::fabs(d) < tiny ? tiny : d;
    d = 1.0L / d;
    long double h = d;
    for (int m = 1; m <= 10000; ++m)
    {
        const long double m2 = 2.0L * m;
        long double aa = m * (b - m) * x / ((a + m2 - 1.0L) * (a + m2));
        d = 1.0L + aa * d;
        d = std::fabs(d) < tiny ? tiny : d;
        c = 1.0L + aa / c;
        c = std::fabs(c) < tiny ? tiny : c;
        d = 1.0L / d;
        h *= d * c;
        aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0L));
        d = 1.0L + aa * d;
        d = std::fabs(d) < tiny ? tiny : d;
        c = 1.0L + aa / c;
        c = std::fabs(c) < tiny ? tiny : c;
        d = 1.0L / d;
        const long double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0L) < 1e-18L)
            break;
    }
    return h;
}

inline long double incomplete_beta(long double a, long double b, long double x)
{
    if (x <= 0.0L)
        return 0.0L;
    if (x >= 1.0L)
        return 1.0L;
    const long double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0L) / (a + b + 2.0L))
        return front * beta_cf(a, b, x) / a;
    return 1.0L - front * beta_cf(b, a, 1.0L - x) / b;
}

inline long double t_cdf(long double t, long double dof)
{
    const long double tail = 0.5L * incomplete_beta(dof / 2.0L, 0.5L, dof / (dof + t * t));
    return t >= 0 ? 1.0L - tail : tail;
}

inline double t_quantile(double p, double dof)
{
    long double lo = 0.0L;
    long double hi = 1000.0L;
    for (int i = 0; i < 200; ++i)
    {
        const long double mid = (lo + hi) / 2.0L;
        (t_cdf(mid, dof) < p ? lo : hi) = mid;
    }
    return static_cast<double>((lo + hi) / 2.0L);
}

struct Result
{
    double mean = 0.0;
    double stddev = 0.0;
    double ci95 = 0.0;
};

inline Result summarize(const std::vector<double>& v)
{
    if (v.size() < 2)
        throw std::invalid_argument("need two samples");
    long double sum = 0.0L;
    for (double x : v)
        sum += x;
    const long double n = static_cast<long double>(v.size());
    const long double mean = sum / n;
    long double ss = 0.0L;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    const long double sd = std::sqrt(ss / (n - 1.0L));
    return {static_cast<double>(mean), static_cast<double>(sd),
            static_cast<double>(t_quantile(0.975, static_cast<double>(v.size() - 1)) * sd / std::sqrt(n))};
}

} // namespace vwsn::testing::reference
