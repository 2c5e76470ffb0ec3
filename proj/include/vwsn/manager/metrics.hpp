/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace vwsn::manager
{

struct MetricSample
{
    std::string vs_id;
    TimeMs value_ms = 0;
};

struct Counters
{
    std::uint64_t creates = 0;
    std::uint64_t starts = 0;
    std::uint64_t stops = 0;
    std::uint64_t deletes = 0;
    std::uint64_t migrations = 0;
    std::uint64_t failures = 0;
};

struct MetricsView
{
    std::vector<MetricSample> vscd;
    std::vector<MetricSample> vsst;
    Counters counters;
};

/// VSCD/VSST samples on the virtual clock plus operation counters. Thread-safe.
class Metrics
{
public:
    void record_vscd(std::string vs_id, TimeMs ms);
    void record_vsst(std::string vs_id, TimeMs ms);
    void count_create();
    void count_start();
    void count_stop();
    void count_delete();
    void count_migration();
    void count_failure();

    MetricsView view() const;

private:
    mutable std::mutex mutex_;
    MetricsView data_;
};

} // namespace vwsn::manager
