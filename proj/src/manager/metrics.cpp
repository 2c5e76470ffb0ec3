/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/manager/metrics.hpp"

namespace vwsn::manager
{

void Metrics::record_vscd(std::string vs_id, TimeMs ms)
{
    std::lock_guard lock(mutex_);
    data_.vscd.push_back({std::move(vs_id), ms});
}

void Metrics::record_vsst(std::string vs_id, TimeMs ms)
{
    std::lock_guard lock(mutex_);
    data_.vsst.push_back({std::move(vs_id), ms});
}

void Metrics::count_create()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.creates;
}

void Metrics::count_start()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.starts;
}

void Metrics::count_stop()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.stops;
}

void Metrics::count_delete()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.deletes;
}

void Metrics::count_migration()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.migrations;
}

void Metrics::count_failure()
{
    std::lock_guard lock(mutex_);
    ++data_.counters.failures;
}

MetricsView Metrics::view() const
{
    std::lock_guard lock(mutex_);
    return data_;
}

} // namespace vwsn::manager
