/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/bench/client.hpp"
#include "vwsn/core/manifest.hpp"
#include "vwsn/manager/data_router.hpp"
#include "vwsn/sim/node.hpp"

#include <string>
#include <vector>

namespace vwsn::bench
{

/// Instants in [from, to] at which base + A*sin(2*pi*t/P) crosses `threshold`
/// into the rule's satisfied side (upwards for gt, downwards for lt).
std::vector<double> crossing_times(const sim::SignalParams& s, double threshold, Comparator cmp, double from,
                                   double to);

struct SmartHomeOptions
{
    /// Thresholds outside the signal range: no event may arrive.
    bool negative = false;
    std::int64_t interval_ms = 1'000;
    /// Clock advance per step; UDP is drained after each step.
    std::int64_t step_ms = 1'000;
};

struct RuleVs
{
    std::string kind; // "temperature" or "light"
    std::string vs_id;
    std::string node_id;
    Comparator comparator = Comparator::Gt;
    double threshold = 0.0;
    Unit unit = Unit::Celsius;
    sim::SignalParams signal;
    TimeMs running_since = 0;
    std::vector<manager::Delivery> events;
    std::vector<double> crossings;
};

struct SmartHomeReport
{
    bool passed = false;
    bool negative = false;
    TimeMs window_end = 0;
    std::vector<RuleVs> rules;
    std::vector<std::string> failures;
    std::size_t api_calls = 0;

    /// Deterministic text listing of rules, events, crossings and the verdict.
    std::string text() const;
};

/// A/C when temperature exceeds a threshold, deck lights when light drops
/// below one. Discovers both capabilities, creates the two rule VSs through
/// the API with a UDP data endpoint, exercises the remaining endpoints on an
/// auxiliary VS, runs the clock through a full signal period and checks the
/// received events against the analytic crossing times. Failed assertions
/// are listed in the report; missing capabilities throw Error{ScenarioFailure}.
SmartHomeReport run_smart_home(ApiClient& client, const SmartHomeOptions& options = {});

/// Sample topology: two temperature SPOTSIM nodes, one light SPOTSIM node and
/// a temperature MOTESIM node behind the first, all noiseless sines.
sim::Topology smart_home_topology();

} // namespace vwsn::bench
