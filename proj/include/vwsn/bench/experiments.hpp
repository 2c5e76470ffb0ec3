/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/api/service.hpp"
#include "vwsn/bench/client.hpp"
#include "vwsn/bench/stats.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vwsn::bench
{

enum class ExperimentMode : std::uint8_t
{
    VscdWarm,
    VscdCold,
    Vsst,
};

/// CSV metric name: vscd_warm, vscd_cold, vsst.
std::string_view to_string(ExperimentMode m) noexcept;

struct ExperimentConfig
{
    ExperimentMode mode = ExperimentMode::VscdWarm;
    std::size_t iterations = 50;
    /// Node used for every iteration; the first temperature node when empty.
    std::string node_id;
};

struct ExperimentResult
{
    ExperimentMode mode = ExperimentMode::VscdWarm;
    std::vector<double> samples;
    Summary summary;
    /// Manifest size of each iteration's VS, for closed-form checks.
    std::vector<std::size_t> manifest_bytes;
};

/// VSCD per iteration: create (deploy only), read the server-side sample,
/// delete. Warm or cold follows the service's base-station mode.
/// Throws Error{InsufficientData} for fewer than two iterations.
ExperimentResult run_vscd(ApiClient& client, const ExperimentConfig& cfg);
/// VSST per iteration: create without start, start, read the sample, stop, delete.
ExperimentResult run_vsst(ApiClient& client, const ExperimentConfig& cfg);
ExperimentResult run_experiment(ApiClient& client, const ExperimentConfig& cfg);

/// Service configuration for an in-process run: the scenario's profile with
/// the base-station mode forced by the experiment (shared for warm and VSST,
/// per_request for cold).
api::ServiceConfig experiment_service(const sim::Topology& topology, const nlohmann::json& profile,
                                      ExperimentMode mode);
/// One SPOTSIM temperature node, used when no topology is given.
sim::Topology default_topology();

/// `iteration,metric,value_ms` with LF endings.
void write_csv(std::ostream& out, const ExperimentResult& r);
std::string csv_text(const ExperimentResult& r);
struct CsvRow
{
    std::size_t iteration = 0;
    std::string metric;
    double value_ms = 0.0;
};
/// Throws Error{InvalidArgument} on malformed input.
std::vector<CsvRow> read_csv(std::istream& in);

/// `metric=<m> n=<n> mean=<x> stddev=<s> ci95=<h>`
std::string summary_line(std::string_view metric, const Summary& s);

/// Checks a result against the profile; returns the failed assertions.
/// Without jitter every sample must equal the closed form; with jitter it
/// must lie within mean +- 5 sigma. The CSV must reproduce the summary.
std::vector<std::string> check_result(const ExperimentResult& r, const api::ServiceConfig& cfg);

} // namespace vwsn::bench
