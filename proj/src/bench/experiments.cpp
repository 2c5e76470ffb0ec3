/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/bench/experiments.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace vwsn::bench
{

using nlohmann::json;

namespace
{

std::string pick_node(ApiClient& client, const ExperimentConfig& cfg)
{
    if (!cfg.node_id.empty())
        return cfg.node_id;
    const auto nodes = client.get("/v1/sensors?capability=temperature");
    for (const auto& n : nodes)
        if (n.at("platform") == "SPOTSIM")
            return n.at("node_id").get<std::string>();
    if (nodes.empty())
        throw Error(Errc::NoCandidateNode, "no temperature node to measure on");
    return nodes.at(0).at("node_id").get<std::string>();
}

json create_body(const std::string& node, std::size_t i)
{
    return {{"app_id", "bench-" + std::to_string(i)},
            {"node_id", node},
            {"autostart", false},
            {"task",
             {{"capability", "temperature"},
              {"sampling_interval_ms", 1000},
              {"unit", "celsius"},
              {"endpoint", "127.0.0.1:9"}}}};
}

double sample_for(ApiClient& client, const char* metric, const std::string& vs_id)
{
    const auto m = client.get("/v1/metrics");
    const auto& samples = m.at(metric);
    for (auto it = samples.rbegin(); it != samples.rend(); ++it)
        if (it->at("vs_id") == vs_id)
            return it->at("value_ms").get<double>();
    throw Error(Errc::InsufficientData, std::string("no ") + metric + " sample for " + vs_id);
}

void require_iterations(const ExperimentConfig& cfg)
{
    if (cfg.iterations < 2)
        throw Error(Errc::InsufficientData, "iterations must be >= 2");
}

} // namespace

std::string_view to_string(ExperimentMode m) noexcept
{
    switch (m)
    {
    case ExperimentMode::VscdWarm: return "vscd_warm";
    case ExperimentMode::VscdCold: return "vscd_cold";
    case ExperimentMode::Vsst: return "vsst";
    }
    return "?";
}

ExperimentResult run_vscd(ApiClient& client, const ExperimentConfig& cfg)
{
    require_iterations(cfg);
    ExperimentResult r;
    r.mode = cfg.mode == ExperimentMode::Vsst ? ExperimentMode::VscdWarm : cfg.mode;
    const auto node = pick_node(client, cfg);
    for (std::size_t i = 0; i < cfg.iterations; ++i)
    {
        const auto created = client.post("/v1/vs", create_body(node, i));
        const std::string id = created.at("vs_id");
        r.samples.push_back(sample_for(client, "vscd", id));
        r.manifest_bytes.push_back(client.get("/v1/vs/" + id).at("manifest").get<std::string>().size());
        client.del("/v1/vs/" + id);
    }
    r.summary = stats(r.samples);
    return r;
}

ExperimentResult run_vsst(ApiClient& client, const ExperimentConfig& cfg)
{
    require_iterations(cfg);
    ExperimentResult r;
    r.mode = ExperimentMode::Vsst;
    const auto node = pick_node(client, cfg);
    for (std::size_t i = 0; i < cfg.iterations; ++i)
    {
        const auto created = client.post("/v1/vs", create_body(node, i));
        const std::string id = created.at("vs_id");
        client.post("/v1/vs/" + id + "/start");
        r.samples.push_back(sample_for(client, "vsst", id));
        r.manifest_bytes.push_back(client.get("/v1/vs/" + id).at("manifest").get<std::string>().size());
        client.post("/v1/vs/" + id + "/stop");
        client.del("/v1/vs/" + id);
    }
    r.summary = stats(r.samples);
    return r;
}

ExperimentResult run_experiment(ApiClient& client, const ExperimentConfig& cfg)
{
    return cfg.mode == ExperimentMode::Vsst ? run_vsst(client, cfg) : run_vscd(client, cfg);
}

api::ServiceConfig experiment_service(const sim::Topology& topology, const json& profile, ExperimentMode mode)
{
    api::ServiceConfig c;
    c.topology = topology;
    api::apply_scenario(profile, c);
    c.base_station.mode =
        mode == ExperimentMode::VscdCold ? manager::SessionMode::PerRequest : manager::SessionMode::Shared;
    return c;
}

sim::Topology default_topology()
{
    sim::NodeConfig n;
    n.node_id = "spot-1";
    n.platform = sim::Platform::Spot;
    n.location = GeoPoint(45.5017, -73.5673);
    sim::CapabilityDecl t;
    t.capability = Capability::Temperature;
    t.units = {Unit::Celsius, Unit::Fahrenheit, Unit::Kelvin};
    t.sampling_interval_ms = {100, 60'000};
    t.signal = {21.0, 3.0, 60'000, 0.0, 1};
    n.capabilities = {t};
    sim::Topology topo;
    topo.iaas_id = "bench";
    topo.nodes = {n};
    return topo;
}

void write_csv(std::ostream& out, const ExperimentResult& r)
{
    out << "iteration,metric,value_ms\n";
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        out << (i + 1) << ',' << to_string(r.mode) << ',' << format_number(r.samples[i]) << '\n';
}

std::string csv_text(const ExperimentResult& r)
{
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

std::vector<CsvRow> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "iteration,metric,value_ms")
        throw Error(Errc::InvalidArgument, "missing CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line))
    {
        const auto a = line.find(',');
        const auto b = line.find(',', a == std::string::npos ? a : a + 1);
        if (a == std::string::npos || b == std::string::npos)
            throw Error(Errc::InvalidArgument, "bad CSV row: " + line);
        CsvRow row;
        row.metric = line.substr(a + 1, b - a - 1);
        const auto* first = line.data();
        auto [p1, e1] = std::from_chars(first, first + a, row.iteration);
        auto [p2, e2] = std::from_chars(first + b + 1, first + line.size(), row.value_ms);
        if (e1 != std::errc{} || p1 != first + a || e2 != std::errc{} || p2 != first + line.size())
            throw Error(Errc::InvalidArgument, "bad CSV row: " + line);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string summary_line(std::string_view metric, const Summary& s)
{
    return "metric=" + std::string(metric) + " n=" + std::to_string(s.n) + " mean=" + format_number(s.mean) +
           " stddev=" + format_number(s.stddev) + " ci95=" + format_number(s.ci95_half_width);
}

std::vector<std::string> check_result(const ExperimentResult& r, const api::ServiceConfig& cfg)
{
    std::vector<std::string> failed;
    const auto& p = cfg.sim.spot;
    for (std::size_t i = 0; i < r.samples.size(); ++i)
    {
        const double v = r.samples[i];
        if (p.jitter_sigma_ms > 0.0)
        {
            if (std::abs(v - r.summary.mean) > 5.0 * p.jitter_sigma_ms)
                failed.push_back("sample " + std::to_string(i + 1) + " outside mean +- 5 sigma");
            continue;
        }
        double expected = 0.0;
        if (r.mode == ExperimentMode::Vsst)
            expected = static_cast<double>(p.start_sync_ms);
        else
            expected = static_cast<double>(p.deploy_ms(r.manifest_bytes.at(i)));
        if (r.mode == ExperimentMode::VscdCold)
            expected += static_cast<double>(cfg.base_station.setup_ms);
        if (v != expected)
            failed.push_back("sample " + std::to_string(i + 1) + " = " + format_number(v) + ", closed form " +
                             format_number(expected));
    }
    std::istringstream csv(csv_text(r));
    std::vector<double> values;
    for (const auto& row : read_csv(csv))
        values.push_back(row.value_ms);
    const auto again = stats(values);
    if (summary_line(to_string(r.mode), again) != summary_line(to_string(r.mode), r.summary))
        failed.push_back("CSV does not reproduce the summary");
    return failed;
}

} // namespace vwsn::bench
