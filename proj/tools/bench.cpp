/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/bench/experiments.hpp"
#include "vwsn/bench/smart_home.hpp"
#include "vwsn/manager/data_router.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace
{

using nlohmann::json;
using namespace vwsn;

struct Common
{
    std::string profile;
    std::string topology;
    std::string connect;
    std::string out;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot read " + path);
    auto j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::InvalidConfig, path + " is not valid JSON");
    return j;
}

sim::Topology topology_or(const std::string& path, sim::Topology fallback)
{
    return path.empty() ? fallback : sim::load_topology(path);
}

/// Runs `body` against --connect or an in-process service built from `cfg`.
template <typename F>
auto with_client(const Common& c, const api::ServiceConfig& cfg, F body)
{
    if (!c.connect.empty())
    {
        const auto ep = manager::parse_endpoint(c.connect);
        if (!ep)
            throw Error(Errc::InvalidConfig, "--connect expects host:port");
        bench::ApiClient client(ep->host, ep->port);
        return body(client);
    }
    bench::LocalService local(cfg);
    auto client = local.client();
    return body(client);
}

void write_file(const std::string& path, const std::string& text)
{
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Error(Errc::IoFailure, "cannot write " + path);
}

int run_measurement(bench::ExperimentMode mode, std::size_t iterations, const Common& c)
{
    const auto profile = c.profile.empty() ? json::object() : read_json(c.profile);
    const auto cfg = bench::experiment_service(topology_or(c.topology, bench::default_topology()), profile, mode);
    const auto result = with_client(c, cfg, [&](bench::ApiClient& client) {
        return bench::run_experiment(client, bench::ExperimentConfig{mode, iterations, {}});
    });
    const auto csv = bench::csv_text(result);
    write_file(c.out, csv);
    std::cout << bench::summary_line(bench::to_string(mode), result.summary) << '\n';

    std::vector<std::string> failed;
    if (c.connect.empty() || !c.profile.empty())
        failed = bench::check_result(result, cfg);
    for (const auto& f : failed)
        std::cout << "assertion failed: " << f << '\n';
    std::cout << (failed.empty() ? "PASS" : "FAIL") << '\n';
    return failed.empty() ? 0 : 1;
}

int run_scenario(bool negative, std::int64_t interval, const Common& c)
{
    api::ServiceConfig cfg;
    cfg.topology = topology_or(c.topology, bench::smart_home_topology());
    if (!c.profile.empty())
        api::load_scenario(c.profile, cfg);
    const auto report = with_client(c, cfg, [&](bench::ApiClient& client) {
        return bench::run_smart_home(client, bench::SmartHomeOptions{negative, interval});
    });
    const auto text = report.text();
    write_file(c.out, text);
    std::cout << text;
    return report.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bench: VSCD/VSST measurements and the smart-home scenario"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--profile", common.profile, "scenario JSON with the delay profile")->check(CLI::ExistingFile);
        sub->add_option("--topology", common.topology, "topology JSON")->check(CLI::ExistingFile);
        sub->add_option("--connect", common.connect, "use a running vwsnd at host:port instead of an in-process one");
        sub->add_option("--out", common.out, "output file");
    };

    std::string mode = "warm";
    std::size_t iterations = 50;
    auto* vscd = app.add_subcommand("vscd", "VS creation delay");
    vscd->add_option("--mode", mode, "warm (shared base station) or cold (per request)")
        ->check(CLI::IsMember({"warm", "cold"}));
    vscd->add_option("--iterations", iterations, "repetitions")->check(CLI::Range(2, 100'000));
    add_common(vscd);

    auto* vsst = app.add_subcommand("vsst", "VS start time");
    vsst->add_option("--iterations", iterations, "repetitions")->check(CLI::Range(2, 100'000));
    add_common(vsst);

    auto* scenario = app.add_subcommand("scenario", "end-to-end scenarios");
    scenario->require_subcommand(1);
    auto* smart = scenario->add_subcommand("smart-home", "threshold-driven A/C and deck lights");
    bool negative = false;
    std::int64_t interval = 1'000;
    smart->add_flag("--negative", negative, "thresholds outside the signal range; expects no events");
    smart->add_option("--interval-ms", interval, "sampling interval")->check(CLI::Range(1, 60'000));
    add_common(smart);

    CLI11_PARSE(app, argc, argv);
    try
    {
        if (vscd->parsed())
            return run_measurement(mode == "cold" ? bench::ExperimentMode::VscdCold : bench::ExperimentMode::VscdWarm,
                                   iterations, common);
        if (vsst->parsed())
            return run_measurement(bench::ExperimentMode::Vsst, iterations, common);
        return run_scenario(negative, interval, common);
    }
    catch (const Error& e)
    {
        std::cerr << "bench: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    }
}
