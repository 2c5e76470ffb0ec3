/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/api/server.hpp"
#include "vwsn/manager/data_router.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>
#include <thread>

#include <unistd.h>

int main(int argc, char** argv)
{
    CLI::App app{"vwsnd: virtualized WSN infrastructure service"};
    std::string topology;
    std::string listen = "127.0.0.1:8080";
    std::string scenario;
    std::string snapshot;
    bool realtime = false;
    app.add_option("--topology", topology, "topology JSON")->required()->check(CLI::ExistingFile);
    app.add_option("--listen", listen, "host:port to serve /v1 on");
    app.add_option("--scenario", scenario, "delay, energy and base-station configuration JSON")
        ->check(CLI::ExistingFile);
    app.add_flag("--realtime", realtime, "advance the virtual clock with wall time");
    app.add_option("--snapshot", snapshot, "registry snapshot: restored when present, written on shutdown");
    CLI11_PARSE(app, argc, argv);

    try
    {
        const auto endpoint = vwsn::manager::parse_endpoint(listen);
        if (!endpoint)
            throw vwsn::Error(vwsn::Errc::InvalidConfig, "--listen expects host:port");

        vwsn::api::ServiceConfig cfg;
        cfg.topology = vwsn::sim::load_topology(topology);
        if (!scenario.empty())
            vwsn::api::load_scenario(scenario, cfg);
        cfg.realtime = realtime;
        if (!snapshot.empty())
            cfg.snapshot = snapshot;

        sigset_t stop_signals;
        sigemptyset(&stop_signals);
        sigaddset(&stop_signals, SIGINT);
        sigaddset(&stop_signals, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

        vwsn::api::Service service(cfg);
        vwsn::api::Server server(service);
        const int port = server.bind(endpoint->host, endpoint->port);
        std::cout << "vwsnd listening on " << endpoint->host << ':' << port << " with "
                  << cfg.topology.nodes.size() << " nodes" << (realtime ? " (realtime)" : "") << std::endl;

        std::atomic<bool> signalled{false};
        std::thread waiter([&] {
            int sig = 0;
            sigwait(&stop_signals, &sig);
            signalled = true;
            server.stop();
        });
        server.run();
        if (!signalled)
            kill(getpid(), SIGTERM); // releases the waiter
        waiter.join();
        if (cfg.snapshot)
            service.save_snapshot(*cfg.snapshot);
        std::cout << "vwsnd stopped" << std::endl;
        return 0;
    }
    catch (const vwsn::Error& e)
    {
        std::cerr << "vwsnd: " << vwsn::to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    }
}
