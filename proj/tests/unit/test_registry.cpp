/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/registry/registry.hpp"

#include "support/registry_oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

using namespace vwsn;
using namespace vwsn::registry;
using namespace vwsn::testing::reference;

namespace
{

std::vector<std::string> ids(const std::vector<SensorDescription>& v)
{
    std::vector<std::string> out;
    for (const auto& d : v)
        out.push_back(d.node_id);
    return out;
}

Errc code_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::InvalidArgument;
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("vwsn_registry_" + name);
}

} // namespace

TEST_CASE("register and trivial queries")
{
    Registry r;
    CHECK(r.query({}).empty());
    std::mt19937_64 rng(1);
    r.register_node(random_node(rng, 0));
    CHECK(r.query({}).size() == 1);
    CHECK(code_of([&] { r.register_node(random_node(rng, 0)); }) == Errc::DuplicateNodeId);
    CHECK(code_of([&] { r.update_live("nope", 0, 1.0, true); }) == Errc::UnknownNode);

    Registry big;
    for (int i = 0; i < 500; ++i)
        big.register_node(random_node(rng, i));
    CHECK(big.query({}).size() == 500);
}

TEST_CASE("invalid queries")
{
    Registry r;
    DiscoveryQuery q;
    q.radius_m = 10;
    CHECK(code_of([&] { r.query(q); }) == Errc::InvalidQuery);
    q.center = GeoPoint(0, 0);
    q.radius_m = -1;
    CHECK(code_of([&] { r.query(q); }) == Errc::InvalidQuery);
    q.radius_m.reset();
    q.min_battery = 1.5;
    CHECK(code_of([&] { r.query(q); }) == Errc::InvalidQuery);
    q.min_battery.reset();
    q.max_interval_ms = 0;
    CHECK(code_of([&] { r.query(q); }) == Errc::InvalidQuery);
}

TEST_CASE("query matches a brute-force scan on 1000 nodes x 200 queries")
{
    std::mt19937_64 rng(2024);
    TimeMs now = 0;
    Registry r([&] { return now; });
    std::vector<SensorDescription> nodes;
    for (int i = 0; i < 1000; ++i)
    {
        nodes.push_back(random_node(rng, i));
        r.register_node(nodes.back());
    }
    Oracle oracle;
    std::size_t nonempty = 0;
    for (int k = 0; k < 200; ++k)
    {
        now = static_cast<TimeMs>(rng() % 100'000);
        const auto q = random_query(rng);
        const auto expected = oracle.run(nodes, q, now);
        const auto got = r.query(q);
        CHECK(ids(got) == expected);
        for (const auto& d : got)
            CHECK(d.available == oracle.available(d, now));
        nonempty += !expected.empty();
    }
    CHECK(nonempty > 100); // the generator exercises non-trivial results
}

TEST_CASE("live updates steer availability and ranking")
{
    Registry r;
    sim::NodeConfig cfg;
    cfg.capabilities = {sim::CapabilityDecl{Capability::Temperature, {Unit::Celsius}, {100, 60'000}, {}}};
    cfg.location = GeoPoint(10, 10);
    cfg.battery_j = 10.0;
    for (const char* id : {"a", "b", "c"})
    {
        cfg.node_id = id;
        r.register_node(describe(cfg, 1'000'000));
    }
    CHECK(r.get("a")->reserve_fraction == doctest::Approx(0.1));

    DiscoveryQuery avail;
    avail.available_only = true;
    CHECK(r.query(avail).size() == 3);
    r.update_live("a", 0, 0.0, true);
    CHECK(ids(r.query(avail)) == std::vector<std::string>{"b", "c"});
    r.update_live("a", 0, 0.1, true); // at reserve
    CHECK(r.query(avail).size() == 2);
    r.update_live("a", 0, 1.0, false);
    CHECK(r.query(avail).size() == 2);
    r.update_live("a", 0, 1.0, true);

    r.update_live("a", 4, 1.0, true); // at capacity: listed, ranked last
    CHECK(ids(r.query({})) == std::vector<std::string>{"b", "c", "a"});
    r.update_live("c", 1, 1.0, true);
    CHECK(ids(r.query({})) == std::vector<std::string>{"b", "c", "a"});
    r.update_live("b", 1, 0.5, true);
    CHECK(ids(r.query({})) == std::vector<std::string>{"c", "b", "a"});
}

TEST_CASE("duty-cycled nodes are available within the grace window")
{
    TimeMs now = 0;
    Registry r([&] { return now; }, 5'000);
    SensorDescription d;
    d.node_id = "sleepy";
    d.duty_cycle = {20'000, 1'000};
    d.battery_fraction = 1.0;
    d.reachable = true;
    d.live_known = true;
    r.register_node(d);
    DiscoveryQuery q;
    q.available_only = true;
    CHECK(r.query(q).size() == 1);
    now = 1'500;
    CHECK(r.query(q).empty());
    now = 15'000;
    CHECK(r.query(q).size() == 1);
    CHECK(r.get("sleepy")->available);
}

TEST_CASE("interleaved updates and queries follow a sequential oracle")
{
    std::mt19937_64 rng(5);
    TimeMs now = 0;
    Registry r([&] { return now; });
    std::vector<SensorDescription> nodes;
    for (int i = 0; i < 200; ++i)
    {
        nodes.push_back(random_node(rng, i));
        r.register_node(nodes.back());
    }
    Oracle oracle;
    for (int step = 0; step < 3000; ++step)
    {
        now += static_cast<TimeMs>(rng() % 700);
        if (rng() % 3)
        {
            auto& d = nodes[rng() % nodes.size()];
            d.active = static_cast<std::uint32_t>(rng() % (d.capacity + 1));
            d.battery_fraction = static_cast<double>(rng() % 101) / 100.0;
            d.reachable = rng() % 5 != 0;
            r.update_live(d.node_id, d.active, d.battery_fraction, d.reachable);
        }
        else
        {
            const auto q = random_query(rng);
            REQUIRE(ids(r.query(q)) == oracle.run(nodes, q, now));
        }
    }
}

TEST_CASE("concurrent updates and queries")
{
    std::mt19937_64 rng(8);
    Registry r;
    std::vector<SensorDescription> nodes;
    for (int i = 0; i < 64; ++i)
    {
        nodes.push_back(random_node(rng, i));
        r.register_node(nodes.back());
    }
    std::atomic<bool> stop{false};
    std::vector<std::thread> writers;
    for (int w = 0; w < 4; ++w)
        writers.emplace_back([&, w] {
            std::mt19937_64 local(w);
            for (int k = 0; k < 5000; ++k)
            {
                auto& d = nodes[static_cast<std::size_t>(w) + 4 * (local() % 16)];
                r.update_live(d.node_id, static_cast<std::uint32_t>(local() % (d.capacity + 1)), 0.5, true);
            }
        });
    std::size_t queries = 0;
    std::thread reader([&] {
        while (!stop)
        {
            const auto all = r.query({});
            CHECK(all.size() == 64);
            for (std::size_t i = 1; i < all.size(); ++i)
                CHECK(all[i - 1].active * all[i].capacity <= all[i].active * all[i - 1].capacity);
            ++queries;
        }
    });
    for (auto& t : writers)
        t.join();
    stop = true;
    reader.join();
    CHECK(queries > 0);
}

TEST_CASE("snapshot round trip")
{
    const auto path = temp_path("snap.json");
    Registry empty;
    empty.snapshot(path);
    Registry loaded_empty;
    loaded_empty.load_snapshot(path);
    CHECK(loaded_empty.size() == 0);

    std::mt19937_64 rng(77);
    Registry r;
    for (int i = 0; i < 500; ++i)
        r.register_node(random_node(rng, i));
    r.snapshot(path);
    Registry back;
    back.load_snapshot(path);
    CHECK(back.size() == 500);
    CHECK(back.snapshot_text() == r.snapshot_text());

    const auto original = r.get("n17").value();
    const auto restored = back.get("n17").value();
    CHECK(restored.capabilities == original.capabilities);
    CHECK(restored.location.lat() == original.location.lat());
    CHECK(restored.location.lon() == original.location.lon());
    CHECK_FALSE(restored.live_known);
    CHECK_FALSE(restored.available);
    CHECK(restored.active == 0);

    const auto text = r.snapshot_text();
    {
        std::ofstream out(path, std::ios::trunc);
        out << text.substr(0, text.size() / 2);
    }
    Registry broken;
    CHECK(code_of([&] { broken.load_snapshot(path); }) == Errc::CorruptSnapshot);
    CHECK(code_of([&] { broken.load_snapshot_text(R"({"format":"other","version":1,"nodes":[]})"); }) ==
          Errc::CorruptSnapshot);
    CHECK(code_of([&] { broken.load_snapshot(temp_path("does/not/exist.json")); }) == Errc::IoFailure);
    CHECK(code_of([&] { r.snapshot(temp_path("does/not/exist.json")); }) == Errc::IoFailure);
    std::filesystem::remove(path);
}
