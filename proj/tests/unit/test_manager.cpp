/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "manager_fixtures.hpp"

#include "vwsn/manager/codec.hpp"
#include "vwsn/sim/signal.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace vwsn;
using namespace vwsn::testing;
using manager::TicketPhase;
using wire::CommandKind;
using wire::NodeError;

namespace
{

sim::SimConfig reference_delays()
{
    sim::SimConfig c;
    c.spot.build_ms = 10'973;
    c.spot.per_kb_ms = 1'000;
    c.spot.sync_ms = 3'000;
    c.spot.start_sync_ms = 4'200;
    c.mote = c.spot;
    return c;
}

void check_binding_invariant(const manager::VsManager& mgr)
{
    std::set<GlobalAddress> bound;
    for (const auto& [g, l] : mgr.addresses().entries())
    {
        bound.insert(g);
        REQUIRE(mgr.addresses().resolve_local(l) == g);
    }
    std::set<GlobalAddress> holding;
    for (const auto& r : mgr.records())
    {
        if (holds_local(r.state))
        {
            holding.insert(r.global);
            REQUIRE(r.local == mgr.addresses().resolve(r.global));
        }
        else
        {
            REQUIRE_FALSE(r.local.has_value());
        }
    }
    REQUIRE(bound == holding);
}

void check_gap_free(const std::vector<manager::Delivery>& ds)
{
    for (std::size_t i = 0; i < ds.size(); ++i)
        REQUIRE(ds[i].seq == i + 1);
}

} // namespace

TEST_CASE("platform codecs")
{
    const auto& spot = manager::codec_for(sim::Platform::Spot);
    const auto& mote = manager::codec_for(sim::Platform::Mote);
    CHECK(spot.encode(wire::Command{CommandKind::Start, 2u, {}, {}}) == "START 2\n");
    CHECK(mote.decode(std::string("\x81\x00\x01\x00", 4)) == wire::Reply::success(0));
    CHECK_THROWS_AS(mote.encode(wire::Command{CommandKind::MigOut, 0u, {}, {}}), Error);

    std::mt19937_64 rng(99);
    std::size_t valid = 0;
    for (int i = 0; i < 10'000; ++i)
    {
        std::string blob(rng() % 24, '\0');
        for (auto& c : blob)
            c = static_cast<char>(rng() % 4 == 0 ? "OK ERDAT\n0123"[rng() % 13] : rng() & 0xFF);
        if (i % 3 == 0)
            blob = "OK " + std::to_string(rng() % 300) + (rng() % 2 ? "\n" : "");
        for (const auto* codec : {&spot, &mote})
        {
            try
            {
                codec->decode(blob);
                ++valid;
            }
            catch (const Error& e)
            {
                REQUIRE(e.code() == Errc::BadFrame);
            }
        }
    }
    CHECK(valid > 0);
}

TEST_CASE("instantiate binds the VS on the chosen node")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("s"));
    rig.sim.spawn_node(mote("m", "s"));
    const auto g = rig.configured("a");
    CHECK(rig.mgr.record(g)->state == VsState::Configured);
    const auto l = rig.mgr.instantiate_sync(g, "s");
    CHECK(l == LocalAddress{"s", 0});
    CHECK(rig.mgr.record(g)->state == VsState::Deployed);
    CHECK(rig.mgr.addresses().size() == 1);

    const auto on_mote = rig.configured("b");
    rig.mgr.instantiate_sync(on_mote, "m");
    const auto full = rig.configured("c");
    CHECK(code_of([&] { rig.mgr.instantiate_sync(full, "m"); }) == Errc::NodeCapacity);
    CHECK(rig.mgr.record(full)->state == VsState::Configured);
    CHECK_FALSE(rig.mgr.record(full)->local.has_value());

    // capacity-4 node: four fit, the fifth is refused
    rig.sim.spawn_node(spot("four"));
    int ok = 0;
    std::vector<Errc> errors;
    for (int i = 0; i < 5; ++i)
    {
        const auto v = rig.configured("x" + std::to_string(i));
        try
        {
            rig.mgr.instantiate_sync(v, "four");
            ++ok;
        }
        catch (const Error& e)
        {
            errors.push_back(e.code());
        }
    }
    CHECK(ok == 4);
    CHECK(errors == std::vector<Errc>{Errc::NodeCapacity});
    CHECK(code_of([&] { rig.mgr.instantiate_sync(rig.configured("y"), "nowhere"); }) == Errc::UnknownNode);
    CHECK(code_of([&] { rig.mgr.instantiate_sync(g, "s"); }) == Errc::IllegalTransition);
    check_binding_invariant(rig.mgr);
}

TEST_CASE("start, stop and delete follow the lifecycle table")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("s"));
    const auto g = rig.configured("a", 500);
    rig.mgr.instantiate_sync(g, "s");
    CHECK(rig.mgr.start_sync(g) == VsState::Running);
    rig.sim.advance_clock(5'000);
    CHECK(rig.of(g).size() == 10);
    CHECK(rig.lines.size() == 10);
    CHECK(rig.lines.front().rfind("DATA " + g.uuid_text() + " 1 ", 0) == 0);
    CHECK(rig.mgr.record(g)->last_seq == 10);

    const auto frames = rig.comm.frames_sent();
    CHECK(code_of([&] { rig.mgr.remove_sync(g); }) == Errc::IllegalTransition);
    CHECK(rig.mgr.stop_sync(g) == VsState::Stopped);
    CHECK(code_of([&] { rig.mgr.stop_sync(g); }) == Errc::IllegalTransition);
    CHECK(rig.comm.frames_sent() == frames + 1);
    rig.sim.advance_clock(5'000);
    CHECK(rig.of(g).size() == 10);

    // a stopped VS keeps its slot
    CHECK(rig.sim.node("s").occupied() == 1);
    CHECK(rig.mgr.remove_sync(g) == VsState::Deleted);
    CHECK(rig.sim.node("s").occupied() == 0);
    CHECK(rig.mgr.addresses().size() == 0);
    CHECK(code_of([&] { rig.mgr.remove_sync(g); }) == Errc::UnknownVs);
    CHECK(code_of([&] { rig.mgr.start_sync(g); }) == Errc::IllegalTransition);
    CHECK(code_of([&] { rig.mgr.start_sync(rig.mgr.allocate_address()); }) == Errc::UnknownVs);

    const auto c = rig.metrics.view().counters;
    CHECK(c.starts == 1);
    CHECK(c.stops == 1);
    CHECK(c.deletes == 1);
}

TEST_CASE("start time follows the start sync delay")
{
    ManagerRig rig(reference_delays());
    rig.sim.spawn_node(spot("s"));
    const auto g = rig.configured("a");
    rig.mgr.instantiate_sync(g, "s");
    rig.mgr.start_sync(g);
    REQUIRE(rig.metrics.view().vsst.size() == 1);
    CHECK(rig.metrics.view().vsst[0].value_ms == 4'200);
}

TEST_CASE("commands for one VS run in submission order")
{
    ManagerRig rig(reference_delays());
    rig.sim.spawn_node(spot("s"));
    const auto g = rig.configured("a");
    std::vector<std::string> done;
    auto note = [&](std::string what) {
        return [&done, what](std::optional<Error> e) { done.push_back(what + (e ? "!" : "")); };
    };
    rig.mgr.instantiate(g, "s", note("deploy"));
    rig.mgr.start(g, note("start"));
    rig.mgr.stop(g, note("stop"));
    rig.mgr.stop(g, note("stop"));
    rig.sim.run_until([&] { return done.size() == 4; });
    CHECK(done == std::vector<std::string>{"deploy", "start", "stop", "stop!"});
    CHECK(rig.mgr.record(g)->state == VsState::Stopped);
}

TEST_CASE("base-station session: shared versus per request")
{
    const auto manifest_bytes = manifest(std::string(36, 'x')).serialize().size();
    REQUIRE(manifest_bytes <= 1024);
    for (auto mode : {manager::SessionMode::Shared, manager::SessionMode::PerRequest})
    {
        ManagerRig rig(reference_delays(), manager::BaseStationConfig{9'309, mode});
        rig.sim.spawn_node(spot("s"));
        std::vector<TimeMs> took;
        for (int i = 0; i < 3; ++i)
        {
            const auto g = rig.configured(std::to_string(i));
            const TimeMs t0 = rig.sim.now();
            rig.mgr.instantiate_sync(g, "s");
            took.push_back(rig.sim.now() - t0);
        }
        if (mode == manager::SessionMode::Shared)
        {
            CHECK(took == std::vector<TimeMs>{24'282, 14'973, 14'973});
            CHECK(rig.comm.sessions_opened() == 1);
        }
        else
        {
            CHECK(took == std::vector<TimeMs>{24'282, 24'282, 24'282});
            CHECK(rig.comm.sessions_opened() == 3);
        }
    }
}

TEST_CASE("protocol errors are retried twice, then the VS faults")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("s"));
    const auto a = rig.configured("a");
    rig.sim.inject_garbled_replies("s", 2);
    CHECK(rig.mgr.instantiate_sync(a, "s").slot == 0);
    CHECK(rig.sim.node("s").occupied() == 1);

    rig.sim.inject_garbled_replies("s", 3);
    CHECK(code_of([&] { rig.mgr.start_sync(a); }) == Errc::ProtocolError);
    CHECK(rig.mgr.record(a)->state == VsState::Faulted);
    CHECK_FALSE(rig.mgr.addresses().resolve(a).has_value());

    const auto b = rig.configured("b");
    rig.sim.inject_garbled_replies("s", 3);
    CHECK(code_of([&] { rig.mgr.instantiate_sync(b, "s"); }) == Errc::ProtocolError);
    CHECK(rig.mgr.record(b)->state == VsState::Faulted);
    CHECK(rig.metrics.view().counters.failures == 2);
    check_binding_invariant(rig.mgr);
}

TEST_CASE("node errors map to manager errors without state change")
{
    ManagerRig rig;
    auto weak = spot("weak");
    weak.battery_j = 0.9;
    rig.sim.spawn_node(weak);
    rig.sim.spawn_node(spot("s"));
    for (int i = 0; i < 20; ++i)
    {
        const auto g = rig.configured(std::to_string(i));
        CHECK(code_of([&] { rig.mgr.instantiate_sync(g, "weak"); }) == Errc::NodeEnergy);
        CHECK(rig.mgr.record(g)->state == VsState::Configured);
    }
    const auto g = rig.configured("q");
    rig.sim.inject_command_failure("s", CommandKind::Deploy, NodeError::QueueFull);
    CHECK(code_of([&] { rig.mgr.instantiate_sync(g, "s"); }) == Errc::NodeUnreachable);
    CHECK(rig.mgr.record(g)->state == VsState::Configured);
    rig.mgr.instantiate_sync(g, "s");
    CHECK(rig.mgr.record(g)->state == VsState::Deployed);
}

TEST_CASE("a depleted node faults the VSs it hosts")
{
    ManagerRig rig;
    auto n = spot("s");
    n.battery_j = 1.2;
    rig.sim.spawn_node(n);
    const auto g = rig.running("s", 100);
    rig.sim.advance_clock(60'000);
    CHECK(rig.mgr.record(g)->state == VsState::Faulted);
    CHECK(rig.mgr.addresses().size() == 0);
    // samples continue while the battery is still at or above the reserve
    CHECK(rig.of(g).size() == (200'000 - 2 * 20'000) / 5'000 + 1);
    check_binding_invariant(rig.mgr);
}

TEST_CASE("data path converts units and fires threshold events on rising edges")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("s", {temperature_decl(20.0, 5.0, 10'000)}));

    const auto plain = rig.mgr.allocate_address();
    rig.mgr.add_configured(plain, manifest(plain.uuid_text(), 250), "app", Unit::Kelvin);
    rig.mgr.instantiate_sync(plain, "s");
    rig.mgr.start_sync(plain);

    const auto ruled = rig.mgr.allocate_address();
    auto m = manifest(ruled.uuid_text(), 100);
    m.threshold = 24.0;
    m.comparator = Comparator::Gt;
    rig.mgr.add_configured(ruled, m, "app", Unit::Fahrenheit);
    rig.mgr.instantiate_sync(ruled, "s");
    rig.mgr.start_sync(ruled);
    rig.sim.advance_clock(50'000);

    const auto decl = temperature_decl(20.0, 5.0, 10'000);
    for (const auto& d : rig.of(plain))
    {
        CHECK_FALSE(d.event);
        CHECK(d.unit == Unit::Kelvin);
        CHECK(d.value == doctest::Approx(sim::sample_value(decl, d.ts_ms) + 273.15).epsilon(1e-12));
    }
    const auto& events = rig.of(ruled);
    CHECK(events.size() == 5);
    for (const auto& d : events)
    {
        CHECK(d.event);
        CHECK(d.unit == Unit::Fahrenheit);
        CHECK(sim::sample_value(decl, d.ts_ms) > 24.0);
        CHECK(sim::sample_value(decl, d.ts_ms - 100) <= 24.0);
        CHECK(d.value == doctest::Approx(sim::sample_value(decl, d.ts_ms) * 9 / 5 + 32));
        CHECK(manager::Delivery::parse(d.line()) == d);
    }
}

TEST_CASE("motes are driven through their gateway")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("gw"));
    rig.sim.spawn_node(mote("m", "gw"));
    const auto g = rig.running("m", 200);
    rig.sim.advance_clock(1'000);
    CHECK(rig.of(g).size() == 5);
    check_gap_free(rig.of(g));
    CHECK(code_of([&] { rig.mgr.migrate_sync(g, "gw"); }) == Errc::UnsupportedPlatform);
    CHECK(rig.mgr.record(g)->state == VsState::Running);
    rig.mgr.stop_sync(g);
    rig.mgr.remove_sync(g);
    CHECK(rig.sim.node("m").occupied() == 0);
}

TEST_CASE("migration keeps the sequence and the address")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("a"));
    rig.sim.spawn_node(spot("b"));
    rig.sim.spawn_node(mote("m", "a"));
    const auto g = rig.running("a", 100);
    rig.sim.advance_clock(1'050);
    CHECK(rig.mgr.migrate_sync(g, "b") == LocalAddress{"b", 0});
    CHECK(rig.mgr.record(g)->state == VsState::Running);
    CHECK(rig.mgr.record(g)->global == g);
    CHECK(rig.sim.node("a").occupied() == 0);
    rig.sim.advance_clock(1'000);
    CHECK(rig.of(g).size() == 20);
    check_gap_free(rig.of(g));
    REQUIRE(rig.mgr.tickets().size() == 1);
    CHECK(rig.mgr.tickets()[0].phase == TicketPhase::Committed);
    CHECK(rig.mgr.tickets()[0].source == LocalAddress{"a", 0});
    CHECK(rig.mgr.tickets()[0].target == LocalAddress{"b", 0});
    CHECK(code_of([&] { rig.mgr.migrate_sync(g, "m"); }) == Errc::UnsupportedPlatform);
    CHECK(code_of([&] { rig.mgr.migrate_sync(g, "b"); }) == Errc::InvalidArgument);

    // stopped VSs migrate and stay stopped
    rig.mgr.stop_sync(g);
    rig.mgr.migrate_sync(g, "a");
    CHECK(rig.mgr.record(g)->state == VsState::Stopped);
    rig.mgr.start_sync(g);
    rig.sim.advance_clock(500);
    CHECK(rig.of(g).size() == 25);
    check_gap_free(rig.of(g));
    CHECK(rig.metrics.view().counters.migrations == 2);
}

TEST_CASE("failed MIGIN leaves the VS running on its source")
{
    ManagerRig rig;
    rig.sim.spawn_node(spot("a"));
    rig.sim.spawn_node(spot("b"));
    const auto g = rig.running("a", 100);
    rig.sim.advance_clock(1'000);
    const auto before = rig.mgr.addresses().entries();

    rig.sim.inject_command_failure("b", CommandKind::MigIn, NodeError::Capacity);
    CHECK(code_of([&] { rig.mgr.migrate_sync(g, "b"); }) == Errc::TargetCapacity);
    CHECK(rig.mgr.record(g)->state == VsState::Running);
    CHECK(rig.mgr.addresses().entries() == before);
    CHECK(rig.mgr.tickets().back().phase == TicketPhase::Aborted);

    auto drained = spot("c");
    drained.battery_j = 0.5;
    rig.sim.spawn_node(drained);
    CHECK(code_of([&] { rig.mgr.migrate_sync(g, "c"); }) == Errc::TargetEnergy);
    CHECK(rig.mgr.record(g)->state == VsState::Running);

    rig.sim.advance_clock(1'000);
    check_gap_free(rig.of(g));
    CHECK(rig.of(g).size() >= 19);
    CHECK(rig.sim.node("b").occupied() == 0);
}

TEST_CASE("100 random migrations")
{
    std::mt19937_64 rng(4242);
    ManagerRig rig;
    const std::vector<std::string> nodes{"a", "b", "c", "d"};
    for (const auto& n : nodes)
        rig.sim.spawn_node(spot(n));
    std::vector<GlobalAddress> vs;
    for (int i = 0; i < 10; ++i)
    {
        vs.push_back(rig.running(nodes[i % nodes.size()], 100 + 50 * (i % 3)));
        if (i % 4 == 3)
            rig.mgr.stop_sync(vs.back());
    }
    int committed = 0, aborted = 0;
    for (int k = 0; k < 100; ++k)
    {
        const auto& g = vs[rng() % vs.size()];
        const auto from = rig.mgr.record(g)->local->node_id;
        std::string to;
        do
            to = nodes[rng() % nodes.size()];
        while (to == from);
        if (rng() % 5 == 0)
            rig.sim.inject_command_failure(to, CommandKind::MigIn, rng() % 2 ? NodeError::Capacity : NodeError::Energy);
        const auto state_before = rig.mgr.record(g)->state;
        const auto local_before = rig.mgr.record(g)->local;
        try
        {
            rig.mgr.migrate_sync(g, to);
            ++committed;
            CHECK(rig.mgr.record(g)->local->node_id == to);
        }
        catch (const Error& e)
        {
            ++aborted;
            CHECK((e.code() == Errc::TargetCapacity || e.code() == Errc::TargetEnergy));
            CHECK(rig.mgr.record(g)->local == local_before);
        }
        CHECK(rig.mgr.record(g)->state == state_before);
        CHECK(rig.mgr.record(g)->global == g);
        check_binding_invariant(rig.mgr);
        rig.sim.advance_clock(1 + static_cast<TimeMs>(rng() % 800));
    }
    CHECK(committed + aborted == 100);
    CHECK(committed > 50);
    CHECK(aborted > 5);
    std::uint32_t occupied = 0;
    for (const auto& n : nodes)
        occupied += rig.sim.node(n).occupied();
    CHECK(occupied == vs.size());
    CHECK(rig.mgr.addresses().size() == vs.size());
    CHECK(rig.mgr.duplicate_samples() == 0);
    for (const auto& g : vs)
        check_gap_free(rig.of(g));
}

TEST_CASE("random operation sequences keep bindings and states in step")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        std::mt19937_64 rng(seed);
        ManagerRig rig;
        rig.sim.spawn_node(spot("a"));
        rig.sim.spawn_node(spot("b"));
        rig.sim.spawn_node(mote("m", "a"));
        std::vector<GlobalAddress> vs;
        for (int step = 0; step < 200; ++step)
        {
            if (vs.empty() || rng() % 6 == 0)
                vs.push_back(rig.configured(std::to_string(step), 200));
            const auto& g = vs[rng() % vs.size()];
            const std::string node = std::vector<std::string>{"a", "b", "m"}[rng() % 3];
            if (rng() % 15 == 0)
                rig.sim.inject_garbled_replies(node, static_cast<int>(rng() % 4));
            try
            {
                switch (rng() % 5)
                {
                case 0: rig.mgr.instantiate_sync(g, node); break;
                case 1: rig.mgr.start_sync(g); break;
                case 2: rig.mgr.stop_sync(g); break;
                case 3: rig.mgr.remove_sync(g); break;
                default: rig.mgr.migrate_sync(g, node); break;
                }
            }
            catch (const Error&)
            {
            }
            check_binding_invariant(rig.mgr);
            rig.sim.advance_clock(1 + static_cast<TimeMs>(rng() % 500));
        }
        CHECK(rig.mgr.duplicate_samples() == 0);
    }
}
