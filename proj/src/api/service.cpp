/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/api/service.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <set>

namespace vwsn::api
{

using nlohmann::json;

namespace
{

struct Pending
{
    bool done = false;
    std::optional<Error> error;
};

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!keys.contains(k))
            throw Error(Errc::InvalidConfig, where + ": unknown key " + k);
}

} // namespace

void apply_scenario(const json& doc, ServiceConfig& cfg)
{
    try
    {
        if (!doc.is_object())
            throw Error(Errc::InvalidConfig, "scenario must be an object");
        check_keys(doc, {"seed", "spot", "mote", "energy", "base_station", "registry", "cache_capacity", "queue_depth"},
                   "scenario");
        cfg.sim.seed = doc.value("seed", cfg.sim.seed);
        if (doc.contains("spot"))
            cfg.sim.spot = doc.at("spot").get<sim::DelayProfile>();
        if (doc.contains("mote"))
            cfg.sim.mote = doc.at("mote").get<sim::DelayProfile>();
        if (doc.contains("energy"))
        {
            const auto& e = doc.at("energy");
            check_keys(e, {"sample_uj", "command_uj", "reserve_uj"}, "energy");
            cfg.sim.energy.sample_uj = e.value("sample_uj", cfg.sim.energy.sample_uj);
            cfg.sim.energy.command_uj = e.value("command_uj", cfg.sim.energy.command_uj);
            cfg.sim.energy.reserve_uj = e.value("reserve_uj", cfg.sim.energy.reserve_uj);
            if (cfg.sim.energy.sample_uj < 0 || cfg.sim.energy.command_uj < 0 || cfg.sim.energy.reserve_uj < 0)
                throw Error(Errc::InvalidConfig, "energy costs must be >= 0");
        }
        if (doc.contains("base_station"))
        {
            const auto& b = doc.at("base_station");
            check_keys(b, {"setup_ms", "mode"}, "base_station");
            cfg.base_station.setup_ms = b.value("setup_ms", cfg.base_station.setup_ms);
            if (b.contains("mode"))
            {
                const auto mode = manager::parse_session_mode(b.at("mode").get<std::string>());
                if (!mode)
                    throw Error(Errc::InvalidConfig, "unknown base station mode " + b.at("mode").dump());
                cfg.base_station.mode = *mode;
            }
            if (cfg.base_station.setup_ms < 0)
                throw Error(Errc::InvalidConfig, "setup_ms must be >= 0");
        }
        if (doc.contains("registry"))
        {
            check_keys(doc.at("registry"), {"grace_ms"}, "registry");
            cfg.registry_grace_ms = doc.at("registry").value("grace_ms", cfg.registry_grace_ms);
            if (cfg.registry_grace_ms < 0)
                throw Error(Errc::InvalidConfig, "grace_ms must be >= 0");
        }
        cfg.provider.cache_capacity = doc.value("cache_capacity", cfg.provider.cache_capacity);
        if (cfg.provider.cache_capacity == 0)
            throw Error(Errc::InvalidConfig, "cache_capacity must be > 0");
        cfg.sim.queue_depth = doc.value("queue_depth", cfg.sim.queue_depth);
    }
    catch (const json::exception& e)
    {
        throw Error(Errc::InvalidConfig, std::string("scenario: ") + e.what());
    }
}

void load_scenario(const std::filesystem::path& path, ServiceConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoFailure, "cannot read " + path.string());
    const auto doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw Error(Errc::InvalidConfig, path.string() + " is not valid JSON");
    apply_scenario(doc, cfg);
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      sim_(config_.sim),
      registry_([this] { return sim_.now(); }, config_.registry_grace_ms),
      comm_(sim_, config_.base_station),
      mgr_(sim_, comm_, router_, metrics_, manager::ManagerConfig{config_.topology.iaas_id, config_.sim.seed}),
      provider_(sim_, registry_, mgr_, metrics_, config_.provider)
{
    sim_.set_uplink([this](const std::string& via, const std::string& frame, bool relayed) {
        mgr_.on_uplink(via, frame, relayed);
    });
    sim_.set_status_handler([this](const sim::NodeStatus& s) {
        if (registry_.get(s.node_id))
            registry_.update_live(s.node_id, s.active, s.battery_fraction, true);
        mgr_.on_node_status(s);
    });

    if (config_.snapshot && std::filesystem::exists(*config_.snapshot))
    {
        registry_.load_snapshot(*config_.snapshot);
        for (const auto& n : config_.topology.nodes)
            if (!registry_.get(n.node_id))
                throw Error(Errc::InvalidConfig, "snapshot lacks node " + n.node_id);
    }
    else
    {
        for (const auto& n : config_.topology.nodes)
            registry_.register_node(registry::describe(n, config_.sim.energy.reserve_uj));
    }
    sim::spawn_topology(sim_, config_.topology);

    if (config_.base_station.mode == manager::SessionMode::Shared)
    {
        auto opened = std::make_shared<bool>(false);
        comm_.acquire_session([opened] { *opened = true; });
        if (!config_.realtime)
            sim_.run_until([opened] { return *opened; });
    }
    if (config_.realtime)
        pacer_ = std::thread([this] { pace(); });
}

Service::~Service()
{
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    progressed_.notify_all();
    if (pacer_.joinable())
        pacer_.join();
}

void Service::pace()
{
    const auto wall0 = std::chrono::steady_clock::now();
    std::unique_lock lock(mutex_);
    const TimeMs sim0 = sim_.now();
    while (!progressed_.wait_for(lock, std::chrono::milliseconds(5), [this] { return stopping_; }))
    {
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - wall0).count();
        const TimeMs target = sim0 + static_cast<TimeMs>(elapsed);
        if (target > sim_.now())
        {
            sim_.advance_to(target);
            progressed_.notify_all();
        }
    }
}

void Service::await(std::unique_lock<std::mutex>& lock, const std::function<void(Completion)>& launch)
{
    auto p = std::make_shared<Pending>();
    launch([p](std::optional<Error> e) {
        p->error = std::move(e);
        p->done = true;
    });
    if (!p->done)
    {
        if (config_.realtime)
        {
            progressed_.wait(lock, [&] { return p->done || stopping_; });
            if (!p->done)
                throw Error(Errc::ServiceUnreachable, "service is shutting down");
        }
        else
        {
            sim_.run_until([&] { return p->done; });
        }
    }
    if (p->error)
        throw *p->error;
}

GlobalAddress Service::address_of(const std::string& vs_id) const
{
    const auto uuid = parse_uuid(vs_id);
    if (!uuid)
        throw Error(Errc::UnknownVs, "unknown vs " + vs_id);
    GlobalAddress g{config_.topology.iaas_id, *uuid};
    if (!mgr_.record(g))
        throw Error(Errc::UnknownVs, "unknown vs " + vs_id);
    return g;
}

std::vector<registry::SensorDescription> Service::sensors(const registry::DiscoveryQuery& q) const
{
    return registry_.query(q);
}

registry::SensorDescription Service::sensor(const std::string& node_id) const
{
    auto d = registry_.get(node_id);
    if (!d)
        throw Error(Errc::UnknownNode, "unknown node " + node_id);
    return *d;
}

VirtualSensorRecord Service::create(provisioning::CreateRequest request)
{
    std::unique_lock lock(mutex_);
    auto out = std::make_shared<std::optional<VirtualSensorRecord>>();
    await(lock, [&](Completion done) {
        provider_.handle_create(std::move(request),
                                [out, done](std::optional<Error> e, std::optional<VirtualSensorRecord> r) {
                                    *out = std::move(r);
                                    done(std::move(e));
                                });
    });
    return **out;
}

VirtualSensorRecord Service::vs(const std::string& vs_id) const
{
    std::lock_guard lock(mutex_);
    return *mgr_.record(address_of(vs_id));
}

std::vector<VirtualSensorRecord> Service::list_vs() const
{
    std::lock_guard lock(mutex_);
    return mgr_.records();
}

VsState Service::start(const std::string& vs_id)
{
    std::unique_lock lock(mutex_);
    const auto g = address_of(vs_id);
    await(lock, [&](Completion done) { mgr_.start(g, std::move(done)); });
    return mgr_.record(g)->state;
}

VsState Service::stop(const std::string& vs_id)
{
    std::unique_lock lock(mutex_);
    const auto g = address_of(vs_id);
    await(lock, [&](Completion done) { mgr_.stop(g, std::move(done)); });
    return mgr_.record(g)->state;
}

void Service::remove(const std::string& vs_id)
{
    std::unique_lock lock(mutex_);
    const auto g = address_of(vs_id);
    await(lock, [&](Completion done) { mgr_.remove(g, std::move(done)); });
}

VirtualSensorRecord Service::migrate(const std::string& vs_id, const std::string& target_node)
{
    std::unique_lock lock(mutex_);
    const auto g = address_of(vs_id);
    await(lock, [&](Completion done) { mgr_.migrate(g, target_node, std::move(done)); });
    return *mgr_.record(g);
}

std::uint64_t Service::schedule(provisioning::ScheduleEntry entry, const std::optional<std::string>& vs_id)
{
    std::lock_guard lock(mutex_);
    if (vs_id)
        entry.vs = address_of(*vs_id);
    if (entry.request)
        provisioning::validate(*entry.request);
    return provider_.scheduler().schedule(std::move(entry));
}

void Service::cancel_schedule(std::uint64_t id)
{
    std::lock_guard lock(mutex_);
    provider_.scheduler().cancel(id);
}

provisioning::ScheduleEntry Service::schedule_entry(std::uint64_t id) const
{
    std::lock_guard lock(mutex_);
    auto e = provider_.scheduler().get(id);
    if (!e)
        throw Error(Errc::UnknownId, "unknown schedule entry " + std::to_string(id));
    return *e;
}

manager::MetricsView Service::metrics() const
{
    return metrics_.view();
}

TimeMs Service::now() const
{
    return sim_.now();
}

TimeMs Service::advance(TimeMs dt)
{
    if (config_.realtime)
        throw Error(Errc::InvalidArgument, "the clock is paced by wall time");
    std::lock_guard lock(mutex_);
    sim_.advance_clock(dt);
    return sim_.now();
}

void Service::attach_sink(const std::string& endpoint, manager::DataRouter::Sink sink)
{
    router_.attach(endpoint, std::move(sink));
}

void Service::detach_sink(const std::string& endpoint)
{
    router_.detach(endpoint);
}

void Service::save_snapshot(const std::filesystem::path& path) const
{
    registry_.snapshot(path);
}

} // namespace vwsn::api
