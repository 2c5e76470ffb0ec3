/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/manager/communicator.hpp"
#include "vwsn/manager/data_router.hpp"
#include "vwsn/manager/manager.hpp"
#include "vwsn/manager/metrics.hpp"
#include "vwsn/provisioning/provider.hpp"
#include "vwsn/registry/registry.hpp"
#include "vwsn/sim/simulation.hpp"
#include "vwsn/sim/topology.hpp"

#include <json.hpp>

#include <condition_variable>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace vwsn::api
{

struct ServiceConfig
{
    sim::Topology topology;
    sim::SimConfig sim;
    manager::BaseStationConfig base_station;
    TimeMs registry_grace_ms = 5'000;
    provisioning::ProviderConfig provider;
    /// Advance the virtual clock with wall time instead of on demand.
    bool realtime = false;
    /// Registry snapshot loaded at startup when the file exists.
    std::optional<std::filesystem::path> snapshot;
};

/// Applies a scenario document (delay profiles, energy, base station, cache,
/// seed) on top of `cfg`. Throws Error{InvalidConfig}.
void apply_scenario(const nlohmann::json& doc, ServiceConfig& cfg);
/// Throws Error{IoFailure} or Error{InvalidConfig}.
void load_scenario(const std::filesystem::path& path, ServiceConfig& cfg);

/// The IaaS engine: simulation, registry, manager and provider behind one
/// lock. Every public member is thread-safe.
///
/// Virtual mode: the clock only moves while an operation waits for its
/// completion, or through advance(). Realtime mode: a pacing thread moves the
/// clock with wall time and operations wait for their completion event.
class Service
{
public:
    explicit Service(ServiceConfig config);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    const ServiceConfig& config() const noexcept { return config_; }

    /// Throws Error{InvalidQuery}.
    std::vector<registry::SensorDescription> sensors(const registry::DiscoveryQuery& q) const;
    /// Throws Error{UnknownNode}.
    registry::SensorDescription sensor(const std::string& node_id) const;

    VirtualSensorRecord create(provisioning::CreateRequest request);
    /// Throws Error{UnknownVs}.
    VirtualSensorRecord vs(const std::string& vs_id) const;
    std::vector<VirtualSensorRecord> list_vs() const;
    VsState start(const std::string& vs_id);
    VsState stop(const std::string& vs_id);
    void remove(const std::string& vs_id);
    VirtualSensorRecord migrate(const std::string& vs_id, const std::string& target_node);

    /// Resolves `vs_id` in `entry_vs_id` into the entry. Throws Error{PastDue},
    /// Error{InvalidParams} or Error{UnknownVs}.
    std::uint64_t schedule(provisioning::ScheduleEntry entry, const std::optional<std::string>& vs_id);
    void cancel_schedule(std::uint64_t id);
    /// Throws Error{UnknownId}.
    provisioning::ScheduleEntry schedule_entry(std::uint64_t id) const;

    manager::MetricsView metrics() const;

    TimeMs now() const;
    /// Virtual mode only; throws Error{InvalidArgument} otherwise or for dt <= 0.
    TimeMs advance(TimeMs dt);

    /// Delivery lines for `endpoint` go to `sink` instead of UDP.
    void attach_sink(const std::string& endpoint, manager::DataRouter::Sink sink);
    void detach_sink(const std::string& endpoint);

    /// Throws Error{IoFailure}.
    void save_snapshot(const std::filesystem::path& path) const;

    /// Runs `f` with the engine locked; for inspection.
    template <typename F>
    auto inspect(F&& f) const
    {
        std::lock_guard lock(mutex_);
        return f(sim_, mgr_);
    }

private:
    using Completion = manager::VsManager::Completion;

    GlobalAddress address_of(const std::string& vs_id) const;
    /// Launches an asynchronous operation and blocks until it completed.
    /// Called with the lock held.
    void await(std::unique_lock<std::mutex>& lock, const std::function<void(Completion)>& launch);
    void pace();

    ServiceConfig config_;
    mutable std::mutex mutex_;
    std::condition_variable progressed_;
    sim::Simulation sim_;
    registry::Registry registry_;
    manager::DataRouter router_;
    manager::Metrics metrics_;
    manager::Communicator comm_;
    manager::VsManager mgr_;
    provisioning::Provider provider_;
    bool stopping_ = false;
    std::thread pacer_;
};

} // namespace vwsn::api
