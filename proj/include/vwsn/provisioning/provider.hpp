/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/record.hpp"
#include "vwsn/manager/manager.hpp"
#include "vwsn/manager/metrics.hpp"
#include "vwsn/provisioning/cache.hpp"
#include "vwsn/provisioning/request.hpp"
#include "vwsn/provisioning/scheduler.hpp"
#include "vwsn/registry/registry.hpp"
#include "vwsn/sim/simulation.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vwsn::provisioning
{

struct ProviderConfig
{
    std::size_t cache_capacity = 16;
    /// Candidates tried when a query-selected node turns out full or drained.
    int selection_attempts = 3;
};

/// VS Provider: takes creation requests, selects a node (recent-sensor cache,
/// else the first registry candidate with a free slot), configures the
/// manifest, instantiates through the manager and starts or schedules the VS.
/// Records VSCD from request receipt to deployment. Not thread-safe.
class Provider
{
public:
    using CreateDone = std::function<void(std::optional<Error>, std::optional<VirtualSensorRecord>)>;

    Provider(sim::Simulation& sim, registry::Registry& registry, manager::VsManager& manager,
             manager::Metrics& metrics, ProviderConfig config = {});

    /// Errors: InvalidParams, InvalidQuery, PastDue, UnknownNode, NoCandidateNode,
    /// configurator errors and propagated manager errors. No half-created VS
    /// stays bound after an error.
    void handle_create(CreateRequest request, CreateDone done);
    VirtualSensorRecord handle_create_sync(CreateRequest request);

    /// Registry candidates with a free slot, in selection order.
    std::vector<registry::SensorDescription> candidates(const registry::DiscoveryQuery& q) const;

    Scheduler& scheduler() noexcept { return scheduler_; }
    const Scheduler& scheduler() const noexcept { return scheduler_; }
    RecentSensorCache& cache() noexcept { return cache_; }

private:
    struct Attempt
    {
        CreateRequest request;
        TimeMs received = 0;
        std::set<std::string> excluded;
        int attempts_left = 0;
    };

    void attempt(std::shared_ptr<Attempt> a, CreateDone done);
    void deployed(std::shared_ptr<Attempt> a, const GlobalAddress& g, const std::string& node, CreateDone done);
    bool has_free_slot(const std::string& node_id) const;
    void execute(const ScheduleEntry& entry);

    sim::Simulation& sim_;
    registry::Registry& registry_;
    manager::VsManager& manager_;
    manager::Metrics& metrics_;
    ProviderConfig config_;
    RecentSensorCache cache_;
    Scheduler scheduler_;
};

} // namespace vwsn::provisioning
