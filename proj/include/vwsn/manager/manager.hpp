/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/address.hpp"
#include "vwsn/core/error.hpp"
#include "vwsn/core/record.hpp"
#include "vwsn/manager/communicator.hpp"
#include "vwsn/manager/data_router.hpp"
#include "vwsn/manager/metrics.hpp"
#include "vwsn/sim/simulation.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vwsn::manager
{

struct ManagerConfig
{
    std::string iaas_id = "vwsn";
    std::uint64_t seed = 1;
    /// Re-sends after a protocol error before the VS is faulted.
    int protocol_retries = 2;
};

enum class TicketPhase : std::uint8_t
{
    Extracted,
    Installed,
    Committed,
    Aborted,
};

std::string_view to_string(TicketPhase p) noexcept;

struct MigrationTicket
{
    GlobalAddress vs;
    LocalAddress source;
    /// Slot is known once the target installed the state.
    LocalAddress target;
    std::string serialized_state;
    TicketPhase phase = TicketPhase::Extracted;
};

/// VS lifecycle manager. Owns the address map and the VS records, drives
/// nodes through the communicator and routes their data to endpoints.
///
/// Operations are asynchronous: the completion runs on the simulation once
/// the node answered (or synchronously for pre-check failures). Commands for
/// one VS are queued and run one at a time. The `*_sync` facades step the
/// simulation until the completion ran and throw its error. Not thread-safe:
/// callers serialize access together with the simulation.
class VsManager
{
public:
    using Completion = std::function<void(std::optional<Error>)>;
    using DeliveryObserver = std::function<void(const Delivery&, const std::string& endpoint)>;

    VsManager(sim::Simulation& sim, Communicator& comm, DataRouter& router, Metrics& metrics,
              ManagerConfig config = {});

    GlobalAddress allocate_address();
    /// Adds a record in state Configured. Throws Error{AlreadyBound} on reuse.
    const VirtualSensorRecord& add_configured(const GlobalAddress& g, TaskManifest manifest, std::string app_id,
                                              Unit requested_unit);

    /// Forgets a record that never left Configured. Returns false otherwise.
    bool discard(const GlobalAddress& g);

    void instantiate(const GlobalAddress& g, const std::string& node_id, Completion done);
    void start(const GlobalAddress& g, Completion done);
    void stop(const GlobalAddress& g, Completion done);
    void remove(const GlobalAddress& g, Completion done);
    void migrate(const GlobalAddress& g, const std::string& target_node, Completion done);

    LocalAddress instantiate_sync(const GlobalAddress& g, const std::string& node_id);
    VsState start_sync(const GlobalAddress& g);
    VsState stop_sync(const GlobalAddress& g);
    VsState remove_sync(const GlobalAddress& g);
    LocalAddress migrate_sync(const GlobalAddress& g, const std::string& target_node);

    std::optional<VirtualSensorRecord> record(const GlobalAddress& g) const;
    /// Records in creation order.
    std::vector<VirtualSensorRecord> records() const;
    const AddressMap& addresses() const noexcept { return map_; }
    const std::vector<MigrationTicket>& tickets() const noexcept { return tickets_; }
    const sim::Simulation& simulation() const noexcept { return sim_; }

    /// Uplink from the simulation; decodes, resolves and delivers.
    void on_uplink(const std::string& via_node, const std::string& frame, bool relayed);
    /// Node liveness; a depleted node faults every VS it hosts.
    void on_node_status(const sim::NodeStatus& status);
    void set_delivery_observer(DeliveryObserver observer) { observer_ = std::move(observer); }

    std::uint64_t duplicate_samples() const noexcept { return duplicates_; }
    std::uint64_t unroutable_samples() const noexcept { return unroutable_; }

private:
    struct Entry
    {
        VirtualSensorRecord rec;
        bool busy = false;
        std::deque<std::function<void()>> waiting;
        bool rule_satisfied = false;
    };
    using Op = std::function<void(Entry&, Completion)>;

    void submit(const GlobalAddress& g, Completion done, Op op);
    void release(const GlobalAddress& g);
    void apply(Entry& e, LifecycleEvent ev, std::optional<VsState> resume = std::nullopt);
    bool fault(Entry& e);
    void finish_migration(Entry& e, VsState resume, std::size_t ticket, std::optional<Error> error, Completion done);
    void await(const std::function<void(Completion)>& launch);

    sim::Simulation& sim_;
    Communicator& comm_;
    DataRouter& router_;
    Metrics& metrics_;
    ManagerConfig config_;
    UuidSource uuids_;
    AddressMap map_;
    std::map<GlobalAddress, Entry> entries_;
    std::vector<GlobalAddress> order_;
    std::vector<MigrationTicket> tickets_;
    DeliveryObserver observer_;
    std::uint64_t duplicates_ = 0;
    std::uint64_t unroutable_ = 0;
};

/// Maps a node ERR code to the module error for a command kind.
Error node_error(wire::NodeError code, wire::CommandKind kind, const std::string& message);

} // namespace vwsn::manager
