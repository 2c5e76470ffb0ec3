/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/core/manifest.hpp"
#include "vwsn/sim/node.hpp"
#include "vwsn/sim/wire.hpp"

#include <atomic>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn::sim
{

/// Per-platform command latencies on the virtual clock.
struct DelayProfile
{
    TimeMs build_ms = 0;
    TimeMs per_kb_ms = 0;
    TimeMs sync_ms = 0;
    TimeMs start_sync_ms = 0;
    TimeMs stop_ms = 0;
    TimeMs delete_ms = 0;
    TimeMs migrate_ms = 0;
    /// Gaussian jitter added to every delay, truncated at +-4 sigma.
    double jitter_sigma_ms = 0.0;

    /// build + per_kb * ceil(bytes / 1024) + sync.
    TimeMs deploy_ms(std::size_t manifest_bytes) const noexcept;
};

/// Energy costs in microjoules so that accounting is exact.
struct EnergyModel
{
    std::int64_t sample_uj = 5'000;
    std::int64_t command_uj = 20'000;
    std::int64_t reserve_uj = 1'000'000;
};

std::int64_t joules_to_uj(double joules);

struct SimConfig
{
    DelayProfile spot;
    DelayProfile mote;
    EnergyModel energy;
    std::uint64_t seed = 1;
    std::size_t queue_depth = 32;
    bool trace = false;
};

/// Ordering key of a pending event: deadline, then node_id, then slot, then
/// insertion order.
struct EventKey
{
    TimeMs deadline = 0;
    std::string node_id;
    std::int64_t slot = -1;
    std::uint64_t seq = 0;

    friend std::strong_ordering operator<=>(const EventKey&, const EventKey&) = default;
    friend bool operator==(const EventKey&, const EventKey&) = default;
};

struct FiredEvent
{
    TimeMs at = 0;
    std::string node_id;
    std::int64_t slot = -1;
    std::string label;

    friend bool operator==(const FiredEvent&, const FiredEvent&) = default;
};

enum class SlotPhase : std::uint8_t
{
    Empty,
    Reserved, // deploy or migrate-in in progress
    Idle,
    Running,
};

struct SlotState
{
    SlotPhase phase = SlotPhase::Empty;
    std::optional<TaskManifest> manifest;
    std::uint64_t next_seq = 1;
    std::optional<EventKey> tick;
};

struct NodeStatus
{
    std::string node_id;
    std::uint32_t active = 0;
    std::uint32_t capacity = 0;
    double battery_fraction = 0.0;
    bool depleted = false;
};

class Simulation;

/// Simulated node. Read-only outside the simulation.
class NodeRuntime
{
public:
    const NodeConfig& config() const noexcept { return config_; }
    const std::vector<SlotState>& slots() const noexcept { return slots_; }
    std::int64_t battery_initial_uj() const noexcept { return battery_initial_uj_; }
    std::int64_t battery_remaining_uj() const noexcept { return battery_remaining_uj_; }
    double battery_remaining_j() const noexcept { return static_cast<double>(battery_remaining_uj_) / 1e6; }
    double battery_fraction() const noexcept;
    std::uint32_t occupied() const noexcept;
    bool awake(TimeMs t) const noexcept { return config_.duty_cycle.awake_at(t); }
    std::uint64_t samples_emitted() const noexcept { return samples_emitted_; }
    std::uint64_t commands_charged() const noexcept { return commands_charged_; }
    std::size_t queued() const noexcept { return queue_.size(); }

private:
    friend class Simulation;

    struct Pending
    {
        std::string frame;
        std::function<void(std::string)> reply;
    };

    NodeConfig config_;
    std::vector<SlotState> slots_;
    std::int64_t battery_initial_uj_ = 0;
    std::int64_t battery_remaining_uj_ = 0;
    std::uint64_t samples_emitted_ = 0;
    std::uint64_t commands_charged_ = 0;
    std::deque<Pending> queue_;
    std::optional<EventKey> wake_event_;
    std::map<wire::CommandKind, std::deque<wire::NodeError>> injected_failures_;
    int garbled_replies_ = 0;
    bool depleted_reported_ = false;
};

/// Single-threaded discrete-event core. Callers serialize access.
///
/// Node commands travel as wire frames: SPOTSIM nodes are addressed directly
/// (`transmit`), MOTESIM nodes through their gateway stream (`relay`). Every
/// reply is delivered by an event at its completion instant, never inside the
/// call that sent the command.
class Simulation
{
public:
    using ReplyHandler = std::function<void(std::string frame)>;
    /// `relayed` marks GTO-prefixed TLV frames on a gateway's relay stream.
    using UplinkHandler =
        std::function<void(const std::string& via_node, const std::string& frame, bool relayed)>;
    using StatusHandler = std::function<void(const NodeStatus&)>;

    explicit Simulation(SimConfig config = {});
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    const SimConfig& config() const noexcept { return config_; }

    /// Throws Error{DuplicateNodeId} or Error{InvalidConfig}.
    const NodeRuntime& spawn_node(NodeConfig config);
    bool has_node(std::string_view node_id) const;
    /// Throws Error{UnknownNode}.
    const NodeRuntime& node(std::string_view node_id) const;
    std::vector<std::string> node_ids() const;

    TimeMs now() const noexcept { return now_.load(std::memory_order_acquire); }

    EventKey schedule(TimeMs deadline, std::string node_id, std::int64_t slot, std::string label,
                      std::function<void()> fn);
    bool cancel(const EventKey& key);
    std::optional<TimeMs> next_deadline() const;
    bool idle() const noexcept { return events_.empty(); }

    /// Fires the earliest pending event; false when none is pending.
    bool step(FiredEvent* fired = nullptr);
    /// Fires every event with deadline <= now + dt, in key order. dt must be > 0.
    std::vector<FiredEvent> advance_clock(TimeMs dt);
    std::vector<FiredEvent> advance_to(TimeMs t);

    /// Steps until done() holds. Throws Error{NodeUnreachable} if the event
    /// queue drains first.
    void run_until(const std::function<bool()>& done);

    /// Sends a text-line frame to a SPOTSIM node. Throws Error{NodeUnreachable}.
    void transmit(const std::string& node_id, std::string frame, ReplyHandler on_reply);
    /// Sends a GTO-prefixed TLV frame on a gateway's relay stream.
    /// Throws Error{NodeUnreachable} or Error{BadFrame}.
    void relay(const std::string& gateway_id, std::string relayed, ReplyHandler on_reply);

    void set_uplink(UplinkHandler handler) { uplink_ = std::move(handler); }
    void set_status_handler(StatusHandler handler) { status_ = std::move(handler); }

    /// The next `count` commands of `kind` on the node fail with `error`.
    void inject_command_failure(const std::string& node_id, wire::CommandKind kind, wire::NodeError error,
                                int count = 1);
    /// The next `count` replies from the node are replaced by undecodable bytes.
    void inject_garbled_replies(const std::string& node_id, int count = 1);

    const std::vector<std::string>& trace() const noexcept { return trace_; }

private:
    NodeRuntime& mut_node(std::string_view node_id);
    void receive(NodeRuntime& n, std::string frame, std::function<void(std::string)> reply);
    void drain_queue(NodeRuntime& n);
    void execute(NodeRuntime& n, const std::string& frame, const std::function<void(std::string)>& reply);
    void dispatch(NodeRuntime& n, const wire::Command& cmd, const std::function<void(wire::Reply, TimeMs)>& reply);
    std::optional<std::uint32_t> pick_slot(NodeRuntime& n, const std::optional<std::uint32_t>& wanted,
                                           wire::NodeError& error) const;
    void begin_segment(NodeRuntime& n, std::uint32_t slot);
    void halt_segment(NodeRuntime& n, std::uint32_t slot);
    void on_tick(const std::string& node_id, std::uint32_t slot);
    void emit(NodeRuntime& n, const wire::DataMessage& msg);
    TimeMs jittered(const DelayProfile& profile, TimeMs base);
    const DelayProfile& profile(const NodeRuntime& n) const noexcept;
    void notify(NodeRuntime& n);
    void record(std::string line);

    SimConfig config_;
    std::atomic<TimeMs> now_{0};
    std::uint64_t next_seq_ = 0;
    std::map<EventKey, std::function<void()>> events_;
    std::map<std::string, std::unique_ptr<NodeRuntime>, std::less<>> nodes_;
    std::mt19937_64 jitter_rng_;
    UplinkHandler uplink_;
    StatusHandler status_;
    std::vector<std::string> trace_;
};

/// Key=value state document exchanged by MIGOUT/MIGIN and STATE on SPOTSIM.
struct MigrationState
{
    std::string manifest;
    std::uint64_t next_seq = 1;
    bool running = false;

    std::string serialize() const;
    /// Throws Error{BadFrame}.
    static MigrationState parse(std::string_view text);
};

} // namespace vwsn::sim
