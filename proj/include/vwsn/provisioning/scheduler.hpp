/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/address.hpp"
#include "vwsn/provisioning/request.hpp"
#include "vwsn/sim/simulation.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn::provisioning
{

enum class ScheduleAction : std::uint8_t
{
    Create,
    Start,
    Stop,
    Delete,
    /// Deploy without starting.
    Disseminate,
};

enum class EntryStatus : std::uint8_t
{
    Pending,
    Fired,
    Cancelled,
};

std::string_view to_string(ScheduleAction a) noexcept;
std::optional<ScheduleAction> parse_schedule_action(std::string_view text) noexcept;
std::string_view to_string(EntryStatus s) noexcept;

struct ScheduleEntry
{
    std::uint64_t id = 0;
    ScheduleAction action = ScheduleAction::Start;
    /// For start/stop/delete.
    std::optional<GlobalAddress> vs;
    /// For create/disseminate.
    std::optional<CreateRequest> request;
    TimeMs due_ms = 0;
    EntryStatus status = EntryStatus::Pending;
    /// Filled in after firing: "ok" or the error text.
    std::string outcome;
};

/// Deferred lifecycle actions on the simulation clock. Entries fire once, at
/// due_ms, in (due_ms, id) order. Not thread-safe.
class Scheduler
{
public:
    using Executor = std::function<void(const ScheduleEntry&)>;

    Scheduler(sim::Simulation& sim, Executor executor);

    /// Assigns and returns the id. Throws Error{PastDue} or Error{InvalidParams}.
    std::uint64_t schedule(ScheduleEntry entry);
    /// Throws Error{UnknownId} or Error{AlreadyFired}.
    void cancel(std::uint64_t id);
    void set_outcome(std::uint64_t id, std::string outcome);

    std::optional<ScheduleEntry> get(std::uint64_t id) const;
    std::vector<ScheduleEntry> entries() const;

private:
    sim::Simulation& sim_;
    Executor executor_;
    std::uint64_t next_id_ = 1;
    std::map<std::uint64_t, ScheduleEntry> entries_;
    std::map<std::uint64_t, sim::EventKey> events_;
};

} // namespace vwsn::provisioning
