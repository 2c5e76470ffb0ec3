/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/provisioning/scheduler.hpp"

namespace vwsn::provisioning
{

std::string_view to_string(ScheduleAction a) noexcept
{
    switch (a)
    {
    case ScheduleAction::Create: return "create";
    case ScheduleAction::Start: return "start";
    case ScheduleAction::Stop: return "stop";
    case ScheduleAction::Delete: return "delete";
    case ScheduleAction::Disseminate: return "disseminate";
    }
    return "?";
}

std::optional<ScheduleAction> parse_schedule_action(std::string_view text) noexcept
{
    for (auto a : {ScheduleAction::Create, ScheduleAction::Start, ScheduleAction::Stop, ScheduleAction::Delete,
                   ScheduleAction::Disseminate})
        if (to_string(a) == text)
            return a;
    return std::nullopt;
}

std::string_view to_string(EntryStatus s) noexcept
{
    switch (s)
    {
    case EntryStatus::Pending: return "Pending";
    case EntryStatus::Fired: return "Fired";
    case EntryStatus::Cancelled: return "Cancelled";
    }
    return "?";
}

Scheduler::Scheduler(sim::Simulation& sim, Executor executor) : sim_(sim), executor_(std::move(executor)) {}

std::uint64_t Scheduler::schedule(ScheduleEntry entry)
{
    if (entry.due_ms < sim_.now())
        throw Error(Errc::PastDue, "due " + std::to_string(entry.due_ms) + " is before now " +
                                       std::to_string(sim_.now()));
    const bool wants_request = entry.action == ScheduleAction::Create || entry.action == ScheduleAction::Disseminate;
    if (wants_request ? !entry.request : !entry.vs)
        throw Error(Errc::InvalidParams, std::string(to_string(entry.action)) +
                                             (wants_request ? " needs a request" : " needs a vs_id"));
    const std::uint64_t id = next_id_++;
    entry.id = id;
    entry.status = EntryStatus::Pending;
    entry.outcome.clear();
    entries_[id] = std::move(entry);
    // slot carries the id so equal deadlines fire in id order
    events_[id] = sim_.schedule(entries_[id].due_ms, "", static_cast<std::int64_t>(id), "schedule", [this, id] {
        auto& e = entries_.at(id);
        events_.erase(id);
        e.status = EntryStatus::Fired;
        executor_(e);
    });
    return id;
}

void Scheduler::cancel(std::uint64_t id)
{
    auto it = entries_.find(id);
    if (it == entries_.end() || it->second.status == EntryStatus::Cancelled)
        throw Error(Errc::UnknownId, "no pending schedule entry " + std::to_string(id));
    if (it->second.status == EntryStatus::Fired)
        throw Error(Errc::AlreadyFired, "schedule entry " + std::to_string(id) + " already fired");
    sim_.cancel(events_.at(id));
    events_.erase(id);
    it->second.status = EntryStatus::Cancelled;
}

void Scheduler::set_outcome(std::uint64_t id, std::string outcome)
{
    if (auto it = entries_.find(id); it != entries_.end())
        it->second.outcome = std::move(outcome);
}

std::optional<ScheduleEntry> Scheduler::get(std::uint64_t id) const
{
    auto it = entries_.find(id);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

std::vector<ScheduleEntry> Scheduler::entries() const
{
    std::vector<ScheduleEntry> out;
    for (const auto& [id, e] : entries_)
        out.push_back(e);
    return out;
}

} // namespace vwsn::provisioning
