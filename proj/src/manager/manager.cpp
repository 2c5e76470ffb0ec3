/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/manager/manager.hpp"

#include "vwsn/manager/codec.hpp"

#include <algorithm>

namespace vwsn::manager
{

using wire::CommandKind;
using wire::NodeError;

namespace
{

bool admits(VsState s, LifecycleEvent ev)
{
    try
    {
        transition(s, ev, VsState::Running);
        return true;
    }
    catch (const Error&)
    {
        return false;
    }
}

Error illegal(const VirtualSensorRecord& rec, std::string_view what)
{
    return Error(Errc::IllegalTransition,
                 std::string(what) + " not allowed in state " + std::string(to_string(rec.state)));
}

wire::Command slot_command(CommandKind kind, std::uint32_t slot)
{
    return wire::Command{kind, slot, {}, {}};
}

} // namespace

std::string_view to_string(TicketPhase p) noexcept
{
    switch (p)
    {
    case TicketPhase::Extracted: return "Extracted";
    case TicketPhase::Installed: return "Installed";
    case TicketPhase::Committed: return "Committed";
    case TicketPhase::Aborted: return "Aborted";
    }
    return "?";
}

Error node_error(NodeError code, CommandKind kind, const std::string& message)
{
    const bool target = kind == CommandKind::MigIn;
    switch (code)
    {
    case NodeError::Capacity: return Error(target ? Errc::TargetCapacity : Errc::NodeCapacity, message);
    case NodeError::Energy: return Error(target ? Errc::TargetEnergy : Errc::NodeEnergy, message);
    case NodeError::BadFrame: return Error(Errc::ProtocolError, message);
    case NodeError::Unsupported:
        if (kind == CommandKind::Deploy)
            return Error(Errc::UnsupportedCapability, message);
        return Error(Errc::UnsupportedPlatform, message);
    case NodeError::QueueFull: return Error(Errc::NodeUnreachable, "command queue full: " + message);
    case NodeError::NoSlot: return Error(Errc::ProtocolError, "node lost the slot: " + message);
    }
    return Error(Errc::ProtocolError, message);
}

VsManager::VsManager(sim::Simulation& sim, Communicator& comm, DataRouter& router, Metrics& metrics,
                     ManagerConfig config)
    : sim_(sim), comm_(comm), router_(router), metrics_(metrics), config_(std::move(config)), uuids_(config_.seed)
{
}

GlobalAddress VsManager::allocate_address()
{
    for (;;)
    {
        GlobalAddress g{config_.iaas_id, uuids_.next()};
        if (!entries_.count(g))
            return g;
    }
}

const VirtualSensorRecord& VsManager::add_configured(const GlobalAddress& g, TaskManifest manifest,
                                                     std::string app_id, Unit requested_unit)
{
    if (entries_.count(g))
        throw Error(Errc::AlreadyBound, "address already in use: " + g.to_string());
    Entry e;
    e.rec.global = g;
    e.rec.manifest = std::move(manifest);
    e.rec.app_id = std::move(app_id);
    e.rec.requested_unit = requested_unit;
    e.rec.created_at = sim_.now();
    e.rec.state_changed_at = sim_.now();
    e.rec.state = transition(VsState::Requested, LifecycleEvent::Configure);
    order_.push_back(g);
    return entries_.emplace(g, std::move(e)).first->second.rec;
}

bool VsManager::discard(const GlobalAddress& g)
{
    auto it = entries_.find(g);
    if (it == entries_.end() || it->second.rec.state != VsState::Configured || !it->second.waiting.empty())
        return false;
    entries_.erase(it);
    order_.erase(std::find(order_.begin(), order_.end(), g));
    return true;
}

// ---------------------------------------------------------------------------
// per-VS serialization

void VsManager::submit(const GlobalAddress& g, Completion done, Op op)
{
    auto it = entries_.find(g);
    if (it == entries_.end())
        return done(Error(Errc::UnknownVs, "unknown VS: " + g.to_string()));
    auto task = [this, g, done = std::move(done), op = std::move(op)] {
        op(entries_.at(g), [this, g, done](std::optional<Error> err) {
            if (err && err->code() != Errc::IllegalTransition && err->code() != Errc::UnknownVs)
                metrics_.count_failure();
            done(std::move(err));
            if (entries_.count(g))
                release(g);
        });
    };
    if (it->second.busy)
        return it->second.waiting.push_back(std::move(task));
    it->second.busy = true;
    task();
}

void VsManager::release(const GlobalAddress& g)
{
    auto& e = entries_.at(g);
    if (e.waiting.empty())
    {
        e.busy = false;
        return;
    }
    auto next = std::move(e.waiting.front());
    e.waiting.pop_front();
    next();
}

void VsManager::apply(Entry& e, LifecycleEvent ev, std::optional<VsState> resume)
{
    e.rec.state = transition(e.rec.state, ev, resume);
    e.rec.state_changed_at = sim_.now();
}

bool VsManager::fault(Entry& e)
{
    if (is_terminal(e.rec.state))
        return false;
    apply(e, LifecycleEvent::Fault);
    if (map_.resolve(e.rec.global))
        map_.unbind(e.rec.global);
    e.rec.local.reset();
    return true;
}

// ---------------------------------------------------------------------------
// operations

void VsManager::instantiate(const GlobalAddress& g, const std::string& node_id, Completion done)
{
    submit(g, std::move(done), [this, g, node_id](Entry& e, Completion finish) {
        if (e.rec.state != VsState::Configured)
            return finish(illegal(e.rec, "instantiate"));
        if (!sim_.has_node(node_id))
            return finish(Error(Errc::UnknownNode, "unknown node: " + node_id));
        comm_.acquire_session([this, g, node_id, finish] {
            auto& entry = entries_.at(g);
            const wire::Command deploy{CommandKind::Deploy, std::nullopt, entry.rec.manifest.serialize(), {}};
            comm_.send(node_id, deploy, config_.protocol_retries, [this, g, node_id, finish](Exchange x) {
                auto& e = entries_.at(g);
                if (x.error)
                {
                    if (x.error->code() == Errc::ProtocolError)
                        fault(e);
                    return finish(x.error);
                }
                if (!x.reply->ok())
                    return finish(node_error(*x.reply->error, CommandKind::Deploy, x.reply->message));
                if (e.rec.state != VsState::Configured)
                    return finish(illegal(e.rec, "deploy completion"));
                const LocalAddress local{node_id, x.reply->slot};
                map_.bind(g, local);
                apply(e, LifecycleEvent::DeployBegin);
                apply(e, LifecycleEvent::DeployOk);
                e.rec.local = local;
                finish(std::nullopt);
            });
        });
    });
}

void VsManager::start(const GlobalAddress& g, Completion done)
{
    const TimeMs received = sim_.now();
    submit(g, std::move(done), [this, g, received](Entry& e, Completion finish) {
        if (!admits(e.rec.state, LifecycleEvent::StartOk))
            return finish(illegal(e.rec, "start"));
        const auto local = *e.rec.local;
        comm_.send(local.node_id, slot_command(CommandKind::Start, local.slot), config_.protocol_retries,
                   [this, g, received, finish](Exchange x) {
                       auto& e = entries_.at(g);
                       if (x.error)
                       {
                           if (x.error->code() == Errc::ProtocolError)
                               fault(e);
                           return finish(x.error);
                       }
                       if (!x.reply->ok())
                       {
                           auto err = node_error(*x.reply->error, CommandKind::Start, x.reply->message);
                           if (err.code() == Errc::ProtocolError)
                               fault(e);
                           return finish(err);
                       }
                       if (!admits(e.rec.state, LifecycleEvent::StartOk))
                           return finish(illegal(e.rec, "start completion"));
                       apply(e, LifecycleEvent::StartOk);
                       metrics_.count_start();
                       metrics_.record_vsst(g.uuid_text(), sim_.now() - received);
                       finish(std::nullopt);
                   });
    });
}

void VsManager::stop(const GlobalAddress& g, Completion done)
{
    submit(g, std::move(done), [this, g](Entry& e, Completion finish) {
        if (!admits(e.rec.state, LifecycleEvent::StopOk))
            return finish(illegal(e.rec, "stop"));
        const auto local = *e.rec.local;
        comm_.send(local.node_id, slot_command(CommandKind::Stop, local.slot), config_.protocol_retries,
                   [this, g, finish](Exchange x) {
                       auto& e = entries_.at(g);
                       if (x.error)
                       {
                           if (x.error->code() == Errc::ProtocolError)
                               fault(e);
                           return finish(x.error);
                       }
                       if (!x.reply->ok())
                       {
                           auto err = node_error(*x.reply->error, CommandKind::Stop, x.reply->message);
                           if (err.code() == Errc::ProtocolError)
                               fault(e);
                           return finish(err);
                       }
                       if (!admits(e.rec.state, LifecycleEvent::StopOk))
                           return finish(illegal(e.rec, "stop completion"));
                       apply(e, LifecycleEvent::StopOk);
                       metrics_.count_stop();
                       finish(std::nullopt);
                   });
    });
}

void VsManager::remove(const GlobalAddress& g, Completion done)
{
    submit(g, std::move(done), [this, g](Entry& e, Completion finish) {
        if (e.rec.state == VsState::Deleted)
            return finish(Error(Errc::UnknownVs, "VS already deleted: " + g.to_string()));
        if (!admits(e.rec.state, LifecycleEvent::DeleteBegin))
            return finish(illegal(e.rec, "delete"));
        const auto local = *e.rec.local;
        comm_.send(local.node_id, slot_command(CommandKind::Delete, local.slot), config_.protocol_retries,
                   [this, g, finish](Exchange x) {
                       auto& e = entries_.at(g);
                       if (x.error)
                       {
                           if (x.error->code() == Errc::ProtocolError)
                               fault(e);
                           return finish(x.error);
                       }
                       // NOSLOT after a retried DELETE means the first attempt freed it
                       const bool gone = x.reply->error == NodeError::NoSlot;
                       if (!x.reply->ok() && !gone)
                           return finish(node_error(*x.reply->error, CommandKind::Delete, x.reply->message));
                       if (!admits(e.rec.state, LifecycleEvent::DeleteBegin))
                           return finish(illegal(e.rec, "delete completion"));
                       apply(e, LifecycleEvent::DeleteBegin);
                       apply(e, LifecycleEvent::DeleteOk);
                       map_.unbind(g);
                       e.rec.local.reset();
                       metrics_.count_delete();
                       finish(std::nullopt);
                   });
    });
}

void VsManager::migrate(const GlobalAddress& g, const std::string& target_node, Completion done)
{
    submit(g, std::move(done), [this, g, target_node](Entry& e, Completion finish) {
        if (e.rec.state != VsState::Running && e.rec.state != VsState::Stopped)
            return finish(illegal(e.rec, "migrate"));
        if (!sim_.has_node(target_node))
            return finish(Error(Errc::UnknownNode, "unknown node: " + target_node));
        const auto source = *e.rec.local;
        if (sim_.node(source.node_id).config().platform != sim::Platform::Spot ||
            sim_.node(target_node).config().platform != sim::Platform::Spot)
            return finish(Error(Errc::UnsupportedPlatform, "migration needs SPOTSIM on both sides"));
        if (target_node == source.node_id)
            return finish(Error(Errc::InvalidArgument, "VS already runs on " + target_node));

        const VsState resume = e.rec.state;
        apply(e, LifecycleEvent::MigrateBegin);
        comm_.send(source.node_id, slot_command(CommandKind::MigOut, source.slot), config_.protocol_retries,
                   [this, g, target_node, source, resume, finish](Exchange out) {
            auto& e = entries_.at(g);
            if (out.error || !out.reply->ok())
            {
                auto err = out.error ? *out.error
                                     : node_error(*out.reply->error, CommandKind::MigOut, out.reply->message);
                if (err.code() == Errc::ProtocolError)
                    fault(e);
                else
                    apply(e, LifecycleEvent::MigrateOk, resume);
                return finish(err);
            }
            sim::MigrationState state;
            try
            {
                state = sim::MigrationState::parse(out.reply->payload);
            }
            catch (const Error& err)
            {
                fault(e);
                return finish(Error(Errc::ProtocolError, err.what()));
            }
            tickets_.push_back(MigrationTicket{g, source, LocalAddress{target_node, 0}, out.reply->payload,
                                               TicketPhase::Extracted});
            const std::size_t ticket = tickets_.size() - 1;
            const wire::Command migin{CommandKind::MigIn, std::nullopt, state.manifest, out.reply->payload};
            comm_.send(target_node, migin, config_.protocol_retries,
                       [this, g, source, resume, ticket, running = state.running, finish](Exchange in) {
                auto& e = entries_.at(g);
                if (in.error || !in.reply->ok())
                {
                    auto err = in.error ? *in.error
                                        : node_error(*in.reply->error, CommandKind::MigIn, in.reply->message);
                    tickets_[ticket].phase = TicketPhase::Aborted;
                    if (!running)
                        return finish_migration(e, resume, ticket, err, finish);
                    // MIGOUT froze the source slot: resume it where it stopped
                    comm_.send(source.node_id, slot_command(CommandKind::Start, source.slot), config_.protocol_retries,
                               [this, g, resume, ticket, err, finish](Exchange restart) {
                                   auto& e = entries_.at(g);
                                   if (restart.error || !restart.reply->ok())
                                   {
                                       fault(e);
                                       return finish(err);
                                   }
                                   finish_migration(e, resume, ticket, err, finish);
                               });
                    return;
                }
                const LocalAddress target{tickets_[ticket].target.node_id, in.reply->slot};
                map_.rebind_atomic(g, target);
                e.rec.local = target;
                tickets_[ticket].target = target;
                tickets_[ticket].phase = TicketPhase::Installed;
                comm_.send(source.node_id, slot_command(CommandKind::Delete, source.slot), config_.protocol_retries,
                           [this, g, resume, ticket, finish](Exchange del) {
                               auto& e = entries_.at(g);
                               if (!del.error && del.reply->ok())
                                   tickets_[ticket].phase = TicketPhase::Committed;
                               metrics_.count_migration();
                               finish_migration(e, resume, ticket, std::nullopt, finish);
                           });
            });
        });
    });
}

void VsManager::finish_migration(Entry& e, VsState resume, std::size_t, std::optional<Error> error, Completion done)
{
    if (e.rec.state == VsState::Migrating)
        apply(e, LifecycleEvent::MigrateOk, resume);
    done(std::move(error));
}

// ---------------------------------------------------------------------------
// synchronous facades

void VsManager::await(const std::function<void(Completion)>& launch)
{
    bool finished = false;
    std::optional<Error> error;
    launch([&](std::optional<Error> e) {
        finished = true;
        error = std::move(e);
    });
    if (!finished)
        sim_.run_until([&] { return finished; });
    if (error)
        throw *error;
}

LocalAddress VsManager::instantiate_sync(const GlobalAddress& g, const std::string& node_id)
{
    await([&](Completion c) { instantiate(g, node_id, std::move(c)); });
    return *entries_.at(g).rec.local;
}

VsState VsManager::start_sync(const GlobalAddress& g)
{
    await([&](Completion c) { start(g, std::move(c)); });
    return entries_.at(g).rec.state;
}

VsState VsManager::stop_sync(const GlobalAddress& g)
{
    await([&](Completion c) { stop(g, std::move(c)); });
    return entries_.at(g).rec.state;
}

VsState VsManager::remove_sync(const GlobalAddress& g)
{
    await([&](Completion c) { remove(g, std::move(c)); });
    return entries_.at(g).rec.state;
}

LocalAddress VsManager::migrate_sync(const GlobalAddress& g, const std::string& target_node)
{
    await([&](Completion c) { migrate(g, target_node, std::move(c)); });
    return *entries_.at(g).rec.local;
}

// ---------------------------------------------------------------------------
// queries

std::optional<VirtualSensorRecord> VsManager::record(const GlobalAddress& g) const
{
    auto it = entries_.find(g);
    if (it == entries_.end())
        return std::nullopt;
    return it->second.rec;
}

std::vector<VirtualSensorRecord> VsManager::records() const
{
    std::vector<VirtualSensorRecord> out;
    out.reserve(order_.size());
    for (const auto& g : order_)
        out.push_back(entries_.at(g).rec);
    return out;
}

// ---------------------------------------------------------------------------
// data path and liveness

void VsManager::on_uplink(const std::string& via_node, const std::string& frame, bool relayed)
{
    wire::DataMessage msg;
    std::string node_id = via_node;
    try
    {
        if (relayed)
        {
            auto [id, inner] = wire::gto::unwrap(frame);
            node_id = id;
            msg = codec_for(sim::Platform::Mote).decode_data(inner);
        }
        else
        {
            msg = codec_for(sim::Platform::Spot).decode_data(frame);
        }
    }
    catch (const Error&)
    {
        ++unroutable_;
        return;
    }
    const auto g = map_.resolve_local(LocalAddress{node_id, msg.slot});
    if (!g)
    {
        ++unroutable_;
        return;
    }
    auto& e = entries_.at(*g);
    if (msg.seq <= e.rec.last_seq)
    {
        ++duplicates_;
        return;
    }
    e.rec.last_seq = msg.seq;

    Delivery d;
    d.vs_id = g->uuid_text();
    d.seq = msg.seq;
    d.ts_ms = msg.ts_ms;
    d.unit = e.rec.requested_unit;
    d.value = convert_unit(msg.value, msg.unit, e.rec.requested_unit);
    const auto& m = e.rec.manifest;
    if (m.threshold)
    {
        const bool now_satisfied = m.rule_satisfied(convert_unit(msg.value, msg.unit, m.unit));
        const bool rising = now_satisfied && !e.rule_satisfied;
        e.rule_satisfied = now_satisfied;
        if (!rising)
            return;
        d.event = true;
    }
    router_.deliver(m.endpoint, d.line());
    if (observer_)
        observer_(d, m.endpoint);
}

void VsManager::on_node_status(const sim::NodeStatus& status)
{
    if (!status.depleted)
        return;
    for (const auto& [g, local] : map_.entries())
    {
        if (local.node_id != status.node_id)
            continue;
        if (fault(entries_.at(g)))
            metrics_.count_failure();
    }
}

} // namespace vwsn::manager
