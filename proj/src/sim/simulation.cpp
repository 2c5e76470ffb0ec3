/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/simulation.hpp"

#include "vwsn/core/base64.hpp"
#include "vwsn/core/text.hpp"
#include "vwsn/sim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vwsn::sim
{

TimeMs DelayProfile::deploy_ms(std::size_t manifest_bytes) const noexcept
{
    const auto kb = static_cast<TimeMs>((manifest_bytes + 1023) / 1024);
    return build_ms + per_kb_ms * kb + sync_ms;
}

std::int64_t joules_to_uj(double joules) { return std::llround(joules * 1e6); }

double NodeRuntime::battery_fraction() const noexcept
{
    if (battery_initial_uj_ <= 0)
        return 0.0;
    return static_cast<double>(battery_remaining_uj_) / static_cast<double>(battery_initial_uj_);
}

std::uint32_t NodeRuntime::occupied() const noexcept
{
    return static_cast<std::uint32_t>(
        std::count_if(slots_.begin(), slots_.end(), [](const SlotState& s) { return s.phase != SlotPhase::Empty; }));
}

std::string MigrationState::serialize() const
{
    return "manifest=" + base64_encode(manifest) + "\nnext_seq=" + std::to_string(next_seq) +
           "\nrunning=" + (running ? "1" : "0") + "\n";
}

MigrationState MigrationState::parse(std::string_view text)
{
    auto bad = [] { throw Error(Errc::BadFrame, "bad migration state"); };
    MigrationState st;
    bool seen_manifest = false;
    bool seen_seq = false;
    bool seen_running = false;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        if (nl == std::string_view::npos)
            bad();
        const auto line = text.substr(0, nl);
        text.remove_prefix(nl + 1);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            bad();
        const auto key = line.substr(0, eq);
        const auto value = line.substr(eq + 1);
        if (key == "manifest" && !seen_manifest)
        {
            auto m = base64_decode(value);
            if (!m)
                bad();
            st.manifest = *m;
            seen_manifest = true;
        }
        else if (key == "next_seq" && !seen_seq)
        {
            auto v = parse_uint(value);
            if (!v || *v == 0)
                bad();
            st.next_seq = *v;
            seen_seq = true;
        }
        else if (key == "running" && !seen_running)
        {
            if (value != "0" && value != "1")
                bad();
            st.running = value == "1";
            seen_running = true;
        }
        else
        {
            bad();
        }
    }
    if (!seen_seq || !seen_running)
        bad();
    return st;
}

Simulation::Simulation(SimConfig config) : config_(std::move(config)), jitter_rng_(config_.seed) {}

const NodeRuntime& Simulation::spawn_node(NodeConfig config)
{
    validate(config);
    if (nodes_.contains(config.node_id))
        throw Error(Errc::DuplicateNodeId, "node '" + config.node_id + "' already exists");
    if (config.platform == Platform::Mote)
    {
        auto parent = nodes_.find(*config.gto_parent);
        if (parent == nodes_.end() || parent->second->config_.platform != Platform::Spot)
            throw Error(Errc::InvalidConfig, "node '" + config.node_id + "': gto_parent must be an existing SPOTSIM node");
    }
    auto n = std::make_unique<NodeRuntime>();
    n->battery_initial_uj_ = joules_to_uj(config.battery_j);
    n->battery_remaining_uj_ = n->battery_initial_uj_;
    n->slots_.resize(config.capacity);
    n->config_ = std::move(config);
    auto& ref = *n;
    nodes_.emplace(ref.config_.node_id, std::move(n));
    notify(ref);
    return ref;
}

bool Simulation::has_node(std::string_view node_id) const { return nodes_.find(node_id) != nodes_.end(); }

const NodeRuntime& Simulation::node(std::string_view node_id) const
{
    auto it = nodes_.find(node_id);
    if (it == nodes_.end())
        throw Error(Errc::UnknownNode, "unknown node '" + std::string(node_id) + "'");
    return *it->second;
}

NodeRuntime& Simulation::mut_node(std::string_view node_id)
{
    return const_cast<NodeRuntime&>(static_cast<const Simulation&>(*this).node(node_id));
}

std::vector<std::string> Simulation::node_ids() const
{
    std::vector<std::string> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_)
        ids.push_back(id);
    return ids;
}

// ---------------------------------------------------------------------------
// event queue

EventKey Simulation::schedule(TimeMs deadline, std::string node_id, std::int64_t slot, std::string label,
                              std::function<void()> fn)
{
    if (deadline < now())
        throw Error(Errc::InvalidArgument, "cannot schedule in the past");
    EventKey key{deadline, std::move(node_id), slot, next_seq_++};
    auto wrapped = [this, fn = std::move(fn), label = std::move(label), key]() {
        if (config_.trace)
            record(std::to_string(key.deadline) + " " + key.node_id + " " + std::to_string(key.slot) + " " + label);
        fn();
    };
    events_.emplace(key, std::move(wrapped));
    return key;
}

bool Simulation::cancel(const EventKey& key) { return events_.erase(key) > 0; }

std::optional<TimeMs> Simulation::next_deadline() const
{
    if (events_.empty())
        return std::nullopt;
    return events_.begin()->first.deadline;
}

bool Simulation::step(FiredEvent* fired)
{
    if (events_.empty())
        return false;
    auto it = events_.begin();
    EventKey key = it->first;
    auto fn = std::move(it->second);
    events_.erase(it);
    now_.store(key.deadline, std::memory_order_release);
    if (fired)
        *fired = FiredEvent{key.deadline, key.node_id, key.slot, {}};
    fn();
    return true;
}

std::vector<FiredEvent> Simulation::advance_clock(TimeMs dt)
{
    if (dt <= 0)
        throw Error(Errc::InvalidArgument, "advance_clock needs dt > 0");
    return advance_to(now() + dt);
}

std::vector<FiredEvent> Simulation::advance_to(TimeMs t)
{
    if (t < now())
        throw Error(Errc::InvalidArgument, "cannot move the clock backwards");
    std::vector<FiredEvent> fired;
    while (!events_.empty() && events_.begin()->first.deadline <= t)
    {
        FiredEvent ev;
        step(&ev);
        fired.push_back(std::move(ev));
    }
    now_.store(t, std::memory_order_release);
    return fired;
}

void Simulation::run_until(const std::function<bool()>& done)
{
    while (!done())
        if (!step())
            throw Error(Errc::NodeUnreachable, "simulation went idle before the operation completed");
}

void Simulation::record(std::string line) { trace_.push_back(std::move(line)); }

// ---------------------------------------------------------------------------
// links

void Simulation::transmit(const std::string& node_id, std::string frame, ReplyHandler on_reply)
{
    auto it = nodes_.find(node_id);
    if (it == nodes_.end() || it->second->config_.platform != Platform::Spot)
        throw Error(Errc::NodeUnreachable, "no SPOTSIM node '" + node_id + "'");
    receive(*it->second, std::move(frame), std::move(on_reply));
}

void Simulation::relay(const std::string& gateway_id, std::string relayed, ReplyHandler on_reply)
{
    auto gw = nodes_.find(gateway_id);
    if (gw == nodes_.end() || gw->second->config_.platform != Platform::Spot)
        throw Error(Errc::NodeUnreachable, "no gateway '" + gateway_id + "'");
    auto [target, inner] = wire::gto::unwrap(relayed);
    auto it = nodes_.find(target);
    if (it == nodes_.end() || it->second->config_.gto_parent != gateway_id)
        throw Error(Errc::NodeUnreachable, "'" + target + "' is not behind gateway '" + gateway_id + "'");
    auto wrap_reply = [target, on_reply = std::move(on_reply)](std::string frame) {
        on_reply(wire::gto::wrap(target, frame));
    };
    receive(*it->second, std::move(inner), std::move(wrap_reply));
}

void Simulation::inject_command_failure(const std::string& node_id, wire::CommandKind kind, wire::NodeError error,
                                        int count)
{
    auto& n = mut_node(node_id);
    for (int i = 0; i < count; ++i)
        n.injected_failures_[kind].push_back(error);
}

void Simulation::inject_garbled_replies(const std::string& node_id, int count)
{
    mut_node(node_id).garbled_replies_ += count;
}

// ---------------------------------------------------------------------------
// node behaviour

const DelayProfile& Simulation::profile(const NodeRuntime& n) const noexcept
{
    return n.config_.platform == Platform::Spot ? config_.spot : config_.mote;
}

TimeMs Simulation::jittered(const DelayProfile& profile, TimeMs base)
{
    if (profile.jitter_sigma_ms <= 0.0)
        return base;
    constexpr double scale = 1.0 / 9007199254740992.0;
    const double u1 = (static_cast<double>(jitter_rng_() >> 11) + 1.0) * scale;
    const double u2 = static_cast<double>(jitter_rng_() >> 11) * scale;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double j = std::clamp(z, -4.0, 4.0) * profile.jitter_sigma_ms;
    return std::max<TimeMs>(0, base + std::llround(j));
}

void Simulation::notify(NodeRuntime& n)
{
    const bool depleted = n.battery_remaining_uj_ < config_.energy.reserve_uj;
    if (status_)
        status_(NodeStatus{n.config_.node_id, n.occupied(), n.config_.capacity, n.battery_fraction(), depleted});
}

void Simulation::receive(NodeRuntime& n, std::string frame, std::function<void(std::string)> reply)
{
    const TimeMs t = now();
    if (n.awake(t) && n.queue_.empty())
    {
        execute(n, frame, reply);
        return;
    }
    if (n.queue_.size() >= config_.queue_depth)
    {
        const wire::Reply r = wire::Reply::failure(wire::NodeError::QueueFull, "command queue full");
        std::string bytes = n.config_.platform == Platform::Spot ? wire::text::encode_reply(r) : wire::tlv::encode_reply(r);
        schedule(t, n.config_.node_id, -1, "reply", [reply, bytes] { reply(bytes); });
        return;
    }
    n.queue_.push_back({std::move(frame), std::move(reply)});
    if (!n.wake_event_)
    {
        const std::string id = n.config_.node_id;
        n.wake_event_ = schedule(n.config_.duty_cycle.next_awake(t), id, -1, "wake", [this, id] {
            auto& node = mut_node(id);
            node.wake_event_.reset();
            drain_queue(node);
        });
    }
}

void Simulation::drain_queue(NodeRuntime& n)
{
    while (!n.queue_.empty())
    {
        auto p = std::move(n.queue_.front());
        n.queue_.pop_front();
        execute(n, p.frame, p.reply);
    }
}

void Simulation::execute(NodeRuntime& n, const std::string& frame, const std::function<void(std::string)>& reply)
{
    const bool spot = n.config_.platform == Platform::Spot;
    const std::string id = n.config_.node_id;

    // Replies leave the node as events at their completion instant.
    auto send = [this, spot, id, reply](wire::Reply r, TimeMs delay, std::int64_t slot) {
        schedule(now() + delay, id, slot, "reply", [this, spot, id, reply, r = std::move(r)] {
            auto& node = mut_node(id);
            if (node.garbled_replies_ > 0)
            {
                --node.garbled_replies_;
                reply(spot ? std::string("OK ???\n") : std::string("\x81\x00\x09garbage", 6));
                return;
            }
            reply(spot ? wire::text::encode_reply(r) : wire::tlv::encode_reply(r));
        });
    };

    wire::Command cmd;
    try
    {
        if (spot)
        {
            cmd = wire::text::decode_command(frame);
        }
        else
        {
            auto decoded = wire::tlv::decode_command(frame);
            if (!decoded)
            {
                send(wire::Reply::failure(wire::NodeError::Unsupported, "unsupported command"), 0, -1);
                return;
            }
            cmd = std::move(*decoded);
        }
    }
    catch (const Error& e)
    {
        send(wire::Reply::failure(wire::NodeError::BadFrame, e.what()), 0, -1);
        return;
    }

    const std::int64_t slot_key = cmd.slot ? static_cast<std::int64_t>(*cmd.slot) : -1;
    if (auto inj = n.injected_failures_.find(cmd.kind); inj != n.injected_failures_.end() && !inj->second.empty())
    {
        const auto err = inj->second.front();
        inj->second.pop_front();
        send(wire::Reply::failure(err, "injected failure"), 0, slot_key);
        return;
    }
    if (n.battery_remaining_uj_ < config_.energy.reserve_uj)
    {
        send(wire::Reply::failure(wire::NodeError::Energy, "battery below reserve"), 0, slot_key);
        return;
    }
    n.battery_remaining_uj_ -= config_.energy.command_uj;
    ++n.commands_charged_;
    notify(n);

    dispatch(n, cmd, [send, slot_key](wire::Reply r, TimeMs delay) {
        const std::int64_t key = r.ok() ? static_cast<std::int64_t>(r.slot) : slot_key;
        send(std::move(r), delay, key);
    });
}

std::optional<std::uint32_t> Simulation::pick_slot(NodeRuntime& n, const std::optional<std::uint32_t>& wanted,
                                                   wire::NodeError& error) const
{
    if (wanted)
    {
        if (*wanted >= n.slots_.size())
        {
            error = wire::NodeError::NoSlot;
            return std::nullopt;
        }
        if (n.slots_[*wanted].phase != SlotPhase::Empty)
        {
            error = wire::NodeError::Capacity;
            return std::nullopt;
        }
        return wanted;
    }
    for (std::uint32_t i = 0; i < n.slots_.size(); ++i)
        if (n.slots_[i].phase == SlotPhase::Empty)
            return i;
    error = wire::NodeError::Capacity;
    return std::nullopt;
}

void Simulation::dispatch(NodeRuntime& n, const wire::Command& cmd,
                          const std::function<void(wire::Reply, TimeMs)>& reply)
{
    using wire::CommandKind;
    using wire::NodeError;
    using wire::Reply;

    const std::string id = n.config_.node_id;
    const auto& delays = profile(n);
    auto fail = [&](NodeError e, std::string msg) { reply(Reply::failure(e, std::move(msg)), 0); };

    auto validate_manifest = [&](const std::string& text) -> std::optional<TaskManifest> {
        TaskManifest m;
        try
        {
            m = TaskManifest::parse(text);
        }
        catch (const Error& e)
        {
            fail(NodeError::BadFrame, e.what());
            return std::nullopt;
        }
        const auto* decl = n.config_.find(m.capability);
        if (!decl || !decl->supports(m.unit))
        {
            fail(NodeError::Unsupported, "capability or unit not supported");
            return std::nullopt;
        }
        return m;
    };

    // Slot that must hold a deployed task (Idle or Running).
    auto deployed_slot = [&]() -> SlotState* {
        if (!cmd.slot || *cmd.slot >= n.slots_.size())
            return nullptr;
        auto& s = n.slots_[*cmd.slot];
        return (s.phase == SlotPhase::Idle || s.phase == SlotPhase::Running) ? &s : nullptr;
    };

    switch (cmd.kind)
    {
    case CommandKind::Deploy:
    {
        auto m = validate_manifest(cmd.manifest);
        if (!m)
            return;
        // a repeated DEPLOY of the same task (retry after a lost reply) is idempotent
        for (std::uint32_t i = 0; i < n.slots_.size(); ++i)
            if (n.slots_[i].phase != SlotPhase::Empty && n.slots_[i].manifest->vs_id == m->vs_id)
                return reply(Reply::success(i), 0);
        NodeError err{};
        auto slot = pick_slot(n, cmd.slot, err);
        if (!slot)
            return fail(err, "no free slot");
        auto& s = n.slots_[*slot];
        s.phase = SlotPhase::Reserved;
        s.manifest = std::move(*m);
        s.next_seq = 1;
        notify(n);
        const TimeMs delay = jittered(delays, delays.deploy_ms(cmd.manifest.size()));
        schedule(now() + delay, id, *slot, "deploy-done", [this, id, slot = *slot, reply] {
            auto& node = mut_node(id);
            node.slots_[slot].phase = SlotPhase::Idle;
            reply(Reply::success(slot), 0);
        });
        return;
    }
    case CommandKind::Start:
    {
        auto* s = deployed_slot();
        if (!s)
            return fail(NodeError::NoSlot, "slot not deployed");
        if (s->phase == SlotPhase::Running)
            return reply(Reply::success(*cmd.slot), 0);
        const TimeMs delay = jittered(delays, delays.start_sync_ms);
        schedule(now() + delay, id, *cmd.slot, "start-done", [this, id, slot = *cmd.slot, reply] {
            auto& node = mut_node(id);
            auto& st = node.slots_[slot];
            if (st.phase == SlotPhase::Idle)
                begin_segment(node, slot);
            else if (st.phase != SlotPhase::Running)
                return reply(Reply::failure(NodeError::NoSlot, "slot vanished"), 0);
            reply(Reply::success(slot), 0);
        });
        return;
    }
    case CommandKind::Stop:
    {
        if (!deployed_slot())
            return fail(NodeError::NoSlot, "slot not deployed");
        const TimeMs delay = jittered(delays, delays.stop_ms);
        auto finish = [this, id, slot = *cmd.slot, reply] {
            auto& node = mut_node(id);
            if (node.slots_[slot].phase == SlotPhase::Running)
                halt_segment(node, slot);
            reply(Reply::success(slot), 0);
        };
        if (delay == 0)
            finish();
        else
            schedule(now() + delay, id, *cmd.slot, "stop-done", finish);
        return;
    }
    case CommandKind::Delete:
    {
        if (!deployed_slot())
            return fail(NodeError::NoSlot, "slot not deployed");
        const TimeMs delay = jittered(delays, delays.delete_ms);
        auto finish = [this, id, slot = *cmd.slot, reply] {
            auto& node = mut_node(id);
            if (node.slots_[slot].phase == SlotPhase::Running)
                halt_segment(node, slot);
            node.slots_[slot] = SlotState{};
            notify(node);
            reply(Reply::success(slot), 0);
        };
        if (delay == 0)
            finish();
        else
            schedule(now() + delay, id, *cmd.slot, "delete-done", finish);
        return;
    }
    case CommandKind::State:
    {
        if (!cmd.slot || *cmd.slot >= n.slots_.size() || n.slots_[*cmd.slot].phase == SlotPhase::Empty)
            return fail(NodeError::NoSlot, "slot empty");
        const auto& s = n.slots_[*cmd.slot];
        std::string payload;
        if (n.config_.platform == Platform::Spot)
        {
            MigrationState st{s.manifest ? s.manifest->serialize() : std::string{}, s.next_seq,
                              s.phase == SlotPhase::Running};
            payload = st.serialize();
        }
        else
        {
            payload.push_back(static_cast<char>(s.phase));
            for (int i = 3; i >= 0; --i)
                payload.push_back(static_cast<char>((s.next_seq >> (8 * i)) & 0xFF));
        }
        return reply(Reply::success(*cmd.slot, std::move(payload)), 0);
    }
    case CommandKind::MigOut:
    {
        if (n.config_.platform != Platform::Spot)
            return fail(NodeError::Unsupported, "migration unsupported");
        auto* s = deployed_slot();
        if (!s)
            return fail(NodeError::NoSlot, "slot not deployed");
        const bool running = s->phase == SlotPhase::Running;
        if (running)
            halt_segment(n, *cmd.slot);
        MigrationState st{s->manifest->serialize(), s->next_seq, running};
        return reply(Reply::success(*cmd.slot, st.serialize()), 0);
    }
    case CommandKind::MigIn:
    {
        if (n.config_.platform != Platform::Spot)
            return fail(NodeError::Unsupported, "migration unsupported");
        MigrationState st;
        try
        {
            st = MigrationState::parse(cmd.state);
        }
        catch (const Error& e)
        {
            return fail(NodeError::BadFrame, e.what());
        }
        auto m = validate_manifest(cmd.manifest);
        if (!m)
            return;
        // same for a repeated MIGIN
        for (std::uint32_t i = 0; i < n.slots_.size(); ++i)
            if (n.slots_[i].phase != SlotPhase::Empty && n.slots_[i].manifest->vs_id == m->vs_id)
                return reply(Reply::success(i), 0);
        NodeError err{};
        auto slot = pick_slot(n, cmd.slot, err);
        if (!slot)
            return fail(err, "no free slot");
        auto& s = n.slots_[*slot];
        s.phase = SlotPhase::Reserved;
        s.manifest = std::move(*m);
        s.next_seq = st.next_seq;
        notify(n);
        const TimeMs delay = jittered(delays, delays.migrate_ms);
        schedule(now() + delay, id, *slot, "migin-done", [this, id, slot = *slot, running = st.running, reply] {
            auto& node = mut_node(id);
            node.slots_[slot].phase = SlotPhase::Idle;
            if (running)
                begin_segment(node, slot);
            reply(Reply::success(slot), 0);
        });
        return;
    }
    }
}

void Simulation::begin_segment(NodeRuntime& n, std::uint32_t slot)
{
    auto& s = n.slots_[slot];
    s.phase = SlotPhase::Running;
    const std::string id = n.config_.node_id;
    s.tick = schedule(now() + s.manifest->sampling_interval_ms, id, slot, "sample",
                      [this, id, slot] { on_tick(id, slot); });
}

void Simulation::halt_segment(NodeRuntime& n, std::uint32_t slot)
{
    auto& s = n.slots_[slot];
    if (s.tick)
        cancel(*s.tick);
    s.tick.reset();
    s.phase = SlotPhase::Idle;
}

void Simulation::on_tick(const std::string& node_id, std::uint32_t slot)
{
    auto& n = mut_node(node_id);
    auto& s = n.slots_[slot];
    s.tick.reset();
    if (s.phase != SlotPhase::Running)
        return;
    const TimeMs t = now();
    const auto reschedule = [&] {
        s.tick = schedule(t + s.manifest->sampling_interval_ms, node_id, slot, "sample",
                          [this, node_id, slot] { on_tick(node_id, slot); });
    };
    if (!n.awake(t))
    {
        reschedule();
        return;
    }
    if (n.battery_remaining_uj_ < config_.energy.reserve_uj)
    {
        s.phase = SlotPhase::Idle;
        notify(n);
        return;
    }
    n.battery_remaining_uj_ -= config_.energy.sample_uj;
    ++n.samples_emitted_;

    const auto* decl = n.config_.find(s.manifest->capability);
    const double native = sample_value(*decl, t);
    wire::DataMessage msg{slot, s.next_seq++, t, convert_unit(native, decl->native_unit(), s.manifest->unit),
                          s.manifest->unit};
    reschedule();
    emit(n, msg);
    notify(n);
}

void Simulation::emit(NodeRuntime& n, const wire::DataMessage& msg)
{
    std::string via;
    std::string frame;
    if (n.config_.platform == Platform::Spot)
    {
        via = n.config_.node_id;
        frame = wire::text::encode_data(msg);
    }
    else
    {
        via = *n.config_.gto_parent;
        frame = wire::gto::wrap(n.config_.node_id, wire::tlv::encode_data(msg));
    }
    if (config_.trace)
        record("data " + n.config_.node_id + " " + wire::text::encode_data(msg));
    if (uplink_)
        uplink_(via, frame, n.config_.platform != Platform::Spot);
}

} // namespace vwsn::sim
