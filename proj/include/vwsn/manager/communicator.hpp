/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/sim/simulation.hpp"
#include "vwsn/sim/wire.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn::manager
{

/// Shared: one base-station session opened once and reused.
/// PerRequest: a session is set up for every creation request.
enum class SessionMode : std::uint8_t
{
    Shared,
    PerRequest,
};

std::string_view to_string(SessionMode m) noexcept;
std::optional<SessionMode> parse_session_mode(std::string_view text) noexcept;

struct BaseStationConfig
{
    TimeMs setup_ms = 0;
    SessionMode mode = SessionMode::Shared;
};

/// Outcome of one command exchange: a decoded reply or a transport error
/// (ProtocolError, NodeUnreachable).
struct Exchange
{
    std::optional<wire::Reply> reply;
    std::optional<Error> error;
};

/// Talks to nodes in their own protocol: SPOTSIM directly, MOTESIM through
/// the GTO parent's relay stream. Also owns the base-station session.
class Communicator
{
public:
    using Done = std::function<void(Exchange)>;

    explicit Communicator(sim::Simulation& sim, BaseStationConfig base_station = {});

    const BaseStationConfig& base_station() const noexcept { return base_station_; }

    /// Calls `ready` once a session is usable; may call it synchronously.
    void acquire_session(std::function<void()> ready);
    bool session_open() const noexcept { return open_; }
    void reset_session() noexcept { open_ = false; }
    std::uint64_t sessions_opened() const noexcept { return sessions_opened_; }

    /// Sends `c` and re-sends up to `retries` times after an undecodable reply
    /// or a BADFRAME answer. `done` may run synchronously on transport errors.
    void send(const std::string& node_id, const wire::Command& c, int retries, Done done);

    std::uint64_t frames_sent() const noexcept { return frames_sent_; }

private:
    void open(std::function<void()> ready);
    void attempt(const std::string& node_id, const wire::Command& c, int retries, Done done);

    sim::Simulation& sim_;
    BaseStationConfig base_station_;
    bool open_ = false;
    bool opening_ = false;
    std::vector<std::function<void()>> waiting_;
    std::uint64_t sessions_opened_ = 0;
    std::uint64_t frames_sent_ = 0;
};

} // namespace vwsn::manager
