/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/manager/communicator.hpp"

#include "vwsn/manager/codec.hpp"

namespace vwsn::manager
{

std::string_view to_string(SessionMode m) noexcept
{
    return m == SessionMode::Shared ? "shared" : "per_request";
}

std::optional<SessionMode> parse_session_mode(std::string_view text) noexcept
{
    if (text == "shared")
        return SessionMode::Shared;
    if (text == "per_request")
        return SessionMode::PerRequest;
    return std::nullopt;
}

Communicator::Communicator(sim::Simulation& sim, BaseStationConfig base_station)
    : sim_(sim), base_station_(base_station)
{
}

void Communicator::acquire_session(std::function<void()> ready)
{
    if (base_station_.mode == SessionMode::PerRequest)
        return open(std::move(ready));
    if (open_)
        return ready();
    waiting_.push_back(std::move(ready));
    if (opening_)
        return;
    opening_ = true;
    open([this] {
        open_ = true;
        opening_ = false;
        auto waiting = std::move(waiting_);
        waiting_.clear();
        for (auto& w : waiting)
            w();
    });
}

void Communicator::open(std::function<void()> ready)
{
    ++sessions_opened_;
    if (base_station_.setup_ms <= 0)
        return ready();
    sim_.schedule(sim_.now() + base_station_.setup_ms, "", -2, "bs-setup", std::move(ready));
}

void Communicator::send(const std::string& node_id, const wire::Command& c, int retries, Done done)
{
    attempt(node_id, c, retries, std::move(done));
}

void Communicator::attempt(const std::string& node_id, const wire::Command& c, int retries, Done done)
{
    const sim::NodeConfig* cfg = nullptr;
    try
    {
        cfg = &sim_.node(node_id).config();
    }
    catch (const Error&)
    {
        return done(Exchange{std::nullopt, Error(Errc::NodeUnreachable, "no such node: " + node_id)});
    }
    const auto& codec = codec_for(cfg->platform);
    std::string frame;
    try
    {
        frame = codec.encode(c);
    }
    catch (const Error& e)
    {
        return done(Exchange{std::nullopt, e});
    }

    const bool relayed = cfg->platform != sim::Platform::Spot;
    auto on_reply = [this, node_id, c, retries, done, relayed, &codec](std::string raw) {
        std::optional<wire::Reply> reply;
        std::string why;
        try
        {
            if (relayed)
            {
                auto [from, inner] = wire::gto::unwrap(raw);
                if (from != node_id)
                    throw Error(Errc::BadFrame, "relay answered for " + from);
                reply = codec.decode(inner);
            }
            else
            {
                reply = codec.decode(raw);
            }
            if (reply->error == wire::NodeError::BadFrame)
            {
                why = "node rejected frame: " + reply->message;
                reply.reset();
            }
        }
        catch (const Error& e)
        {
            why = e.what();
        }
        if (reply)
            return done(Exchange{std::move(reply), std::nullopt});
        if (retries > 0)
            return attempt(node_id, c, retries - 1, done);
        done(Exchange{std::nullopt, Error(Errc::ProtocolError, node_id + ": " + why)});
    };

    ++frames_sent_;
    try
    {
        if (relayed)
            sim_.relay(*cfg->gto_parent, wire::gto::wrap(node_id, frame), std::move(on_reply));
        else
            sim_.transmit(node_id, std::move(frame), std::move(on_reply));
    }
    catch (const Error& e)
    {
        done(Exchange{std::nullopt, Error(Errc::NodeUnreachable, e.what())});
    }
}

} // namespace vwsn::manager
