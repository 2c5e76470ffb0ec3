/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"
#include "vwsn/core/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

/// Node wire formats.
///
/// SPOTSIM (UTF-8 lines, single spaces, LF-terminated):
///   DEPLOY <slot|-> <b64 manifest> | START <slot> | STOP <slot> | DELETE <slot>
///   STATE <slot> | MIGOUT <slot> | MIGIN <slot|-> <b64 manifest> <b64 state>
///   OK <slot>[ <b64 payload>] | ERR <CODE> <text>
///   DATA <slot> <seq> <ts_ms> <value> <unit>
///
/// MOTESIM (binary TLV: type:1, length:2 big-endian, payload):
///   0x01 DEPLOY  slot:1 (0xFF = any) + manifest bytes
///   0x02 START / 0x03 STOP / 0x04 DELETE / 0x05 STATE_REQ  slot:1
///   0x81 OK  slot:1 [+ payload]     0x82 ERR  code:1
///   0x90 DATA slot:1 seq:4 ts_ms:8 value:8 (IEEE-754) unit:1
///
/// GTO relay: each frame on a gateway stream is prefixed with
/// len:1 + target node_id bytes.
namespace vwsn::wire
{

enum class CommandKind : std::uint8_t
{
    Deploy,
    Start,
    Stop,
    Delete,
    State,
    MigOut,
    MigIn,
};

std::string_view to_string(CommandKind k) noexcept;

/// Node-side error codes; numeric values are the TLV ERR code byte.
enum class NodeError : std::uint8_t
{
    Capacity = 1,
    Energy = 2,
    BadFrame = 3,
    Unsupported = 4,
    QueueFull = 5,
    NoSlot = 6,
};

std::string_view to_string(NodeError e) noexcept;
std::optional<NodeError> parse_node_error(std::string_view text) noexcept;

struct Command
{
    CommandKind kind = CommandKind::State;
    /// Absent means "any free slot" (DEPLOY and MIGIN only).
    std::optional<std::uint32_t> slot;
    std::string manifest;
    std::string state;

    friend bool operator==(const Command&, const Command&) = default;
};

struct Reply
{
    std::optional<NodeError> error;
    std::uint32_t slot = 0;
    std::string payload;
    /// Free text carried by text-line ERR replies.
    std::string message;

    bool ok() const noexcept { return !error; }
    static Reply success(std::uint32_t slot, std::string payload = {}) { return Reply{std::nullopt, slot, std::move(payload), {}}; }
    static Reply failure(NodeError e, std::string message) { return Reply{e, 0, {}, std::move(message)}; }

    friend bool operator==(const Reply&, const Reply&) = default;
};

struct DataMessage
{
    std::uint32_t slot = 0;
    std::uint64_t seq = 0;
    TimeMs ts_ms = 0;
    double value = 0.0;
    Unit unit = Unit::Celsius;

    friend bool operator==(const DataMessage&, const DataMessage&) = default;
};

inline constexpr std::uint32_t kMaxSlot = 254;

// All decoders throw Error{BadFrame} on malformed input and never read out of bounds.

namespace text
{
std::string encode_command(const Command& c);
Command decode_command(std::string_view frame);
std::string encode_reply(const Reply& r);
Reply decode_reply(std::string_view frame);
std::string encode_data(const DataMessage& d);
DataMessage decode_data(std::string_view frame);
} // namespace text

namespace tlv
{
inline constexpr std::uint8_t kDeploy = 0x01;
inline constexpr std::uint8_t kStart = 0x02;
inline constexpr std::uint8_t kStop = 0x03;
inline constexpr std::uint8_t kDelete = 0x04;
inline constexpr std::uint8_t kStateReq = 0x05;
inline constexpr std::uint8_t kOk = 0x81;
inline constexpr std::uint8_t kErr = 0x82;
inline constexpr std::uint8_t kData = 0x90;
inline constexpr std::uint8_t kAnySlot = 0xFF;

/// Throws Error{UnsupportedPlatform} for MIGOUT/MIGIN, which have no TLV form.
std::string encode_command(const Command& c);
/// Unknown command types decode to nullopt (the node answers UNSUPPORTED).
std::optional<Command> decode_command(std::string_view frame);
std::string encode_reply(const Reply& r);
Reply decode_reply(std::string_view frame);
std::string encode_data(const DataMessage& d);
DataMessage decode_data(std::string_view frame);
} // namespace tlv

namespace gto
{
std::string wrap(std::string_view node_id, std::string_view frame);
/// Splits a relayed frame into (target node_id, inner frame).
std::pair<std::string, std::string> unwrap(std::string_view relayed);
} // namespace gto

} // namespace vwsn::wire
