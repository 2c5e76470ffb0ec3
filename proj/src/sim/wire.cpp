/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/wire.hpp"

#include "vwsn/core/base64.hpp"
#include "vwsn/core/text.hpp"

#include <bit>
#include <cstring>

namespace vwsn::wire
{

std::string_view to_string(CommandKind k) noexcept
{
    switch (k)
    {
    case CommandKind::Deploy: return "DEPLOY";
    case CommandKind::Start: return "START";
    case CommandKind::Stop: return "STOP";
    case CommandKind::Delete: return "DELETE";
    case CommandKind::State: return "STATE";
    case CommandKind::MigOut: return "MIGOUT";
    case CommandKind::MigIn: return "MIGIN";
    }
    return "?";
}

std::string_view to_string(NodeError e) noexcept
{
    switch (e)
    {
    case NodeError::Capacity: return "CAPACITY";
    case NodeError::Energy: return "ENERGY";
    case NodeError::BadFrame: return "BADFRAME";
    case NodeError::Unsupported: return "UNSUPPORTED";
    case NodeError::QueueFull: return "QUEUEFULL";
    case NodeError::NoSlot: return "NOSLOT";
    }
    return "?";
}

std::optional<NodeError> parse_node_error(std::string_view text) noexcept
{
    for (auto e : {NodeError::Capacity, NodeError::Energy, NodeError::BadFrame, NodeError::Unsupported,
                   NodeError::QueueFull, NodeError::NoSlot})
        if (to_string(e) == text)
            return e;
    return std::nullopt;
}

namespace
{

[[noreturn]] void bad(const char* why) { throw Error(Errc::BadFrame, std::string("bad frame: ") + why); }

std::uint32_t parse_slot(std::string_view field)
{
    auto v = parse_uint(field);
    if (!v || *v > kMaxSlot || std::to_string(*v) != field)
        bad("slot");
    return static_cast<std::uint32_t>(*v);
}

std::optional<std::uint32_t> parse_slot_or_any(std::string_view field)
{
    if (field == "-")
        return std::nullopt;
    return parse_slot(field);
}

std::string slot_text(const std::optional<std::uint32_t>& slot)
{
    return slot ? std::to_string(*slot) : std::string("-");
}

std::string decode_b64_field(std::string_view field)
{
    if (field.empty())
        bad("empty base64 field");
    auto v = base64_decode(field);
    if (!v)
        bad("base64");
    return *v;
}

std::string_view strip_line(std::string_view frame)
{
    if (frame.empty() || frame.back() != '\n')
        bad("missing LF");
    frame.remove_suffix(1);
    if (frame.find('\n') != std::string_view::npos || frame.find('\r') != std::string_view::npos)
        bad("embedded line break");
    return frame;
}

void check_slot(const std::optional<std::uint32_t>& slot)
{
    if (slot && *slot > kMaxSlot)
        throw Error(Errc::InvalidArgument, "slot out of range");
}

} // namespace

// ---------------------------------------------------------------------------
// text-line protocol

namespace text
{

std::string encode_command(const Command& c)
{
    check_slot(c.slot);
    std::string out(to_string(c.kind));
    switch (c.kind)
    {
    case CommandKind::Deploy:
        out += " " + slot_text(c.slot) + " " + base64_encode(c.manifest);
        break;
    case CommandKind::MigIn:
        out += " " + slot_text(c.slot) + " " + base64_encode(c.manifest) + " " + base64_encode(c.state);
        break;
    default:
        if (!c.slot)
            throw Error(Errc::InvalidArgument, "command requires a slot");
        out += " " + std::to_string(*c.slot);
        break;
    }
    return out + "\n";
}

Command decode_command(std::string_view frame)
{
    const auto fields = split_spaces(strip_line(frame));
    const auto verb = fields.front();
    Command c;
    if (verb == "DEPLOY")
    {
        if (fields.size() != 3)
            bad("DEPLOY arity");
        c.kind = CommandKind::Deploy;
        c.slot = parse_slot_or_any(fields[1]);
        c.manifest = decode_b64_field(fields[2]);
        return c;
    }
    if (verb == "MIGIN")
    {
        if (fields.size() != 4)
            bad("MIGIN arity");
        c.kind = CommandKind::MigIn;
        c.slot = parse_slot_or_any(fields[1]);
        c.manifest = decode_b64_field(fields[2]);
        c.state = decode_b64_field(fields[3]);
        return c;
    }
    static constexpr std::pair<std::string_view, CommandKind> simple[] = {
        {"START", CommandKind::Start},   {"STOP", CommandKind::Stop},     {"DELETE", CommandKind::Delete},
        {"STATE", CommandKind::State},   {"MIGOUT", CommandKind::MigOut},
    };
    for (const auto& [name, kind] : simple)
    {
        if (verb == name)
        {
            if (fields.size() != 2)
                bad("arity");
            c.kind = kind;
            c.slot = parse_slot(fields[1]);
            return c;
        }
    }
    bad("unknown verb");
}

std::string encode_reply(const Reply& r)
{
    if (r.error)
    {
        std::string msg = r.message.empty() ? std::string("error") : r.message;
        for (auto& ch : msg)
            if (ch == '\n' || ch == '\r')
                ch = ' ';
        return "ERR " + std::string(to_string(*r.error)) + " " + msg + "\n";
    }
    check_slot(r.slot);
    std::string out = "OK " + std::to_string(r.slot);
    if (!r.payload.empty())
        out += " " + base64_encode(r.payload);
    return out + "\n";
}

Reply decode_reply(std::string_view frame)
{
    const auto line = strip_line(frame);
    if (line.starts_with("ERR "))
    {
        const auto rest = line.substr(4);
        const auto sp = rest.find(' ');
        if (sp == std::string_view::npos || sp + 1 >= rest.size())
            bad("ERR needs code and text");
        auto code = parse_node_error(rest.substr(0, sp));
        if (!code)
            bad("unknown ERR code");
        return Reply::failure(*code, std::string(rest.substr(sp + 1)));
    }
    const auto fields = split_spaces(line);
    if (fields.front() != "OK" || fields.size() < 2 || fields.size() > 3)
        bad("reply");
    Reply r = Reply::success(parse_slot(fields[1]));
    if (fields.size() == 3)
        r.payload = decode_b64_field(fields[2]);
    return r;
}

std::string encode_data(const DataMessage& d)
{
    return "DATA " + std::to_string(d.slot) + " " + std::to_string(d.seq) + " " + std::to_string(d.ts_ms) + " " +
           format_double(d.value) + " " + std::string(to_string(d.unit)) + "\n";
}

DataMessage decode_data(std::string_view frame)
{
    const auto fields = split_spaces(strip_line(frame));
    if (fields.size() != 6 || fields[0] != "DATA")
        bad("DATA");
    DataMessage d;
    d.slot = parse_slot(fields[1]);
    auto seq = parse_uint(fields[2]);
    auto ts = parse_int(fields[3]);
    auto value = parse_double(fields[4]);
    auto unit = parse_unit(fields[5]);
    if (!seq || !ts || *ts < 0 || !value || !unit)
        bad("DATA field");
    d.seq = *seq;
    d.ts_ms = *ts;
    d.value = *value;
    d.unit = *unit;
    return d;
}

} // namespace text

// ---------------------------------------------------------------------------
// binary TLV protocol

namespace tlv
{

namespace
{

void put_be(std::string& out, std::uint64_t v, int bytes)
{
    for (int i = bytes - 1; i >= 0; --i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_be(std::string_view in, std::size_t at, int bytes)
{
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
        v = (v << 8) | static_cast<std::uint8_t>(in[at + i]);
    return v;
}

std::string frame(std::uint8_t type, std::string_view payload)
{
    if (payload.size() > 0xFFFF)
        throw Error(Errc::InvalidArgument, "TLV payload too large");
    std::string out;
    out.push_back(static_cast<char>(type));
    put_be(out, payload.size(), 2);
    out.append(payload);
    return out;
}

/// Returns (type, payload) after checking the length field matches exactly.
std::pair<std::uint8_t, std::string_view> split(std::string_view in)
{
    if (in.size() < 3)
        bad("short TLV");
    const auto len = get_be(in, 1, 2);
    if (in.size() != 3 + len)
        bad("TLV length mismatch");
    return {static_cast<std::uint8_t>(in[0]), in.substr(3)};
}

char slot_byte(const std::optional<std::uint32_t>& slot)
{
    return static_cast<char>(slot ? static_cast<std::uint8_t>(*slot) : kAnySlot);
}

} // namespace

std::string encode_command(const Command& c)
{
    check_slot(c.slot);
    std::uint8_t type = 0;
    switch (c.kind)
    {
    case CommandKind::Deploy: return frame(kDeploy, std::string(1, slot_byte(c.slot)) + c.manifest);
    case CommandKind::Start: type = kStart; break;
    case CommandKind::Stop: type = kStop; break;
    case CommandKind::Delete: type = kDelete; break;
    case CommandKind::State: type = kStateReq; break;
    case CommandKind::MigOut:
    case CommandKind::MigIn:
        throw Error(Errc::UnsupportedPlatform, "MOTESIM has no migration frames");
    }
    if (!c.slot)
        throw Error(Errc::InvalidArgument, "command requires a slot");
    return frame(type, std::string(1, slot_byte(c.slot)));
}

std::optional<Command> decode_command(std::string_view in)
{
    const auto [type, payload] = split(in);
    Command c;
    switch (type)
    {
    case kDeploy: c.kind = CommandKind::Deploy; break;
    case kStart: c.kind = CommandKind::Start; break;
    case kStop: c.kind = CommandKind::Stop; break;
    case kDelete: c.kind = CommandKind::Delete; break;
    case kStateReq: c.kind = CommandKind::State; break;
    default:
        if (type >= 0x80)
            bad("reply type in command stream");
        return std::nullopt;
    }
    if (payload.empty())
        bad("missing slot byte");
    const auto slot = static_cast<std::uint8_t>(payload[0]);
    if (c.kind == CommandKind::Deploy)
    {
        if (slot != kAnySlot)
            c.slot = slot;
        c.manifest = std::string(payload.substr(1));
        return c;
    }
    if (payload.size() != 1 || slot == kAnySlot)
        bad("slot payload");
    c.slot = slot;
    return c;
}

std::string encode_reply(const Reply& r)
{
    if (r.error)
        return frame(kErr, std::string(1, static_cast<char>(*r.error)));
    check_slot(r.slot);
    return frame(kOk, std::string(1, static_cast<char>(r.slot)) + r.payload);
}

Reply decode_reply(std::string_view in)
{
    const auto [type, payload] = split(in);
    if (type == kOk)
    {
        if (payload.empty() || static_cast<std::uint8_t>(payload[0]) > kMaxSlot)
            bad("OK slot");
        return Reply::success(static_cast<std::uint8_t>(payload[0]), std::string(payload.substr(1)));
    }
    if (type == kErr)
    {
        if (payload.size() != 1)
            bad("ERR payload");
        const auto code = static_cast<std::uint8_t>(payload[0]);
        if (code < 1 || code > 6)
            bad("ERR code");
        const auto e = static_cast<NodeError>(code);
        return Reply::failure(e, std::string(to_string(e)));
    }
    bad("reply type");
}

std::string encode_data(const DataMessage& d)
{
    if (d.slot > kMaxSlot || d.seq > 0xFFFFFFFFULL || d.ts_ms < 0)
        throw Error(Errc::InvalidArgument, "DATA field out of TLV range");
    std::string p;
    p.push_back(static_cast<char>(d.slot));
    put_be(p, d.seq, 4);
    put_be(p, static_cast<std::uint64_t>(d.ts_ms), 8);
    put_be(p, std::bit_cast<std::uint64_t>(d.value), 8);
    p.push_back(static_cast<char>(d.unit));
    return frame(kData, p);
}

DataMessage decode_data(std::string_view in)
{
    const auto [type, payload] = split(in);
    if (type != kData || payload.size() != 22)
        bad("DATA frame");
    DataMessage d;
    d.slot = static_cast<std::uint8_t>(payload[0]);
    d.seq = get_be(payload, 1, 4);
    const auto ts = get_be(payload, 5, 8);
    if (ts > static_cast<std::uint64_t>(INT64_MAX))
        bad("DATA ts");
    d.ts_ms = static_cast<TimeMs>(ts);
    d.value = std::bit_cast<double>(get_be(payload, 13, 8));
    const auto unit = static_cast<std::uint8_t>(payload[21]);
    if (d.slot > kMaxSlot || unit > static_cast<std::uint8_t>(Unit::PercentRh))
        bad("DATA slot/unit");
    d.unit = static_cast<Unit>(unit);
    return d;
}

} // namespace tlv

namespace gto
{

std::string wrap(std::string_view node_id, std::string_view frame)
{
    if (node_id.empty() || node_id.size() > 255)
        throw Error(Errc::InvalidArgument, "GTO target id must be 1..255 bytes");
    std::string out;
    out.push_back(static_cast<char>(node_id.size()));
    out.append(node_id);
    out.append(frame);
    return out;
}

std::pair<std::string, std::string> unwrap(std::string_view relayed)
{
    if (relayed.empty())
        bad("empty relay frame");
    const auto n = static_cast<std::uint8_t>(relayed[0]);
    if (n == 0 || relayed.size() < 1u + n)
        bad("relay prefix");
    return {std::string(relayed.substr(1, n)), std::string(relayed.substr(1 + n))};
}

} // namespace gto

} // namespace vwsn::wire
