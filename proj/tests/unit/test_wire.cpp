/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/sim/wire.hpp"

#include <doctest.h>

#include <random>

using namespace vwsn;
using namespace vwsn::wire;

namespace
{

std::string bytes(std::initializer_list<int> b)
{
    std::string s;
    for (int v : b)
        s.push_back(static_cast<char>(v));
    return s;
}

std::string random_blob(std::mt19937_64& rng, std::size_t max_len)
{
    std::string s(rng() % (max_len + 1), '\0');
    for (auto& c : s)
        c = static_cast<char>(rng() & 0xFF);
    return s;
}

Command random_command(std::mt19937_64& rng, bool tlv)
{
    Command c;
    const int kinds = tlv ? 5 : 7;
    c.kind = static_cast<CommandKind>(rng() % kinds);
    const bool any_allowed = c.kind == CommandKind::Deploy || c.kind == CommandKind::MigIn;
    if (!(any_allowed && rng() % 3 == 0))
        c.slot = static_cast<std::uint32_t>(rng() % (kMaxSlot + 1));
    if (any_allowed)
        c.manifest = random_blob(rng, 300);
    if (c.kind == CommandKind::MigIn)
        c.state = random_blob(rng, 80) + "x"; // base64 fields must be non-empty
    if (any_allowed && !tlv && c.manifest.empty())
        c.manifest = "m";
    return c;
}

} // namespace

TEST_CASE("text protocol literals")
{
    CHECK(text::encode_command(Command{CommandKind::Start, 2u, {}, {}}) == "START 2\n");
    CHECK(text::encode_command(Command{CommandKind::Deploy, std::nullopt, "abc", {}}) == "DEPLOY - YWJj\n");
    CHECK(text::encode_reply(Reply::success(3)) == "OK 3\n");
    CHECK(text::encode_reply(Reply::failure(NodeError::Capacity, "no free slot")) == "ERR CAPACITY no free slot\n");
    CHECK(text::decode_reply("OK 0 YWJj\n") == Reply::success(0, "abc"));
    CHECK(text::encode_data(DataMessage{1, 7, 1500, 21.5, Unit::Celsius}) == "DATA 1 7 1500 21.5 celsius\n");

    CHECK_THROWS_AS(text::decode_command("START 2"), Error);        // no LF
    CHECK_THROWS_AS(text::decode_command("START  2\n"), Error);     // double space
    CHECK_THROWS_AS(text::decode_command("START 02\n"), Error);     // non-canonical number
    CHECK_THROWS_AS(text::decode_command("START -\n"), Error);      // '-' only for DEPLOY/MIGIN
    CHECK_THROWS_AS(text::decode_command("DEPLOY 0 !!!!\n"), Error);
    CHECK_THROWS_AS(text::decode_reply("ERR NOPE x\n"), Error);
}

TEST_CASE("TLV protocol literals")
{
    CHECK(tlv::decode_reply(bytes({0x81, 0x00, 0x01, 0x00})) == Reply::success(0));
    CHECK(tlv::encode_command(Command{CommandKind::Start, 0u, {}, {}}) == bytes({0x02, 0x00, 0x01, 0x00}));
    CHECK(tlv::encode_command(Command{CommandKind::Deploy, std::nullopt, "ab", {}}) ==
          bytes({0x01, 0x00, 0x03, 0xFF, 'a', 'b'}));
    CHECK(tlv::encode_reply(Reply::failure(NodeError::Capacity, "")) == bytes({0x82, 0x00, 0x01, 0x01}));

    const DataMessage d{0, 258, 1000, 1.0, Unit::Lux};
    const auto f = tlv::encode_data(d);
    REQUIRE(f.size() == 25);
    CHECK(f.substr(0, 3) == bytes({0x90, 0x00, 22}));
    CHECK(f.substr(3, 5) == bytes({0x00, 0x00, 0x00, 0x01, 0x02}));
    CHECK(f.substr(16, 8) == bytes({0x3F, 0xF0, 0, 0, 0, 0, 0, 0}));
    CHECK(static_cast<std::uint8_t>(f[24]) == 3);
    CHECK(tlv::decode_data(f) == d);

    CHECK_THROWS_AS(tlv::encode_command(Command{CommandKind::MigOut, 0u, {}, {}}), Error);
    CHECK_FALSE(tlv::decode_command(bytes({0x06, 0x00, 0x01, 0x00})).has_value());
    CHECK_THROWS_AS(tlv::decode_reply(bytes({0x81, 0x00, 0x02, 0x00})), Error); // length mismatch
}

TEST_CASE("GTO relay prefix")
{
    const auto relayed = gto::wrap("mote-1", bytes({0x02, 0x00, 0x01, 0x00}));
    CHECK(static_cast<std::uint8_t>(relayed[0]) == 6);
    const auto [id, inner] = gto::unwrap(relayed);
    CHECK(id == "mote-1");
    CHECK(inner == bytes({0x02, 0x00, 0x01, 0x00}));
    CHECK_THROWS_AS(gto::unwrap(bytes({0x09, 'a'})), Error);
}

TEST_CASE("codec round trip over generated commands, replies and data")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 3000; ++i)
    {
        const auto ct = random_command(rng, false);
        CHECK(text::decode_command(text::encode_command(ct)) == ct);
        const auto cb = random_command(rng, true);
        CHECK(tlv::decode_command(tlv::encode_command(cb)) == cb);

        const auto slot = static_cast<std::uint32_t>(rng() % (kMaxSlot + 1));
        const auto ok = Reply::success(slot, random_blob(rng, 40));
        CHECK(text::decode_reply(text::encode_reply(ok)) == ok);
        CHECK(tlv::decode_reply(tlv::encode_reply(ok)) == ok);

        const auto err = static_cast<NodeError>(1 + rng() % 6);
        const auto r = Reply::failure(err, "why not");
        CHECK(text::decode_reply(text::encode_reply(r)) == r);
        CHECK(tlv::decode_reply(tlv::encode_reply(r)).error == err);

        std::uniform_real_distribution<double> vd(-1e6, 1e6);
        const DataMessage d{slot, rng() % 0xFFFFFFFFULL, static_cast<TimeMs>(rng() % (1LL << 40)), vd(rng),
                            static_cast<Unit>(rng() % 5)};
        CHECK(text::decode_data(text::encode_data(d)) == d);
        CHECK(tlv::decode_data(tlv::encode_data(d)) == d);
    }
}

TEST_CASE("decoders survive random bytes")
{
    std::mt19937_64 rng(1234);
    int rejected = 0;
    int accepted = 0;
    auto attempt = [&](auto&& fn) {
        try
        {
            fn();
            ++accepted;
        }
        catch (const Error& e)
        {
            CHECK(e.code() == Errc::BadFrame);
            ++rejected;
        }
    };
    for (int i = 0; i < 10000; ++i)
    {
        auto blob = random_blob(rng, 40);
        // bias some inputs toward plausible prefixes
        if (i % 4 == 1 && !blob.empty())
            blob[0] = static_cast<char>(0x81);
        if (i % 4 == 2)
            blob = "OK " + blob + "\n";
        attempt([&] { tlv::decode_reply(blob); });
        attempt([&] { text::decode_reply(blob); });
        attempt([&] { tlv::decode_command(blob); });
        attempt([&] { text::decode_command(blob); });
        attempt([&] { tlv::decode_data(blob); });
        attempt([&] { text::decode_data(blob); });
        attempt([&] { gto::unwrap(blob); });
    }
    CHECK(rejected + accepted == 70000);
    CHECK(rejected > 0);
}
