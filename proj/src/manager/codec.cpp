/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/manager/codec.hpp"

namespace vwsn::manager
{

namespace
{

class SpotCodec final : public PlatformCodec
{
public:
    sim::Platform platform() const noexcept override { return sim::Platform::Spot; }
    std::string encode(const wire::Command& c) const override { return wire::text::encode_command(c); }
    wire::Reply decode(std::string_view frame) const override { return wire::text::decode_reply(frame); }
    wire::DataMessage decode_data(std::string_view frame) const override { return wire::text::decode_data(frame); }
};

// Throws Error{UnsupportedPlatform} for MIGOUT/MIGIN.
class MoteCodec final : public PlatformCodec
{
public:
    sim::Platform platform() const noexcept override { return sim::Platform::Mote; }
    std::string encode(const wire::Command& c) const override { return wire::tlv::encode_command(c); }
    wire::Reply decode(std::string_view frame) const override { return wire::tlv::decode_reply(frame); }
    wire::DataMessage decode_data(std::string_view frame) const override { return wire::tlv::decode_data(frame); }
};

} // namespace

const PlatformCodec& codec_for(sim::Platform p) noexcept
{
    static const SpotCodec spot;
    static const MoteCodec mote;
    if (p == sim::Platform::Spot)
        return spot;
    return mote;
}

} // namespace vwsn::manager
