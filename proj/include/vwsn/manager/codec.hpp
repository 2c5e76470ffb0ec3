/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/sim/node.hpp"
#include "vwsn/sim/wire.hpp"

#include <string>
#include <string_view>

namespace vwsn::manager
{

/// Frame codec for one sensor platform. Decoders throw Error{BadFrame}.
class PlatformCodec
{
public:
    virtual ~PlatformCodec() = default;

    virtual sim::Platform platform() const noexcept = 0;
    virtual std::string encode(const wire::Command& c) const = 0;
    virtual wire::Reply decode(std::string_view frame) const = 0;
    virtual wire::DataMessage decode_data(std::string_view frame) const = 0;
};

const PlatformCodec& codec_for(sim::Platform p) noexcept;

} // namespace vwsn::manager
