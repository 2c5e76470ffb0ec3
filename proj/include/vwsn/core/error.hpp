/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vwsn
{

/// Every error a module can raise. The REST layer maps each one to exactly
/// one (HTTP status, wire code) pair, see api/error_map.hpp.
enum class Errc : std::uint8_t
{
    IllegalTransition,
    AlreadyBound,
    NotBound,
    IncompatibleUnits,
    InvalidArgument,
    DuplicateNodeId,
    InvalidConfig,
    UnknownNode,
    BadFrame,
    InvalidQuery,
    IoFailure,
    CorruptSnapshot,
    NodeCapacity,
    NodeEnergy,
    NodeUnreachable,
    ProtocolError,
    UnsupportedPlatform,
    TargetCapacity,
    TargetEnergy,
    UnknownVs,
    NoCandidateNode,
    InvalidParams,
    UnsupportedCapability,
    IntervalOutOfRange,
    UnitUnsupported,
    PastDue,
    UnknownId,
    AlreadyFired,
    InsufficientData,
    ServiceUnreachable,
    ScenarioFailure,
};

inline constexpr std::array kAllErrc{
    Errc::IllegalTransition,  Errc::AlreadyBound,      Errc::NotBound,        Errc::IncompatibleUnits,
    Errc::InvalidArgument,    Errc::DuplicateNodeId,   Errc::InvalidConfig,   Errc::UnknownNode,
    Errc::BadFrame,           Errc::InvalidQuery,      Errc::IoFailure,       Errc::CorruptSnapshot,
    Errc::NodeCapacity,       Errc::NodeEnergy,        Errc::NodeUnreachable, Errc::ProtocolError,
    Errc::UnsupportedPlatform, Errc::TargetCapacity,   Errc::TargetEnergy,    Errc::UnknownVs,
    Errc::NoCandidateNode,    Errc::InvalidParams,     Errc::UnsupportedCapability,
    Errc::IntervalOutOfRange, Errc::UnitUnsupported,   Errc::PastDue,         Errc::UnknownId,
    Errc::AlreadyFired,       Errc::InsufficientData,  Errc::ServiceUnreachable,
    Errc::ScenarioFailure,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Virtual-clock time in milliseconds.
using TimeMs = std::int64_t;

} // namespace vwsn
