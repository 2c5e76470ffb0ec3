/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/api/error_map.hpp"

namespace vwsn::api
{

ApiError map_error(Errc code) noexcept
{
    switch (code)
    {
    case Errc::IllegalTransition: return {409, "ILLEGAL_TRANSITION"};
    case Errc::AlreadyBound: return {409, "ALREADY_BOUND"};
    case Errc::NotBound: return {409, "NOT_BOUND"};
    case Errc::IncompatibleUnits: return {422, "INCOMPATIBLE_UNITS"};
    case Errc::InvalidArgument: return {400, "INVALID_ARGUMENT"};
    case Errc::DuplicateNodeId: return {409, "DUPLICATE_NODE_ID"};
    case Errc::InvalidConfig: return {400, "INVALID_CONFIG"};
    case Errc::UnknownNode: return {404, "UNKNOWN_NODE"};
    case Errc::BadFrame: return {400, "BAD_FRAME"};
    case Errc::InvalidQuery: return {400, "INVALID_QUERY"};
    case Errc::IoFailure: return {503, "IO_FAILURE"};
    case Errc::CorruptSnapshot: return {422, "CORRUPT_SNAPSHOT"};
    case Errc::NodeCapacity: return {503, "NODE_CAPACITY"};
    case Errc::NodeEnergy: return {503, "NODE_ENERGY"};
    case Errc::NodeUnreachable: return {503, "NODE_UNREACHABLE"};
    case Errc::ProtocolError: return {503, "PROTOCOL_ERROR"};
    case Errc::UnsupportedPlatform: return {422, "UNSUPPORTED_PLATFORM"};
    case Errc::TargetCapacity: return {503, "TARGET_CAPACITY"};
    case Errc::TargetEnergy: return {503, "TARGET_ENERGY"};
    case Errc::UnknownVs: return {404, "UNKNOWN_VS"};
    case Errc::NoCandidateNode: return {503, "NO_CANDIDATE_NODE"};
    case Errc::InvalidParams: return {422, "INVALID_PARAMS"};
    case Errc::UnsupportedCapability: return {422, "UNSUPPORTED_CAPABILITY"};
    case Errc::IntervalOutOfRange: return {422, "INTERVAL_OUT_OF_RANGE"};
    case Errc::UnitUnsupported: return {422, "UNIT_UNSUPPORTED"};
    case Errc::PastDue: return {422, "PAST_DUE"};
    case Errc::UnknownId: return {404, "UNKNOWN_ID"};
    case Errc::AlreadyFired: return {409, "ALREADY_FIRED"};
    case Errc::InsufficientData: return {422, "INSUFFICIENT_DATA"};
    case Errc::ServiceUnreachable: return {503, "SERVICE_UNREACHABLE"};
    case Errc::ScenarioFailure: return {422, "SCENARIO_FAILURE"};
    }
    return {500, "INTERNAL"};
}

std::optional<Errc> parse_wire_code(std::string_view code) noexcept
{
    for (auto c : kAllErrc)
        if (map_error(c).code == code)
            return c;
    return std::nullopt;
}

nlohmann::json error_body(const Error& e)
{
    const auto m = map_error(e.code());
    return {{"status", m.http_status}, {"code", std::string(m.code)}, {"message", e.what()}};
}

} // namespace vwsn::api
