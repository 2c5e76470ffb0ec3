/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/error.hpp"

namespace vwsn
{

std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::IllegalTransition: return "IllegalTransition";
    case Errc::AlreadyBound: return "AlreadyBound";
    case Errc::NotBound: return "NotBound";
    case Errc::IncompatibleUnits: return "IncompatibleUnits";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DuplicateNodeId: return "DuplicateNodeId";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::BadFrame: return "BadFrame";
    case Errc::InvalidQuery: return "InvalidQuery";
    case Errc::IoFailure: return "IoFailure";
    case Errc::CorruptSnapshot: return "CorruptSnapshot";
    case Errc::NodeCapacity: return "NodeCapacity";
    case Errc::NodeEnergy: return "NodeEnergy";
    case Errc::NodeUnreachable: return "NodeUnreachable";
    case Errc::ProtocolError: return "ProtocolError";
    case Errc::UnsupportedPlatform: return "UnsupportedPlatform";
    case Errc::TargetCapacity: return "TargetCapacity";
    case Errc::TargetEnergy: return "TargetEnergy";
    case Errc::UnknownVs: return "UnknownVs";
    case Errc::NoCandidateNode: return "NoCandidateNode";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::UnsupportedCapability: return "UnsupportedCapability";
    case Errc::IntervalOutOfRange: return "IntervalOutOfRange";
    case Errc::UnitUnsupported: return "UnitUnsupported";
    case Errc::PastDue: return "PastDue";
    case Errc::UnknownId: return "UnknownId";
    case Errc::AlreadyFired: return "AlreadyFired";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ServiceUnreachable: return "ServiceUnreachable";
    case Errc::ScenarioFailure: return "ScenarioFailure";
    }
    return "Unknown";
}

} // namespace vwsn
