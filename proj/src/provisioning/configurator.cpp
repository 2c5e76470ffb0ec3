/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/provisioning/configurator.hpp"

#include <algorithm>

namespace vwsn::provisioning
{

TaskManifest configure(const TaskParams& params, const registry::SensorDescription& node, const std::string& vs_id)
{
    validate(params);
    const auto decl = std::find_if(node.capabilities.begin(), node.capabilities.end(),
                                   [&](const sim::CapabilityDecl& d) { return d.capability == params.capability; });
    if (decl == node.capabilities.end())
        throw Error(Errc::UnsupportedCapability,
                    node.node_id + " has no " + std::string(to_string(params.capability)) + " sensor");
    const auto& range = decl->sampling_interval_ms;
    if (params.sampling_interval_ms < range.min_ms || params.sampling_interval_ms > range.max_ms)
        throw Error(Errc::IntervalOutOfRange, "interval " + std::to_string(params.sampling_interval_ms) +
                                                  " ms outside [" + std::to_string(range.min_ms) + ", " +
                                                  std::to_string(range.max_ms) + "] on " + node.node_id);

    TaskManifest m;
    m.vs_id = vs_id;
    m.capability = params.capability;
    m.sampling_interval_ms = params.sampling_interval_ms;
    m.endpoint = params.endpoint;
    m.comparator = params.comparator;
    if (decl->supports(params.unit))
    {
        m.unit = params.unit;
        m.threshold = params.threshold;
    }
    else if (family_of(decl->native_unit()) == family_of(params.unit))
    {
        m.unit = decl->native_unit();
        if (params.threshold)
            m.threshold = convert_unit(*params.threshold, params.unit, m.unit);
    }
    else
    {
        throw Error(Errc::UnitUnsupported, std::string(to_string(params.unit)) + " unsupported on " + node.node_id);
    }
    // canonical form check; also rejects vs_id/endpoint values the format cannot carry
    return TaskManifest::parse(m.serialize());
}

} // namespace vwsn::provisioning
