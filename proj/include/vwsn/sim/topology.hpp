/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/sim/node.hpp"
#include "vwsn/sim/simulation.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace vwsn::sim
{

/// Topology document, see README.md:
/// { "iaas_id": "home", "nodes": [ NodeConfig, ... ] }
struct Topology
{
    std::string iaas_id = "vwsn";
    std::vector<NodeConfig> nodes;
};

void to_json(nlohmann::json& j, const SignalParams& s);
void from_json(const nlohmann::json& j, SignalParams& s);
void to_json(nlohmann::json& j, const CapabilityDecl& c);
void from_json(const nlohmann::json& j, CapabilityDecl& c);
void to_json(nlohmann::json& j, const NodeConfig& n);
void from_json(const nlohmann::json& j, NodeConfig& n);
void to_json(nlohmann::json& j, const DelayProfile& p);
void from_json(const nlohmann::json& j, DelayProfile& p);

/// Throws Error{InvalidConfig} on schema violations.
Topology parse_topology(const nlohmann::json& doc);
/// Throws Error{IoFailure} or Error{InvalidConfig}.
Topology load_topology(const std::filesystem::path& path);
nlohmann::json topology_to_json(const Topology& t);

/// Spawns gateways before the motes that hang off them.
void spawn_topology(Simulation& sim, const Topology& topology);

} // namespace vwsn::sim
