/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vwsn
{

enum class VsState : std::uint8_t
{
    Requested,
    Configured,
    Deploying,
    Deployed,
    Running,
    Stopped,
    Migrating,
    Deleting,
    Deleted,
    Faulted,
};

enum class LifecycleEvent : std::uint8_t
{
    Configure,
    DeployBegin,
    DeployOk,
    StartOk,
    StopOk,
    MigrateBegin,
    MigrateOk,
    DeleteBegin,
    DeleteOk,
    Fault,
};

inline constexpr std::array kAllStates{
    VsState::Requested, VsState::Configured, VsState::Deploying, VsState::Deployed, VsState::Running,
    VsState::Stopped,   VsState::Migrating,  VsState::Deleting,  VsState::Deleted,  VsState::Faulted,
};

inline constexpr std::array kAllEvents{
    LifecycleEvent::Configure,    LifecycleEvent::DeployBegin, LifecycleEvent::DeployOk,
    LifecycleEvent::StartOk,      LifecycleEvent::StopOk,      LifecycleEvent::MigrateBegin,
    LifecycleEvent::MigrateOk,    LifecycleEvent::DeleteBegin, LifecycleEvent::DeleteOk,
    LifecycleEvent::Fault,
};

/// Next state for (state, event). `resume` is the pre-migration state and is
/// only consulted for (Migrating, MigrateOk); it must be Running or Stopped.
/// Throws Error{IllegalTransition} for every pair outside the table.
VsState transition(VsState state, LifecycleEvent event, std::optional<VsState> resume = std::nullopt);

/// True for the states in which a VS owns a node slot.
constexpr bool holds_local(VsState s) noexcept
{
    return s == VsState::Deployed || s == VsState::Running || s == VsState::Stopped || s == VsState::Migrating;
}

constexpr bool is_terminal(VsState s) noexcept { return s == VsState::Deleted || s == VsState::Faulted; }

std::string_view to_string(VsState s) noexcept;
std::string_view to_string(LifecycleEvent e) noexcept;
std::optional<VsState> parse_state(std::string_view text) noexcept;

} // namespace vwsn
