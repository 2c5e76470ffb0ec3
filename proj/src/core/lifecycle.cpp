/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/lifecycle.hpp"

#include "vwsn/core/error.hpp"

#include <string>

namespace vwsn
{

namespace
{

[[noreturn]] void illegal(VsState s, LifecycleEvent e)
{
    throw Error(Errc::IllegalTransition,
                std::string("illegal transition: ") + std::string(to_string(s)) + " on " + std::string(to_string(e)));
}

} // namespace

VsState transition(VsState state, LifecycleEvent event, std::optional<VsState> resume)
{
    using S = VsState;
    using E = LifecycleEvent;

    if (event == E::Fault)
    {
        if (is_terminal(state))
            illegal(state, event);
        return S::Faulted;
    }

    switch (state)
    {
    case S::Requested:
        if (event == E::Configure)
            return S::Configured;
        break;
    case S::Configured:
        if (event == E::DeployBegin)
            return S::Deploying;
        break;
    case S::Deploying:
        if (event == E::DeployOk)
            return S::Deployed;
        break;
    case S::Deployed:
        if (event == E::StartOk)
            return S::Running;
        if (event == E::DeleteBegin)
            return S::Deleting;
        break;
    case S::Running:
        if (event == E::StopOk)
            return S::Stopped;
        if (event == E::MigrateBegin)
            return S::Migrating;
        break;
    case S::Stopped:
        if (event == E::StartOk)
            return S::Running;
        if (event == E::MigrateBegin)
            return S::Migrating;
        if (event == E::DeleteBegin)
            return S::Deleting;
        break;
    case S::Migrating:
        if (event == E::MigrateOk && resume && (*resume == S::Running || *resume == S::Stopped))
            return *resume;
        break;
    case S::Deleting:
        if (event == E::DeleteOk)
            return S::Deleted;
        break;
    case S::Deleted:
    case S::Faulted:
        break;
    }
    illegal(state, event);
}

std::string_view to_string(VsState s) noexcept
{
    switch (s)
    {
    case VsState::Requested: return "Requested";
    case VsState::Configured: return "Configured";
    case VsState::Deploying: return "Deploying";
    case VsState::Deployed: return "Deployed";
    case VsState::Running: return "Running";
    case VsState::Stopped: return "Stopped";
    case VsState::Migrating: return "Migrating";
    case VsState::Deleting: return "Deleting";
    case VsState::Deleted: return "Deleted";
    case VsState::Faulted: return "Faulted";
    }
    return "?";
}

std::string_view to_string(LifecycleEvent e) noexcept
{
    switch (e)
    {
    case LifecycleEvent::Configure: return "configure";
    case LifecycleEvent::DeployBegin: return "deploy_begin";
    case LifecycleEvent::DeployOk: return "deploy_ok";
    case LifecycleEvent::StartOk: return "start_ok";
    case LifecycleEvent::StopOk: return "stop_ok";
    case LifecycleEvent::MigrateBegin: return "migrate_begin";
    case LifecycleEvent::MigrateOk: return "migrate_ok";
    case LifecycleEvent::DeleteBegin: return "delete_begin";
    case LifecycleEvent::DeleteOk: return "delete_ok";
    case LifecycleEvent::Fault: return "fault";
    }
    return "?";
}

std::optional<VsState> parse_state(std::string_view text) noexcept
{
    for (auto s : kAllStates)
        if (to_string(s) == text)
            return s;
    return std::nullopt;
}

} // namespace vwsn
