/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/lifecycle.hpp"

#include <map>
#include <utility>

namespace vwsn::testing::reference
{

// Lifecycle table written out row by row, independent of the switch in
// transition(). (Migrating, migrate_ok) resumes to the supplied state.
inline std::map<std::pair<VsState, LifecycleEvent>, VsState> reference_table(VsState resume)
{
    using S = VsState;
    using E = LifecycleEvent;
    std::map<std::pair<S, E>, S> t{
        {{S::Requested, E::Configure}, S::Configured},
        {{S::Configured, E::DeployBegin}, S::Deploying},
        {{S::Deploying, E::DeployOk}, S::Deployed},
        {{S::Deployed, E::StartOk}, S::Running},
        {{S::Running, E::StopOk}, S::Stopped},
        {{S::Stopped, E::StartOk}, S::Running},
        {{S::Running, E::MigrateBegin}, S::Migrating},
        {{S::Stopped, E::MigrateBegin}, S::Migrating},
        {{S::Migrating, E::MigrateOk}, resume},
        {{S::Deployed, E::DeleteBegin}, S::Deleting},
        {{S::Stopped, E::DeleteBegin}, S::Deleting},
        {{S::Deleting, E::DeleteOk}, S::Deleted},
    };
    for (auto s : {S::Requested, S::Configured, S::Deploying, S::Deployed, S::Running, S::Stopped, S::Migrating,
                   S::Deleting})
        t[{s, E::Fault}] = S::Faulted;
    return t;
}

} // namespace vwsn::testing::reference
