/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/provisioning/provider.hpp"

#include "vwsn/provisioning/configurator.hpp"

namespace vwsn::provisioning
{

Provider::Provider(sim::Simulation& sim, registry::Registry& registry, manager::VsManager& manager,
                   manager::Metrics& metrics, ProviderConfig config)
    : sim_(sim), registry_(registry), manager_(manager), metrics_(metrics), config_(config),
      cache_(config.cache_capacity), scheduler_(sim, [this](const ScheduleEntry& e) { execute(e); })
{
}

bool Provider::has_free_slot(const std::string& node_id) const
{
    const auto d = registry_.get(node_id);
    return d && d->active < d->capacity;
}

std::vector<registry::SensorDescription> Provider::candidates(const registry::DiscoveryQuery& q) const
{
    auto all = registry_.query(q);
    std::erase_if(all, [](const registry::SensorDescription& d) { return d.active >= d.capacity; });
    return all;
}

void Provider::handle_create(CreateRequest request, CreateDone done)
{
    auto a = std::make_shared<Attempt>();
    a->received = sim_.now();
    a->attempts_left = config_.selection_attempts;
    try
    {
        validate(request);
        if (request.start_at && *request.start_at < sim_.now())
            throw Error(Errc::PastDue, "start_at lies in the past");
    }
    catch (const Error& e)
    {
        return done(e, std::nullopt);
    }
    a->request = std::move(request);
    attempt(std::move(a), std::move(done));
}

void Provider::attempt(std::shared_ptr<Attempt> a, CreateDone done)
{
    const auto& req = a->request;
    const auto* query = std::get_if<registry::DiscoveryQuery>(&req.selector);
    std::optional<registry::SensorDescription> node;
    try
    {
        if (!query)
        {
            node = registry_.get(std::get<std::string>(req.selector));
            if (!node)
                throw Error(Errc::UnknownNode, "unknown node: " + std::get<std::string>(req.selector));
        }
        else
        {
            const auto key = canonical_key(req.app_id, *query);
            const auto hit = cache_.lookup(key, [&](const std::string& id) {
                return !a->excluded.count(id) && registry_.satisfies(id, *query) && has_free_slot(id);
            });
            if (hit)
                node = registry_.get(*hit);
            if (!node)
            {
                for (auto& c : candidates(*query))
                    if (!a->excluded.count(c.node_id))
                    {
                        node = std::move(c);
                        break;
                    }
            }
            if (!node)
                throw Error(Errc::NoCandidateNode, "no node with a free slot matches the query");
        }
    }
    catch (const Error& e)
    {
        return done(e, std::nullopt);
    }

    const auto g = manager_.allocate_address();
    try
    {
        auto manifest = configure(req.task, *node, g.uuid_text());
        manager_.add_configured(g, std::move(manifest), req.app_id, req.task.unit);
    }
    catch (const Error& e)
    {
        return done(e, std::nullopt);
    }
    const auto node_id = node->node_id;
    manager_.instantiate(g, node_id, [this, a, g, node_id, done, by_query = query != nullptr](std::optional<Error> err) {
        if (!err)
            return deployed(a, g, node_id, done);
        manager_.discard(g);
        const bool retry = err->code() == Errc::NodeCapacity || err->code() == Errc::NodeEnergy;
        if (by_query && retry && --a->attempts_left > 0)
        {
            a->excluded.insert(node_id);
            return attempt(a, done);
        }
        done(err, std::nullopt);
    });
}

void Provider::deployed(std::shared_ptr<Attempt> a, const GlobalAddress& g, const std::string& node,
                        CreateDone done)
{
    metrics_.record_vscd(g.uuid_text(), sim_.now() - a->received);
    metrics_.count_create();
    const auto& req = a->request;
    if (const auto* q = std::get_if<registry::DiscoveryQuery>(&req.selector))
        cache_.insert(canonical_key(req.app_id, *q), node);

    if (req.start_at)
    {
        ScheduleEntry e;
        e.action = ScheduleAction::Start;
        e.vs = g;
        // deployment may have outlasted the requested instant: start as soon as possible
        e.due_ms = std::max(*req.start_at, sim_.now());
        scheduler_.schedule(std::move(e));
        return done(std::nullopt, manager_.record(g));
    }
    if (!req.autostart)
        return done(std::nullopt, manager_.record(g));
    manager_.start(g, [this, g, done](std::optional<Error> err) {
        if (!err)
            return done(std::nullopt, manager_.record(g));
        const auto rec = manager_.record(g);
        if (rec && rec->state == VsState::Deployed)
            return manager_.remove(g, [done, err](std::optional<Error>) { done(err, std::nullopt); });
        done(err, std::nullopt);
    });
}

VirtualSensorRecord Provider::handle_create_sync(CreateRequest request)
{
    bool finished = false;
    std::optional<Error> error;
    std::optional<VirtualSensorRecord> record;
    handle_create(std::move(request), [&](std::optional<Error> e, std::optional<VirtualSensorRecord> r) {
        finished = true;
        error = std::move(e);
        record = std::move(r);
    });
    if (!finished)
        sim_.run_until([&] { return finished; });
    if (error)
        throw *error;
    return *record;
}

void Provider::execute(const ScheduleEntry& entry)
{
    const auto id = entry.id;
    auto note = [this, id](std::optional<Error> err) {
        scheduler_.set_outcome(id, err ? std::string(to_string(err->code())) + ": " + err->what() : "ok");
    };
    switch (entry.action)
    {
    case ScheduleAction::Start: return manager_.start(*entry.vs, note);
    case ScheduleAction::Stop: return manager_.stop(*entry.vs, note);
    case ScheduleAction::Delete: return manager_.remove(*entry.vs, note);
    case ScheduleAction::Create:
    case ScheduleAction::Disseminate:
    {
        auto req = *entry.request;
        if (entry.action == ScheduleAction::Disseminate)
        {
            req.autostart = false;
            req.start_at.reset();
        }
        return handle_create(std::move(req), [this, id](std::optional<Error> err, std::optional<VirtualSensorRecord> r) {
            scheduler_.set_outcome(id, err ? std::string(to_string(err->code())) + ": " + err->what()
                                           : "ok " + r->global.uuid_text());
        });
    }
    }
}

} // namespace vwsn::provisioning
