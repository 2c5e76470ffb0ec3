/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/provisioning/cache.hpp"

#include "vwsn/core/error.hpp"

namespace vwsn::provisioning
{

RecentSensorCache::RecentSensorCache(std::size_t capacity) : capacity_(capacity)
{
    if (capacity_ == 0)
        throw Error(Errc::InvalidConfig, "cache capacity must be positive");
}

std::optional<std::string> RecentSensorCache::lookup(const std::string& key, const Validator& still_valid)
{
    std::string node;
    {
        std::lock_guard lock(mutex_);
        auto it = index_.find(key);
        if (it == index_.end())
            return std::nullopt;
        node = it->second->second;
    }
    const bool valid = !still_valid || still_valid(node);
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end() || it->second->second != node)
        return std::nullopt;
    if (!valid)
    {
        order_.erase(it->second);
        index_.erase(it);
        return std::nullopt;
    }
    order_.splice(order_.begin(), order_, it->second);
    return node;
}

void RecentSensorCache::insert(const std::string& key, std::string node_id)
{
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end())
    {
        it->second->second = std::move(node_id);
        order_.splice(order_.begin(), order_, it->second);
        return;
    }
    order_.emplace_front(key, std::move(node_id));
    index_[key] = order_.begin();
    if (order_.size() > capacity_)
    {
        index_.erase(order_.back().first);
        order_.pop_back();
    }
}

std::size_t RecentSensorCache::size() const
{
    std::lock_guard lock(mutex_);
    return order_.size();
}

std::vector<std::pair<std::string, std::string>> RecentSensorCache::entries() const
{
    std::lock_guard lock(mutex_);
    return {order_.begin(), order_.end()};
}

} // namespace vwsn::provisioning
