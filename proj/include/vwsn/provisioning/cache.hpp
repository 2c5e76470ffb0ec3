/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <functional>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vwsn::provisioning
{

/// LRU map from canonical query keys to the node last used for them.
/// Hits are re-validated by the caller's predicate; stale hits are evicted
/// and reported as misses. Thread-safe.
class RecentSensorCache
{
public:
    using Validator = std::function<bool(const std::string& node_id)>;

    explicit RecentSensorCache(std::size_t capacity = 16);

    std::optional<std::string> lookup(const std::string& key, const Validator& still_valid);
    void insert(const std::string& key, std::string node_id);

    std::size_t size() const;
    std::size_t capacity() const noexcept { return capacity_; }
    /// Most recently used first.
    std::vector<std::pair<std::string, std::string>> entries() const;

private:
    using Item = std::pair<std::string, std::string>;

    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<Item> order_;
    std::unordered_map<std::string, std::list<Item>::iterator> index_;
};

} // namespace vwsn::provisioning
