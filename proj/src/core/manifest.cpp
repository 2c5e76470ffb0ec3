/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/manifest.hpp"

#include "vwsn/core/error.hpp"
#include "vwsn/core/text.hpp"

#include <map>

namespace vwsn
{

std::string_view to_string(Comparator c) noexcept { return c == Comparator::Gt ? "gt" : "lt"; }

std::optional<Comparator> parse_comparator(std::string_view text) noexcept
{
    if (text == "gt")
        return Comparator::Gt;
    if (text == "lt")
        return Comparator::Lt;
    return std::nullopt;
}

namespace
{

bool valid_value(std::string_view v)
{
    return !v.empty() && v.find('\n') == std::string_view::npos && v.find('\r') == std::string_view::npos;
}

[[noreturn]] void reject(const std::string& why) { throw Error(Errc::InvalidParams, "manifest: " + why); }

} // namespace

std::string TaskManifest::serialize() const
{
    if (threshold.has_value() != comparator.has_value())
        reject("threshold and comparator must appear together");
    if (!valid_value(vs_id) || !valid_value(endpoint))
        reject("empty or multi-line field");
    std::map<std::string, std::string> kv{
        {"capability", std::string(to_string(capability))},
        {"endpoint", endpoint},
        {"sampling_interval_ms", std::to_string(sampling_interval_ms)},
        {"unit", std::string(to_string(unit))},
        {"vs_id", vs_id},
    };
    if (threshold)
    {
        kv.emplace("threshold", format_double(*threshold));
        kv.emplace("comparator", std::string(to_string(*comparator)));
    }
    std::string out;
    for (const auto& [k, v] : kv)
        out += k + "=" + v + "\n";
    return out;
}

TaskManifest TaskManifest::parse(std::string_view text)
{
    std::map<std::string, std::string, std::less<>> kv;
    std::string last_key;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        if (nl == std::string_view::npos)
            reject("missing trailing LF");
        const auto line = text.substr(0, nl);
        text.remove_prefix(nl + 1);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0)
            reject("malformed line");
        std::string key(line.substr(0, eq));
        const auto value = line.substr(eq + 1);
        if (!last_key.empty() && key <= last_key)
            reject("keys not in ascending order");
        if (!valid_value(value))
            reject("empty value for " + key);
        last_key = key;
        kv.emplace(std::move(key), std::string(value));
    }

    auto take = [&](std::string_view key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        std::string v = std::move(it->second);
        kv.erase(it);
        return v;
    };
    auto require = [&](std::string_view key) {
        auto v = take(key);
        if (!v)
            reject("missing key " + std::string(key));
        return *v;
    };

    TaskManifest m;
    m.vs_id = require("vs_id");
    m.endpoint = require("endpoint");
    auto cap = parse_capability(require("capability"));
    if (!cap)
        reject("unknown capability");
    m.capability = *cap;
    auto unit = parse_unit(require("unit"));
    if (!unit)
        reject("unknown unit");
    m.unit = *unit;
    const auto interval_text = require("sampling_interval_ms");
    auto interval = parse_int(interval_text);
    if (!interval || *interval <= 0 || std::to_string(*interval) != interval_text)
        reject("bad sampling_interval_ms");
    m.sampling_interval_ms = *interval;

    auto threshold = take("threshold");
    auto comparator = take("comparator");
    if (threshold.has_value() != comparator.has_value())
        reject("threshold and comparator must appear together");
    if (threshold)
    {
        auto t = parse_double(*threshold);
        if (!t || format_double(*t) != *threshold)
            reject("bad threshold");
        auto c = parse_comparator(*comparator);
        if (!c)
            reject("bad comparator");
        m.threshold = *t;
        m.comparator = *c;
    }
    if (!kv.empty())
        reject("unknown key " + kv.begin()->first);
    return m;
}

bool TaskManifest::rule_satisfied(double value) const noexcept
{
    if (!threshold || !comparator)
        return true;
    return *comparator == Comparator::Gt ? value > *threshold : value < *threshold;
}

} // namespace vwsn
