/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vwsn
{

enum class Comparator : std::uint8_t
{
    Gt,
    Lt,
};

std::string_view to_string(Comparator c) noexcept;
std::optional<Comparator> parse_comparator(std::string_view text) noexcept;

/// Parametric task definition disseminated to a node.
///
/// Canonical text form: one `key=value` line per field, keys in ascending
/// byte order, LF line endings, trailing LF. `threshold` and `comparator`
/// appear together or not at all. The unit is the node-native unit; the
/// threshold is expressed in it.
struct TaskManifest
{
    std::string vs_id;
    Capability capability = Capability::Temperature;
    std::int64_t sampling_interval_ms = 1000;
    Unit unit = Unit::Celsius;
    std::string endpoint;
    std::optional<double> threshold;
    std::optional<Comparator> comparator;

    std::string serialize() const;

    /// Accepts only the canonical form; throws Error{InvalidParams} otherwise.
    static TaskManifest parse(std::string_view text);

    /// True when the value satisfies the threshold rule (always true without one).
    bool rule_satisfied(double value) const noexcept;

    friend bool operator==(const TaskManifest&, const TaskManifest&) = default;
};

} // namespace vwsn
