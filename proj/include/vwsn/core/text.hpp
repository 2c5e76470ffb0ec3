/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vwsn
{

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Whole-string parses; nullopt on trailing garbage, overflow or non-finite values.
std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

/// Splits on single spaces; empty fields are kept so callers can reject them.
std::vector<std::string_view> split_spaces(std::string_view text);

} // namespace vwsn
