/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace vwsn
{

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    std::int64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_uint(std::string_view text)
{
    if (text.empty() || text.front() == '-' || text.front() == '+')
        return std::nullopt;
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        return std::nullopt;
    return v;
}

std::vector<std::string_view> split_spaces(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        auto pos = text.find(' ', start);
        if (pos == std::string_view::npos)
        {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace vwsn
