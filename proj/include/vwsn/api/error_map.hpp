/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/core/error.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace vwsn::api
{

/// Wire form of a module error: HTTP status plus a fixed machine code.
struct ApiError
{
    int http_status = 500;
    std::string_view code;
};

/// Exactly one (status, code) pair per module error. Statuses are drawn from
/// {400, 404, 409, 422, 503}.
ApiError map_error(Errc code) noexcept;

/// Reverse lookup of a wire code, used by clients.
std::optional<Errc> parse_wire_code(std::string_view code) noexcept;

/// `{"status": ..., "code": ..., "message": ...}`
nlohmann::json error_body(const Error& e);

} // namespace vwsn::api
