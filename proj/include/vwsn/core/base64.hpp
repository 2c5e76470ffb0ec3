/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace vwsn
{

std::string base64_encode(std::string_view bytes);

/// Strict decode: only canonical padded base64 is accepted.
std::optional<std::string> base64_decode(std::string_view text);

} // namespace vwsn
