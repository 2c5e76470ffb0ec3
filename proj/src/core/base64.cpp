/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/core/base64.hpp"

#include <boost/beast/core/detail/base64.hpp>

namespace vwsn
{

namespace b64 = boost::beast::detail::base64;

std::string base64_encode(std::string_view bytes)
{
    std::string out(b64::encoded_size(bytes.size()), '\0');
    out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
    return out;
}

std::optional<std::string> base64_decode(std::string_view text)
{
    if (text.size() % 4 != 0)
        return std::nullopt;
    std::string out(b64::decoded_size(text.size()), '\0');
    const auto [written, consumed] = b64::decode(out.data(), text.data(), text.size());
    (void)consumed;
    out.resize(written);
    // Beast stops silently at the first invalid character; the re-encode
    // comparison rejects that and any non-canonical padding.
    if (base64_encode(out) != text)
        return std::nullopt;
    return out;
}

} // namespace vwsn
