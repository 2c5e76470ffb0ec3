/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/api/server.hpp"
#include "vwsn/api/service.hpp"
#include "vwsn/core/error.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace vwsn::bench
{

/// Minimal /v1 client. Error responses are rethrown as the module error
/// named by their wire code; transport failures as Error{ServiceUnreachable}.
class ApiClient
{
public:
    ApiClient(std::string host, int port);

    nlohmann::json get(const std::string& path);
    nlohmann::json post(const std::string& path, const nlohmann::json& body = nlohmann::json::object());
    void del(const std::string& path);

    /// Every call made so far returned 2xx.
    bool all_ok() const noexcept { return failures_ == 0; }
    std::size_t calls() const noexcept { return calls_; }
    int port() const noexcept { return port_; }

private:
    nlohmann::json finish(const std::string& what, int status, const std::string& body);

    std::string host_;
    int port_;
    std::size_t calls_ = 0;
    std::size_t failures_ = 0;
};

/// A service with its HTTP front end on an ephemeral loopback port.
class LocalService
{
public:
    explicit LocalService(api::ServiceConfig config);
    ApiClient client() const { return ApiClient("127.0.0.1", server_->port()); }
    api::Service& service() noexcept { return *service_; }

private:
    std::unique_ptr<api::Service> service_;
    std::unique_ptr<api::Server> server_;
};

} // namespace vwsn::bench
