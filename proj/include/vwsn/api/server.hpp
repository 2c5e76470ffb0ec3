/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vwsn/api/service.hpp"

#include <memory>
#include <string>
#include <thread>

namespace vwsn::api
{

/// HTTP front end of a Service: the /v1 endpoint table.
class Server
{
public:
    explicit Server(Service& service, std::size_t threads = 16);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds host:port (port 0 picks a free one) and returns the port.
    /// Throws Error{IoFailure}.
    int bind(const std::string& host, int port);
    /// Serves on a background thread.
    void start();
    /// Serves on the calling thread until stop().
    void run();
    void stop();
    int port() const noexcept { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
    std::thread thread_;
};

} // namespace vwsn::api
