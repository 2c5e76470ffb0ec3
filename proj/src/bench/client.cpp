/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/bench/client.hpp"

#include "vwsn/api/error_map.hpp"

#include <httplib.h>

namespace vwsn::bench
{

using nlohmann::json;

ApiClient::ApiClient(std::string host, int port) : host_(std::move(host)), port_(port) {}

json ApiClient::finish(const std::string& what, int status, const std::string& body)
{
    ++calls_;
    if (status >= 200 && status < 300)
        return body.empty() ? json(nullptr) : json::parse(body, nullptr, false);
    ++failures_;
    const auto j = json::parse(body, nullptr, false);
    if (j.is_object() && j.contains("code") && j.at("code").is_string())
        if (const auto code = api::parse_wire_code(j.at("code").get<std::string>()))
            throw Error(*code, j.value("message", what));
    throw Error(Errc::ServiceUnreachable, what + " returned HTTP " + std::to_string(status));
}

json ApiClient::get(const std::string& path)
{
    httplib::Client cli(host_, port_);
    auto r = cli.Get(path);
    if (!r)
        throw Error(Errc::ServiceUnreachable, "GET " + path + ": " + httplib::to_string(r.error()));
    return finish("GET " + path, r->status, r->body);
}

json ApiClient::post(const std::string& path, const json& body)
{
    httplib::Client cli(host_, port_);
    auto r = cli.Post(path, body.dump(), "application/json");
    if (!r)
        throw Error(Errc::ServiceUnreachable, "POST " + path + ": " + httplib::to_string(r.error()));
    return finish("POST " + path, r->status, r->body);
}

void ApiClient::del(const std::string& path)
{
    httplib::Client cli(host_, port_);
    auto r = cli.Delete(path);
    if (!r)
        throw Error(Errc::ServiceUnreachable, "DELETE " + path + ": " + httplib::to_string(r.error()));
    finish("DELETE " + path, r->status, r->body);
}

LocalService::LocalService(api::ServiceConfig config)
    : service_(std::make_unique<api::Service>(std::move(config))),
      server_(std::make_unique<api::Server>(*service_, 4))
{
    server_->bind("127.0.0.1", 0);
    server_->start();
}

} // namespace vwsn::bench
