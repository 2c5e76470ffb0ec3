/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/api/server.hpp"

#include "vwsn/api/error_map.hpp"
#include "vwsn/api/views.hpp"

#include <httplib.h>

#include <charconv>

namespace vwsn::api
{

using nlohmann::json;

namespace
{

void reply(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

/// Runs a handler and turns module errors into their mapped responses.
template <typename F>
httplib::Server::Handler guarded(F f)
{
    return [f](const httplib::Request& req, httplib::Response& res) {
        try
        {
            f(req, res);
        }
        catch (const Error& e)
        {
            reply(res, map_error(e.code()).http_status, error_body(e));
        }
        catch (const std::exception& e)
        {
            reply(res, 500, {{"status", 500}, {"code", "INTERNAL"}, {"message", e.what()}});
        }
    };
}

std::uint64_t schedule_id(const std::string& text)
{
    std::uint64_t id = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(Errc::UnknownId, "unknown schedule entry " + text);
    return id;
}

} // namespace

struct Server::Impl
{
    httplib::Server http;
};

Server::Server(Service& service, std::size_t threads) : impl_(std::make_unique<Impl>())
{
    auto& http = impl_->http;
    auto* svc = &service;
    http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

    http.Get("/v1/sensors", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                 std::multimap<std::string, std::string> params(req.params.begin(), req.params.end());
                 json out = json::array();
                 for (const auto& d : svc->sensors(query_from_params(params)))
                     out.push_back(sensor_view(d));
                 reply(res, 200, out);
             }));
    http.Get(R"(/v1/sensors/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                 reply(res, 200, sensor_view(svc->sensor(req.matches[1])));
             }));

    http.Post("/v1/vs", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const auto r = svc->create(create_request_from_json(parse_body(req.body)));
                  reply(res, 201,
                        {{"vs_id", r.global.uuid_text()},
                         {"global_address", r.global.to_string()},
                         {"node_id", r.local->node_id},
                         {"slot", r.local->slot},
                         {"state", to_string(r.state)}});
              }));
    http.Get("/v1/vs", guarded([svc](const httplib::Request&, httplib::Response& res) {
                 json out = json::array();
                 for (const auto& r : svc->list_vs())
                     out.push_back(vs_view(r));
                 reply(res, 200, out);
             }));
    http.Get(R"(/v1/vs/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                 reply(res, 200, vs_view(svc->vs(req.matches[1])));
             }));
    http.Post(R"(/v1/vs/([^/]+)/start)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const std::string id = req.matches[1];
                  reply(res, 200, {{"vs_id", id}, {"state", to_string(svc->start(id))}});
              }));
    http.Post(R"(/v1/vs/([^/]+)/stop)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const std::string id = req.matches[1];
                  reply(res, 200, {{"vs_id", id}, {"state", to_string(svc->stop(id))}});
              }));
    http.Post(R"(/v1/vs/([^/]+)/migrate)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req.body);
                  if (!body.contains("target_node_id") || !body.at("target_node_id").is_string())
                      throw Error(Errc::InvalidParams, "target_node_id is required");
                  reply(res, 200, vs_view(svc->migrate(req.matches[1], body.at("target_node_id").get<std::string>())));
              }));
    http.Delete(R"(/v1/vs/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                    svc->remove(req.matches[1]);
                    res.status = 204;
                }));

    http.Post("/v1/schedule", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req.body);
                  provisioning::ScheduleEntry entry;
                  const auto action = body.contains("action") && body.at("action").is_string()
                                          ? provisioning::parse_schedule_action(body.at("action").get<std::string>())
                                          : std::nullopt;
                  if (!action)
                      throw Error(Errc::InvalidParams, "action must be one of create, start, stop, delete, disseminate");
                  entry.action = *action;
                  if (!body.contains("due_ms") || !body.at("due_ms").is_number_integer())
                      throw Error(Errc::InvalidParams, "due_ms is required");
                  entry.due_ms = body.at("due_ms").get<TimeMs>();
                  std::optional<std::string> vs_id;
                  if (body.contains("vs_id"))
                  {
                      if (!body.at("vs_id").is_string())
                          throw Error(Errc::InvalidParams, "vs_id must be a string");
                      vs_id = body.at("vs_id").get<std::string>();
                  }
                  if (body.contains("request"))
                      entry.request = create_request_from_json(body.at("request"));
                  reply(res, 201, {{"schedule_id", svc->schedule(std::move(entry), vs_id)}});
              }));
    http.Get(R"(/v1/schedule/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                 reply(res, 200, schedule_view(svc->schedule_entry(schedule_id(req.matches[1]))));
             }));
    http.Delete(R"(/v1/schedule/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                    svc->cancel_schedule(schedule_id(req.matches[1]));
                    res.status = 204;
                }));

    http.Get("/v1/metrics", guarded([svc](const httplib::Request&, httplib::Response& res) {
                 reply(res, 200, metrics_view(svc->metrics()));
             }));

    http.Get("/v1/clock", guarded([svc](const httplib::Request&, httplib::Response& res) {
                 reply(res, 200, {{"now_ms", svc->now()}, {"realtime", svc->config().realtime}});
             }));
    http.Post("/v1/clock/advance", guarded([svc](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req.body);
                  if (!body.contains("dt_ms") || !body.at("dt_ms").is_number_integer())
                      throw Error(Errc::InvalidParams, "dt_ms is required");
                  const auto dt = body.at("dt_ms").get<TimeMs>();
                  if (dt <= 0)
                      throw Error(Errc::InvalidParams, "dt_ms must be > 0");
                  reply(res, 200, {{"now_ms", svc->advance(dt)}});
              }));

    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty())
            reply(res, res.status, {{"status", res.status}, {"code", "NOT_FOUND"}, {"message", "no such route"}});
    });
}

Server::~Server()
{
    stop();
}

int Server::bind(const std::string& host, int port)
{
    if (port == 0)
        port_ = impl_->http.bind_to_any_port(host);
    else
        port_ = impl_->http.bind_to_port(host, port) ? port : -1;
    if (port_ <= 0)
        throw Error(Errc::IoFailure, "cannot listen on " + host + ":" + std::to_string(port));
    return port_;
}

void Server::start()
{
    thread_ = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
}

void Server::run()
{
    impl_->http.listen_after_bind();
}

void Server::stop()
{
    impl_->http.stop();
    if (thread_.joinable())
        thread_.join();
}

} // namespace vwsn::api
