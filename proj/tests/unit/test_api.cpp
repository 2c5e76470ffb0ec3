/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "manager_fixtures.hpp"

#include "vwsn/api/error_map.hpp"
#include "vwsn/api/server.hpp"
#include "vwsn/api/views.hpp"

#include <doctest.h>
#include <httplib.h>

#include <mutex>
#include <set>
#include <thread>

using namespace vwsn;
using namespace vwsn::api;
using namespace vwsn::testing;
using nlohmann::json;

namespace
{

ServiceConfig config_with(std::vector<sim::NodeConfig> nodes)
{
    ServiceConfig c;
    c.topology.iaas_id = "home";
    c.topology.nodes = std::move(nodes);
    return c;
}

json create_body(const std::string& app, std::optional<std::string> node = std::nullopt)
{
    json j{{"app_id", app},
           {"task",
            {{"capability", "temperature"},
             {"sampling_interval_ms", 1000},
             {"unit", "celsius"},
             {"endpoint", "sink:1"}}}};
    if (node)
        j["node_id"] = *node;
    else
        j["query"] = {{"capability", "temperature"}};
    return j;
}

/// Service plus HTTP server on an ephemeral port; records every error code seen.
struct Live
{
    explicit Live(ServiceConfig c) : service(std::move(c)), server(service)
    {
        server.bind("127.0.0.1", 0);
        server.start();
    }

    httplib::Result call(const std::string& method, const std::string& path, const json& body = nullptr)
    {
        httplib::Client cli("127.0.0.1", server.port());
        const auto text = body.is_null() ? std::string() : body.dump();
        httplib::Result r = method == "GET"      ? cli.Get(path)
                            : method == "DELETE" ? cli.Delete(path)
                                                 : cli.Post(path, text, "application/json");
        REQUIRE(r);
        if (r->status >= 400)
        {
            const auto j = json::parse(r->body);
            std::lock_guard lock(mutex);
            codes.insert(j.at("code").get<std::string>());
        }
        return r;
    }

    json get(const std::string& path)
    {
        auto r = call("GET", path);
        REQUIRE(r->status == 200);
        return json::parse(r->body);
    }

    static std::string code(const httplib::Result& r) { return json::parse(r->body).at("code").get<std::string>(); }

    Service service;
    Server server;
    std::mutex mutex;
    std::set<std::string> codes;
};

} // namespace

TEST_CASE("error map: one (status, code) pair per module error")
{
    std::set<std::string_view> codes;
    for (auto e : kAllErrc)
    {
        const auto m = map_error(e);
        CHECK(std::set{400, 404, 409, 422, 503}.contains(m.http_status));
        CHECK(codes.insert(m.code).second);
        CHECK(parse_wire_code(m.code) == e);
    }
    CHECK(codes.size() == kAllErrc.size());
    CHECK(map_error(Errc::IllegalTransition).http_status == 409);
    CHECK(map_error(Errc::InvalidParams).http_status == 422);
    CHECK(map_error(Errc::NoCandidateNode).http_status == 503);
    CHECK(map_error(Errc::UnknownVs).http_status == 404);
    CHECK(map_error(Errc::IllegalTransition).code == "ILLEGAL_TRANSITION");
}

TEST_CASE("views: create request round trip and query parameters")
{
    auto body = create_body("app", "n1");
    body["task"]["threshold"] = 30.5;
    body["task"]["comparator"] = "gt";
    body["start_at"] = 500;
    const auto r = create_request_from_json(body);
    CHECK(create_request_to_json(r) == body);

    auto q = create_body("app");
    q["query"] = {{"capability", "light"}, {"center", {{"lat", 1.0}, {"lon", 2.0}}}, {"radius_m", 10.0},
                  {"available", true}, {"min_battery", 0.5}, {"max_interval_ms", 1000}};
    CHECK(create_request_to_json(create_request_from_json(q)) == q);

    auto both = create_body("app", "n1");
    both["query"] = json::object();
    CHECK(code_of([&] { create_request_from_json(both); }) == Errc::InvalidParams);
    auto unit = create_body("app");
    unit["task"]["unit"] = "furlongs";
    CHECK(code_of([&] { create_request_from_json(unit); }) == Errc::InvalidParams);

    std::multimap<std::string, std::string> params{{"capability", "temperature"}, {"lat", "45.5"}, {"lon", "-73.6"},
                                                  {"radius_m", "100"}, {"available", "true"}};
    const auto dq = query_from_params(params);
    CHECK(dq.capability == Capability::Temperature);
    CHECK(dq.available_only);
    CHECK(*dq.radius_m == 100.0);
    CHECK(code_of([] { query_from_params({{"lat", "1"}}); }) == Errc::InvalidQuery);
    CHECK(code_of([] { query_from_params({{"radius_m", "x"}}); }) == Errc::InvalidQuery);
    CHECK(code_of([] { query_from_params({{"colour", "red"}}); }) == Errc::InvalidQuery);
    CHECK(code_of([] { query_from_params({{"lat", "91"}, {"lon", "0"}}); }) == Errc::InvalidQuery);
}

TEST_CASE("GET /v1/sensors on an empty registry")
{
    Live live(config_with({}));
    const auto j = live.get("/v1/sensors");
    CHECK(j == json::array());
    CHECK(live.call("GET", "/v1/sensors/none")->status == 404);
    CHECK(live.call("GET", "/v1/sensors?radius_m=-1")->status == 400);
}

TEST_CASE("REST lifecycle drives every endpoint")
{
    auto c = config_with({spot("a"), spot("b"), spot("l", {light_decl()})});
    c.topology.nodes[1].location = GeoPoint(45.6, -73.6);
    Live live(c);

    const auto sensors = live.get("/v1/sensors?capability=temperature&lat=45.5&lon=-73.6");
    REQUIRE(sensors.size() == 2);
    CHECK(sensors[0]["node_id"] == "a");
    CHECK(sensors[0]["available"] == true);
    CHECK(live.get("/v1/sensors/l")["capabilities"][0]["capability"] == "light");

    auto r = live.call("POST", "/v1/vs", create_body("app", "a"));
    REQUIRE(r->status == 201);
    const auto created = json::parse(r->body);
    const std::string id = created["vs_id"];
    CHECK(created["node_id"] == "a");
    CHECK(created["state"] == "Running");
    CHECK(created["global_address"] == "vs://home/" + id);

    CHECK(live.get("/v1/vs/" + id)["state"] == "Running");
    CHECK(live.get("/v1/vs").size() == 1);
    CHECK(live.get("/v1/sensors/a")["active"] == 1);

    r = live.call("POST", "/v1/vs/" + id + "/migrate", {{"target_node_id", "b"}});
    REQUIRE(r->status == 200);
    CHECK(json::parse(r->body)["node_id"] == "b");
    CHECK(live.call("POST", "/v1/vs/" + id + "/migrate", {{"target_node_id", "b"}})->status == 400);
    CHECK(live.call("POST", "/v1/vs/" + id + "/migrate", {{"target_node_id", "l"}})->status == 422);

    r = live.call("POST", "/v1/vs/" + id + "/stop");
    CHECK(r->status == 200);
    CHECK(json::parse(r->body)["state"] == "Stopped");
    r = live.call("POST", "/v1/vs/" + id + "/stop");
    CHECK(r->status == 409);
    CHECK(Live::code(r) == "ILLEGAL_TRANSITION");

    const TimeMs now = live.get("/v1/clock")["now_ms"];
    r = live.call("POST", "/v1/schedule", {{"action", "start"}, {"vs_id", id}, {"due_ms", now + 5'000}});
    REQUIRE(r->status == 201);
    const auto sid = std::to_string(json::parse(r->body)["schedule_id"].get<std::uint64_t>());
    CHECK(live.get("/v1/schedule/" + sid)["status"] == "Pending");
    r = live.call("POST", "/v1/clock/advance", {{"dt_ms", 5'000}});
    CHECK(json::parse(r->body)["now_ms"] == now + 5'000);
    CHECK(live.get("/v1/schedule/" + sid)["status"] == "Fired");
    CHECK(live.get("/v1/vs/" + id)["state"] == "Running");
    r = live.call("DELETE", "/v1/schedule/" + sid);
    CHECK(r->status == 409);
    CHECK(Live::code(r) == "ALREADY_FIRED");

    r = live.call("DELETE", "/v1/vs/" + id);
    CHECK(r->status == 409);
    live.call("POST", "/v1/vs/" + id + "/stop");
    CHECK(live.call("DELETE", "/v1/vs/" + id)->status == 204);
    r = live.call("DELETE", "/v1/vs/" + id);
    CHECK(r->status == 404);
    CHECK(Live::code(r) == "UNKNOWN_VS");
    CHECK(live.get("/v1/vs/" + id)["state"] == "Deleted");

    const auto later = live.get("/v1/clock")["now_ms"].get<TimeMs>() + 1'000;
    auto deferred = create_body("late");
    r = live.call("POST", "/v1/schedule", {{"action", "create"}, {"request", deferred}, {"due_ms", later}});
    REQUIRE(r->status == 201);
    const auto create_sid = std::to_string(json::parse(r->body)["schedule_id"].get<std::uint64_t>());
    r = live.call("POST", "/v1/schedule", {{"action", "stop"}, {"vs_id", id}, {"due_ms", later}});
    const auto cancel_sid = std::to_string(json::parse(r->body)["schedule_id"].get<std::uint64_t>());
    CHECK(live.call("DELETE", "/v1/schedule/" + cancel_sid)->status == 204);
    CHECK(live.call("DELETE", "/v1/schedule/" + cancel_sid)->status == 404);
    live.call("POST", "/v1/clock/advance", {{"dt_ms", 1'000}});
    const auto fired = live.get("/v1/schedule/" + create_sid);
    CHECK(fired["status"] == "Fired");
    CHECK(fired["outcome"].get<std::string>().rfind("ok ", 0) == 0);

    const auto m = live.get("/v1/metrics");
    CHECK(m["counters"]["creates"] == 2);
    CHECK(m["counters"]["migrations"] == 1);
    CHECK(m["counters"]["deletes"] == 1);
    CHECK(m["vscd"].size() == 2);
    CHECK(m["vsst"].size() == 3);

    for (const auto& code : live.codes)
        CHECK(parse_wire_code(code).has_value());
}

TEST_CASE("REST error responses")
{
    Live live(config_with({spot("a")}));
    auto bad = create_body("app");
    bad["task"]["sampling_interval_ms"] = 0;
    CHECK(live.call("POST", "/v1/vs", bad)->status == 422);
    bad = create_body("app", "a");
    bad["task"]["sampling_interval_ms"] = 10;
    auto r = live.call("POST", "/v1/vs", bad);
    CHECK(r->status == 422);
    CHECK(Live::code(r) == "INTERVAL_OUT_OF_RANGE");
    auto light = create_body("app");
    light["query"] = {{"capability", "light"}};
    light["task"]["capability"] = "light";
    light["task"]["unit"] = "lux";
    r = live.call("POST", "/v1/vs", light);
    CHECK(r->status == 503);
    CHECK(Live::code(r) == "NO_CANDIDATE_NODE");
    CHECK(live.call("POST", "/v1/vs", create_body("app", "zz"))->status == 404);

    httplib::Client cli("127.0.0.1", live.server.port());
    r = cli.Post("/v1/vs", "{not json", "application/json");
    CHECK(r->status == 400);
    CHECK(Live::code(r) == "INVALID_ARGUMENT");
    CHECK(live.call("GET", "/v1/vs/not-a-uuid")->status == 404);
    CHECK(live.call("GET", "/v1/vs/00000000-0000-4000-8000-000000000000")->status == 404);
    CHECK(live.call("POST", "/v1/schedule", {{"action", "start"}, {"vs_id", "x"}, {"due_ms", 0}})->status == 404);
    CHECK(live.call("POST", "/v1/schedule", {{"action", "reboot"}, {"due_ms", 0}})->status == 422);
    live.call("POST", "/v1/clock/advance", {{"dt_ms", 10}});
    r = live.call("POST", "/v1/schedule", {{"action", "create"}, {"request", create_body("a")}, {"due_ms", 0}});
    CHECK(Live::code(r) == "PAST_DUE");
    CHECK(live.call("GET", "/v1/schedule/77")->status == 404);
    CHECK(live.call("POST", "/v1/clock/advance", {{"dt_ms", 0}})->status == 422);

    for (int i = 0; i < 4; ++i)
        CHECK(live.call("POST", "/v1/vs", create_body("app" + std::to_string(i), "a"))->status == 201);
    r = live.call("POST", "/v1/vs", create_body("app", "a"));
    CHECK(r->status == 503);
    CHECK(Live::code(r) == "NODE_CAPACITY");

    for (const auto& code : live.codes)
        CHECK(parse_wire_code(code).has_value());
}

TEST_CASE("parallel creates never oversubscribe slots")
{
    std::set<std::string> codes;
    for (int rep = 0; rep < 100; ++rep)
    {
        auto c = config_with({spot("a"), spot("b")});
        c.sim.seed = static_cast<std::uint64_t>(rep + 1);
        Live live(c);
        std::vector<std::thread> threads;
        std::mutex m;
        std::vector<std::pair<std::string, std::uint32_t>> slots;
        int ok = 0;
        int rejected = 0;
        std::vector<std::string> transport_errors;
        for (int i = 0; i < 32; ++i)
            threads.emplace_back([&, i] {
                httplib::Client cli("127.0.0.1", live.server.port());
                auto r = cli.Post("/v1/vs", create_body("app" + std::to_string(i)).dump(), "application/json");
                std::lock_guard lock(m);
                if (!r)
                {
                    transport_errors.push_back(httplib::to_string(r.error()));
                    return;
                }
                const auto j = json::parse(r->body);
                if (r->status == 201)
                {
                    ++ok;
                    slots.emplace_back(j["node_id"], j["slot"]);
                }
                else if (r->status == 503)
                {
                    ++rejected;
                    codes.insert(j["code"].get<std::string>());
                }
            });
        for (auto& t : threads)
            t.join();
        INFO(transport_errors.size(), " ", transport_errors.empty() ? "" : transport_errors.front());
        REQUIRE(transport_errors.empty());
        REQUIRE(ok == 8);
        REQUIRE(rejected == 24);
        std::set<std::pair<std::string, std::uint32_t>> unique(slots.begin(), slots.end());
        REQUIRE(unique.size() == 8);
    }
    for (const auto& code : codes)
        CHECK((code == "NO_CANDIDATE_NODE" || code == "NODE_CAPACITY"));
}

TEST_CASE("realtime mode paces the clock with wall time")
{
    auto c = config_with({spot("a")});
    c.realtime = true;
    c.sim.spot.build_ms = 40;
    c.sim.spot.start_sync_ms = 20;
    Live live(c);
    auto r = live.call("POST", "/v1/vs", create_body("app", "a"));
    REQUIRE(r->status == 201);
    CHECK(live.get("/v1/clock")["now_ms"].get<TimeMs>() >= 60);
    CHECK(live.call("POST", "/v1/clock/advance", {{"dt_ms", 10}})->status == 400);
}

TEST_CASE("scenario documents")
{
    ServiceConfig c;
    apply_scenario(json::parse(R"({"seed": 9, "spot": {"build_ms": 10973, "per_kb_ms": 1000, "sync_ms": 3000,
        "start_sync_ms": 4200}, "base_station": {"setup_ms": 9309, "mode": "per_request"},
        "energy": {"sample_uj": 1}, "registry": {"grace_ms": 10}, "cache_capacity": 4})"),
                   c);
    CHECK(c.sim.seed == 9);
    CHECK(c.sim.spot.deploy_ms(100) == 14'973);
    CHECK(c.base_station.mode == manager::SessionMode::PerRequest);
    CHECK(c.base_station.setup_ms == 9'309);
    CHECK(c.sim.energy.sample_uj == 1);
    CHECK(c.registry_grace_ms == 10);
    CHECK(c.provider.cache_capacity == 4);
    CHECK(code_of([&] { apply_scenario(json::parse(R"({"sed": 1})"), c); }) == Errc::InvalidConfig);
    CHECK(code_of([&] { apply_scenario(json::parse(R"({"base_station": {"mode": "x"}})"), c); }) ==
          Errc::InvalidConfig);
    CHECK(code_of([&] { apply_scenario(json::parse(R"({"spot": {"build_ms": -1}})"), c); }) ==
          Errc::InvalidConfig);
    CHECK(code_of([&] { load_scenario("/nonexistent/x.json", c); }) == Errc::IoFailure);
}

TEST_CASE("registry snapshot is restored at startup")
{
    const auto path = std::filesystem::temp_directory_path() / "vwsn-api-snapshot.json";
    std::filesystem::remove(path);
    auto c = config_with({spot("a"), spot("b")});
    c.snapshot = path;
    {
        Service s(c);
        s.save_snapshot(path);
    }
    Service restored(c);
    CHECK(restored.sensors({}).size() == 2);
    CHECK(restored.sensor("a").live_known);
    auto bigger = c;
    bigger.topology.nodes.push_back(spot("c"));
    CHECK(code_of([&] { Service s(bigger); }) == Errc::InvalidConfig);
    std::filesystem::remove(path);
}
