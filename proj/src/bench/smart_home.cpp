/*
 * Copyright 2026 vwsn contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vwsn/bench/smart_home.hpp"

#include "vwsn/bench/stats.hpp"
#include "vwsn/sim/signal.hpp"
#include "vwsn/sim/topology.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace vwsn::bench
{

using nlohmann::json;

namespace
{

/// Loopback UDP socket the rule VSs deliver to.
class UdpListener
{
public:
    UdpListener()
    {
        fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
        if (fd_ < 0)
            throw Error(Errc::IoFailure, "cannot open UDP socket");
        int size = 1 << 22;
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &size, sizeof size);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        socklen_t len = sizeof addr;
        if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
            ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0)
        {
            ::close(fd_);
            throw Error(Errc::IoFailure, "cannot bind UDP socket");
        }
        port_ = ntohs(addr.sin_port);
    }
    ~UdpListener() { ::close(fd_); }
    UdpListener(const UdpListener&) = delete;
    UdpListener& operator=(const UdpListener&) = delete;

    std::string endpoint() const { return "127.0.0.1:" + std::to_string(port_); }

    std::vector<std::string> drain()
    {
        std::vector<std::string> lines;
        char buf[2048];
        for (;;)
        {
            const auto n = ::recv(fd_, buf, sizeof buf, MSG_DONTWAIT);
            if (n <= 0)
                break;
            lines.emplace_back(buf, static_cast<std::size_t>(n));
        }
        return lines;
    }

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

sim::CapabilityDecl capability_of(const json& sensor, const std::string& kind)
{
    for (const auto& c : sensor.at("capabilities"))
        if (c.at("capability") == kind)
            return c.get<sim::CapabilityDecl>();
    throw Error(Errc::ScenarioFailure, "node " + sensor.at("node_id").get<std::string>() + " lacks " + kind);
}

json task(const std::string& capability, Unit unit, std::int64_t interval, const std::string& endpoint)
{
    return {{"capability", capability},
            {"sampling_interval_ms", interval},
            {"unit", to_string(unit)},
            {"endpoint", endpoint}};
}

TimeMs clock_now(ApiClient& c)
{
    return c.get("/v1/clock").at("now_ms").get<TimeMs>();
}

void advance(ApiClient& c, TimeMs dt)
{
    if (c.get("/v1/clock").at("realtime").get<bool>())
        std::this_thread::sleep_for(std::chrono::milliseconds(dt));
    else
        c.post("/v1/clock/advance", {{"dt_ms", dt}});
}

double signal_at(const sim::SignalParams& s, TimeMs t)
{
    sim::CapabilityDecl d;
    d.signal = s;
    return sim::sample_value(d, t);
}

bool satisfied(const RuleVs& r, double v)
{
    return r.comparator == Comparator::Gt ? v > r.threshold : v < r.threshold;
}

} // namespace

std::vector<double> crossing_times(const sim::SignalParams& s, double threshold, Comparator cmp, double from,
                                   double to)
{
    std::vector<double> out;
    if (s.amplitude == 0.0 || s.period_ms <= 0)
        return out;
    const double r = (threshold - s.base) / s.amplitude;
    if (!(std::abs(r) < 1.0))
        return out;
    const double period = static_cast<double>(s.period_ms);
    const double roots[] = {std::asin(r), std::numbers::pi - std::asin(r)};
    for (double theta : roots)
    {
        // satisfied side entered: value rising through a gt threshold or falling through a lt one
        const double slope = s.amplitude * std::cos(theta);
        if ((cmp == Comparator::Gt) != (slope > 0.0))
            continue;
        const double t0 = theta * period / (2.0 * std::numbers::pi);
        for (double k = std::floor((from - t0) / period); t0 + k * period <= to; k += 1.0)
        {
            const double t = t0 + k * period;
            if (t >= from)
                out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string SmartHomeReport::text() const
{
    std::ostringstream out;
    out << "smart-home variant=" << (negative ? "negative" : "positive") << " window_end_ms=" << window_end << '\n';
    for (const auto& r : rules)
    {
        out << "vs " << r.kind << ' ' << r.vs_id << " node=" << r.node_id << " rule=" << to_string(r.comparator) << ' '
            << format_number(r.threshold) << ' ' << to_string(r.unit) << " running_since_ms=" << r.running_since
            << '\n';
        for (double c : r.crossings)
            out << "crossing " << r.kind << " t_ms=" << format_number(c) << '\n';
        for (const auto& e : r.events)
            out << "event " << r.kind << " ts_ms=" << e.ts_ms << " seq=" << e.seq << " value=" << format_number(e.value)
                << '\n';
    }
    for (const auto& f : failures)
        out << "failure " << f << '\n';
    out << "result " << (passed ? "PASS" : "FAIL") << '\n';
    return out.str();
}

SmartHomeReport run_smart_home(ApiClient& c, const SmartHomeOptions& o)
{
    SmartHomeReport report;
    report.negative = o.negative;
    UdpListener udp;
    const auto endpoint = udp.endpoint();

    const auto temps = c.get("/v1/sensors?capability=temperature&available=true");
    const auto lights = c.get("/v1/sensors?capability=light&available=true");
    if (temps.empty())
        throw Error(Errc::ScenarioFailure, "no available temperature node");
    if (lights.empty())
        throw Error(Errc::ScenarioFailure, "no available light node");

    auto make_rule = [&](const std::string& kind, const std::string& app, Comparator cmp) {
        RuleVs r;
        r.kind = kind;
        r.comparator = cmp;
        const auto first = (kind == "temperature" ? temps : lights).at(0);
        const auto probe = capability_of(first, kind);
        r.unit = probe.units.front();
        const double a = std::abs(probe.signal.amplitude);
        const double offset = o.negative ? a + 1.0 : a / 2.0;
        r.threshold = cmp == Comparator::Gt ? probe.signal.base + offset : probe.signal.base - offset;
        auto t = task(kind, r.unit, o.interval_ms, endpoint);
        t["threshold"] = r.threshold;
        t["comparator"] = to_string(cmp);
        const auto created = c.post("/v1/vs", {{"app_id", app},
                                               {"query", {{"capability", kind}, {"unit", to_string(r.unit)},
                                                          {"available", true}}},
                                               {"task", t}});
        r.vs_id = created.at("vs_id");
        r.node_id = created.at("node_id");
        r.signal = capability_of(c.get("/v1/sensors/" + r.node_id), kind).signal;
        r.running_since = c.get("/v1/vs/" + r.vs_id).at("state_changed_at_ms").get<TimeMs>();
        return r;
    };
    report.rules.push_back(make_rule("temperature", "smart-home-ac", Comparator::Gt));
    report.rules.push_back(make_rule("light", "smart-home-deck-lights", Comparator::Lt));

    // every other endpoint, on a VS without a rule
    const auto aux_node = report.rules[0].node_id;
    const auto aux = c.post("/v1/vs", {{"app_id", "smart-home-monitor"},
                                      {"node_id", aux_node},
                                      {"autostart", false},
                                      {"task", task("temperature", report.rules[0].unit, o.interval_ms, endpoint)}});
    const std::string aux_id = aux.at("vs_id");
    const auto due = clock_now(c) + o.interval_ms;
    const auto sid = c.post("/v1/schedule", {{"action", "start"}, {"vs_id", aux_id}, {"due_ms", due}});
    const auto entry_path = "/v1/schedule/" + std::to_string(sid.at("schedule_id").get<std::uint64_t>());
    advance(c, o.interval_ms);
    // the start completes after the platform's start delay
    for (int i = 0; i < 600 && c.get(entry_path).at("outcome") == ""; ++i)
        advance(c, o.step_ms);
    const auto entry = c.get(entry_path);
    if (entry.at("status") != "Fired" || entry.at("outcome") != "ok")
        report.failures.push_back("scheduled start: " + entry.at("status").get<std::string>() + " " +
                                  entry.at("outcome").get<std::string>());
    if (c.get("/v1/vs/" + aux_id).at("state") != "Running")
        report.failures.push_back("auxiliary VS not running after its scheduled start");
    for (const auto& t : temps)
        if (t.at("node_id") != aux_node && t.at("platform") == "SPOTSIM" && t.at("active") < t.at("capacity"))
        {
            c.post("/v1/vs/" + aux_id + "/migrate", {{"target_node_id", t.at("node_id")}});
            break;
        }
    c.post("/v1/vs/" + aux_id + "/stop");
    const auto cancel = c.post("/v1/schedule", {{"action", "start"}, {"vs_id", aux_id}, {"due_ms", clock_now(c) + 1}});
    c.del("/v1/schedule/" + std::to_string(cancel.at("schedule_id").get<std::uint64_t>()));
    c.del("/v1/vs/" + aux_id);

    std::int64_t period = 0;
    for (const auto& r : report.rules)
        period = std::max(period, r.signal.period_ms);
    const TimeMs end = std::max(report.rules[0].running_since, report.rules[1].running_since) + period + o.interval_ms;
    std::vector<std::string> lines;
    while (clock_now(c) < end)
    {
        advance(c, std::min<TimeMs>(o.step_ms, end - clock_now(c)));
        for (auto& l : udp.drain())
            lines.push_back(std::move(l));
    }
    for (const auto& r : report.rules)
    {
        c.post("/v1/vs/" + r.vs_id + "/stop");
        c.del("/v1/vs/" + r.vs_id);
    }
    report.window_end = clock_now(c);
    for (auto& l : udp.drain())
        lines.push_back(std::move(l));
    c.get("/v1/metrics");

    for (const auto& l : lines)
    {
        const auto d = manager::Delivery::parse(l);
        if (!d.event)
            continue;
        bool known = false;
        for (auto& r : report.rules)
            if (r.vs_id == d.vs_id)
            {
                r.events.push_back(d);
                known = true;
            }
        if (!known)
            report.failures.push_back("event from unexpected vs " + d.vs_id);
    }

    const double interval = static_cast<double>(o.interval_ms);
    for (auto& r : report.rules)
    {
        std::sort(r.events.begin(), r.events.end(), [](const auto& a, const auto& b) { return a.seq < b.seq; });
        r.crossings = crossing_times(r.signal, r.threshold, r.comparator, static_cast<double>(r.running_since),
                                     static_cast<double>(report.window_end));
        if (o.negative)
        {
            if (!r.events.empty())
                report.failures.push_back(r.kind + ": " + std::to_string(r.events.size()) +
                                          " events although the threshold is out of range");
            continue;
        }
        if (r.events.empty())
        {
            report.failures.push_back(r.kind + ": no threshold event");
            continue;
        }
        if (r.signal.noise_sigma > 0.0)
            continue; // the analytic oracle only covers noiseless signals
        for (const auto& e : r.events)
        {
            const double ts = static_cast<double>(e.ts_ms);
            bool explained =
                ts <= static_cast<double>(r.running_since) + interval && satisfied(r, signal_at(r.signal, e.ts_ms));
            for (double x : r.crossings)
                explained = explained || (x <= ts && ts <= x + interval);
            if (!explained)
                report.failures.push_back(r.kind + ": event at " + std::to_string(e.ts_ms) +
                                          " ms matches no analytic crossing");
        }
        for (double x : r.crossings)
        {
            if (x < static_cast<double>(r.running_since) + interval || x + interval > static_cast<double>(end))
                continue;
            const bool seen = std::any_of(r.events.begin(), r.events.end(), [&](const manager::Delivery& e) {
                return x <= static_cast<double>(e.ts_ms) && static_cast<double>(e.ts_ms) <= x + interval;
            });
            if (!seen)
                report.failures.push_back(r.kind + ": no event within one interval of the crossing at " +
                                          format_number(x) + " ms");
        }
    }
    report.api_calls = c.calls();
    if (!c.all_ok())
        report.failures.push_back("an API call returned a non-2xx status");
    report.passed = report.failures.empty();
    return report;
}

sim::Topology smart_home_topology()
{
    auto node = [](std::string id, sim::Platform p, double lat, double lon, std::vector<sim::CapabilityDecl> caps) {
        sim::NodeConfig n;
        n.node_id = std::move(id);
        n.platform = p;
        n.location = GeoPoint(lat, lon);
        n.capabilities = std::move(caps);
        n.capacity = p == sim::Platform::Mote ? sim::kMoteCapacity : sim::kSpotDefaultCapacity;
        return n;
    };
    auto temperature = [](double base, double amp, std::uint64_t seed) {
        sim::CapabilityDecl d;
        d.capability = Capability::Temperature;
        d.units = {Unit::Celsius, Unit::Fahrenheit, Unit::Kelvin};
        d.sampling_interval_ms = {100, 60'000};
        d.signal = {base, amp, 60'000, 0.0, seed};
        return d;
    };
    sim::CapabilityDecl light;
    light.capability = Capability::Light;
    light.units = {Unit::Lux};
    light.sampling_interval_ms = {100, 60'000};
    light.signal = {400.0, 300.0, 60'000, 0.0, 7};

    sim::Topology t;
    t.iaas_id = "home";
    t.nodes.push_back(node("living-room", sim::Platform::Spot, 45.50170, -73.56730, {temperature(24.0, 4.0, 1)}));
    t.nodes.push_back(node("bedroom", sim::Platform::Spot, 45.50180, -73.56750, {temperature(22.0, 3.0, 2)}));
    t.nodes.push_back(node("deck", sim::Platform::Spot, 45.50160, -73.56710, {light}));
    auto kitchen = node("kitchen", sim::Platform::Mote, 45.50175, -73.56735, {temperature(23.0, 2.0, 3)});
    kitchen.gto_parent = "living-room";
    t.nodes.push_back(kitchen);
    return t;
}

} // namespace vwsn::bench
