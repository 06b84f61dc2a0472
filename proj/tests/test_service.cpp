#include "catch_amalgamated.hpp"

#include "fixtures.hpp"
#include "tfdelphi/service.hpp"

#include <thread>

#include <unistd.h>

using namespace tfdelphi;
using nlohmann::json;

namespace {

class Harness {
public:
    explicit Harness(ServiceConfig config = {}) : store(std::move(config))
    {
        mount_api(server, store);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~Harness()
    {
        server.stop();
        thread.join();
    }

    httplib::Client client() const
    {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(30, 0);
        return c;
    }

    std::string new_session()
    {
        auto c = client();
        const auto res = c.Post("/api/sessions");
        REQUIRE(res);
        REQUIRE(res->status == 201);
        return json::parse(res->body)["session_id"];
    }

    httplib::Result upload(const std::string& sid, int round, const RoundSheets& s, const std::string& query = "")
    {
        httplib::MultipartFormDataItems items = {{"responses", s.responses, "responses.csv", "text/csv"}};
        if (s.dimensions) {
            items.push_back({"dimensions", *s.dimensions, "dimensions.csv", "text/csv"});
        }
        if (s.descriptions) {
            items.push_back({"descriptions", *s.descriptions, "descriptions.csv", "text/csv"});
        }
        auto c = client();
        return c.Post("/api/sessions/" + sid + "/rounds/" + std::to_string(round) + query, items);
    }

    httplib::Result get(const std::string& path)
    {
        auto c = client();
        return c.Get(path);
    }

    SessionStore store;
    httplib::Server server;
    int port = 0;
    std::thread thread;
};

std::string session_body(Harness& h, const std::string& sid, int round)
{
    return h.store.find(sid)->round(round)->body;
}

} // namespace

TEST_CASE("sessions")
{
    Harness h;
    const auto a = h.new_session();
    const auto b = h.new_session();
    CHECK(a != b);
    CHECK(a.size() == 32);
    const auto res = h.get("/api/sessions/" + a + "/rounds/1/results");
    REQUIRE(res);
    CHECK(res->status == 404);
    CHECK(h.get("/api/sessions/nope/rounds/1/results")->status == 404);
}

TEST_CASE("uploading rounds")
{
    Harness h;
    const auto sid = h.new_session();

    const auto res = h.upload(sid, 1, fixtures::sample_sheets(1));
    REQUIRE(res);
    REQUIRE(res->status == 201);
    const auto body = json::parse(res->body);
    CHECK(body["schema"] == "delphi-report/1");
    CHECK(std::abs(body["items"][26]["ci"].get<double>() - 0.493) < 1e-3);

    SECTION("same round twice")
    {
        CHECK(h.upload(sid, 1, fixtures::sample_sheets(1))->status == 409);
    }

    SECTION("unknown session")
    {
        CHECK(h.upload("0123", 1, fixtures::sample_sheets(1))->status == 404);
    }

    SECTION("malformed responses list every defect")
    {
        RoundSheets bad;
        bad.responses = "J1,7,9,1,1,1,1\nJ1,7,1,1,1,1,2\n";
        const auto r = h.upload(sid, 3, bad);
        REQUIRE(r->status == 422);
        const auto j = json::parse(r->body);
        CHECK(j["diagnostics"].size() == 3);
        CHECK(j["diagnostics"][0]["sheet"] == "responses");
        // A rejected upload does not occupy the round number.
        CHECK(h.get("/api/sessions/" + sid + "/rounds/3/results")->status == 404);
    }

    SECTION("missing responses part")
    {
        auto c = h.client();
        httplib::MultipartFormDataItems items = {{"descriptions", "1,a\n", "d.csv", "text/csv"}};
        CHECK(c.Post("/api/sessions/" + sid + "/rounds/4", items)->status == 422);
    }

    SECTION("epsilon query")
    {
        const auto r = h.upload(sid, 5, fixtures::sample_sheets(1), "?epsilon=0.2");
        REQUIRE(r->status == 201);
        CHECK(json::parse(r->body)["epsilon"] == 0.2);
        CHECK(h.upload(sid, 6, fixtures::sample_sheets(1), "?epsilon=abc")->status == 422);
    }
}

TEST_CASE("results view over HTTP")
{
    Harness h;
    const auto sid = h.new_session();
    REQUIRE(h.upload(sid, 1, fixtures::sample_sheets(1))->status == 201);
    REQUIRE(h.upload(sid, 2, fixtures::sample_sheets(2))->status == 201);
    const std::string base = "/api/sessions/" + sid + "/rounds/";

    const auto plain = h.get(base + "1/results");
    REQUIRE(plain->status == 200);
    const auto v = json::parse(plain->body);
    CHECK(v["rows"].size() == 45);
    CHECK(v["hidden_count"] == 0);

    CHECK(json::parse(h.get(base + "1/results?trim=s5")->body)["hidden_count"] == 10);

    const auto s = json::parse(h.get(base + "2/results?q=satisfied")->body);
    for (const auto& row : s["rows"]) {
        CHECK(row["description"].get<std::string>().find("satisfied") != std::string::npos);
    }
    CHECK(s["visible_count"].get<int>() > 0);

    CHECK(h.get(base + "1/results?filter=colour")->status == 400);
    CHECK(h.get(base + "1/results?sort=height:asc")->status == 400);
    CHECK(h.get(base + "9/results")->status == 404);

    SECTION("reads are idempotent and epsilon never sticks")
    {
        const auto stored = session_body(h, sid, 1);
        const auto first = h.get(base + "1/results?epsilon=0.9&sort=ci:desc")->body;
        const auto second = h.get(base + "1/results?epsilon=0.9&sort=ci:desc")->body;
        CHECK(first == second);
        CHECK(session_body(h, sid, 1) == stored);
        CHECK(h.get(base + "1/results")->body == plain->body);
    }
}

TEST_CASE("comparison over HTTP")
{
    Harness h;
    const auto sid = h.new_session();
    REQUIRE(h.upload(sid, 1, fixtures::sample_sheets(1))->status == 201);
    REQUIRE(h.upload(sid, 2, fixtures::sample_sheets(2))->status == 201);
    const std::string base = "/api/sessions/" + sid + "/compare";

    const auto res = h.get(base + "?a=1&b=2");
    REQUIRE(res->status == 200);
    const auto c = json::parse(res->body);
    const auto& i27 = c["items"][26];
    CHECK(i27["cs_flipped"] == true);
    CHECK(i27["rs_flipped"] == true);
    CHECK(c["still_failing"].empty());

    const auto same = json::parse(h.get(base + "?a=1&b=1")->body);
    for (const auto& d : same["items"]) {
        CHECK(d["ci_delta"] == 0.0);
        CHECK(d["score_delta"] == 0.0);
    }

    CHECK(h.get(base + "?a=1&b=3")->status == 404);
    CHECK(h.get(base + "?a=1")->status == 400);
    CHECK(h.get(base + "?a=x&b=2")->status == 400);
}

TEST_CASE("snapshots survive a restart")
{
    const auto dir = std::filesystem::temp_directory_path() / ("tfdelphi-snap-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    ServiceConfig config;
    config.snapshot_dir = dir;
    std::string sid;
    std::string body;
    {
        SessionStore store(config);
        sid = store.create();
        const auto stored = store.add_round(*store.find(sid), 1, fixtures::sample_sheets(1), 0.75);
        body = stored->body;
    }
    SessionStore reloaded(config);
    CHECK(reloaded.load_snapshots() == 1);
    const auto session = reloaded.find(sid);
    REQUIRE(session);
    REQUIRE(session->round(1));
    CHECK(session->round(1)->body == body);
    std::filesystem::remove_all(dir);
}

TEST_CASE("idle sessions expire")
{
    ServiceConfig config;
    config.ttl = std::chrono::seconds(1);
    SessionStore store(config);
    const auto sid = store.create();
    CHECK(store.find(sid));
    std::this_thread::sleep_for(std::chrono::milliseconds(1100));
    CHECK_FALSE(store.find(sid));
}

TEST_CASE("concurrent uploads to one session serialize")
{
    SessionStore store;
    const auto sid = store.create();
    const auto session = store.find(sid);
    const auto sheets = fixtures::sample_sheets(2);
    std::atomic<int> created{0};
    std::atomic<int> conflicts{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&] {
            try {
                store.add_round(*session, 2, sheets, 0.75);
                ++created;
            } catch (const RoundExists&) {
                ++conflicts;
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    CHECK(created == 1);
    CHECK(conflicts == 7);
}
