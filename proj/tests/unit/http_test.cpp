#include <gtest/gtest.h>

#include <httplib.h>

#include <chrono>
#include <thread>

#include "service/http_server.hpp"
#include "support/service_fixture.hpp"

using namespace flavorrec::service;
using flavorrec::testing::TempDir;

namespace {

class HttpTest : public ::testing::Test {
protected:
    void SetUp() override {
        flavorrec::testing::seed_data_dir(dir.path());
        state = std::make_unique<AppState>(dir.path());
        server = std::make_unique<HttpServer>(*state);
        port = server->bind_any("127.0.0.1");
        ASSERT_GT(port, 0);
        thread = std::thread([this] { server->listen(); });
        while (!server->running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
    }
    void TearDown() override {
        server->stop();
        if (thread.joinable()) thread.join();
    }

    json get(const std::string& path, int expected = 200) {
        auto res = client->Get(path);
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expected) << path << ": " << res->body;
        return json::parse(res->body);
    }
    int post(const std::string& path, const json& body) {
        auto res = client->Post(path, body.dump(), "application/json");
        EXPECT_TRUE(res);
        return res ? res->status : -1;
    }

    TempDir dir;
    std::unique_ptr<AppState> state;
    std::unique_ptr<HttpServer> server;
    std::unique_ptr<httplib::Client> client;
    std::thread thread;
    int port = -1;
};

}  // namespace

TEST_F(HttpTest, DishRoutes) {
    EXPECT_EQ(get("/api/dishes")["total"], 25);
    EXPECT_EQ(get("/api/dishes?offset=24&limit=5")["dishes"].size(), 1u);
    EXPECT_EQ(get("/api/dishes/sambar")["id"], "sambar");
    get("/api/dishes/nothing", 404);
    get("/api/dishes?limit=abc", 400);
}

TEST_F(HttpTest, RatingRoundTrip) {
    EXPECT_EQ(post("/api/ratings", {{"user_id", "u"}, {"dish_id", "rajma"}, {"score", 5}}), 201);
    EXPECT_EQ(post("/api/ratings", {{"user_id", "u"}, {"dish_id", "naan"}, {"score", 2}}), 201);
    EXPECT_EQ(post("/api/ratings", {{"user_id", "u"}, {"dish_id", "naan"}, {"score", 7}}), 422);
    for (const auto* dish : {"sambar", "khakhra", "veg_momos", "dal_makhani"})
        EXPECT_EQ(post("/api/ratings", {{"user_id", "v"}, {"dish_id", dish}, {"score", 4}}), 201);
    auto res = client->Post("/api/ratings", "{oops", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);

    const auto recs = get("/api/users/u/recommendations?method=tfidf-flavour&n=30");
    EXPECT_EQ(recs["method"], "tfidf-flavour");
    EXPECT_EQ(recs["recommendations"].size(), 23u);
    for (const auto& d : recs["recommendations"]) {
        EXPECT_NE(d["dish_id"], "rajma");
        EXPECT_NE(d["dish_id"], "naan");
    }
    EXPECT_EQ(get("/api/users/u/recommendations?method=mf&n=2")["recommendations"].size(), 2u);
    get("/api/users/u/recommendations?method=bogus", 400);
    get("/api/users/u/recommendations?n=-1", 400);
}

TEST_F(HttpTest, SurveyCalibrateAndEvaluate) {
    EXPECT_EQ(post("/api/admin/calibrate", json::object()), 409);
    EXPECT_EQ(post("/api/survey", {{"user_id", "s"}, {"dish_id", "rajma"}, {"bitter", 1}, {"rich", 2},
                                   {"salt", 3}, {"sweet", 4}, {"umami", 5}}),
              201);
    EXPECT_EQ(post("/api/admin/calibrate", json::object()), 200);
    get("/api/evaluate", 409);
    get("/api/evaluate?split=x", 400);
}

TEST_F(HttpTest, BusyPortIsReported) {
    HttpServer second(*state);
    EXPECT_FALSE(second.bind("127.0.0.1", port));
}
