#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli/commands.hpp"
#include "flavorrec/flavor.hpp"
#include "flavorrec/food_data.hpp"
#include "support/test_support.hpp"

using flavorrec::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = flavorrec::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (flavorrec::testing::data_dir() / name).string(); }

}  // namespace

TEST(Cli, ScoreWritesEveryProfile) {
    TempDir dir;
    const auto out = (dir / "profiles.json").string();
    const auto r = run({"score", "--foods", data("sample_foods.json"), "--lexicon", data("bitter_lexicon.csv"),
                        "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto profiles = flavorrec::load_profiles(out);
    EXPECT_EQ(profiles.size(), 25u);
    EXPECT_EQ(profiles, flavorrec::flavor_profiles(flavorrec::testing::load_sample_foods()));
}

TEST(Cli, ScoreFailsOnDegenerateDish) {
    TempDir dir;
    flavorrec::write_file(dir / "foods.json", R"({"dishes": [{"id": "water", "name": "Water", "tags": ["drink"],
      "nutrition": {"carbohydrate_g": 0, "sugar_g": 0, "fibre_g": 0, "protein_g": 0, "fat_g": 0,
                    "saturated_fat_g": 0, "cholesterol_mg": 0, "sodium_g": 0, "iron_g": 0, "calcium_g": 0}}]})");
    const auto r = run({"score", "--foods", (dir / "foods.json").string(), "--out", (dir / "p.json").string()});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("water"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "p.json"));
}

TEST(Cli, WeightOverridesReachTheFormulas) {
    TempDir dir;
    flavorrec::write_file(dir / "w.json", R"({"salt_constant": )" + std::to_string(2 * 100 / 38.758) + "}");
    const auto base = (dir / "base.json").string(), doubled = (dir / "doubled.json").string();
    ASSERT_EQ(run({"score", "--foods", data("sample_foods.json"), "--out", base}).code, 0);
    ASSERT_EQ(run({"score", "--foods", data("sample_foods.json"), "--weights", (dir / "w.json").string(), "--out",
                   doubled})
                  .code,
              0);
    const auto a = flavorrec::load_profiles(base), b = flavorrec::load_profiles(doubled);
    for (const auto& [id, p] : a) {
        const double salt = p[flavorrec::Flavor::salt];
        if (salt < 5) EXPECT_NEAR(b.at(id)[flavorrec::Flavor::salt], 2 * salt, 1e-5) << id;
        EXPECT_EQ(b.at(id)[flavorrec::Flavor::umami], p[flavorrec::Flavor::umami]);
    }
}

TEST(Cli, CalibratePrintsTable) {
    TempDir dir;
    const auto r = run({"calibrate", "--foods", data("sample_foods.json"), "--lexicon", data("bitter_lexicon.csv"),
                        "--survey", data("sample_survey.csv"), "--out", (dir / "cal.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* taste : {"bitter", "rich", "salt", "sweet", "umami"}) EXPECT_NE(r.out.find(taste), std::string::npos);
    EXPECT_NO_THROW(flavorrec::parse_calibration(flavorrec::read_file(dir / "cal.json")));
}

TEST(Cli, RecommendForSampleUser) {
    const auto r = run({"recommend", "--foods", data("sample_foods.json"), "--ratings", data("sample_ratings.csv"),
                        "--user", "u001", "--n", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("  1  "), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("  3  "), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find("  4  "), std::string::npos) << r.out;
}

TEST(Cli, EvaluateIsDeterministic) {
    const std::vector<std::string> args = {"evaluate", "--foods", data("sample_foods.json"), "--lexicon",
                                           data("bitter_lexicon.csv"), "--ratings", data("synthetic_ratings.csv"),
                                           "--seed", "42"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    for (const char* label : {"Matrix Factorisation", "TF-IDF", "TF-IDF with flavour"})
        EXPECT_NE(a.out.find(label), std::string::npos);
}

TEST(Cli, EvaluateSingleMethodGivesOneRow) {
    TempDir dir;
    const auto r = run({"evaluate", "--foods", data("sample_foods.json"), "--ratings", data("synthetic_ratings.csv"),
                        "--method", "tfidf", "--workers", "2", "--json", (dir / "r.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("Matrix"), std::string::npos);
    EXPECT_EQ(r.out.find("flavour"), std::string::npos);
    const auto doc = nlohmann::json::parse(flavorrec::read_file(dir / "r.json"));
    EXPECT_EQ(doc["results"].size(), 1u);
}

TEST(Cli, UnknownMethodIsRejected) {
    const auto r = run({"evaluate", "--foods", data("sample_foods.json"), "--ratings", data("synthetic_ratings.csv"),
                        "--method", "svd"});
    EXPECT_NE(r.code, 0);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SimulateWritesRatings) {
    TempDir dir;
    const auto out = (dir / "sim.csv").string();
    const auto r = run({"simulate", "--foods", data("sample_foods.json"), "--lexicon", data("bitter_lexicon.csv"),
                        "--out", out, "--users", "4", "--per-user", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(flavorrec::load_ratings(out).ratings.size(), 20u);
}

TEST(Cli, MissingSubcommandOrFile) {
    EXPECT_NE(run({}).code, 0);
    EXPECT_NE(run({"score", "--foods", "/no/such/file.json", "--out", "x"}).code, 0);
}
