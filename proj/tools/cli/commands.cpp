#include "cli/commands.hpp"

#include <algorithm>
#include <csignal>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "flavorrec/error.hpp"
#include "flavorrec/evaluation.hpp"
#include "flavorrec/flavor.hpp"
#include "flavorrec/food_data.hpp"
#include "flavorrec/ranking.hpp"
#include "flavorrec/simulation.hpp"
#include "service/app_state.hpp"
#include "service/http_server.hpp"

namespace flavorrec::cli {

namespace {

const std::map<std::string, Method> kMethodNames = {
    {"mf", Method::matrix_factorization}, {"tfidf", Method::tfidf}, {"tfidf-flavour", Method::tfidf_flavor}};
const std::vector<std::string> kModeNames = {"tags", "blended", "appended"};

struct FoodArgs {
    std::string foods;
    std::string weights;
    std::string lexicon;
    bool allow_missing = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--foods", foods, "Food database (JSON)")->required()->check(CLI::ExistingFile);
        cmd.add_option("--weights", weights, "Flavour weight overrides (JSON)")->check(CLI::ExistingFile);
        cmd.add_option("--lexicon", lexicon, "Bitterness lexicon (CSV)")->check(CLI::ExistingFile);
        cmd.add_flag("--allow-missing-as-zero", allow_missing, "Read missing nutrient fields as 0 (item marked imputed)");
    }

    std::vector<FoodItem> load() const {
        FoodLoadOptions options;
        options.allow_missing_as_zero = allow_missing;
        if (!lexicon.empty()) options.lexicon = load_bitter_lexicon(lexicon);
        return load_food_db(foods, options);
    }

    FlavorWeights load_weights() const { return weights.empty() ? FlavorWeights{} : flavorrec::load_weights(weights); }
};

/// Raw profiles, calibrated against a survey file when one is given.
ProfileMap profiles_for(const std::vector<FoodItem>& items, const FoodArgs& food, const std::string& survey,
                        double threshold) {
    auto profiles = flavor_profiles(items, food.load_weights());
    if (!survey.empty()) {
        const auto responses = load_survey(survey, items);
        profiles = apply_calibration(profiles, calibrate(profiles, responses, threshold));
    }
    return profiles;
}

void print_calibration(std::ostream& out, const CalibrationTable& t) {
    out << std::left << std::setw(8) << "Taste" << std::setw(10) << "Error" << std::setw(12) << "Variance"
        << std::setw(10) << "Q3" << "Active\n";
    out << std::fixed << std::setprecision(3);
    for (auto f : kAllFlavors) {
        const auto& e = t[f];
        out << std::left << std::setw(8) << flavor_name(f) << std::setw(10) << e.error << std::setw(12) << e.variance
            << std::setw(10) << e.q3 << (e.active ? "yes" : "no") << '\n';
    }
    out << "# action threshold " << t.action_threshold << '\n';
    out.unsetf(std::ios::floatfield);
}

service::HttpServer* g_server = nullptr;

extern "C" void handle_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flavour-aware food recommendation toolkit", "flavorrec"};
    app.require_subcommand(1);

    // score
    auto* score = app.add_subcommand("score", "Compute flavour profiles for every dish");
    FoodArgs score_food;
    std::string score_out;
    score_food.add_to(*score);
    score->add_option("--out", score_out, "Output profile document (JSON)")->required();

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "Calibrate flavour scores against survey responses");
    FoodArgs cal_food;
    std::string cal_survey, cal_out, cal_profiles_out;
    double cal_threshold = kDefaultActionThreshold;
    cal_food.add_to(*cal);
    cal->add_option("--survey", cal_survey, "Survey responses (CSV)")->required()->check(CLI::ExistingFile);
    cal->add_option("--threshold", cal_threshold, "Action threshold on the diff variance")->capture_default_str();
    cal->add_option("--out", cal_out, "Write the calibration table (JSON)");
    cal->add_option("--profiles-out", cal_profiles_out, "Write calibrated profiles (JSON)");

    // recommend
    auto* rec = app.add_subcommand("recommend", "Top-n recommendations for one user");
    FoodArgs rec_food;
    std::string rec_ratings, rec_user, rec_method = "tfidf-flavour", rec_mode = "blended", rec_survey;
    std::size_t rec_n = 10;
    std::uint64_t rec_seed = 42;
    double rec_threshold = kDefaultActionThreshold;
    rec_food.add_to(*rec);
    rec->add_option("--ratings", rec_ratings, "Ratings (CSV)")->required()->check(CLI::ExistingFile);
    rec->add_option("--user", rec_user, "User id")->required();
    rec->add_option("--method", rec_method, "mf | tfidf | tfidf-flavour")
        ->check(CLI::IsMember({"mf", "tfidf", "tfidf-flavour"}))
        ->capture_default_str();
    rec->add_option("--mode", rec_mode, "Flavour similarity: tags | blended | appended")
        ->check(CLI::IsMember(kModeNames))
        ->capture_default_str();
    rec->add_option("--n", rec_n, "Number of dishes")->capture_default_str();
    rec->add_option("--seed", rec_seed, "MF seed")->capture_default_str();
    rec->add_option("--survey", rec_survey, "Calibrate profiles with this survey first")->check(CLI::ExistingFile);
    rec->add_option("--threshold", rec_threshold, "Calibration action threshold")->capture_default_str();

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "RMSE table for the three recommenders");
    FoodArgs ev_food;
    std::string ev_ratings, ev_mode = "blended", ev_on = "held-out", ev_json, ev_survey;
    std::vector<std::string> ev_methods;
    double ev_split = 0.8, ev_threshold = kDefaultActionThreshold;
    std::uint64_t ev_seed = 42;
    std::size_t ev_workers = 1;
    ev_food.add_to(*ev);
    ev->add_option("--ratings", ev_ratings, "Ratings (CSV)")->required()->check(CLI::ExistingFile);
    ev->add_option("--split", ev_split, "Train fraction")->capture_default_str();
    ev->add_option("--seed", ev_seed, "Split and MF seed")->capture_default_str();
    ev->add_option("--method", ev_methods, "Methods to evaluate (repeatable; default all)")
        ->check(CLI::IsMember({"mf", "tfidf", "tfidf-flavour"}));
    ev->add_option("--mode", ev_mode, "Flavour similarity: tags | blended | appended")
        ->check(CLI::IsMember(kModeNames))
        ->capture_default_str();
    ev->add_option("--on", ev_on, "Score the held-out or the train split")
        ->check(CLI::IsMember({"held-out", "train"}))
        ->capture_default_str();
    ev->add_option("--workers", ev_workers, "Threads for content predictions")->capture_default_str();
    ev->add_option("--json", ev_json, "Also write the report as JSON");
    ev->add_option("--survey", ev_survey, "Calibrate profiles with this survey first")->check(CLI::ExistingFile);
    ev->add_option("--threshold", ev_threshold, "Calibration action threshold")->capture_default_str();

    // serve
    auto* srv = app.add_subcommand("serve", "Run the HTTP service over a data directory");
    std::string srv_data, srv_host = "127.0.0.1", srv_weights, srv_mode = "blended";
    int srv_port = 8080;
    double srv_threshold = kDefaultActionThreshold;
    srv->add_option("--data", srv_data, "Data directory (foods.json, ratings.csv, ...)")->required()->check(CLI::ExistingDirectory);
    srv->add_option("--port", srv_port, "TCP port")->capture_default_str();
    srv->add_option("--host", srv_host, "Bind address")->capture_default_str();
    srv->add_option("--weights", srv_weights, "Flavour weight overrides (JSON)")->check(CLI::ExistingFile);
    srv->add_option("--threshold", srv_threshold, "Calibration action threshold")->capture_default_str();
    srv->add_option("--mode", srv_mode, "Flavour similarity: tags | blended | appended")
        ->check(CLI::IsMember(kModeNames))
        ->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate flavour-driven synthetic ratings");
    FoodArgs sim_food;
    std::string sim_out;
    SimulationConfig sim_cfg;
    sim_food.add_to(*sim);
    sim->add_option("--out", sim_out, "Output ratings (CSV)")->required();
    sim->add_option("--users", sim_cfg.users, "Number of users")->capture_default_str();
    sim->add_option("--per-user", sim_cfg.ratings_per_user, "Ratings per user")->capture_default_str();
    sim->add_option("--noise", sim_cfg.noise_sigma, "Rating noise sigma")->capture_default_str();
    sim->add_option("--seed", sim_cfg.seed, "Seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*score) {
            const auto items = score_food.load();
            const auto profiles = flavor_profiles(items, score_food.load_weights());
            save_profiles(profiles, score_out);
            out << "wrote " << profiles.size() << " profiles to " << score_out << '\n';
        } else if (*cal) {
            const auto items = cal_food.load();
            const auto profiles = flavor_profiles(items, cal_food.load_weights());
            const auto responses = load_survey(cal_survey, items);
            const auto table = calibrate(profiles, responses, cal_threshold);
            print_calibration(out, table);
            if (!cal_out.empty()) write_file(cal_out, serialize_calibration(table));
            if (!cal_profiles_out.empty()) save_profiles(apply_calibration(profiles, table), cal_profiles_out);
        } else if (*rec) {
            const auto items = rec_food.load();
            const auto ratings = load_ratings(rec_ratings, items).ratings;
            const auto profiles = profiles_for(items, rec_food, rec_survey, rec_threshold);
            const auto method = kMethodNames.at(rec_method);
            const auto vocab = build_vocabulary(items);
            const auto tag_index = build_index(items, vocab);
            const auto flavor_index = build_index(items, vocab, &profiles);
            std::optional<LatentFactors> factors;
            if (method == Method::matrix_factorization && !ratings.empty()) {
                MfConfig mf;
                mf.seed = rec_seed;
                factors = train_mf(ratings, mf).factors;
            }
            RecommendationInputs inputs{items, ratings, &tag_index, &flavor_index, parse_similarity_mode(rec_mode),
                                        factors ? &*factors : nullptr};
            std::vector<ScoredDish> ranked;
            bool fallback = false;
            try {
                ranked = recommend_top_n(rec_user, method, rec_n, inputs);
            } catch (const ColdStartError&) {
                fallback = true;
                ranked = top_rated(items, ratings, rec_n);
            }
            out << "# " << method_label(method) << " for " << rec_user
                << (fallback ? " (no history: global top-rated)" : "") << '\n';
            out << std::fixed << std::setprecision(3);
            for (std::size_t i = 0; i < ranked.size(); ++i)
                out << std::setw(3) << i + 1 << "  " << std::left << std::setw(24) << ranked[i].dish_id << std::right
                    << ranked[i].score << '\n';
        } else if (*ev) {
            const auto items = ev_food.load();
            const auto ratings = load_ratings(ev_ratings, items).ratings;
            EvaluationConfig cfg;
            cfg.train_fraction = ev_split;
            cfg.seed = ev_seed;
            cfg.mf.seed = ev_seed;
            cfg.target = ev_on == "train" ? EvaluationTarget::train : EvaluationTarget::held_out;
            cfg.flavor_mode = parse_similarity_mode(ev_mode);
            cfg.workers = ev_workers;
            if (!ev_methods.empty()) {
                cfg.methods.clear();
                for (const auto& m : ev_methods)
                    if (std::find(cfg.methods.begin(), cfg.methods.end(), kMethodNames.at(m)) == cfg.methods.end())
                        cfg.methods.push_back(kMethodNames.at(m));
            }
            const auto profiles = profiles_for(items, ev_food, ev_survey, ev_threshold);
            const auto report = evaluate_methods(items, ratings, profiles, cfg);
            out << format_report_table(report);
            if (!ev_json.empty()) write_file(ev_json, report_to_json(report));
        } else if (*srv) {
            service::ServiceConfig cfg;
            if (!srv_weights.empty()) cfg.weights = load_weights(srv_weights);
            cfg.threshold = srv_threshold;
            cfg.mode = parse_similarity_mode(srv_mode);
            service::AppState state(srv_data, cfg);
            service::HttpServer server(state);
            if (!server.bind(srv_host, srv_port)) {
                err << "error: cannot bind " << srv_host << ":" << srv_port << '\n';
                return 1;
            }
            g_server = &server;
            std::signal(SIGINT, handle_signal);
            std::signal(SIGTERM, handle_signal);
            out << "serving " << srv_data << " on http://" << srv_host << ":" << srv_port << std::endl;
            server.listen();
            g_server = nullptr;
        } else if (*sim) {
            const auto items = sim_food.load();
            const auto profiles = flavor_profiles(items, sim_food.load_weights());
            const auto ratings = simulate_flavor_users(profiles, sim_cfg);
            std::string csv(kRatingsHeader);
            csv += '\n';
            for (const auto& r : ratings) csv += format_rating_row(r) + '\n';
            write_file(sim_out, csv);
            out << "wrote " << ratings.size() << " ratings to " << sim_out << '\n';
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace flavorrec::cli
