#include "service/http_server.hpp"

#include <charconv>
#include <optional>

#include <httplib.h>

#include "flavorrec/error.hpp"

namespace flavorrec::service {

namespace {

void reply(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
}

template <typename T>
std::optional<T> query_number(const httplib::Request& req, const char* key, bool& bad) {
    if (!req.has_param(key)) return std::nullopt;
    const auto s = req.get_param_value(key);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        bad = true;
        return std::nullopt;
    }
    return value;
}

Response bad_query(const char* what) { return {400, json{{"error", std::string("invalid query parameter '") + what + "'"}}}; }

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
        return json::parse(req.body);
    } catch (const json::parse_error&) {
        reply(res, {400, json{{"error", "request body is not valid JSON"}}});
        return std::nullopt;
    }
}

}  // namespace

HttpServer::HttpServer(AppState& state) : state_(state), server_(std::make_unique<httplib::Server>()) {
    auto& s = *server_;
    // No SO_REUSEPORT: a second server on a busy port must fail to bind.
    s.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });

    s.Get("/api/dishes", [this](const httplib::Request& req, httplib::Response& res) {
        bool bad = false;
        const auto offset = query_number<std::size_t>(req, "offset", bad);
        if (bad) return reply(res, bad_query("offset"));
        const auto limit = query_number<std::size_t>(req, "limit", bad);
        if (bad) return reply(res, bad_query("limit"));
        reply(res, state_.list_dishes(offset.value_or(0), std::min<std::size_t>(limit.value_or(50), 500)));
    });

    s.Get(R"(/api/dishes/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, state_.get_dish(req.matches[1]));
    });

    s.Post("/api/ratings", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) reply(res, state_.post_rating(*body));
    });

    s.Get(R"(/api/users/([^/]+)/recommendations)", [this](const httplib::Request& req, httplib::Response& res) {
        bool bad = false;
        const auto n = query_number<std::size_t>(req, "n", bad);
        if (bad) return reply(res, bad_query("n"));
        std::optional<std::string> method;
        if (req.has_param("method")) method = req.get_param_value("method");
        reply(res, state_.get_recommendations(req.matches[1], method, n));
    });

    s.Post("/api/survey", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) reply(res, state_.post_survey(*body));
    });

    s.Post("/api/admin/calibrate", [this](const httplib::Request&, httplib::Response& res) {
        reply(res, state_.calibrate());
    });

    s.Get("/api/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
        bool bad = false;
        const auto split = query_number<double>(req, "split", bad);
        if (bad) return reply(res, bad_query("split"));
        const auto seed = query_number<std::uint64_t>(req, "seed", bad);
        if (bad) return reply(res, bad_query("seed"));
        reply(res, state_.evaluate(split, seed));
    });

    s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        int status = 500;
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const flavorrec::NotFound& e) {
            status = 404;
            message = e.what();
        } catch (const flavorrec::InvalidArgument& e) {
            status = 422;
            message = e.what();
        } catch (const std::exception& e) {
            message = e.what();
        }
        reply(res, {status, json{{"error", message}}});
    });
}

HttpServer::~HttpServer() = default;

bool HttpServer::bind(const std::string& host, int port) { return server_->bind_to_port(host, port); }

int HttpServer::bind_any(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

bool HttpServer::running() const { return server_->is_running(); }

}  // namespace flavorrec::service
