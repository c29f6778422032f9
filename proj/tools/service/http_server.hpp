#pragma once

#include <memory>
#include <string>

#include "service/app_state.hpp"

namespace httplib {
class Server;
}

namespace flavorrec::service {

/// cpp-httplib routes over an AppState.
class HttpServer {
public:
    explicit HttpServer(AppState& state);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Returns false when the address is unavailable (e.g. port busy).
    bool bind(const std::string& host, int port);
    /// Binds an ephemeral port and returns it, or -1.
    int bind_any(const std::string& host);
    /// Blocks until stop().
    bool listen();
    void stop();
    bool running() const;

private:
    AppState& state_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace flavorrec::service
