#pragma once

// In-process HTTP stub speaking the solve wire protocol; used by the solver
// conformance tests. Each instance binds an ephemeral 127.0.0.1 port.

#include <functional>
#include <string>
#include <thread>
#include <utility>

#include "httplib.h"

namespace ilouvain::testing {

class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/solve", [this](const httplib::Request& req, httplib::Response& res) {
      handler_(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/solve";
  }
  int port() const { return port_; }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace ilouvain::testing
