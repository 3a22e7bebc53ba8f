#include <chrono>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "httplib.h"
#include "json.hpp"

#include "ilouvain/errors.hpp"
#include "ilouvain/solvers.hpp"

namespace ilouvain {

namespace {

constexpr int kAttempts = 3;
constexpr double kEnergyTolerance = 1e-6;

/// Splits "http://host:port/path" into the client base and the request path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme = endpoint.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  auto slash = endpoint.find('/', host_start);
  if (slash == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

class RemoteSolver final : public Solver {
 public:
  explicit RemoteSolver(std::string endpoint) {
    std::tie(base_, path_) = split_endpoint(endpoint);
  }

  SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                     std::uint64_t seed) override {
    const std::string body = solve_request_json(q, timeout.count(), seed).dump();

    httplib::Client cli(base_);
    // Allow the remote box the full solve budget plus transport slack.
    auto budget = std::chrono::duration_cast<std::chrono::seconds>(timeout).count() + 10;
    cli.set_connection_timeout(5, 0);
    cli.set_read_timeout(budget, 0);

    std::string last_error = "no response";
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      auto res = cli.Post(path_, body, "application/json");
      if (!res) {
        last_error = "transport failure (" + httplib::to_string(res.error()) + ")";
        continue;
      }
      if (res->status >= 500) {
        last_error = "server error " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200)
        throw ProtocolViolation("solver endpoint rejected the model with status " +
                                std::to_string(res->status));
      return parse_response(q, res->body);
    }
    throw RemoteUnavailable("giving up on " + base_ + path_ + " after " +
                            std::to_string(kAttempts) + " attempts: " + last_error);
  }

  const char* name() const override { return "remote"; }

 private:
  SolverResult parse_response(const QuboModel& q, const std::string& body) const {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const std::exception& e) {
      throw ProtocolViolation(std::string("response is not JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("bits") || !j.contains("energy") ||
        !j.contains("elapsed_ms"))
      throw ProtocolViolation("response must carry bits, energy, elapsed_ms");
    if (!j["bits"].is_string() || !j["energy"].is_number() ||
        !j["elapsed_ms"].is_number_integer())
      throw ProtocolViolation("response field has the wrong type");

    Bits bits;
    try {
      bits = bits_from_string(j["bits"].get<std::string>());
    } catch (const ParseError& e) {
      throw ProtocolViolation(e.what());
    }
    if (static_cast<int>(bits.size()) != q.num_vars())
      throw ProtocolViolation("bitstring length != num_vars");

    double reported = j["energy"].get<double>();
    double local = qubo_energy(q, bits);
    if (!(std::abs(reported - local) <= kEnergyTolerance))
      throw ProtocolViolation("reported energy " + std::to_string(reported) +
                              " disagrees with local recomputation " +
                              std::to_string(local));
    return {std::move(bits), local, j["elapsed_ms"].get<std::int64_t>()};
  }

  std::string base_;
  std::string path_;
};

}  // namespace

std::unique_ptr<Solver> make_remote_solver(std::string endpoint) {
  return std::make_unique<RemoteSolver>(std::move(endpoint));
}

}  // namespace ilouvain
