#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "ilouvain/qubo.hpp"

namespace ilouvain {

struct SolverResult {
  Bits bits;
  double energy = 0.0;  // always recomputed locally, even for remote targets
  std::int64_t elapsed_ms = 0;
};

inline constexpr int kExhaustiveMaxVars = 24;

/// Models with at most this many variables are routed to the exact solver
/// when the configured target is a local heuristic.
inline constexpr int kExactCutover = 16;

class Solver {
 public:
  virtual ~Solver() = default;
  /// Minimizes q. Throws SizeExceeded when q.num_vars() > capacity().
  virtual SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                             std::uint64_t seed) = 0;
  virtual int capacity() const { return kNoCapacity; }
  virtual const char* name() const = 0;
};

struct SaParams {
  int sweeps_per_var = 100;        // sweep budget; one sweep = num_vars flip proposals
  double final_temp_ratio = 1e-3;  // geometric schedule from max |coefficient|
};

/// Exact minimizer over all 2^L bitstrings, L <= kExhaustiveMaxVars.
/// Ties broken toward the lexicographically smallest bitstring.
std::unique_ptr<Solver> make_exhaustive_solver();
std::unique_ptr<Solver> make_sa_solver(SaParams params = {});
/// Steepest-descent single flips from all-zero until no flip improves.
std::unique_ptr<Solver> make_greedy_solver();
/// POSTs the wire payload to `endpoint` (e.g. http://127.0.0.1:8080/solve).
/// Transport failures and 5xx retry up to 3 attempts, then RemoteUnavailable.
/// 4xx responses, malformed bodies, and reported energies disagreeing with
/// the local recomputation by more than 1e-6 throw ProtocolViolation.
std::unique_ptr<Solver> make_remote_solver(std::string endpoint);

enum class SolverTarget { Exhaustive, Sa, Greedy, Remote };

const char* to_string(SolverTarget t);
SolverTarget solver_target_from_string(const std::string& s);  // throws invalid_argument

struct SolverConfig {
  SolverTarget target = SolverTarget::Sa;
  std::string endpoint;  // remote only
  SaParams sa;
};

/// Routes models to the configured target, with one exception: sa and greedy
/// hand models of at most kExactCutover variables to the exact solver.
class SolverDispatch {
 public:
  explicit SolverDispatch(const SolverConfig& cfg);

  SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                     std::uint64_t seed);
  /// Variable cap of the configured route; callers shrink subproblems to fit.
  int capacity() const;
  SolverTarget target() const { return cfg_.target; }

 private:
  SolverConfig cfg_;
  std::unique_ptr<Solver> primary_;
  std::unique_ptr<Solver> exact_;  // hybrid path; null when primary is exact or remote
};

/// Wire request {model, timeout_ms, seed}; shared by the client and test stubs.
nlohmann::json solve_request_json(const QuboModel& q, std::int64_t timeout_ms,
                                  std::uint64_t seed);

}  // namespace ilouvain
