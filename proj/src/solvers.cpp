#include "ilouvain/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ilouvain/errors.hpp"

namespace ilouvain {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

/// Per-variable view of the quadratic terms for O(deg) flip deltas.
struct FlipTable {
  std::vector<std::vector<std::pair<int, double>>> adj;

  explicit FlipTable(const QuboModel& q) : adj(q.num_vars()) {
    for (const auto& t : q.quadratic()) {
      adj[t.u].emplace_back(t.v, t.coeff);
      adj[t.v].emplace_back(t.u, t.coeff);
    }
  }

  /// Energy change of flipping variable v in state `bits`.
  double delta(const QuboModel& q, const Bits& bits, int v) const {
    double d = q.linear()[v];
    for (const auto& [u, c] : adj[v])
      if (bits[u]) d += c;
    return bits[v] ? -d : d;
  }
};

class ExhaustiveSolver final : public Solver {
 public:
  SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                     std::uint64_t) override {
    int n = q.num_vars();
    if (n > kExhaustiveMaxVars) throw SizeExceeded(n, kExhaustiveMaxVars);
    auto t0 = Clock::now();
    Bits cur(n, 0);
    Bits best = cur;
    double cur_e = q.offset();
    double best_e = cur_e;
    if (n > 0) {
      FlipTable table(q);
      std::uint64_t total = std::uint64_t{1} << n;
      for (std::uint64_t step = 1; step < total; ++step) {
        int v = std::countr_zero(step);  // Gray-code neighbor of the previous state
        cur_e += table.delta(q, cur, v);
        cur[v] ^= 1;
        if (cur_e < best_e) {
          best_e = qubo_energy(q, cur);  // shed accumulated drift
          best = cur;
        } else if (cur_e == best_e && std::lexicographical_compare(
                                          cur.begin(), cur.end(), best.begin(),
                                          best.end())) {
          best = cur;
        }
        if ((step & 0xffff) == 0 && ms_since(t0) >= timeout.count()) break;
      }
    }
    return {std::move(best), best_e, ms_since(t0)};
  }

  int capacity() const override { return kExhaustiveMaxVars; }
  const char* name() const override { return "exhaustive"; }
};

class SaSolver final : public Solver {
 public:
  explicit SaSolver(SaParams params) : params_(params) {}

  SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                     std::uint64_t seed) override {
    auto t0 = Clock::now();
    int n = q.num_vars();
    if (n == 0) return {{}, q.offset(), ms_since(t0)};

    Bits cur = q.has_var_map() ? q.identity_bits() : Bits(n, 0);
    double cur_e = qubo_energy(q, cur);
    Bits best = cur;
    double best_e = cur_e;

    double t_start = 0.0;
    for (double c : q.linear()) t_start = std::max(t_start, std::abs(c));
    for (const auto& t : q.quadratic()) t_start = std::max(t_start, std::abs(t.coeff));
    if (t_start == 0.0) return {std::move(cur), cur_e, ms_since(t0)};
    double t_end = t_start * params_.final_temp_ratio;

    long sweeps = static_cast<long>(params_.sweeps_per_var) * n;
    double cool = sweeps > 1 ? std::pow(t_end / t_start, 1.0 / (sweeps - 1)) : 1.0;
    FlipTable table(q);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double temp = t_start;
    for (long sweep = 0; sweep < sweeps; ++sweep, temp *= cool) {
      for (int k = 0; k < n; ++k) {
        int v = pick(rng);
        double d = table.delta(q, cur, v);
        if (d <= 0.0 || unit(rng) < std::exp(-d / temp)) {
          cur[v] ^= 1;
          cur_e += d;
          if (cur_e < best_e) {
            best_e = qubo_energy(q, cur);
            best = cur;
          }
        }
      }
      if (ms_since(t0) >= timeout.count()) break;
    }
    return {std::move(best), best_e, ms_since(t0)};
  }

  const char* name() const override { return "sa"; }

 private:
  SaParams params_;
};

class GreedySolver final : public Solver {
 public:
  SolverResult solve(const QuboModel& q, std::chrono::milliseconds timeout,
                     std::uint64_t) override {
    auto t0 = Clock::now();
    int n = q.num_vars();
    Bits cur(n, 0);
    double cur_e = q.offset();
    if (n > 0) {
      FlipTable table(q);
      while (ms_since(t0) < timeout.count()) {
        int best_v = -1;
        double best_d = 0.0;
        for (int v = 0; v < n; ++v) {
          double d = table.delta(q, cur, v);
          if (d < best_d) {
            best_d = d;
            best_v = v;
          }
        }
        if (best_v < 0) break;
        cur[best_v] ^= 1;
        cur_e += best_d;
      }
      cur_e = qubo_energy(q, cur);
    }
    return {std::move(cur), cur_e, ms_since(t0)};
  }

  const char* name() const override { return "greedy"; }
};

}  // namespace

std::unique_ptr<Solver> make_exhaustive_solver() {
  return std::make_unique<ExhaustiveSolver>();
}
std::unique_ptr<Solver> make_sa_solver(SaParams params) {
  return std::make_unique<SaSolver>(params);
}
std::unique_ptr<Solver> make_greedy_solver() {
  return std::make_unique<GreedySolver>();
}

const char* to_string(SolverTarget t) {
  switch (t) {
    case SolverTarget::Exhaustive: return "exhaustive";
    case SolverTarget::Sa: return "sa";
    case SolverTarget::Greedy: return "greedy";
    case SolverTarget::Remote: return "remote";
  }
  return "?";
}

SolverTarget solver_target_from_string(const std::string& s) {
  if (s == "exhaustive") return SolverTarget::Exhaustive;
  if (s == "sa") return SolverTarget::Sa;
  if (s == "greedy") return SolverTarget::Greedy;
  if (s == "remote") return SolverTarget::Remote;
  throw std::invalid_argument("unknown solver target '" + s + "'");
}

SolverDispatch::SolverDispatch(const SolverConfig& cfg) : cfg_(cfg) {
  switch (cfg.target) {
    case SolverTarget::Exhaustive:
      primary_ = make_exhaustive_solver();
      break;
    case SolverTarget::Sa:
      primary_ = make_sa_solver(cfg.sa);
      exact_ = make_exhaustive_solver();
      break;
    case SolverTarget::Greedy:
      primary_ = make_greedy_solver();
      exact_ = make_exhaustive_solver();
      break;
    case SolverTarget::Remote:
      if (cfg.endpoint.empty())
        throw std::invalid_argument("remote solver requires an endpoint");
      primary_ = make_remote_solver(cfg.endpoint);
      break;
  }
}

SolverResult SolverDispatch::solve(const QuboModel& q,
                                   std::chrono::milliseconds timeout,
                                   std::uint64_t seed) {
  if (exact_ && q.num_vars() <= kExactCutover) return exact_->solve(q, timeout, seed);
  return primary_->solve(q, timeout, seed);
}

int SolverDispatch::capacity() const { return primary_->capacity(); }

nlohmann::json solve_request_json(const QuboModel& q, std::int64_t timeout_ms,
                                  std::uint64_t seed) {
  return {{"model", q.to_json()},
          {"timeout_ms", timeout_ms},
          {"seed", seed}};
}

}  // namespace ilouvain
