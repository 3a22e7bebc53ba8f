#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <chrono>
#include <random>
#include <vector>

#include "json.hpp"

#include "ilouvain/errors.hpp"
#include "ilouvain/graph.hpp"
#include "ilouvain/partition.hpp"
#include "ilouvain/qubo.hpp"
#include "ilouvain/solvers.hpp"

#include "helpers.hpp"
#include "stub_server.hpp"

using namespace ilouvain;
using namespace std::chrono_literals;

namespace {

// Coefficients are multiples of 0.25 so incremental energy bookkeeping is
// exact and tie-breaking is reproducible against the reference scan below.
QuboModel random_model(std::mt19937_64& rng, int n, double density = 0.4) {
  std::uniform_int_distribution<int> quarter(-8, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<int, double>> linear;
  std::vector<std::tuple<int, int, double>> quad;
  for (int v = 0; v < n; ++v) linear.emplace_back(v, quarter(rng) * 0.25);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit(rng) < density) quad.emplace_back(u, v, quarter(rng) * 0.25);
  return QuboModel(n, std::move(linear), std::move(quad), quarter(rng) * 0.25);
}

struct Reference {
  Bits bits;
  double energy = 0.0;
};

Reference reference_minimum(const QuboModel& q) {
  Reference best;
  for (std::uint64_t mask = 0; mask < (1ull << q.num_vars()); ++mask) {
    Bits b(q.num_vars());
    for (int v = 0; v < q.num_vars(); ++v) b[v] = (mask >> v) & 1;
    double e = qubo_energy(q, b);
    if (best.bits.empty() || e < best.energy ||
        (e == best.energy &&
         std::lexicographical_compare(b.begin(), b.end(), best.bits.begin(),
                                      best.bits.end()))) {
      best = {b, e};
    }
  }
  return best;
}

nlohmann::json parse_request(const httplib::Request& req) {
  return nlohmann::json::parse(req.body);
}

void respond_solved(const httplib::Request& req, httplib::Response& res,
                    double energy_skew = 0.0) {
  nlohmann::json body = parse_request(req);
  QuboModel model = QuboModel::from_json(body.at("model"));
  auto solver = make_exhaustive_solver();
  SolverResult r = solver->solve(model, 10s, body.at("seed").get<std::uint64_t>());
  nlohmann::json out{{"bits", bits_to_string(r.bits)},
                     {"energy", r.energy + energy_skew},
                     {"elapsed_ms", r.elapsed_ms}};
  res.set_content(out.dump(), "application/json");
}

}  // namespace

TEST_CASE("exhaustive matches a full reference scan, ties included") {
  std::mt19937_64 rng(211);
  auto solver = make_exhaustive_solver();
  for (int trial = 0; trial < 40; ++trial) {
    QuboModel q = random_model(rng, 3 + static_cast<int>(rng() % 8));
    Reference ref = reference_minimum(q);
    SolverResult got = solver->solve(q, 10s, trial);
    CHECK(got.energy == ref.energy);
    CHECK(got.bits == ref.bits);
    CHECK(got.energy == doctest::Approx(qubo_energy(q, got.bits)).epsilon(1e-15));
  }
}

TEST_CASE("exhaustive refuses oversized models") {
  std::vector<std::pair<int, double>> linear;
  for (int v = 0; v < 25; ++v) linear.emplace_back(v, 1.0);
  QuboModel q(25, std::move(linear), {});
  auto solver = make_exhaustive_solver();
  CHECK(solver->capacity() == kExhaustiveMaxVars);
  CHECK_THROWS_AS(solver->solve(q, 10s, 0), SizeExceeded);
}

TEST_CASE("exhaustive respects its timeout and still answers") {
  std::mt19937_64 rng(223);
  QuboModel q = random_model(rng, 22, 0.2);
  auto solver = make_exhaustive_solver();
  SolverResult r = solver->solve(q, std::chrono::milliseconds(1), 0);
  CHECK(static_cast<int>(r.bits.size()) == 22);
  CHECK(r.energy == doctest::Approx(qubo_energy(q, r.bits)).epsilon(1e-12));
}

TEST_CASE("simulated annealing finds small optima from the identity start") {
  std::mt19937_64 rng(227);
  auto sa = make_sa_solver();
  auto exact = make_exhaustive_solver();
  int hits = 0;
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = testing::random_graph(rng, 10, 0.35, true);
    Partition p(g, testing::random_assignment(rng, 10, 3));
    LocalProblem lp = testing::random_local(g, p, rng, 4, 2);
    QuboModel q = build_qubo(g, p, lp);

    SolverResult got = sa->solve(q, 10s, 7);
    CHECK(got.energy == doctest::Approx(qubo_energy(q, got.bits)).epsilon(1e-12));
    CHECK(got.energy <= qubo_energy(q, q.identity_bits()) + 1e-12);
    if (got.energy <= exact->solve(q, 10s, 0).energy + 1e-9) ++hits;
  }
  CHECK(hits >= 13);  // tiny models; the schedule nearly always lands
}

TEST_CASE("simulated annealing handles a constant model") {
  QuboModel q(3, {}, {}, 4.0);
  auto sa = make_sa_solver();
  SolverResult r = sa->solve(q, 10s, 0);
  CHECK(r.energy == doctest::Approx(4.0));
}

TEST_CASE("greedy descends to a flip-stationary point") {
  std::mt19937_64 rng(229);
  auto greedy = make_greedy_solver();
  for (int trial = 0; trial < 20; ++trial) {
    QuboModel q = random_model(rng, 12);
    SolverResult got = greedy->solve(q, 10s, 0);
    CHECK(got.energy == doctest::Approx(qubo_energy(q, got.bits)).epsilon(1e-12));
    CHECK(got.energy <= qubo_energy(q, Bits(12, 0)) + 1e-12);
    for (int v = 0; v < 12; ++v) {
      Bits flipped = got.bits;
      flipped[v] ^= 1;
      CHECK(qubo_energy(q, flipped) >= got.energy - 1e-12);
    }
  }
}

TEST_CASE("dispatch routes small models to the exact solver") {
  std::mt19937_64 rng(233);
  SolverDispatch sa_dispatch({SolverTarget::Sa, "", {}});
  SolverDispatch greedy_dispatch({SolverTarget::Greedy, "", {}});
  auto exact = make_exhaustive_solver();

  QuboModel small = random_model(rng, kExactCutover - 2);
  SolverResult want = exact->solve(small, 10s, 5);
  CHECK(sa_dispatch.solve(small, 10s, 5).bits == want.bits);
  CHECK(greedy_dispatch.solve(small, 10s, 5).bits == want.bits);

  CHECK(sa_dispatch.capacity() == kNoCapacity);
  CHECK(greedy_dispatch.capacity() == kNoCapacity);

  QuboModel double_check = random_model(rng, kExactCutover + 2);
  SolverResult heuristic = sa_dispatch.solve(double_check, 10s, 5);
  CHECK(heuristic.energy ==
        doctest::Approx(qubo_energy(double_check, heuristic.bits)).epsilon(1e-12));
}

TEST_CASE("dispatch with exhaustive target keeps the exact capacity") {
  SolverDispatch dispatch({SolverTarget::Exhaustive, "", {}});
  CHECK(dispatch.capacity() == kExhaustiveMaxVars);
  CHECK(dispatch.target() == SolverTarget::Exhaustive);
}

TEST_CASE("remote dispatch requires an endpoint") {
  CHECK_THROWS_AS(SolverDispatch({SolverTarget::Remote, "", {}}), std::invalid_argument);
}

TEST_CASE("solver target names round-trip") {
  for (auto t : {SolverTarget::Exhaustive, SolverTarget::Sa, SolverTarget::Greedy,
                 SolverTarget::Remote})
    CHECK(solver_target_from_string(to_string(t)) == t);
  CHECK_THROWS_AS(solver_target_from_string("quantum"), std::invalid_argument);
}

TEST_CASE("solve_request_json carries model, timeout, and seed") {
  std::mt19937_64 rng(239);
  QuboModel q = random_model(rng, 4);
  nlohmann::json req = solve_request_json(q, 1234, 42);
  CHECK(req.at("timeout_ms") == 1234);
  CHECK(req.at("seed") == 42);
  QuboModel back = QuboModel::from_json(req.at("model"));
  CHECK(back.num_vars() == 4);
}

TEST_CASE("remote solver matches local exhaustive bit for bit") {
  testing::StubServer server(
      [](const httplib::Request& req, httplib::Response& res) { respond_solved(req, res); });
  auto remote = make_remote_solver(server.endpoint());
  auto exact = make_exhaustive_solver();
  std::mt19937_64 rng(241);
  for (int trial = 0; trial < 10; ++trial) {
    QuboModel q = random_model(rng, 3 + static_cast<int>(rng() % 6));
    SolverResult want = exact->solve(q, 10s, trial);
    SolverResult got = remote->solve(q, 10s, trial);
    CHECK(got.bits == want.bits);
    CHECK(got.energy == doctest::Approx(want.energy).epsilon(1e-12));
  }
}

TEST_CASE("remote solver rejects corrupted energies") {
  testing::StubServer server([](const httplib::Request& req, httplib::Response& res) {
    respond_solved(req, res, 0.5);
  });
  auto remote = make_remote_solver(server.endpoint());
  std::mt19937_64 rng(251);
  QuboModel q = random_model(rng, 5);
  CHECK_THROWS_AS(remote->solve(q, 10s, 0), ProtocolViolation);
}

TEST_CASE("remote solver rejects malformed bodies and wrong lengths") {
  testing::StubServer garbage([](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  std::mt19937_64 rng(257);
  QuboModel q = random_model(rng, 5);
  CHECK_THROWS_AS(make_remote_solver(garbage.endpoint())->solve(q, 10s, 0),
                  ProtocolViolation);

  testing::StubServer short_bits([](const httplib::Request&, httplib::Response& res) {
    nlohmann::json out{{"bits", "01"}, {"energy", 0.0}, {"elapsed_ms", 1}};
    res.set_content(out.dump(), "application/json");
  });
  CHECK_THROWS_AS(make_remote_solver(short_bits.endpoint())->solve(q, 10s, 0),
                  ProtocolViolation);
}

TEST_CASE("remote solver treats 4xx as protocol violations") {
  testing::StubServer reject([](const httplib::Request&, httplib::Response& res) {
    res.status = 422;
    res.set_content("{\"error\":\"too big\"}", "application/json");
  });
  std::mt19937_64 rng(263);
  QuboModel q = random_model(rng, 4);
  CHECK_THROWS_AS(make_remote_solver(reject.endpoint())->solve(q, 10s, 0),
                  ProtocolViolation);
}

TEST_CASE("remote solver retries 5xx and succeeds") {
  auto failures = std::make_shared<std::atomic<int>>(0);
  testing::StubServer flaky([failures](const httplib::Request& req, httplib::Response& res) {
    if (failures->fetch_add(1) < 1) {
      res.status = 503;
      return;
    }
    respond_solved(req, res);
  });
  std::mt19937_64 rng(269);
  QuboModel q = random_model(rng, 4);
  SolverResult got = make_remote_solver(flaky.endpoint())->solve(q, 10s, 0);
  CHECK(got.energy == doctest::Approx(qubo_energy(q, got.bits)).epsilon(1e-12));
  CHECK(failures->load() == 2);
}

TEST_CASE("remote solver reports unreachable endpoints") {
  auto remote = make_remote_solver("http://127.0.0.1:1/solve");
  std::mt19937_64 rng(271);
  QuboModel q = random_model(rng, 4);
  CHECK_THROWS_AS(remote->solve(q, 1s, 0), RemoteUnavailable);
}

TEST_CASE("solver names are stable identifiers") {
  CHECK(std::string(make_exhaustive_solver()->name()) == "exhaustive");
  CHECK(std::string(make_sa_solver()->name()) == "sa");
  CHECK(std::string(make_greedy_solver()->name()) == "greedy");
  CHECK(std::string(make_remote_solver("http://x/solve")->name()) == "remote");
}
