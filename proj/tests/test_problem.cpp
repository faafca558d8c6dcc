#include <cmath>
#include <vector>

#include "doctest.h"
#include "permqio/errors.hpp"
#include "permqio/problem.hpp"
#include "support.hpp"

using namespace permqio;

namespace {

SquareMatrix matrix(std::vector<std::vector<double>> rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool close(double a, double b, double rel = 1e-9) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("tsp_cost: equilateral triangle and out-and-back") {
  const double h = std::sqrt(3.0) / 2.0;
  TspInstance tri;
  tri.n = 2;
  tri.coordinates = std::vector<Point>{{0.0, 0.0}, {1.0, 0.0}, {0.5, h}};
  tri.distance = euclidean_distances(*tri.coordinates);
  CHECK(tsp_cost(tri, Permutation{1, 2}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(tsp_cost(tri, Permutation{2, 1}) == doctest::Approx(3.0).epsilon(1e-12));

  TspInstance one;
  one.n = 1;
  one.distance = matrix({{0, 2.5}, {2.5, 0}});
  CHECK(tsp_cost(one, Permutation{1}) == 5.0);
  CHECK_THROWS_AS(tsp_cost(one, Permutation{1, 2}), std::invalid_argument);
}

TEST_CASE("tsp_cost agrees with straight-line summation on all of S4") {
  RandomStream rng(10);
  const TspInstance inst = generate_tsp(4, rng);
  Permutation p = Permutation::identity(4);
  int routes = 0;
  do {
    const std::vector<int> order(p.begin(), p.end());
    REQUIRE(close(tsp_cost(inst, p), testing::naive_tour(*inst.coordinates, order), 1e-12));
    ++routes;
  } while (p.next_lexicographic());
  CHECK(routes == 24);
}

TEST_CASE("espdp_cost: hand-expanded examples") {
  EspdpInstance one;
  one.n = 1;
  one.vehicle_weight = 2.0;
  one.parcel_weights = {1.0};
  one.coeff = matrix({{0, 3}, {3, 0}});
  one.resistance = matrix({{0, 0.5}, {0.5, 0}});
  // (2+1)*3 + 0.5 + 2*3 + 0.5
  CHECK(espdp_cost(one, Permutation{1}) == doctest::Approx(16.0).epsilon(1e-12));

  // n = 2 with asymmetric coefficients so the two orders differ.
  EspdpInstance two;
  two.n = 2;
  two.vehicle_weight = 1.0;
  two.parcel_weights = {2.0, 3.0};
  two.coeff = matrix({{0, 1, 2}, {3, 0, 4}, {5, 6, 0}});
  two.resistance = matrix({{0, 0.1, 0.2}, {0.3, 0, 0.4}, {0.5, 0.6, 0}});
  // [1,2]: 0->1 load 6: 6*1+0.1; 1->2 load 4: 4*4+0.4; 2->0 load 1: 5+0.5  = 28.0
  // [2,1]: 0->2 load 6: 6*2+0.2; 2->1 load 3: 3*6+0.6; 1->0 load 1: 3+0.3  = 34.1
  CHECK(espdp_cost(two, Permutation{1, 2}) == doctest::Approx(28.0).epsilon(1e-12));
  CHECK(espdp_cost(two, Permutation{2, 1}) == doctest::Approx(34.1).epsilon(1e-12));
  CHECK(espdp_delta_cost(two, Permutation{1, 2}, {0}, 28.0) == doctest::Approx(34.1).epsilon(1e-12));
  CHECK(espdp_delta_cost(two, Permutation{2, 1}, {0}, 34.1) == doctest::Approx(28.0).epsilon(1e-12));
}

TEST_CASE("espdp_cost matches the naive evaluator; argmin agrees for n = 6 and 7") {
  for (std::size_t n : {6u, 7u}) {
    CAPTURE(n);
    const EspdpInstance inst = testing::random_espdp(n, 600 + n);
    std::vector<int> naive_arg;
    const double naive_min =
        testing::naive_minimum(n, [&](const std::vector<int>& o) { return testing::naive_espdp(inst, o); }, &naive_arg);

    Permutation p = Permutation::identity(n);
    Permutation lib_arg = p;
    double lib_min = espdp_cost(inst, p);
    do {
      const double c = espdp_cost(inst, p);
      REQUIRE(close(c, testing::naive_espdp(inst, {p.begin(), p.end()})));
      if (c < lib_min - 1e-9 * lib_min) {
        lib_min = c;
        lib_arg = p;
      }
    } while (p.next_lexicographic());
    CHECK(close(lib_min, naive_min));
    CHECK(std::vector<int>(lib_arg.begin(), lib_arg.end()) == naive_arg);
  }
}

TEST_CASE("espdp_delta_cost equals full recomputation over 10^4 random trials") {
  RandomStream rng(31337);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    RandomStream gen = rng.split(static_cast<std::uint64_t>(trial));
    const EspdpInstance inst = generate_espdp(n, gen);
    const Permutation r = random_permutation(n, rng);
    const AdjacentMove m = random_move(n, rng);
    const double cached = espdp_cost(inst, r);
    const double fast = espdp_delta_cost(inst, r, m, cached);
    const double full = testing::naive_espdp(inst, [&] {
      auto q = apply_move(r, m);
      return std::vector<int>(q.begin(), q.end());
    }());
    worst = std::max(worst, std::abs(fast - full) / full);
    // applying the same move again restores the cached cost
    REQUIRE(close(espdp_delta_cost(inst, apply_move(r, m), m, fast), cached));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("tsp_delta_cost equals full recomputation") {
  RandomStream rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.below(10);
    const TspInstance inst = generate_tsp(n, rng);
    const Permutation r = random_permutation(n, rng);
    const AdjacentMove m = random_move(n, rng);
    REQUIRE(close(tsp_delta_cost(inst, r, m, tsp_cost(inst, r)), tsp_cost(inst, apply_move(r, m))));
  }
}

TEST_CASE("carried load is non-increasing and ends at the vehicle weight") {
  RandomStream rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    const EspdpInstance inst = generate_espdp(n, rng);
    const auto loads = segment_loads(inst, random_permutation(n, rng));
    REQUIRE(loads.size() == n + 1);
    for (std::size_t k = 1; k < loads.size(); ++k) REQUIRE(loads[k] <= loads[k - 1]);
    CHECK(loads.back() == inst.vehicle_weight);
    double all = inst.vehicle_weight;
    for (double w : inst.parcel_weights) all += w;
    CHECK(close(loads.front(), all, 1e-12));
  }
}

TEST_CASE("espdp cost is positive on generated instances") {
  RandomStream rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const EspdpInstance inst = generate_espdp(n, rng);
    CHECK(espdp_cost(inst, random_permutation(n, rng)) > 0.0);
  }
}

TEST_CASE("zero payload with coeff = distance / W_v reproduces the TSP cost") {
  RandomStream rng(23);
  const std::size_t n = 5;
  const TspInstance tsp = generate_tsp(n, rng);
  EspdpInstance e;
  e.n = n;
  e.vehicle_weight = 4.0;
  e.parcel_weights.assign(n, 0.0);
  e.coeff = SquareMatrix(n + 1);
  e.resistance = SquareMatrix(n + 1);
  for (std::size_t k = 0; k < tsp.distance.data.size(); ++k) e.coeff.data[k] = tsp.distance.data[k] / 4.0;

  std::vector<std::pair<double, double>> costs;
  Permutation p = Permutation::identity(n);
  do {
    costs.emplace_back(tsp_cost(tsp, p), espdp_cost(e, p));
    REQUIRE(close(costs.back().first, costs.back().second, 1e-12));
  } while (p.next_lexicographic());
  // same ranking of every pair of routes
  for (std::size_t i = 0; i < costs.size(); i += 7) {
    for (std::size_t j = 0; j < costs.size(); ++j) {
      if (std::abs(costs[i].first - costs[j].first) > 1e-9) {
        REQUIRE((costs[i].first < costs[j].first) == (costs[i].second < costs[j].second));
      }
    }
  }
}

TEST_CASE("generate_espdp: determinism and invariants") {
  RandomStream a(9), b(9);
  CHECK(generate_espdp(8, a) == generate_espdp(8, b));

  RandomStream rng(10);
  const EspdpInstance inst = generate_espdp(10, rng);
  CHECK_NOTHROW(validate(inst));
  for (double w : inst.parcel_weights) {
    CHECK(w >= 0.1 * 10.0 / 10.0);
    CHECK(w <= 1.0 * 10.0 / 10.0);
  }
  CHECK(inst.vehicle_weight == 10.0);
  const SquareMatrix d = euclidean_distances(*inst.coordinates);
  for (std::size_t k = 0; k < d.data.size(); ++k) {
    CHECK(inst.coeff.data[k] == doctest::Approx(d.data[k]).epsilon(1e-12));
    CHECK(inst.resistance.data[k] == doctest::Approx(1.0 * d.data[k]).epsilon(1e-12));
  }

  RandomStream bad(1);
  GeneratorSettings s;
  s.parcel_weight_min = -1.0;
  CHECK_THROWS_AS(generate_espdp(3, bad, s), ConfigError);
  CHECK_THROWS(generate_espdp(0, bad));
}

TEST_CASE("generated coefficient matrices are symmetric and metric") {
  RandomStream rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(8);
    const EspdpInstance inst = generate_espdp(n, rng);
    const auto& c = inst.coeff;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        REQUIRE(c(i, j) == c(j, i));
        for (std::size_t k = 0; k <= n; ++k) REQUIRE(c(i, k) <= c(i, j) + c(j, k) + 1e-12);
      }
    }
  }
}

TEST_CASE("generated TSP distances match their coordinates") {
  RandomStream rng(6);
  const TspInstance inst = generate_tsp(9, rng);
  const auto& pts = *inst.coordinates;
  for (std::size_t i = 0; i <= 9; ++i) {
    for (std::size_t j = 0; j <= 9; ++j) {
      const double d = std::sqrt(std::pow(pts[i][0] - pts[j][0], 2) + std::pow(pts[i][1] - pts[j][1], 2));
      CHECK(close(inst.distance(i, j), d, 1e-12));
    }
  }
}

TEST_CASE("validation rejects broken instances") {
  RandomStream rng(2);
  EspdpInstance e = generate_espdp(3, rng);
  EspdpInstance bad = e;
  bad.parcel_weights[1] = 0.0;
  CHECK_THROWS_AS(validate(bad), SchemaError);
  bad = e;
  bad.coeff(1, 1) = 1.0;
  CHECK_THROWS_AS(validate(bad), SchemaError);
  bad = e;
  bad.resistance(0, 2) = -1.0;
  CHECK_THROWS_AS(validate(bad), SchemaError);
  bad = e;
  bad.parcel_weights.pop_back();
  CHECK_THROWS_AS(EspdpModel{bad}, SchemaError);

  TspInstance t = generate_tsp(3, rng);
  t.distance(0, 1) += 0.5;
  CHECK_THROWS_AS(validate(t), SchemaError);
}

TEST_CASE("cost models") {
  const EspdpInstance inst = testing::random_espdp(5, 1);
  const auto model = make_model(Instance{inst});
  const Permutation p{3, 1, 5, 2, 4};
  CHECK(model->size() == 5);
  CHECK(model->cost(p) == espdp_cost(inst, p));
  CHECK(close(model->delta_cost(p, {2}, model->cost(p)), model->cost(apply_move(p, {2}))));

  std::vector<double> table(6);
  for (std::size_t i = 0; i < 6; ++i) table[i] = static_cast<double>(i) * 1.5;
  const TableModel tm(3, table);
  CHECK(tm.cost(Permutation{1, 2, 3}) == 0.0);
  CHECK(tm.cost(Permutation{3, 2, 1}) == 7.5);
  // default delta falls back to recomputation
  CHECK(tm.delta_cost(Permutation{1, 2, 3}, {0}, 0.0) == tm.cost(Permutation{2, 1, 3}));
  CHECK_THROWS(TableModel(3, std::vector<double>(5)));
}
