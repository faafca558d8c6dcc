#include <string>

#include "doctest.h"
#include "permqio/errors.hpp"
#include "permqio/instance_io.hpp"
#include "support.hpp"

using namespace permqio;

TEST_CASE("espdp round trip is field-for-field") {
  EspdpInstance inst = testing::random_espdp(7, 4242);
  inst.seed = 4242;
  const Instance back = deserialize_instance(serialize_instance(inst));
  REQUIRE(std::holds_alternative<EspdpInstance>(back));
  CHECK(std::get<EspdpInstance>(back) == inst);
  CHECK(serialize_instance(back) == serialize_instance(inst));
}

TEST_CASE("tsp round trip keeps the distance matrix") {
  RandomStream rng(5);
  TspInstance inst = generate_tsp(5, rng);
  const Instance back = deserialize_instance(serialize_instance(inst));
  REQUIRE(std::holds_alternative<TspInstance>(back));
  CHECK(std::get<TspInstance>(back) == inst);
}

TEST_CASE("missing parcel_weights is a schema error naming the field") {
  std::string text = testing::slurp(std::string(PERMQIO_FIXTURES) + "/espdp_n1.json");
  const auto at = text.find("\"parcel_weights\": [1.0],");
  REQUIRE(at != std::string::npos);
  text.erase(at, std::string("\"parcel_weights\": [1.0],").size());
  try {
    deserialize_instance(text);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("parcel_weights") != std::string::npos);
  }
}

TEST_CASE("hand-written n = 1 document") {
  const Instance inst = load_instance(std::string(PERMQIO_FIXTURES) + "/espdp_n1.json");
  REQUIRE(std::holds_alternative<EspdpInstance>(inst));
  const auto& e = std::get<EspdpInstance>(inst);
  CHECK(e.n == 1);
  CHECK(e.vehicle_weight == 2.0);
  CHECK(e.parcel_weights == std::vector<double>{1.0});
  CHECK(e.coeff(0, 1) == 3.0);
  CHECK(e.resistance(1, 0) == 0.5);
  CHECK_FALSE(e.coordinates.has_value());
  CHECK(espdp_cost(e, Permutation{1}) == 16.0);
}

TEST_CASE("malformed and invariant-violating documents") {
  CHECK_THROWS_AS(deserialize_instance("{ not json"), SchemaError);
  CHECK_THROWS_AS(deserialize_instance("[1, 2]"), SchemaError);
  CHECK_THROWS_AS(deserialize_instance(R"({"kind": "espdp"})"), SchemaError);
  CHECK_THROWS_AS(deserialize_instance(R"({"kind": "vrp", "n": 1})"), SchemaError);
  CHECK_THROWS_AS(deserialize_instance(R"({"kind": "tsp", "n": 0, "coeff": []})"), SchemaError);
  // negative weight
  CHECK_THROWS_AS(deserialize_instance(R"({"kind": "espdp", "n": 1, "vehicle_weight": 1, "parcel_weights": [-1],
      "coeff": [[0, 1], [1, 0]], "resistance": [[0, 0], [0, 0]]})"),
                  SchemaError);
  // wrong matrix shape
  CHECK_THROWS_AS(deserialize_instance(R"({"kind": "tsp", "n": 2, "coeff": [[0, 1], [1, 0]]})"), SchemaError);
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), SchemaError);
}
