#include "permqio/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "permqio/errors.hpp"

namespace permqio {
namespace {

using nlohmann::json;

json matrix_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw SchemaError(std::string("missing required field \"") + name + "\"");
  return *it;
}

double as_real(const json& v, const std::string& name) {
  if (!v.is_number()) throw SchemaError("field \"" + name + "\" must be a number");
  return v.get<double>();
}

std::vector<double> real_array(const json& v, const std::string& name) {
  if (!v.is_array()) throw SchemaError("field \"" + name + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_real(x, name));
  return out;
}

SquareMatrix matrix_from_json(const json& v, std::size_t n, const std::string& name) {
  if (!v.is_array() || v.size() != n + 1) {
    throw SchemaError("field \"" + name + "\" must have " + std::to_string(n + 1) + " rows");
  }
  SquareMatrix m(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const auto row = real_array(v[i], name);
    if (row.size() != n + 1) {
      throw SchemaError("field \"" + name + "\" row " + std::to_string(i) + " must have " +
                        std::to_string(n + 1) + " entries");
    }
    for (std::size_t j = 0; j <= n; ++j) m(i, j) = row[j];
  }
  return m;
}

std::optional<std::vector<Point>> points_from_json(const json& doc) {
  auto it = doc.find("coordinates");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw SchemaError("field \"coordinates\" must be an array");
  std::vector<Point> pts;
  for (const auto& p : *it) {
    const auto xy = real_array(p, "coordinates");
    if (xy.size() != 2) throw SchemaError("field \"coordinates\" entries must be [x, y]");
    pts.push_back({xy[0], xy[1]});
  }
  return pts;
}

std::optional<std::uint64_t> seed_from_json(const json& doc) {
  auto it = doc.find("seed");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_unsigned()) throw SchemaError("field \"seed\" must be a non-negative integer");
  return it->get<std::uint64_t>();
}

void put_optional(json& doc, const std::optional<std::vector<Point>>& pts, const std::optional<std::uint64_t>& seed) {
  if (pts) {
    json arr = json::array();
    for (const auto& p : *pts) arr.push_back({p[0], p[1]});
    doc["coordinates"] = std::move(arr);
  }
  if (seed) doc["seed"] = *seed;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  json doc;
  if (const auto* t = std::get_if<TspInstance>(&inst)) {
    doc["kind"] = "tsp";
    doc["n"] = t->n;
    doc["coeff"] = matrix_to_json(t->distance);
    put_optional(doc, t->coordinates, t->seed);
  } else {
    const auto& e = std::get<EspdpInstance>(inst);
    doc["kind"] = "espdp";
    doc["n"] = e.n;
    doc["vehicle_weight"] = e.vehicle_weight;
    doc["parcel_weights"] = e.parcel_weights;
    doc["coeff"] = matrix_to_json(e.coeff);
    doc["resistance"] = matrix_to_json(e.resistance);
    put_optional(doc, e.coordinates, e.seed);
  }
  return doc.dump(2) + "\n";
}

Instance deserialize_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance document must be a JSON object");

  const auto& kind = field(doc, "kind");
  if (!kind.is_string()) throw SchemaError("field \"kind\" must be a string");
  const auto& nv = field(doc, "n");
  if (!nv.is_number_unsigned() || nv.get<std::uint64_t>() == 0) {
    throw SchemaError("field \"n\" must be a positive integer");
  }
  const std::size_t n = nv.get<std::size_t>();

  if (kind == "tsp") {
    TspInstance t;
    t.n = n;
    t.distance = matrix_from_json(field(doc, "coeff"), n, "coeff");
    t.coordinates = points_from_json(doc);
    t.seed = seed_from_json(doc);
    validate(t);
    return t;
  }
  if (kind == "espdp") {
    EspdpInstance e;
    e.n = n;
    e.vehicle_weight = as_real(field(doc, "vehicle_weight"), "vehicle_weight");
    e.parcel_weights = real_array(field(doc, "parcel_weights"), "parcel_weights");
    e.coeff = matrix_from_json(field(doc, "coeff"), n, "coeff");
    e.resistance = matrix_from_json(field(doc, "resistance"), n, "resistance");
    e.coordinates = points_from_json(doc);
    e.seed = seed_from_json(doc);
    validate(e);
    return e;
  }
  throw SchemaError("field \"kind\" must be \"espdp\" or \"tsp\"");
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read instance file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_instance(ss.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_instance(inst);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace permqio
