#include "permqio/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "permqio/errors.hpp"

namespace permqio {
namespace {

void require_route(std::size_t n, const Route& r) {
  if (r.size() != n) {
    throw std::invalid_argument("route has " + std::to_string(r.size()) +
                                " stops, instance has " + std::to_string(n));
  }
}

void check_matrix(const SquareMatrix& m, std::size_t n, const char* name) {
  const std::string field(name);
  if (m.dim != n + 1 || m.data.size() != (n + 1) * (n + 1)) {
    throw SchemaError(field + ": expected " + std::to_string(n + 1) + "x" + std::to_string(n + 1) +
                      " matrix");
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (m(i, i) != 0.0) throw SchemaError(field + ": diagonal entry " + std::to_string(i) + " is not zero");
    for (std::size_t j = 0; j <= n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw SchemaError(field + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") must be finite and non-negative");
      }
    }
  }
}

void check_coordinates(const std::optional<std::vector<Point>>& pts, std::size_t n) {
  if (pts && pts->size() != n + 1) {
    throw SchemaError("coordinates: expected " + std::to_string(n + 1) + " points");
  }
}

// Stop visited at route position i, i in [0, n+1]; positions 0 and n+1 are the depot.
inline std::size_t stop_at(const Route& r, std::size_t i) {
  return (i == 0 || i == r.size() + 1) ? 0 : static_cast<std::size_t>(r[i - 1]);
}

}  // namespace

std::size_t instance_size(const Instance& inst) {
  return std::visit([](const auto& i) { return i.n; }, inst);
}

void validate(const TspInstance& inst) {
  if (inst.n == 0) throw SchemaError("n: must be >= 1");
  check_matrix(inst.distance, inst.n, "coeff");
  for (std::size_t i = 0; i <= inst.n; ++i) {
    for (std::size_t j = i + 1; j <= inst.n; ++j) {
      if (inst.distance(i, j) != inst.distance(j, i)) {
        throw SchemaError("coeff: distance matrix is not symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      }
    }
  }
  check_coordinates(inst.coordinates, inst.n);
}

void validate(const EspdpInstance& inst) {
  if (inst.n == 0) throw SchemaError("n: must be >= 1");
  if (!(inst.vehicle_weight > 0.0) || !std::isfinite(inst.vehicle_weight)) {
    throw SchemaError("vehicle_weight: must be positive");
  }
  if (inst.parcel_weights.size() != inst.n) {
    throw SchemaError("parcel_weights: expected " + std::to_string(inst.n) + " entries");
  }
  for (double w : inst.parcel_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw SchemaError("parcel_weights: all weights must be positive");
  }
  check_matrix(inst.coeff, inst.n, "coeff");
  check_matrix(inst.resistance, inst.n, "resistance");
  check_coordinates(inst.coordinates, inst.n);
}

void validate(const Instance& inst) {
  std::visit([](const auto& i) { validate(i); }, inst);
}

double tsp_cost(const TspInstance& inst, const Route& r) {
  require_route(inst.n, r);
  double total = 0.0;
  for (std::size_t i = 0; i <= inst.n; ++i) total += inst.distance(stop_at(r, i), stop_at(r, i + 1));
  return total;
}

double tsp_delta_cost(const TspInstance& inst, const Route& r, AdjacentMove m, double cached_cost) {
  require_route(inst.n, r);
  if (inst.n < 2 || m.position > inst.n - 2) throw std::out_of_range("adjacent move out of range");
  const std::size_t p = m.position + 1;
  const std::size_t prev = stop_at(r, p - 1), a = stop_at(r, p), b = stop_at(r, p + 1),
                    next = stop_at(r, p + 2);
  const auto& d = inst.distance;
  const double before = d(prev, a) + d(a, b) + d(b, next);
  const double after = d(prev, b) + d(b, a) + d(a, next);
  return cached_cost + (after - before);
}

std::vector<double> segment_loads(const EspdpInstance& inst, const Route& r) {
  require_route(inst.n, r);
  std::vector<double> loads(inst.n + 1);
  double load = inst.vehicle_weight;
  loads[inst.n] = load;
  for (std::size_t k = inst.n; k-- > 0;) {
    // Segment k leaves the stop at position k; the parcel of the stop at k+1 is still aboard.
    load += inst.parcel_weights[r[k] - 1];
    loads[k] = load;
  }
  return loads;
}

double espdp_cost(const EspdpInstance& inst, const Route& r) {
  require_route(inst.n, r);
  double total = 0.0;
  double load = inst.vehicle_weight;
  // Walk backwards so the load accumulates the parcels of stops not yet served.
  for (std::size_t k = inst.n + 1; k-- > 0;) {
    const std::size_t from = stop_at(r, k), to = stop_at(r, k + 1);
    if (k < inst.n) load += inst.parcel_weights[r[k] - 1];
    total += load * inst.coeff(from, to) + inst.resistance(from, to);
  }
  return total;
}

double espdp_delta_cost(const EspdpInstance& inst, const Route& r, AdjacentMove m, double cached_cost) {
  require_route(inst.n, r);
  if (inst.n < 2 || m.position > inst.n - 2) throw std::out_of_range("adjacent move out of range");
  const std::size_t p = m.position + 1;
  const std::size_t prev = stop_at(r, p - 1), a = stop_at(r, p), b = stop_at(r, p + 1),
                    next = stop_at(r, p + 2);

  // Load after dropping both a and b.
  double tail = inst.vehicle_weight;
  for (std::size_t i = p + 1; i < inst.n; ++i) tail += inst.parcel_weights[r[i] - 1];
  const double wa = inst.parcel_weights[a - 1], wb = inst.parcel_weights[b - 1];
  const double head = tail + wa + wb;

  const auto& c = inst.coeff;
  const auto& rho = inst.resistance;
  const double before = head * c(prev, a) + rho(prev, a) + (tail + wb) * c(a, b) + rho(a, b) +
                        tail * c(b, next) + rho(b, next);
  const double after = head * c(prev, b) + rho(prev, b) + (tail + wa) * c(b, a) + rho(b, a) +
                       tail * c(a, next) + rho(a, next);
  return cached_cost + (after - before);
}

double CostModel::delta_cost(const Permutation& p, AdjacentMove m, double) const {
  return cost(apply_move(p, m));
}

TspModel::TspModel(TspInstance inst) : inst_(std::move(inst)) { validate(inst_); }

EspdpModel::EspdpModel(EspdpInstance inst) : inst_(std::move(inst)) { validate(inst_); }

TableModel::TableModel(std::size_t n, std::vector<double> by_rank) : n_(n), by_rank_(std::move(by_rank)) {
  if (by_rank_.size() != factorial(n)) throw std::invalid_argument("cost table must have n! entries");
}

double TableModel::cost(const Permutation& p) const {
  require_route(n_, p);
  return by_rank_[rank(p)];
}

std::unique_ptr<CostModel> make_model(const Instance& inst) {
  return std::visit(
      [](const auto& i) -> std::unique_ptr<CostModel> {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, TspInstance>) {
          return std::make_unique<TspModel>(i);
        } else {
          return std::make_unique<EspdpModel>(i);
        }
      },
      inst);
}

SquareMatrix euclidean_distances(const std::vector<Point>& points) {
  SquareMatrix d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double v = std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

namespace {
std::vector<Point> unit_square_points(std::size_t count, RandomStream& rng) {
  std::vector<Point> pts(count);
  for (auto& p : pts) {
    p[0] = rng.uniform();
    p[1] = rng.uniform();
  }
  return pts;
}
}  // namespace

EspdpInstance generate_espdp(std::size_t n, RandomStream& rng, const GeneratorSettings& s) {
  if (n == 0) throw std::invalid_argument("generate_espdp: n must be >= 1");
  if (!(s.vehicle_weight > 0.0) || s.coeff_per_distance < 0.0 || s.resistance_fraction < 0.0 ||
      !(s.parcel_weight_min > 0.0) || s.parcel_weight_max < s.parcel_weight_min) {
    throw ConfigError("generate_espdp: invalid generator settings");
  }
  EspdpInstance inst;
  inst.n = n;
  inst.vehicle_weight = s.vehicle_weight;
  auto pts = unit_square_points(n + 1, rng);
  const SquareMatrix d = euclidean_distances(pts);
  inst.coeff = SquareMatrix(n + 1);
  inst.resistance = SquareMatrix(n + 1);
  for (std::size_t k = 0; k < d.data.size(); ++k) {
    inst.coeff.data[k] = s.coeff_per_distance * d.data[k];
    inst.resistance.data[k] = s.resistance_fraction * s.vehicle_weight * d.data[k];
  }
  const double scale = s.vehicle_weight / static_cast<double>(n);
  inst.parcel_weights.resize(n);
  for (auto& w : inst.parcel_weights) {
    w = (s.parcel_weight_min + (s.parcel_weight_max - s.parcel_weight_min) * rng.uniform()) * scale;
  }
  inst.coordinates = std::move(pts);
  validate(inst);
  return inst;
}

TspInstance generate_tsp(std::size_t n, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("generate_tsp: n must be >= 1");
  TspInstance inst;
  inst.n = n;
  auto pts = unit_square_points(n + 1, rng);
  inst.distance = euclidean_distances(pts);
  inst.coordinates = std::move(pts);
  validate(inst);
  return inst;
}

}  // namespace permqio
