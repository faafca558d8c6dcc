#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "permqio/permutation.hpp"
#include "permqio/random.hpp"

namespace permqio {

/// Dense (n+1) x (n+1) matrix, row-major, index 0 = depot.
struct SquareMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t d, double fill = 0.0) : dim(d), data(d * d, fill) {}

  double operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using Point = std::array<double, 2>;

/// A route is the visiting order of stops 1..n; the depot 0 is implicit at both ends.
using Route = Permutation;

struct TspInstance {
  std::size_t n = 0;
  SquareMatrix distance;
  std::optional<std::vector<Point>> coordinates;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const TspInstance&, const TspInstance&) = default;
};

struct EspdpInstance {
  std::size_t n = 0;
  double vehicle_weight = 0.0;
  std::vector<double> parcel_weights;  // parcel_weights[j-1] is dropped at stop j
  SquareMatrix coeff;                  // energy per unit mass per segment
  SquareMatrix resistance;             // air-resistance energy per segment
  std::optional<std::vector<Point>> coordinates;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const EspdpInstance&, const EspdpInstance&) = default;
};

using Instance = std::variant<TspInstance, EspdpInstance>;

std::size_t instance_size(const Instance& inst);

/// Throw SchemaError naming the first violated invariant.
void validate(const TspInstance& inst);
void validate(const EspdpInstance& inst);
void validate(const Instance& inst);

double tsp_cost(const TspInstance& inst, const Route& r);
double tsp_delta_cost(const TspInstance& inst, const Route& r, AdjacentMove m, double cached_cost);

/// Total energy of the closed route 0 -> sigma(1) -> ... -> sigma(n) -> 0, where
/// each segment costs (vehicle + parcels still aboard) * coeff + resistance.
double espdp_cost(const EspdpInstance& inst, const Route& r);

/// espdp_cost(inst, apply_move(r, m)) from the cached cost of r. Only the three
/// segments around the swapped pair change; a stale `cached_cost` is not detected.
double espdp_delta_cost(const EspdpInstance& inst, const Route& r, AdjacentMove m,
                        double cached_cost);

/// Mass carried on each of the n+1 segments of r.
std::vector<double> segment_loads(const EspdpInstance& inst, const Route& r);

/// Cost oracle consumed by the solvers.
class CostModel {
 public:
  virtual ~CostModel() = default;
  virtual std::size_t size() const = 0;
  virtual double cost(const Permutation& p) const = 0;
  /// Cost of apply_move(p, m) given cost(p). Default recomputes from scratch.
  virtual double delta_cost(const Permutation& p, AdjacentMove m, double cached_cost) const;
};

class TspModel final : public CostModel {
 public:
  explicit TspModel(TspInstance inst);
  std::size_t size() const override { return inst_.n; }
  double cost(const Permutation& p) const override { return tsp_cost(inst_, p); }
  double delta_cost(const Permutation& p, AdjacentMove m, double cached) const override {
    return tsp_delta_cost(inst_, p, m, cached);
  }
  const TspInstance& instance() const noexcept { return inst_; }

 private:
  TspInstance inst_;
};

class EspdpModel final : public CostModel {
 public:
  explicit EspdpModel(EspdpInstance inst);
  std::size_t size() const override { return inst_.n; }
  double cost(const Permutation& p) const override { return espdp_cost(inst_, p); }
  double delta_cost(const Permutation& p, AdjacentMove m, double cached) const override {
    return espdp_delta_cost(inst_, p, m, cached);
  }
  const EspdpInstance& instance() const noexcept { return inst_; }

 private:
  EspdpInstance inst_;
};

/// Arbitrary cost table over S_n indexed by rank(); for small synthetic landscapes.
class TableModel final : public CostModel {
 public:
  TableModel(std::size_t n, std::vector<double> by_rank);
  std::size_t size() const override { return n_; }
  double cost(const Permutation& p) const override;

 private:
  std::size_t n_;
  std::vector<double> by_rank_;
};

/// Owning model for either instance kind.
std::unique_ptr<CostModel> make_model(const Instance& inst);

struct GeneratorSettings {
  double vehicle_weight = 10.0;
  double coeff_per_distance = 1.0;       // C_ij = coeff_per_distance * d_ij
  double resistance_fraction = 0.1;      // rho_ij = resistance_fraction * W_v * d_ij
  double parcel_weight_min = 0.1;        // parcel weights ~ U[min, max] * W_v / n
  double parcel_weight_max = 1.0;
};

/// Depot and stops uniform in the unit square; costs linear in Euclidean distance.
EspdpInstance generate_espdp(std::size_t n, RandomStream& rng, const GeneratorSettings& settings = {});
TspInstance generate_tsp(std::size_t n, RandomStream& rng);

SquareMatrix euclidean_distances(const std::vector<Point>& points);

}  // namespace permqio
