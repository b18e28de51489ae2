#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace feascirc {

struct OptConfig {
  std::size_t max_iters = 1000;
  double init_step = 0.1 * std::numbers::pi;
  double grad_threshold = 1e-4;
  std::size_t grad_window = 10;
  std::uint64_t seed = 0;  // consumed by callers that randomise x0
  double rho_end = 1e-9;
  double fd_step = 1e-6;
};

/// Per-coordinate periods; 0 means unbounded. Points are reduced into
/// [0, period) before every evaluation.
struct ParameterDomain {
  std::vector<double> period;

  bool empty() const { return period.empty(); }
  std::vector<double> reduce(std::span<const double> x) const;
};

enum class OptStatus { GradientConverged, MaxIterations, TrustRegionCollapsed };
std::string_view to_string(OptStatus status);

struct OptRecord {
  std::size_t iteration = 0;
  std::vector<double> params;  // incumbent after this iteration, reduced
  double objective = 0.0;      // incumbent (best so far)
  double evaluated = 0.0;      // value at the point tried this iteration
  double ratio = 0.0;          // ratio of the incumbent, NaN without a map
};

struct OptTrace {
  std::vector<OptRecord> records;
  OptStatus status = OptStatus::MaxIterations;
  std::size_t evaluations = 0;  // including gradient probes

  const OptRecord& final() const { return records.back(); }
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
using RatioFn = std::function<double(double)>;

/// Derivative-free minimiser interface.
class Minimizer {
 public:
  virtual ~Minimizer() = default;
  virtual OptTrace minimize(const ObjectiveFn& objective,
                            std::span<const double> x0,
                            const ParameterDomain& domain,
                            const RatioFn& ratio) const = 0;
};

/// Linear-approximation trust-region method in the COBYLA family (without
/// constraints). Keeps a simplex of d + 1 points, steps to the minimiser of the
/// interpolating linear model inside a ball of radius rho, repairs simplex
/// geometry when it degrades, and halves rho when the model stops predicting
/// progress.
///
/// Every objective evaluation at a simplex or trial point is one iteration.
/// After the initial simplex is complete, the forward-difference gradient at
/// the incumbent is checked each iteration; the run stops once its norm has
/// stayed below grad_threshold for grad_window consecutive iterations, when
/// max_iters is reached, or when rho falls below rho_end.
class LinearTrustRegion final : public Minimizer {
 public:
  explicit LinearTrustRegion(OptConfig cfg);

  OptTrace minimize(const ObjectiveFn& objective, std::span<const double> x0,
                    const ParameterDomain& domain,
                    const RatioFn& ratio) const override;

 private:
  OptConfig cfg_;
};

OptTrace minimize(const ObjectiveFn& objective, std::span<const double> x0,
                  const OptConfig& cfg, const ParameterDomain& domain = {},
                  const RatioFn& ratio = {});

enum class RatioMode {
  OptOverExpectation,  // c_min / <C>
  Normalized,          // (c_max - <C>) / (c_max - c_min)
};

/// Throws std::invalid_argument on non-positive costs.
double approximation_ratio(double expectation, double opt_cost,
                           RatioMode mode = RatioMode::OptOverExpectation,
                           double worst_cost = 0.0);

}  // namespace feascirc
