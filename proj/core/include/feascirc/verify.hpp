#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "feascirc/encoding.hpp"
#include "feascirc/generating_sequence.hpp"

namespace feascirc {

enum class VerifyLevel { Quick, Full };

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  /// Extra sequence (e.g. loaded from a file) checked for involutions and,
  /// when small enough, the generating property.
  std::optional<GeneratingSequence> sequence;
  std::uint64_t seed = 2024;
};

/// Runs the named property checks; `progress` is called after each one.
std::vector<PropertyResult> run_verification(
    const VerifyOptions& opts,
    const std::function<void(const PropertyResult&)>& progress = {});

struct CrossSimReport {
  double max_deviation = 0.0;  // feasible amplitudes, full vs feasible-subspace
  double max_infeasible_mass = 0.0;
};

/// Random exhaustive circuits (random sequence kind, random elements and
/// angles, random start tour) simulated on both the full 2^m register and the
/// feasible subspace.
CrossSimReport cross_simulator_check(std::size_t n, EncodingKind kind,
                                     std::size_t circuits, std::size_t gates,
                                     std::uint64_t seed);

/// Largest deviation of the Taylor exponential of the explicit slot-pair
/// Hamiltonian from cos β|x⟩ - i sin β|swap·x⟩ over all feasible basis states
/// and every mixer slot; one-hot encoding, n <= 3.
double mixer_taylor_check(std::size_t n, double beta);

/// Number of feasible basis pairs (x, y) with |⟨x|U_M(β)^r|y⟩| <= threshold
/// for every r in 1..max_power.
std::size_t mixing_condition_gaps(std::size_t n, double beta,
                                  std::size_t max_power, double threshold);

/// Counts (n, v, ℓ) for which the partial block product of the insertion
/// blocks selected by binary(v - 1) does not map 1 to Σ_{i<=ℓ} p_i 2^{i-1} + 1.
std::size_t insertion_prefix_failures(std::size_t max_n);

}  // namespace feascirc
