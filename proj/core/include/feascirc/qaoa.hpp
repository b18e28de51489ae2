#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "feascirc/feasible_sim.hpp"

namespace feascirc {

enum class QaoaInitial { Basis, Uniform };

struct QaoaConfig {
  std::size_t layers = 1;
  QaoaInitial initial = QaoaInitial::Basis;
  // Pair slot n with slot 1, as in the product over t = 1..n.
  bool slot_wraparound = true;
};

/// Layer count whose circuit length matches the exhaustive circuits:
/// ⌈(n - 1) / 2⌉ for effective degree n.
std::size_t default_qaoa_layers(std::size_t degree);

/// Number of mixer factors: n with wraparound, n - 1 without (and 1 at n = 2).
std::size_t mixer_slot_count(std::size_t degree, bool wraparound);

/// Rank map of H_PS,t on the feasible subspace: swap whatever cities sit at
/// slots t and t + 1 (t = n pairs with slot 1). `t` is 1-based.
BasisAction mixer_slot_action(std::size_t t, std::size_t degree,
                              bool wraparound = true);

/// Sequential swap mixer ∏_t e^{-iβ H_PS,t}, t ascending.
class SeqSwapMixer {
 public:
  SeqSwapMixer(std::size_t degree, bool wraparound);

  std::size_t degree() const { return degree_; }
  void apply(FeasibleState& state, double beta) const;
  /// Same factors applied in descending t; only for order-dependence checks.
  void apply_reversed(FeasibleState& state, double beta) const;

 private:
  std::size_t degree_;
  std::vector<BasisAction> slots_;
};

void apply_seq_mixer(FeasibleState& state, double beta, bool wraparound = true);

/// Layered ansatz U_M(β_p) U_P(γ_p) ⋯ U_M(β_1) U_P(γ_1) |ι⟩ with the phase
/// separator first in each layer.
class QaoaCircuit {
 public:
  QaoaCircuit(TourCostTable costs, QaoaConfig cfg);

  const QaoaConfig& config() const { return cfg_; }
  std::size_t parameter_count() const { return 2 * cfg_.layers; }
  const TourCostTable& costs() const { return costs_; }

  FeasibleState initial_state(const Permutation& start) const;
  FeasibleState run(std::span<const double> betas, std::span<const double> gammas,
                    const Permutation& start) const;

 private:
  TourCostTable costs_;
  QaoaConfig cfg_;
  SeqSwapMixer mixer_;
};

FeasibleState run_qaoa(const TspInstance& inst, bool reduced,
                       const QaoaConfig& cfg, std::span<const double> betas,
                       std::span<const double> gammas, const Permutation& start);

}  // namespace feascirc
