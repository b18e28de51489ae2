#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "feascirc/generating_sequence.hpp"
#include "feascirc/permutation.hpp"
#include "feascirc/tsp.hpp"

namespace feascirc {

using Amplitude = std::complex<double>;

/// Largest effective degree the feasible-subspace simulator will allocate
/// (11! amplitudes = 640 MB).
inline constexpr std::size_t kMaxStateDegree = 11;

/// Amplitudes over S_n indexed by Lehmer rank. Only feasible tours exist in
/// this space, so every state it can hold is feasible by construction.
class FeasibleState {
 public:
  explicit FeasibleState(std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return amps_.size(); }

  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude& operator[](Rank r) { return amps_[r]; }
  const Amplitude& operator[](Rank r) const { return amps_[r]; }

  double norm() const;

 private:
  std::size_t degree_;
  std::vector<Amplitude> amps_;
};

FeasibleState basis_state(const Permutation& p);
FeasibleState uniform_feasible_state(std::size_t n);

/// |<a|b>|.
double overlap(const FeasibleState& a, const FeasibleState& b);

/// Involutory rank map of one group element acting on S_n.
struct BasisAction {
  std::vector<std::uint32_t> target;

  std::size_t size() const { return target.size(); }
  std::uint32_t operator()(std::size_t r) const { return target[r]; }
};

/// a(rank(σ)) = rank(h∘σ) for the left side, rank(σ∘h) for the right side.
/// Throws std::invalid_argument when `element` is not an involution.
BasisAction involution_action(const Permutation& element, ActionSide side);

/// ψ'[r] = cos θ ψ[r] - i sin θ ψ[a(r)], computed pair by pair in place.
void apply_involution_exp(FeasibleState& state, const BasisAction& action,
                          double theta);

/// Tour cost as a diagonal operator on the feasible basis.
class TourCostTable {
 public:
  TourCostTable(const TspInstance& inst, bool reduced);
  explicit TourCostTable(std::size_t degree, std::vector<double> by_rank);

  std::size_t degree() const { return degree_; }
  std::span<const double> costs() const { return costs_; }
  double operator()(Rank r) const { return costs_[r]; }
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::size_t degree_;
  std::vector<double> costs_;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// ψ'[r] = exp(-iγ c(r)) ψ[r].
void apply_phase(FeasibleState& state, double gamma, const TourCostTable& cost);

/// Σ |ψ[r]|² c(r), summed in rank order.
double expectation(const FeasibleState& state, const TourCostTable& cost);

std::vector<double> probabilities(const FeasibleState& state);

/// k tours drawn from |ψ|² with a seeded 64-bit Mersenne twister.
std::vector<Permutation> sample(const FeasibleState& state, std::uint64_t seed,
                                std::size_t k);

/// e^{-iθ_d H_d} ⋯ e^{-iθ_1 H_1} with the rank maps of every sequence element
/// precomputed once.
class ExhaustiveCircuit {
 public:
  explicit ExhaustiveCircuit(GeneratingSequence seq);

  const GeneratingSequence& sequence() const { return seq_; }
  std::size_t parameter_count() const { return seq_.size(); }

  void apply(FeasibleState& state, std::span<const double> theta) const;
  FeasibleState run(std::span<const double> theta, const Permutation& start) const;

 private:
  GeneratingSequence seq_;
  std::vector<BasisAction> actions_;
};

FeasibleState run_exhaustive_circuit(const GeneratingSequence& seq,
                                     std::span<const double> theta,
                                     const Permutation& start);

/// The group element g with g·start = target on the sequence's action side.
Permutation transport_element(const GeneratingSequence& seq,
                              const Permutation& start,
                              const Permutation& target);

/// θ = (π/2)·b with b = decompose(seq, transport_element(...)).
std::vector<double> reachability_params(const GeneratingSequence& seq,
                                        const Permutation& start,
                                        const Permutation& target);

}  // namespace feascirc
