#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "feascirc/encoding.hpp"
#include "feascirc/feasible_sim.hpp"

namespace feascirc {

// Full statevectors are an oracle for small instances only.
inline constexpr std::size_t kMaxFullQubits = 20;

/// Dense state over all 2^m computational basis strings. Index bit m-1-k is
/// bit position k of the corresponding BitString.
class StateVector {
 public:
  explicit StateVector(std::size_t qubits);

  static StateVector basis(std::uint64_t index, std::size_t qubits);
  /// Normalised complex Gaussian state.
  static StateVector random(std::size_t qubits, std::uint64_t seed);

  std::size_t qubits() const { return m_; }
  std::size_t size() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude& operator[](std::uint64_t i) { return amps_[i]; }
  const Amplitude& operator[](std::uint64_t i) const { return amps_[i]; }

  double norm() const;

 private:
  std::size_t m_;
  std::vector<Amplitude> amps_;
};

/// Places each feasible amplitude on the basis string encode(unrank(r)).
StateVector embed(const FeasibleState& state, const EncodingSpec& spec);
/// Reads the amplitudes of the feasible strings back into rank order.
FeasibleState project(const StateVector& sv, const EncodingSpec& spec);
/// Σ |ψ[x]|² over infeasible strings x.
double infeasible_mass(const StateVector& sv, const EncodingSpec& spec);

/// subregister_swap_index for every index of the m-qubit space.
std::vector<std::uint64_t> swap_index_map(const Permutation& element,
                                          const EncodingSpec& spec);

/// ψ'[x] = cos θ ψ[x] - i sin θ ψ[swap(x)] over every string x.
void apply_swap_involution_exp(StateVector& sv, const Permutation& element,
                               const EncodingSpec& spec, double theta);
void apply_swap_involution_exp(StateVector& sv,
                               std::span<const std::uint64_t> swap_map,
                               double theta);

/// Compressed-row sparse complex operator.
class SparseOperator {
 public:
  struct Entry {
    std::uint64_t row;
    std::uint64_t col;
    Amplitude value;
  };

  SparseOperator() = default;
  SparseOperator(std::uint64_t dim, std::vector<Entry> entries);

  std::uint64_t dim() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }

  void apply(std::span<const Amplitude> in, std::span<Amplitude> out) const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Max absolute row sum, an upper bound on the spectral norm.
  double inf_norm() const;

 private:
  std::uint64_t dim_ = 0;
  std::vector<std::uint64_t> row_start_;
  std::vector<std::uint64_t> cols_;
  std::vector<Amplitude> values_;
};

/// Operator |x⟩ ↦ |map(x)⟩.
SparseOperator permutation_operator(std::span<const std::uint64_t> map);

/// H_PS,{s,t}: Σ over unordered city pairs {u, v} of
/// S⁺_{u,s} S⁺_{v,t} S⁻_{u,t} S⁻_{v,s} + S⁻_{u,s} S⁻_{v,t} S⁺_{u,t} S⁺_{v,s},
/// with S⁺ = |1⟩⟨0| and S⁻ = |0⟩⟨1|. Slots are 1-based; one-hot only.
SparseOperator swap_partial_hamiltonian(const EncodingSpec& spec, std::size_t s,
                                        std::size_t t);

/// e^{-iβH} ψ by its Taylor series, summed until a term's norm drops below
/// 1e-14. Throws std::runtime_error after 200 terms.
StateVector taylor_exponential(const SparseOperator& h, double beta,
                               const StateVector& sv);

struct AncillaReport {
  double max_deviation = 0.0;         // data register vs cos θ - i sin θ U
  double max_ancilla_residual = 0.0;  // |1⟩ population of the ancilla
};

/// Simulates H · ctrl-U · Rx(2θ) · ctrl-U · H on an extra |0⟩ ancilla for
/// `trials` random data states (and random θ unless `theta` is given).
AncillaReport ancilla_exponential_check(const Permutation& element,
                                        const EncodingSpec& spec,
                                        std::size_t trials, std::uint64_t seed,
                                        std::optional<double> theta = std::nullopt);

}  // namespace feascirc
