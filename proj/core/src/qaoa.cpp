#include "feascirc/qaoa.hpp"

#include <stdexcept>

namespace feascirc {

std::size_t default_qaoa_layers(std::size_t degree) {
  if (degree < 2) return 1;
  return degree / 2;  // ⌈(degree - 1) / 2⌉
}

std::size_t mixer_slot_count(std::size_t degree, bool wraparound) {
  if (degree < 2) return 0;
  if (degree == 2) return 1;  // slots 1,2 and 2,1 are the same pair
  return wraparound ? degree : degree - 1;
}

BasisAction mixer_slot_action(std::size_t t, std::size_t degree,
                              bool wraparound) {
  const std::size_t last = wraparound ? degree : degree - 1;
  if (degree < 2 || t < 1 || t > last)
    throw std::out_of_range("mixer slot " + std::to_string(t) +
                            " out of range for degree " + std::to_string(degree));
  const std::size_t partner = (t == degree) ? 1 : t + 1;
  return involution_action(transposition(degree, t, partner), ActionSide::Right);
}

SeqSwapMixer::SeqSwapMixer(std::size_t degree, bool wraparound)
    : degree_(degree) {
  for (std::size_t t = 1; t <= mixer_slot_count(degree, wraparound); ++t)
    slots_.push_back(mixer_slot_action(t, degree, wraparound));
}

void SeqSwapMixer::apply(FeasibleState& state, double beta) const {
  for (const auto& a : slots_) apply_involution_exp(state, a, beta);
}

void SeqSwapMixer::apply_reversed(FeasibleState& state, double beta) const {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
    apply_involution_exp(state, *it, beta);
}

void apply_seq_mixer(FeasibleState& state, double beta, bool wraparound) {
  SeqSwapMixer(state.degree(), wraparound).apply(state, beta);
}

QaoaCircuit::QaoaCircuit(TourCostTable costs, QaoaConfig cfg)
    : costs_(std::move(costs)),
      cfg_(cfg),
      mixer_(costs_.degree(), cfg.slot_wraparound) {
  if (cfg_.layers < 1) throw std::invalid_argument("QAOA needs p >= 1");
}

FeasibleState QaoaCircuit::initial_state(const Permutation& start) const {
  if (cfg_.initial == QaoaInitial::Uniform)
    return uniform_feasible_state(costs_.degree());
  if (start.degree() != costs_.degree())
    throw std::invalid_argument("start permutation degree mismatch");
  return basis_state(start);
}

FeasibleState QaoaCircuit::run(std::span<const double> betas,
                               std::span<const double> gammas,
                               const Permutation& start) const {
  if (betas.size() != cfg_.layers || gammas.size() != cfg_.layers)
    throw std::invalid_argument("QAOA expects " + std::to_string(cfg_.layers) +
                                " betas and gammas");
  auto state = initial_state(start);
  for (std::size_t k = 0; k < cfg_.layers; ++k) {
    apply_phase(state, gammas[k], costs_);
    mixer_.apply(state, betas[k]);
  }
  return state;
}

FeasibleState run_qaoa(const TspInstance& inst, bool reduced,
                       const QaoaConfig& cfg, std::span<const double> betas,
                       std::span<const double> gammas, const Permutation& start) {
  return QaoaCircuit(TourCostTable(inst, reduced), cfg).run(betas, gammas, start);
}

}  // namespace feascirc
