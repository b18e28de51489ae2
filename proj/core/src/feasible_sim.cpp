#include "feascirc/feasible_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "feascirc/errors.hpp"

namespace feascirc {

namespace {

void require_state_degree(std::size_t n) {
  if (n > kMaxStateDegree)
    throw SizeCapError("feasible-subspace state capped at effective degree " +
                       std::to_string(kMaxStateDegree) + " (got " +
                       std::to_string(n) + ", " + std::to_string(factorial(n)) +
                       " amplitudes)");
  if (n == 0) throw std::invalid_argument("state degree must be >= 1");
}

void require_matching(const FeasibleState& state, std::size_t size) {
  if (state.size() != size)
    throw std::invalid_argument("state size " + std::to_string(state.size()) +
                                " does not match operator size " +
                                std::to_string(size));
}

}  // namespace

FeasibleState::FeasibleState(std::size_t degree) : degree_(degree) {
  require_state_degree(degree);
  amps_.assign(factorial(degree), Amplitude{0.0, 0.0});
}

double FeasibleState::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

FeasibleState basis_state(const Permutation& p) {
  FeasibleState state(p.degree());
  state[rank(p)] = 1.0;
  return state;
}

FeasibleState uniform_feasible_state(std::size_t n) {
  FeasibleState state(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(state.size()));
  for (auto& a : state.amplitudes()) a = amp;
  return state;
}

double overlap(const FeasibleState& a, const FeasibleState& b) {
  require_matching(a, b.size());
  Amplitude inner{0.0, 0.0};
  for (std::size_t r = 0; r < a.size(); ++r) inner += std::conj(a[r]) * b[r];
  return std::abs(inner);
}

BasisAction involution_action(const Permutation& element, ActionSide side) {
  if (!element.is_involution())
    throw std::invalid_argument("involution_action: " + to_string(element) +
                                " is not an involution");
  const std::size_t n = element.degree();
  require_state_degree(n);
  BasisAction action;
  action.target.resize(factorial(n));
  std::vector<std::uint8_t> sigma(n), moved(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = static_cast<std::uint8_t>(i);
  const auto h = element.images();
  for (std::size_t r = 0; r < action.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i)
      moved[i] = side == ActionSide::Left ? h[sigma[i]] : sigma[h[i]];
    action.target[r] = static_cast<std::uint32_t>(rank_images(moved));
    std::next_permutation(sigma.begin(), sigma.end());
  }
  return action;
}

void apply_involution_exp(FeasibleState& state, const BasisAction& action,
                          double theta) {
  require_matching(state, action.size());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto amps = state.amplitudes();
  for (std::size_t r = 0; r < amps.size(); ++r) {
    const std::size_t partner = action(r);
    if (partner == r) {
      // fixed point: multiply by e^{-iθ}
      const Amplitude a = amps[r];
      amps[r] = {c * a.real() + s * a.imag(), c * a.imag() - s * a.real()};
    } else if (partner > r) {
      const Amplitude a = amps[r];
      const Amplitude b = amps[partner];
      // -i s z = (s·imag, -s·real)
      amps[r] = c * a + Amplitude{s * b.imag(), -s * b.real()};
      amps[partner] = c * b + Amplitude{s * a.imag(), -s * a.real()};
    }
  }
}

TourCostTable::TourCostTable(const TspInstance& inst, bool reduced)
    : TourCostTable(tour_degree(inst, reduced), cost_by_rank(inst, reduced)) {}

TourCostTable::TourCostTable(std::size_t degree, std::vector<double> by_rank)
    : degree_(degree), costs_(std::move(by_rank)) {
  if (costs_.size() != factorial(degree))
    throw std::invalid_argument("cost table size must be degree!");
  const auto [lo, hi] = std::minmax_element(costs_.begin(), costs_.end());
  min_ = *lo;
  max_ = *hi;
}

void apply_phase(FeasibleState& state, double gamma, const TourCostTable& cost) {
  require_matching(state, cost.costs().size());
  auto amps = state.amplitudes();
  for (std::size_t r = 0; r < amps.size(); ++r) {
    const double angle = -gamma * cost(r);
    const double c = std::cos(angle), s = std::sin(angle);
    const double re = amps[r].real(), im = amps[r].imag();
    amps[r] = {re * c - im * s, re * s + im * c};
  }
}

double expectation(const FeasibleState& state, const TourCostTable& cost) {
  require_matching(state, cost.costs().size());
  double total = 0.0;
  for (std::size_t r = 0; r < state.size(); ++r)
    total += std::norm(state[r]) * cost(r);
  return total;
}

std::vector<double> probabilities(const FeasibleState& state) {
  std::vector<double> p(state.size());
  for (std::size_t r = 0; r < p.size(); ++r) p[r] = std::norm(state[r]);
  return p;
}

std::vector<Permutation> sample(const FeasibleState& state, std::uint64_t seed,
                                std::size_t k) {
  std::vector<double> cdf(state.size());
  double acc = 0.0;
  for (std::size_t r = 0; r < cdf.size(); ++r) {
    acc += std::norm(state[r]);
    cdf[r] = acc;
  }
  std::mt19937_64 gen(seed);
  std::vector<Permutation> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    auto r = static_cast<Rank>(it - cdf.begin());
    out.push_back(unrank(r, state.degree()));
  }
  return out;
}

ExhaustiveCircuit::ExhaustiveCircuit(GeneratingSequence seq)
    : seq_(std::move(seq)) {
  actions_.reserve(seq_.size());
  for (const auto& h : seq_.elements)
    actions_.push_back(involution_action(h, seq_.side));
}

void ExhaustiveCircuit::apply(FeasibleState& state,
                              std::span<const double> theta) const {
  if (theta.size() != seq_.size())
    throw std::invalid_argument("expected " + std::to_string(seq_.size()) +
                                " angles, got " + std::to_string(theta.size()));
  for (std::size_t i = 0; i < actions_.size(); ++i)
    apply_involution_exp(state, actions_[i], theta[i]);
}

FeasibleState ExhaustiveCircuit::run(std::span<const double> theta,
                                     const Permutation& start) const {
  if (start.degree() != seq_.degree)
    throw std::invalid_argument("start permutation degree mismatch");
  auto state = basis_state(start);
  apply(state, theta);
  return state;
}

FeasibleState run_exhaustive_circuit(const GeneratingSequence& seq,
                                     std::span<const double> theta,
                                     const Permutation& start) {
  if (theta.size() != seq.size())
    throw std::invalid_argument("expected " + std::to_string(seq.size()) +
                                " angles, got " + std::to_string(theta.size()));
  return ExhaustiveCircuit(seq).run(theta, start);
}

Permutation transport_element(const GeneratingSequence& seq,
                              const Permutation& start,
                              const Permutation& target) {
  // Left: the circuit prepares g∘start. Right: it prepares
  // start∘h_1^{b_1}∘...∘h_d^{b_d} = start∘g^{-1}.
  if (seq.side == ActionSide::Left) return compose(target, inverse(start));
  return compose(inverse(target), start);
}

std::vector<double> reachability_params(const GeneratingSequence& seq,
                                        const Permutation& start,
                                        const Permutation& target) {
  const auto bits = decompose(seq, transport_element(seq, start, target));
  std::vector<double> theta(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    theta[i] = bits[i] ? std::numbers::pi / 2 : 0.0;
  return theta;
}

}  // namespace feascirc
