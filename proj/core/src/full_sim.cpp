#include "feascirc/full_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "feascirc/errors.hpp"

namespace feascirc {

namespace {

void require_qubits(std::size_t m) {
  if (m > kMaxFullQubits)
    throw SizeCapError("full statevector capped at " +
                       std::to_string(kMaxFullQubits) + " qubits, got " +
                       std::to_string(m));
}

void require_feasible_index(const EncodingSpec& spec) {
  require_qubits(spec.bit_count());
  if (spec.degree() > kMaxStateDegree)
    throw SizeCapError("encoding degree too large for the full simulator");
}

// Index bit holding qubit (city u, slot t) of the one-hot layout.
std::uint64_t onehot_bit(const EncodingSpec& spec, std::size_t city,
                         std::size_t slot) {
  const std::size_t r = spec.register_width();
  const std::size_t pos = slot * r + city;
  return 1ULL << (spec.bit_count() - 1 - pos);
}

}  // namespace

StateVector::StateVector(std::size_t qubits) : m_(qubits) {
  require_qubits(qubits);
  amps_.assign(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
}

StateVector StateVector::basis(std::uint64_t index, std::size_t qubits) {
  StateVector sv(qubits);
  if (index >= sv.size()) throw std::out_of_range("basis index out of range");
  sv[index] = 1.0;
  return sv;
}

StateVector StateVector::random(std::size_t qubits, std::uint64_t seed) {
  StateVector sv(qubits);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  for (auto& a : sv.amps_) a = {normal(gen), normal(gen)};
  const double nrm = sv.norm();
  for (auto& a : sv.amps_) a /= nrm;
  return sv;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

StateVector embed(const FeasibleState& state, const EncodingSpec& spec) {
  if (state.degree() != spec.degree())
    throw std::invalid_argument("embed: state degree does not match encoding");
  require_feasible_index(spec);
  StateVector sv(spec.bit_count());
  for (Rank r = 0; r < state.size(); ++r)
    sv[to_index(encode(unrank(r, spec.degree()), spec))] = state[r];
  return sv;
}

FeasibleState project(const StateVector& sv, const EncodingSpec& spec) {
  if (sv.qubits() != spec.bit_count())
    throw std::invalid_argument("project: qubit count does not match encoding");
  FeasibleState state(spec.degree());
  for (Rank r = 0; r < state.size(); ++r)
    state[r] = sv[to_index(encode(unrank(r, spec.degree()), spec))];
  return state;
}

double infeasible_mass(const StateVector& sv, const EncodingSpec& spec) {
  if (sv.qubits() != spec.bit_count())
    throw std::invalid_argument("infeasible_mass: qubit count mismatch");
  std::vector<std::uint8_t> feasible(sv.size(), 0);
  for (Rank r = 0; r < factorial(spec.degree()); ++r)
    feasible[to_index(encode(unrank(r, spec.degree()), spec))] = 1;
  double mass = 0.0;
  for (std::uint64_t x = 0; x < sv.size(); ++x)
    if (!feasible[x]) mass += std::norm(sv[x]);
  return mass;
}

std::vector<std::uint64_t> swap_index_map(const Permutation& element,
                                          const EncodingSpec& spec) {
  require_qubits(spec.bit_count());
  std::vector<std::uint64_t> map(std::size_t{1} << spec.bit_count());
  for (std::uint64_t x = 0; x < map.size(); ++x)
    map[x] = subregister_swap_index(x, element, spec);
  return map;
}

void apply_swap_involution_exp(StateVector& sv, const Permutation& element,
                               const EncodingSpec& spec, double theta) {
  if (sv.qubits() != spec.bit_count())
    throw std::invalid_argument("apply_swap_involution_exp: qubit count mismatch");
  const auto map = swap_index_map(element, spec);
  apply_swap_involution_exp(sv, map, theta);
}

void apply_swap_involution_exp(StateVector& sv,
                               std::span<const std::uint64_t> swap_map,
                               double theta) {
  if (swap_map.size() != sv.size())
    throw std::invalid_argument("swap map size mismatch");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::vector<Amplitude> old(sv.amplitudes().begin(), sv.amplitudes().end());
  const Amplitude minus_i_s{0.0, -s};
  for (std::uint64_t x = 0; x < sv.size(); ++x)
    sv[x] = c * old[x] + minus_i_s * old[swap_map[x]];
}

SparseOperator::SparseOperator(std::uint64_t dim, std::vector<Entry> entries)
    : dim_(dim) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_start_.assign(dim + 1, 0);
  std::uint64_t last_row = 0;
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim)
      throw std::out_of_range("sparse entry outside the operator dimension");
    if (!cols_.empty() && last_row == e.row && cols_.back() == e.col) {
      values_.back() += e.value;
      continue;
    }
    cols_.push_back(e.col);
    values_.push_back(e.value);
    ++row_start_[e.row + 1];
    last_row = e.row;
  }
  for (std::uint64_t r = 1; r <= dim; ++r) row_start_[r] += row_start_[r - 1];
}

void SparseOperator::apply(std::span<const Amplitude> in,
                           std::span<Amplitude> out) const {
  if (in.size() != dim_ || out.size() != dim_)
    throw std::invalid_argument("sparse apply: dimension mismatch");
  for (std::uint64_t r = 0; r < dim_; ++r) {
    Amplitude acc{0.0, 0.0};
    for (auto k = row_start_[r]; k < row_start_[r + 1]; ++k)
      acc += values_[k] * in[cols_[k]];
    out[r] = acc;
  }
}

bool SparseOperator::is_hermitian(double tol) const {
  auto lookup = [&](std::uint64_t r, std::uint64_t c) -> Amplitude {
    auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[r]);
    auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[r + 1]);
    auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return {0.0, 0.0};
    return values_[static_cast<std::size_t>(it - cols_.begin())];
  };
  for (std::uint64_t r = 0; r < dim_; ++r)
    for (auto k = row_start_[r]; k < row_start_[r + 1]; ++k)
      if (std::abs(values_[k] - std::conj(lookup(cols_[k], r))) > tol) return false;
  return true;
}

double SparseOperator::inf_norm() const {
  double best = 0.0;
  for (std::uint64_t r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (auto k = row_start_[r]; k < row_start_[r + 1]; ++k) row += std::abs(values_[k]);
    best = std::max(best, row);
  }
  return best;
}

SparseOperator permutation_operator(std::span<const std::uint64_t> map) {
  std::vector<SparseOperator::Entry> entries;
  entries.reserve(map.size());
  for (std::uint64_t x = 0; x < map.size(); ++x)
    entries.push_back({map[x], x, {1.0, 0.0}});
  return SparseOperator(map.size(), std::move(entries));
}

SparseOperator swap_partial_hamiltonian(const EncodingSpec& spec, std::size_t s,
                                        std::size_t t) {
  if (spec.kind != EncodingKind::OneHot)
    throw std::invalid_argument("swap partial Hamiltonian is built for one-hot only");
  const std::size_t n = spec.degree();
  if (s < 1 || t < 1 || s > n || t > n || s == t)
    throw std::out_of_range("swap partial Hamiltonian slots out of range");
  const std::size_t m = spec.bit_count();
  require_qubits(m);
  const std::uint64_t dim = 1ULL << m;
  std::vector<SparseOperator::Entry> entries;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto us = onehot_bit(spec, u, s - 1), vt = onehot_bit(spec, v, t - 1);
      const auto ut = onehot_bit(spec, u, t - 1), vs = onehot_bit(spec, v, s - 1);
      const std::uint64_t all = us | vt | ut | vs;
      for (std::uint64_t x = 0; x < dim; ++x) {
        // S⁺_{u,s} S⁺_{v,t} S⁻_{u,t} S⁻_{v,s}: u from t to s, v from s to t.
        if (!(x & us) && !(x & vt) && (x & ut) && (x & vs))
          entries.push_back({x ^ all, x, {1.0, 0.0}});
        // Its adjoint moves them back.
        if ((x & us) && (x & vt) && !(x & ut) && !(x & vs))
          entries.push_back({x ^ all, x, {1.0, 0.0}});
      }
    }
  }
  return SparseOperator(dim, std::move(entries));
}

StateVector taylor_exponential(const SparseOperator& h, double beta,
                               const StateVector& sv) {
  if (h.dim() != sv.size())
    throw std::invalid_argument("taylor_exponential: dimension mismatch");
  StateVector result = sv;
  std::vector<Amplitude> term(sv.amplitudes().begin(), sv.amplitudes().end());
  std::vector<Amplitude> next(term.size());
  const Amplitude minus_i_beta{0.0, -beta};
  for (int k = 1; k <= 200; ++k) {
    h.apply(term, next);
    double term_norm = 0.0;
    const Amplitude scale = minus_i_beta / static_cast<double>(k);
    for (std::size_t x = 0; x < term.size(); ++x) {
      term[x] = scale * next[x];
      result[x] += term[x];
      term_norm += std::norm(term[x]);
    }
    if (std::sqrt(term_norm) < 1e-14) return result;
  }
  throw std::runtime_error("Taylor series did not converge within 200 terms");
}

AncillaReport ancilla_exponential_check(const Permutation& element,
                                        const EncodingSpec& spec,
                                        std::size_t trials, std::uint64_t seed,
                                        std::optional<double> theta) {
  const std::size_t m = spec.bit_count();
  require_qubits(m + 1);
  const auto map = swap_index_map(element, spec);
  const std::uint64_t data_dim = 1ULL << m;
  const std::uint64_t anc = data_dim;  // ancilla is the top index bit
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  AncillaReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const double th = theta ? *theta : angle(gen);
    const auto data = StateVector::random(m, gen());

    std::vector<Amplitude> psi(2 * data_dim, {0.0, 0.0});
    for (std::uint64_t x = 0; x < data_dim; ++x) psi[x] = data[x];

    auto hadamard = [&] {
      for (std::uint64_t x = 0; x < data_dim; ++x) {
        const Amplitude a0 = psi[x], a1 = psi[x | anc];
        psi[x] = inv_sqrt2 * (a0 + a1);
        psi[x | anc] = inv_sqrt2 * (a0 - a1);
      }
    };
    auto controlled_u = [&] {
      std::vector<Amplitude> upper(psi.begin() + static_cast<std::ptrdiff_t>(anc),
                                   psi.end());
      // |1⟩|x⟩ ↦ |1⟩|U x⟩, i.e. new[U x] = old[x]
      for (std::uint64_t x = 0; x < data_dim; ++x) psi[anc | map[x]] = upper[x];
    };
    auto rx = [&](double angle2) {
      const double c = std::cos(angle2 / 2), s = std::sin(angle2 / 2);
      const Amplitude mis{0.0, -s};
      for (std::uint64_t x = 0; x < data_dim; ++x) {
        const Amplitude a0 = psi[x], a1 = psi[x | anc];
        psi[x] = c * a0 + mis * a1;
        psi[x | anc] = mis * a0 + c * a1;
      }
    };

    hadamard();
    controlled_u();
    rx(2 * th);
    controlled_u();
    hadamard();

    auto expected = data;
    apply_swap_involution_exp(expected, map, th);
    double residual = 0.0;
    for (std::uint64_t x = 0; x < data_dim; ++x) {
      residual += std::norm(psi[x | anc]);
      report.max_deviation =
          std::max(report.max_deviation, std::abs(psi[x] - expected[x]));
    }
    report.max_ancilla_residual = std::max(report.max_ancilla_residual, residual);
  }
  return report;
}

}  // namespace feascirc
