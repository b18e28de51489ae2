#include "feascirc/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "feascirc/errors.hpp"
#include "feascirc/feasible_sim.hpp"
#include "feascirc/full_sim.hpp"
#include "feascirc/qaoa.hpp"

namespace feascirc {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::vector<GeneratingSequence> both_kinds(std::size_t n) {
  return {bubble_sequence(n), binary_insertion_sequence(n)};
}

Outcome check_involutions(const std::optional<GeneratingSequence>& extra) {
  for (std::size_t n = 1; n <= 12; ++n)
    for (const auto& seq : both_kinds(n))
      if (!all_involutions(seq))
        return {false, std::string(to_string(seq.kind)) + " n=" + std::to_string(n)};
  if (extra) {
    for (std::size_t i = 0; i < extra->elements.size(); ++i)
      if (!extra->elements[i].is_involution())
        return {false, "supplied sequence element " + std::to_string(i + 1) + " (" +
                           to_string(extra->elements[i]) + ") is not an involution"};
  }
  return {true, extra ? "n<=12 and supplied sequence" : "n<=12"};
}

Outcome check_lengths() {
  for (std::size_t n = 1; n <= 12; ++n) {
    std::size_t expect_ins = 0;
    for (std::size_t i = 2; i <= n; ++i) {
      std::size_t c = 0;
      while ((std::size_t{1} << c) < i) ++c;
      expect_ins += c;
    }
    if (bubble_sequence(n).size() != n * (n - 1) / 2 ||
        binary_insertion_sequence(n).size() != expect_ins)
      return {false, "n=" + std::to_string(n)};
  }
  return {true, "n<=12"};
}

Outcome check_generating(std::size_t max_n, const std::optional<GeneratingSequence>& extra) {
  for (std::size_t n = 2; n <= max_n; ++n)
    for (const auto& seq : both_kinds(n)) {
      const auto rep = verify_generating(seq);
      if (!rep.generating)
        return {false, std::string(to_string(seq.kind)) + " n=" + std::to_string(n) +
                           " reaches " + std::to_string(rep.reachable) + "/" +
                           std::to_string(rep.group_order)};
    }
  std::string detail = "n=2.." + std::to_string(max_n);
  if (extra && extra->size() <= kMaxVerifyLength && extra->degree <= kMaxRankDegree) {
    const auto rep = verify_generating(*extra);
    if (!rep.generating)
      return {false, "supplied sequence reaches " + std::to_string(rep.reachable) + "/" +
                         std::to_string(rep.group_order)};
    detail += " and supplied sequence";
  }
  return {true, detail};
}

Outcome check_prefix_identity() {
  const auto fails = insertion_prefix_failures(16);
  return {fails == 0, std::to_string(fails) + " failures, n<=16"};
}

Outcome check_round_trip() {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& seq : both_kinds(n))
      for (Rank r = 0; r < factorial(n); ++r) {
        const auto g = unrank(r, n);
        if (recompose(seq, decompose(seq, g)) != g)
          return {false, std::string(to_string(seq.kind)) + " " + to_string(g)};
      }
  return {true, "exhaustive n<=5"};
}

Outcome check_rank_bijection() {
  for (std::size_t n = 1; n <= 7; ++n)
    for (Rank r = 0; r < factorial(n); ++r)
      if (rank(unrank(r, n)) != r)
        return {false, "n=" + std::to_string(n) + " rank " + std::to_string(r)};
  return {true, "n<=7"};
}

Outcome check_encoding() {
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto kind : {EncodingKind::OneHot, EncodingKind::Compact}) {
      const EncodingSpec spec{n, kind, false};
      for (Rank r = 0; r < factorial(n); ++r) {
        const auto p = unrank(r, n);
        const auto x = encode(p, spec);
        if (!is_feasible(x, spec) || decode(x, spec) != p)
          return {false, "round trip n=" + std::to_string(n)};
        for (const auto& h : bubble_sequence(n).elements)
          if (decode(subregister_swap(x, h, spec), spec) != compose(p, h))
            return {false, "swap is not right multiplication n=" + std::to_string(n)};
      }
    }
  return {true, "n<=4, both encodings"};
}

Outcome check_reachability(std::size_t max_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t n = 2; n <= max_n; ++n)
    for (const auto& seq : both_kinds(n)) {
      const ExhaustiveCircuit circuit(seq);
      const auto start = Permutation::identity(n);
      const Rank total = factorial(n);
      const bool exhaustive = n <= 5;
      const Rank count = exhaustive ? total : 20;
      for (Rank i = 0; i < count; ++i) {
        const Rank r = exhaustive ? i : rng() % total;
        const auto target = unrank(r, n);
        const auto state = circuit.run(reachability_params(seq, start, target), start);
        worst = std::max(worst, std::abs(1.0 - std::abs(state[r])));
      }
    }
  return {worst <= 1e-10, "max |1 - fidelity| = " + sci(worst)};
}

Outcome check_norm(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  double worst = 0.0;
  for (const auto& seq : both_kinds(6)) {
    const ExhaustiveCircuit circuit(seq);
    std::vector<double> theta(seq.size());
    for (auto& t : theta) t = angle(rng);
    worst = std::max(worst, std::abs(circuit.run(theta, Permutation::identity(6)).norm() - 1));
  }
  QaoaCircuit qaoa(TourCostTable(random_instance(7, seed, 1, 10), true), {3, QaoaInitial::Uniform, true});
  std::vector<double> b(3), g(3);
  for (auto& v : b) v = angle(rng);
  for (auto& v : g) v = angle(rng);
  worst = std::max(worst, std::abs(qaoa.run(b, g, Permutation::identity(6)).norm() - 1));
  return {worst <= 1e-12, "max |norm - 1| = " + sci(worst)};
}

Outcome check_cross_simulator(std::uint64_t seed) {
  double dev = 0.0, mass = 0.0;
  for (std::size_t n : {3u, 4u})
    for (auto kind : {EncodingKind::OneHot, EncodingKind::Compact}) {
      const auto rep = cross_simulator_check(n, kind, 100, 20, seed + n);
      dev = std::max(dev, rep.max_deviation);
      mass = std::max(mass, rep.max_infeasible_mass);
    }
  return {dev <= 1e-10 && mass <= 1e-12,
          "max deviation " + sci(dev) + ", infeasible mass " + sci(mass)};
}

Outcome check_ancilla(std::uint64_t seed) {
  const EncodingSpec spec{3, EncodingKind::Compact, false};
  AncillaReport worst;
  std::size_t k = 0;
  for (const auto& seq : both_kinds(3))
    for (const auto& h : seq.elements) {
      const auto rep = ancilla_exponential_check(h, spec, 50, seed + k++);
      worst.max_deviation = std::max(worst.max_deviation, rep.max_deviation);
      worst.max_ancilla_residual =
          std::max(worst.max_ancilla_residual, rep.max_ancilla_residual);
    }
  return {worst.max_deviation <= 1e-10 && worst.max_ancilla_residual <= 1e-12,
          "max deviation " + sci(worst.max_deviation) + ", ancilla residual " +
              sci(worst.max_ancilla_residual)};
}

Outcome check_mixer_taylor() {
  double worst = 0.0;
  for (double beta : {0.3, std::numbers::pi / 4, 1.2})
    worst = std::max(worst, mixer_taylor_check(3, beta));
  return {worst <= 1e-8, "max deviation " + sci(worst)};
}

Outcome check_mixing() {
  const auto gaps = mixing_condition_gaps(4, std::numbers::pi / 4, 6, 1e-9);
  return {gaps == 0, std::to_string(gaps) + " unconnected pairs at n=4, r<=6"};
}

Outcome check_min_adjacency() {
  const std::size_t expect[] = {0, 0, 1, 3, 6};
  for (std::size_t n = 2; n <= 4; ++n)
    if (min_adjacency_length(n) != expect[n])
      return {false, "n=" + std::to_string(n)};
  return {true, "n=2..4 equals n(n-1)/2"};
}

}  // namespace

std::vector<PropertyResult> run_verification(
    const VerifyOptions& opts,
    const std::function<void(const PropertyResult&)>& progress) {
  std::vector<PropertyResult> results;
  const bool full = opts.level == VerifyLevel::Full;
  auto run = [&](std::string name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    PropertyResult res{std::move(name), false, {}, 0.0};
    try {
      const auto out = fn();
      res.passed = out.passed;
      res.detail = out.detail;
    } catch (const std::exception& e) {
      res.detail = std::string("threw: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(res);
    results.push_back(std::move(res));
  };

  run("involutions", [&] { return check_involutions(opts.sequence); });
  run("sequence-lengths", check_lengths);
  run("generating", [&] { return check_generating(full ? 6 : 5, opts.sequence); });
  run("insertion-prefix-identity", check_prefix_identity);
  run("decompose-round-trip", check_round_trip);
  run("rank-bijection", check_rank_bijection);
  run("encoding-round-trip", check_encoding);
  run("exact-reachability", [&] { return check_reachability(full ? 8 : 6, opts.seed); });
  run("norm-preservation", [&] { return check_norm(opts.seed); });
  if (full) {
    run("cross-simulator", [&] { return check_cross_simulator(opts.seed); });
    run("ancilla-circuit", [&] { return check_ancilla(opts.seed); });
    run("mixer-taylor-oracle", check_mixer_taylor);
    run("mixing-condition", check_mixing);
    run("min-adjacency-length", check_min_adjacency);
  }
  return results;
}

CrossSimReport cross_simulator_check(std::size_t n, EncodingKind kind,
                                     std::size_t circuits, std::size_t gates,
                                     std::uint64_t seed) {
  const EncodingSpec spec{n, kind, false};
  if (spec.bit_count() > kMaxFullQubits)
    throw SizeCapError("cross-simulator check exceeds the full-state qubit cap");
  const std::vector<GeneratingSequence> kinds = both_kinds(n);
  std::vector<std::vector<BasisAction>> actions(kinds.size());
  std::vector<std::vector<std::vector<std::uint64_t>>> maps(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k)
    for (const auto& h : kinds[k].elements) {
      actions[k].push_back(involution_action(h, ActionSide::Right));
      maps[k].push_back(swap_index_map(h, spec));
    }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  CrossSimReport rep;
  for (std::size_t c = 0; c < circuits; ++c) {
    const std::size_t k = rng() % kinds.size();
    auto feasible = basis_state(unrank(rng() % factorial(n), n));
    auto full = embed(feasible, spec);
    for (std::size_t g = 0; g < gates; ++g) {
      const std::size_t e = rng() % kinds[k].size();
      const double theta = angle(rng);
      apply_involution_exp(feasible, actions[k][e], theta);
      apply_swap_involution_exp(full, maps[k][e], theta);
    }
    const auto projected = project(full, spec);
    for (Rank r = 0; r < feasible.size(); ++r)
      rep.max_deviation = std::max(rep.max_deviation, std::abs(projected[r] - feasible[r]));
    rep.max_infeasible_mass = std::max(rep.max_infeasible_mass, infeasible_mass(full, spec));
  }
  return rep;
}

double mixer_taylor_check(std::size_t n, double beta) {
  const EncodingSpec spec{n, EncodingKind::OneHot, false};
  if (n > 3) throw SizeCapError("mixer Taylor check supports n <= 3");
  double worst = 0.0;
  for (std::size_t t = 1; t <= mixer_slot_count(n, true); ++t) {
    const std::size_t partner = t == n ? 1 : t + 1;
    const auto h = swap_partial_hamiltonian(spec, t, partner);
    const auto swap = transposition(n, t, partner);
    for (Rank r = 0; r < factorial(n); ++r) {
      const auto p = unrank(r, n);
      const auto x = to_index(encode(p, spec));
      const auto y = to_index(encode(compose(p, swap), spec));
      const auto out = taylor_exponential(h, beta, StateVector::basis(x, spec.bit_count()));
      for (std::uint64_t i = 0; i < out.size(); ++i) {
        Amplitude expect = 0.0;
        if (i == x) expect += std::cos(beta);
        if (i == y) expect += Amplitude(0.0, -std::sin(beta));
        worst = std::max(worst, std::abs(out[i] - expect));
      }
    }
  }
  return worst;
}

std::size_t mixing_condition_gaps(std::size_t n, double beta,
                                  std::size_t max_power, double threshold) {
  const SeqSwapMixer mixer(n, true);
  const Rank total = factorial(n);
  std::size_t gaps = 0;
  for (Rank y = 0; y < total; ++y) {
    auto state = basis_state(unrank(y, n));
    std::vector<double> best(total, 0.0);
    for (std::size_t r = 1; r <= max_power; ++r) {
      mixer.apply(state, beta);
      for (Rank x = 0; x < total; ++x) best[x] = std::max(best[x], std::abs(state[x]));
    }
    for (double b : best)
      if (!(b > threshold)) ++gaps;
  }
  return gaps;
}

std::size_t insertion_prefix_failures(std::size_t max_n) {
  std::size_t failures = 0;
  for (std::size_t n = 2; n <= max_n; ++n) {
    const std::size_t levels = ceil_log2(n);
    std::vector<Permutation> blocks;
    for (std::size_t l = 1; l <= levels; ++l) blocks.push_back(insertion_block(n, n, l, 0));
    for (std::size_t v = 1; v <= n; ++v) {
      std::size_t point = 0;  // image of city 1, 0-based
      std::size_t expect = 0;
      for (std::size_t l = 1; l <= levels; ++l) {
        const bool bit = ((v - 1) >> (l - 1)) & 1u;
        if (bit) {
          point = blocks[l - 1](point);
          expect += std::size_t{1} << (l - 1);
        }
        if (point != expect) ++failures;
      }
      if (point != v - 1) ++failures;
    }
  }
  return failures;
}

}  // namespace feascirc
