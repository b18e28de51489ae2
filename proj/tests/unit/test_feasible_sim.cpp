#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "feascirc/errors.hpp"
#include "feascirc/feasible_sim.hpp"
#include "oracles.hpp"

using namespace feascirc;
using P = Permutation;
using oracle::Cplx;

namespace {

constexpr double kPi = std::numbers::pi;

FeasibleState random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FeasibleState s(n);
  for (auto& a : s.amplitudes()) a = {g(rng), g(rng)};
  const double norm = s.norm();
  for (auto& a : s.amplitudes()) a /= norm;
  return s;
}

double fidelity(const FeasibleState& a, const FeasibleState& b) { return overlap(a, b); }

}  // namespace

TEST(FeasibleState, BasisAndUniform) {
  const auto id = basis_state(P::identity(4));
  EXPECT_EQ(id[0], Cplx(1.0, 0.0));
  EXPECT_NEAR(id.norm(), 1.0, 1e-15);
  const auto u = uniform_feasible_state(3);
  ASSERT_EQ(u.size(), 6u);
  for (const auto& a : u.amplitudes()) EXPECT_NEAR(std::abs(a - 1.0 / std::sqrt(6.0)), 0.0, 1e-15);
  EXPECT_NEAR(u.norm(), 1.0, 1e-15);
  EXPECT_THROW(FeasibleState(12), SizeCapError);
}

TEST(Expectation, MatchesTourCostOracle) {
  const auto inst = random_instance(6, 9, 1.0, 10.0);
  const TourCostTable table(inst, false);
  double mean = 0.0;
  const auto perms = oracle::all_perms(6);
  for (std::size_t i = 0; i < perms.size(); i += 37) {
    const auto p = oracle::to_perm(perms[i]);
    EXPECT_NEAR(expectation(basis_state(p), table), oracle::tour_cost(inst, perms[i], false), 1e-12);
  }
  for (const auto& img : perms) mean += oracle::tour_cost(inst, img, false);
  mean /= static_cast<double>(perms.size());
  EXPECT_NEAR(expectation(uniform_feasible_state(6), table), mean, 1e-10);
  EXPECT_NEAR(expectation(random_state(4, 1), TourCostTable(TspInstance(4, std::vector<double>(16, 2.0)), false)),
              8.0, 1e-12);
}

TEST(InvolutionAction, Examples) {
  const auto ident = involution_action(P::identity(4), ActionSide::Right);
  for (std::size_t r = 0; r < 24; ++r) EXPECT_EQ(ident(r), r);
  const auto t1 = involution_action(transposition(4, 1, 2), ActionSide::Right);
  EXPECT_EQ(t1(0), rank(P::from_one_line({2, 1, 3, 4})));
  EXPECT_THROW(involution_action(P::from_one_line({2, 3, 1}), ActionSide::Right), std::invalid_argument);
}

TEST(InvolutionAction, SidesMatchComposition) {
  const auto h = transposition(4, 1, 3);
  const auto left = involution_action(h, ActionSide::Left);
  const auto right = involution_action(h, ActionSide::Right);
  for (const auto& img : oracle::all_perms(4)) {
    const auto s = oracle::to_perm(img);
    EXPECT_EQ(left(rank(s)), rank(compose(h, s)));
    EXPECT_EQ(right(rank(s)), rank(compose(s, h)));
    EXPECT_EQ(right(right(rank(s))), rank(s));
    EXPECT_EQ(left(left(rank(s))), rank(s));
  }
}

TEST(ApplyInvolutionExp, SpecialAngles) {
  const auto a = involution_action(transposition(4, 2, 3), ActionSide::Right);
  const auto psi = random_state(4, 2);

  auto s0 = psi;
  apply_involution_exp(s0, a, 0.0);
  for (Rank r = 0; r < 24; ++r) EXPECT_EQ(s0[r], psi[r]);

  auto s1 = psi;
  apply_involution_exp(s1, a, kPi / 2);
  for (Rank r = 0; r < 24; ++r) EXPECT_NEAR(std::abs(s1[r] - Cplx(0, -1) * psi[a(r)]), 0.0, 1e-15);

  const auto p = P::from_one_line({3, 1, 4, 2});
  auto s2 = basis_state(p);
  apply_involution_exp(s2, a, kPi / 4);
  EXPECT_NEAR(std::abs(s2[rank(p)] - Cplx(1 / std::numbers::sqrt2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s2[a(rank(p))] - Cplx(0, -1 / std::numbers::sqrt2)), 0.0, 1e-15);
}

TEST(ApplyInvolutionExp, MatchesDenseOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (const auto& h : {transposition(4, 1, 2), transposition(4, 1, 4), P::from_one_line({3, 4, 1, 2})})
    for (auto side : {ActionSide::Left, ActionSide::Right}) {
      const auto a = involution_action(h, side);
      std::vector<std::uint64_t> map(a.target.begin(), a.target.end());
      for (int k = 0; k < 10; ++k) {
        const double theta = angle(rng);
        auto psi = random_state(4, rng());
        std::vector<Cplx> v(psi.amplitudes().begin(), psi.amplitudes().end());
        const auto expect = oracle::apply(oracle::cos_minus_i_sin(map, theta), v);
        apply_involution_exp(psi, a, theta);
        for (Rank r = 0; r < 24; ++r) ASSERT_LE(std::abs(psi[r] - expect[r]), 1e-12);
      }
    }
}

TEST(ApplyPhase, Properties) {
  const auto inst = random_instance(5, 4, 1.0, 10.0);
  const TourCostTable table(inst, false);
  const auto psi = random_state(5, 8);
  auto same = psi;
  apply_phase(same, 0.0, table);
  for (Rank r = 0; r < psi.size(); ++r) EXPECT_EQ(same[r], psi[r]);

  auto phased = psi;
  apply_phase(phased, 0.77, table);
  const auto p0 = probabilities(psi), p1 = probabilities(phased);
  for (Rank r = 0; r < psi.size(); ++r) EXPECT_NEAR(p0[r], p1[r], 1e-15);

  const auto p = P::from_one_line({2, 5, 1, 3, 4});
  auto b = basis_state(p);
  apply_phase(b, 1.3, table);
  EXPECT_NEAR(std::abs(b[rank(p)] - std::polar(1.0, -1.3 * tour_cost(inst, p, false))), 0.0, 1e-14);
  EXPECT_NEAR(fidelity(b, basis_state(p)), 1.0, 1e-15);
}

TEST(ExhaustiveCircuit, ZeroAnglesKeepStart) {
  const auto start = P::from_one_line({4, 2, 5, 1, 3});
  for (const auto& seq : {bubble_sequence(5), binary_insertion_sequence(5)}) {
    const auto out = run_exhaustive_circuit(seq, std::vector<double>(seq.size(), 0.0), start);
    EXPECT_EQ(out[rank(start)], Cplx(1.0, 0.0));
  }
  EXPECT_THROW(run_exhaustive_circuit(bubble_sequence(4), std::vector<double>(5, 0.0), P::identity(4)),
               std::invalid_argument);
}

TEST(ExhaustiveCircuit, TargetEqualsStartNeedsNoRotation) {
  const auto start = P::from_one_line({3, 1, 2, 4});
  for (const auto& seq : {bubble_sequence(4), binary_insertion_sequence(4)}) {
    const auto theta = reachability_params(seq, start, start);
    EXPECT_EQ(theta, std::vector<double>(seq.size(), 0.0));
  }
}

TEST(ExhaustiveCircuit, ReachesEveryTargetFromEveryStart) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto side : {ActionSide::Right, ActionSide::Left})
      for (const auto& seq : {bubble_sequence(n, side), binary_insertion_sequence(n, side)}) {
        const ExhaustiveCircuit circuit(seq);
        for (const auto& s : oracle::all_perms(n))
          for (const auto& t : oracle::all_perms(n)) {
            const auto start = oracle::to_perm(s), target = oracle::to_perm(t);
            const auto out = circuit.run(reachability_params(seq, start, target), start);
            ASSERT_NEAR(std::abs(out[rank(target)]), 1.0, 1e-10);
          }
      }
  std::mt19937_64 rng(21);
  for (const auto& seq : {bubble_sequence(5), binary_insertion_sequence(5)}) {
    const ExhaustiveCircuit circuit(seq);
    for (int k = 0; k < 10; ++k) {
      const auto start = unrank(rng() % 120, 5);
      for (Rank r = 0; r < 120; ++r) {
        const auto out = circuit.run(reachability_params(seq, start, unrank(r, 5)), start);
        ASSERT_NEAR(std::abs(out[r]), 1.0, 1e-10);
      }
    }
  }
}

TEST(ExhaustiveCircuit, RandomTargetsAtDegreeEight) {
  std::mt19937_64 rng(8);
  for (const auto& seq : {bubble_sequence(8), binary_insertion_sequence(8)}) {
    const ExhaustiveCircuit circuit(seq);
    const auto start = P::identity(8);
    for (int k = 0; k < 100; ++k) {
      const Rank r = rng() % factorial(8);
      const auto out = circuit.run(reachability_params(seq, start, unrank(r, 8)), start);
      ASSERT_NEAR(std::abs(out[r]), 1.0, 1e-10);
    }
  }
}

TEST(ExhaustiveCircuit, NormPreservedOverLongSequences) {
  const auto seq = binary_insertion_sequence(6);
  std::vector<BasisAction> actions;
  for (const auto& h : seq.elements) actions.push_back(involution_action(h, ActionSide::Right));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  auto psi = basis_state(P::identity(6));
  for (int g = 0; g < 1000; ++g) {
    apply_involution_exp(psi, actions[rng() % actions.size()], angle(rng));
    ASSERT_NEAR(psi.norm(), 1.0, 1e-10);
  }
}

TEST(ExhaustiveCircuit, PiShiftOnlyChangesGlobalPhase) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  const auto seq = bubble_sequence(5);
  const ExhaustiveCircuit circuit(seq);
  std::vector<double> theta(seq.size());
  for (auto& t : theta) t = angle(rng);
  const auto base = circuit.run(theta, P::identity(5));
  for (std::size_t i = 0; i < theta.size(); i += 3) {
    auto shifted = theta;
    shifted[i] += kPi;
    EXPECT_NEAR(fidelity(base, circuit.run(shifted, P::identity(5))), 1.0, 1e-12);
  }
}

TEST(Sampling, DegenerateAndDeterministic) {
  const auto p = P::from_one_line({2, 3, 1});
  for (const auto& s : sample(basis_state(p), 1, 50)) EXPECT_EQ(s, p);
  const auto probs = probabilities(basis_state(p));
  EXPECT_EQ(probs[rank(p)], 1.0);
  const auto u = uniform_feasible_state(4);
  EXPECT_EQ(sample(u, 99, 200), sample(u, 99, 200));
  EXPECT_NE(sample(u, 99, 200), sample(u, 100, 200));
}

TEST(Sampling, UniformPassesChiSquare) {
  const std::size_t k = 100000;
  std::vector<double> counts(6, 0.0);
  for (const auto& s : sample(uniform_feasible_state(3), 2024, k)) counts[rank(s)] += 1;
  const double expect = static_cast<double>(k) / 6;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // Upper 1e-3 quantile of χ² with 5 degrees of freedom.
  EXPECT_LT(chi2, 20.515);
}

TEST(Transport, LeftAndRightConventions) {
  const auto start = P::from_one_line({2, 4, 1, 3});
  const auto target = P::from_one_line({3, 1, 4, 2});
  const auto right = bubble_sequence(4, ActionSide::Right);
  const auto left = bubble_sequence(4, ActionSide::Left);
  const auto gr = transport_element(right, start, target);
  const auto gl = transport_element(left, start, target);
  EXPECT_EQ(compose(start, inverse(gr)), target);
  EXPECT_EQ(compose(gl, start), target);
}
