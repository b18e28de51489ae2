#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "feascirc/errors.hpp"
#include "feascirc/tsp.hpp"
#include "oracles.hpp"

using namespace feascirc;
using P = Permutation;

namespace {

TspInstance constant(std::size_t n, double w) {
  return TspInstance(n, std::vector<double>(n * n, w));
}

// w(1,2)=1, w(2,3)=2, w(3,1)=3, every other off-diagonal weight 9.
TspInstance asymmetric3() {
  return TspInstance(3, {0, 1, 9, 9, 0, 2, 3, 9, 0});
}

}  // namespace

TEST(TspInstance, ValidatesWeights) {
  EXPECT_THROW(TspInstance(3, {0, 1, 1, 1, 0, 1, 1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(TspInstance(3, {0, 1, 1, 1, 0, -1, 1, 1, 0}), std::invalid_argument);
  EXPECT_THROW(TspInstance(2, {0, 1, 1}), std::invalid_argument);
  const TspInstance inst(2, {5, 1, 2, 7});
  EXPECT_EQ(inst.weight(0, 0), 0.0);
  EXPECT_FALSE(inst.symmetric());
}

TEST(TourCost, Examples) {
  EXPECT_DOUBLE_EQ(tour_cost(constant(3, 1.0), P::identity(3), false), 3.0);
  const auto a = asymmetric3();
  EXPECT_DOUBLE_EQ(tour_cost(a, P::identity(3), false), 6.0);
  // Reduced at n = 3: tour 1 -> 2 -> home 3 -> 1.
  EXPECT_DOUBLE_EQ(tour_cost(a, P::identity(2), true), a.weight(2, 0) + a.weight(0, 1) + a.weight(1, 2));
}

TEST(TourCost, MatchesCycleOracle) {
  const auto inst = random_instance(6, 3, 1.0, 20.0);
  for (bool reduced : {false, true}) {
    const std::size_t d = tour_degree(inst, reduced);
    for (const auto& img : oracle::all_perms(d))
      EXPECT_DOUBLE_EQ(tour_cost(inst, oracle::to_perm(img), reduced),
                       oracle::tour_cost(inst, img, reduced));
  }
}

TEST(TourCost, RotationInvariantWithoutReduction) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto inst = random_instance(5, seed, 1.0, 10.0);
    for (const auto& img : oracle::all_perms(5)) {
      const double base = tour_cost(inst, oracle::to_perm(img), false);
      auto rotated = img;
      for (int k = 0; k < 4; ++k) {
        std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        EXPECT_NEAR(tour_cost(inst, oracle::to_perm(rotated), false), base, 1e-12);
      }
    }
  }
}

TEST(Optimum, Examples) {
  const auto flat = optimum(constant(5, 2.5), false);
  EXPECT_DOUBLE_EQ(flat.cost, 12.5);
  EXPECT_EQ(flat.rank, 0u);

  const auto best = optimum(asymmetric3(), false);
  EXPECT_DOUBLE_EQ(best.cost, 6.0);
  double brute = 1e300;
  for (const auto& img : oracle::all_perms(3))
    brute = std::min(brute, oracle::tour_cost(asymmetric3(), img, false));
  EXPECT_DOUBLE_EQ(brute, 6.0);
  EXPECT_DOUBLE_EQ(tour_cost(asymmetric3(), best.perm, false), 6.0);
}

TEST(Optimum, IsMinimalAndTieBreaksByRank) {
  const auto inst = random_instance(7, 42, 1.0, 10.0);
  const auto best = optimum(inst, true);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k)
    EXPECT_LE(best.cost, tour_cost(inst, unrank(rng() % factorial(6), 6), true));
  const auto costs = cost_by_rank(inst, true);
  for (Rank r = 0; r < best.rank; ++r) EXPECT_GT(costs[r], best.cost);
  const auto ext = tour_extremes(inst, true);
  EXPECT_EQ(ext.best.rank, best.rank);
  EXPECT_DOUBLE_EQ(ext.worst.cost, *std::max_element(costs.begin(), costs.end()));
}

TEST(Optimum, ReducedAgreesWithFull) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto inst = random_instance(n, 100 + n, 1.0, 10.0);
    EXPECT_NEAR(optimum(inst, true).cost, optimum(inst, false).cost, 1e-9) << n;
  }
}

TEST(Optimum, SizeCap) {
  EXPECT_THROW(optimum(random_instance(14, 1, 1.0, 2.0), true), SizeCapError);
}

TEST(RandomInstance, DeterministicAndInRange) {
  const auto a = random_instance(9, 7, 1.0, 10.0);
  const auto b = random_instance(9, 7, 1.0, 10.0);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_instance(9, 8, 1.0, 10.0));
  EXPECT_EQ(a.cities(), 9u);
  EXPECT_EQ(a.weights().size(), 81u);
  for (std::size_t u = 0; u < 9; ++u)
    for (std::size_t v = 0; v < 9; ++v) {
      if (u == v) continue;
      EXPECT_GE(a.weight(u, v), 1.0);
      EXPECT_LE(a.weight(u, v), 10.0);
    }
  EXPECT_THROW(random_instance(3, 1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(random_instance(3, 1, 2.0, 1.0), std::invalid_argument);
}

TEST(InstanceFile, SaveLoadRoundTrip) {
  const auto inst = random_instance(9, 5, 0.5, 3.0);
  const auto path = std::filesystem::temp_directory_path() / "feascirc_test_instance.txt";
  save_instance(inst, path);
  EXPECT_EQ(load_instance(path), inst);
  std::filesystem::remove(path);
  EXPECT_EQ(parse_instance(serialize(inst)), inst);
}

TEST(InstanceFile, ParsesHandWrittenText) {
  const auto inst = parse_instance(
      "# three cities\n"
      "n 3\n"
      "directed 1\n"
      "weights\n"
      "0 1 9\n"
      "9 0 2\n"
      "3 9 0\n");
  EXPECT_EQ(inst, asymmetric3());
  EXPECT_DOUBLE_EQ(parse_instance("n 2\ndirected 1\nweights\n0 0.1\n0.3 0\n").weight(0, 1), 0.1);
}

TEST(InstanceFile, RejectsBadInput) {
  EXPECT_THROW(parse_instance("n 2\ndirected 1\nweights\n0 0\n1 0\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\ndirected 1\nweights\n0 -1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\ndirected 1\nweights\n0 1\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\ndirected 1\nweights\n0 1 3\n1 0\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\ndirected 0\nweights\n0 1\n2 0\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\ncolour red\n"), ParseError);
  try {
    parse_instance("n 2\ndirected 1\nweights\n0 1\n1 zero\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(InstanceFile, NineCityFile) {
  std::string text = "n 9\ndirected 1\nweights\n";
  for (int u = 0; u < 9; ++u) {
    for (int v = 0; v < 9; ++v) text += (u == v ? "0 " : std::to_string(1 + (u * 9 + v) % 7) + " ");
    text += "\n";
  }
  EXPECT_EQ(parse_instance(text).cities(), 9u);
}
