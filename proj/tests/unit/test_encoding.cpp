#include <gtest/gtest.h>

#include <random>

#include "feascirc/encoding.hpp"
#include "feascirc/errors.hpp"
#include "feascirc/generating_sequence.hpp"
#include "oracles.hpp"

using namespace feascirc;
using P = Permutation;

namespace {

BitString bits(std::initializer_list<int> v) {
  BitString x;
  for (int b : v) x.bits.push_back(static_cast<std::uint8_t>(b));
  return x;
}

// Subregister t of a compact string as an integer.
std::size_t subregister(const BitString& x, const EncodingSpec& spec, std::size_t t) {
  const std::size_t r = spec.register_width();
  std::size_t v = 0;
  for (std::size_t k = 0; k < r; ++k) v = 2 * v + x.bits[t * r + k];
  return v;
}

}  // namespace

TEST(EncodingSpec, BitCounts) {
  EXPECT_EQ((EncodingSpec{3, EncodingKind::OneHot, false}.bit_count()), 9u);
  EXPECT_EQ((EncodingSpec{4, EncodingKind::Compact, false}.bit_count()), 8u);
  EXPECT_EQ((EncodingSpec{9, EncodingKind::Compact, true}.bit_count()), 24u);
  EXPECT_EQ((EncodingSpec{9, EncodingKind::OneHot, true}.bit_count()), 64u);
  EXPECT_EQ((EncodingSpec{5, EncodingKind::Compact, false}.register_width()), 3u);
}

TEST(Encode, Examples) {
  const EncodingSpec oh{2, EncodingKind::OneHot, false};
  EXPECT_EQ(encode(P::identity(2), oh), bits({1, 0, 0, 1}));

  const EncodingSpec c5{5, EncodingKind::Compact, false};
  const auto id = encode(P::identity(5), c5);
  for (std::size_t t = 0; t < 5; ++t) EXPECT_EQ(subregister(id, c5, t), t);

  const EncodingSpec c2{2, EncodingKind::Compact, false};
  EXPECT_EQ(encode(P::from_one_line({2, 1}), c2), bits({1, 0}));
}

TEST(Encode, OneHotBitPositions) {
  // Bit (t-1)n + u is set iff σ(t) = u (1-based, position 1 first).
  const EncodingSpec oh{3, EncodingKind::OneHot, false};
  EXPECT_EQ(encode(P::from_one_line({2, 3, 1}), oh), bits({0, 1, 0, 0, 0, 1, 1, 0, 0}));
}

TEST(Decode, RoundTripBothKinds) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (auto kind : {EncodingKind::OneHot, EncodingKind::Compact})
      for (bool reduced : {false, true}) {
        const EncodingSpec spec{n + (reduced ? 1 : 0), kind, reduced};
        for (const auto& img : oracle::all_perms(n)) {
          const auto p = oracle::to_perm(img);
          const auto x = encode(p, spec);
          ASSERT_EQ(x.size(), spec.bit_count());
          ASSERT_TRUE(is_feasible(x, spec));
          ASSERT_EQ(decode(x, spec), p);
        }
      }
}

TEST(Decode, RejectsInfeasibleStrings) {
  const EncodingSpec oh{3, EncodingKind::OneHot, false};
  EXPECT_THROW(decode(BitString{std::vector<std::uint8_t>(9, 0)}, oh), InfeasibleError);
  EXPECT_THROW(decode(bits({1, 1, 0, 0, 1, 0, 0, 0, 1}), oh), InfeasibleError);
  // Column constraint: city 1 visited twice.
  EXPECT_THROW(decode(bits({1, 0, 0, 1, 0, 0, 0, 0, 1}), oh), InfeasibleError);
  const EncodingSpec c3{3, EncodingKind::Compact, false};
  // Value 3 (binary 11) is out of range for n = 3.
  EXPECT_THROW(decode(bits({0, 0, 0, 1, 1, 1}), c3), InfeasibleError);
  EXPECT_THROW(decode(bits({0, 0, 0, 0, 1, 0}), c3), InfeasibleError);
}

TEST(IsFeasible, CountsMatchFactorial) {
  auto count = [](const EncodingSpec& spec) {
    std::size_t c = 0;
    for (std::uint64_t i = 0; i < (1ULL << spec.bit_count()); ++i)
      if (is_feasible(from_index(i, spec.bit_count()), spec)) ++c;
    return c;
  };
  EXPECT_EQ(count({3, EncodingKind::OneHot, false}), 6u);
  EXPECT_EQ(count({4, EncodingKind::Compact, false}), 24u);
  EXPECT_EQ(count({4, EncodingKind::OneHot, false}), 24u);
  EXPECT_EQ(count({3, EncodingKind::Compact, false}), 6u);
  EXPECT_EQ(count({5, EncodingKind::OneHot, true}), 24u);
}

TEST(BitIndex, MostSignificantFirst) {
  EXPECT_EQ(to_index(bits({1, 0, 0})), 4u);
  EXPECT_EQ(from_index(6, 4), bits({0, 1, 1, 0}));
  for (std::uint64_t i = 0; i < 64; ++i) EXPECT_EQ(to_index(from_index(i, 6)), i);
}

TEST(SubregisterSwap, Examples) {
  const EncodingSpec c3{3, EncodingKind::Compact, false};
  const auto t1 = transposition(3, 1, 2);
  const auto x = encode(P::identity(3), c3);
  EXPECT_EQ(subregister_swap(x, t1, c3), encode(compose(decode(x, c3), t1), c3));

  const EncodingSpec c4{4, EncodingKind::Compact, false};
  const auto pi2 = insertion_block(4, 4, 2, 0);
  const auto y = subregister_swap(encode(P::identity(4), c4), pi2, c4);
  const std::size_t expect[] = {3, 4, 1, 2};
  for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(subregister(y, c4, t) + 1, expect[t]);
}

TEST(SubregisterSwap, IsInvolutiveBijectionOnAllStrings) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 4; ++n)
    for (auto kind : {EncodingKind::OneHot, EncodingKind::Compact}) {
      const EncodingSpec spec{n, kind, false};
      const std::size_t m = spec.bit_count();
      for (const auto& seq : {bubble_sequence(n), binary_insertion_sequence(n)})
        for (const auto& h : seq.elements) {
          for (int k = 0; k < 1000; ++k) {
            const auto x = from_index(rng() & ((1ULL << m) - 1), m);
            const auto y = subregister_swap(x, h, spec);
            ASSERT_EQ(subregister_swap(y, h, spec), x);
            ASSERT_EQ(to_index(y), subregister_swap_index(to_index(x), h, spec));
          }
          if (m <= 16) {
            std::vector<bool> hit(1ULL << m, false);
            for (std::uint64_t i = 0; i < hit.size(); ++i) hit[subregister_swap_index(i, h, spec)] = true;
            EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
          }
        }
    }
}

TEST(SubregisterSwap, RealisesRightMultiplicationOnFeasibleStrings) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (auto kind : {EncodingKind::OneHot, EncodingKind::Compact}) {
      const EncodingSpec spec{n, kind, false};
      for (const auto& seq : {bubble_sequence(n), binary_insertion_sequence(n)})
        for (const auto& h : seq.elements)
          for (const auto& img : oracle::all_perms(n)) {
            const auto p = oracle::to_perm(img);
            const auto y = subregister_swap(encode(p, spec), h, spec);
            ASSERT_TRUE(is_feasible(y, spec));
            ASSERT_EQ(decode(y, spec), compose(p, h));
          }
    }
}

TEST(FormatBits, SeparatesSubregisters) {
  const EncodingSpec c3{3, EncodingKind::Compact, false};
  EXPECT_EQ(format_bits(encode(P::from_one_line({2, 3, 1}), c3), c3), "01|10|00");
  const EncodingSpec oh{2, EncodingKind::OneHot, false};
  EXPECT_EQ(format_bits(encode(P::identity(2), oh), oh), "10|01");
}
