#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "feascirc/permutation.hpp"

namespace feascirc {

enum class EncodingKind {
  OneHot,   // n^2 bits: subregister t is the one-hot vector of the city at t
  Compact,  // n·⌈log2 n⌉ bits: subregister t holds bin(city - 1), MSB first
};

/// Bit layout of a tour. With `reduced` set, city n and slot n are dropped
/// and every quantity uses the effective degree n - 1.
struct EncodingSpec {
  std::size_t cities = 0;
  EncodingKind kind = EncodingKind::Compact;
  bool reduced = false;

  std::size_t degree() const { return reduced ? cities - 1 : cities; }
  std::size_t register_width() const;  // r = m / degree
  std::size_t bit_count() const;       // m
};

/// Bits in print order: bits[0] is position 1, the most significant bit of
/// the computational-basis index.
struct BitString {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  friend bool operator==(const BitString&, const BitString&) = default;
};

std::uint64_t to_index(const BitString& x);
BitString from_index(std::uint64_t index, std::size_t m);

BitString encode(const Permutation& p, const EncodingSpec& spec);

/// Throws InfeasibleError when a row/column constraint (one-hot) or a
/// distinct-value constraint (compact) is violated.
Permutation decode(const BitString& x, const EncodingSpec& spec);

bool is_feasible(const BitString& x, const EncodingSpec& spec);

/// Subregister t of the result is subregister element(t) of x, i.e. the
/// encoded tour is right-multiplied by `element`. Defined on every string;
/// an involution whenever `element` is.
BitString subregister_swap(const BitString& x, const Permutation& element,
                           const EncodingSpec& spec);

/// Index-level version of subregister_swap for statevector code (m <= 63).
std::uint64_t subregister_swap_index(std::uint64_t index,
                                     const Permutation& element,
                                     const EncodingSpec& spec);

/// MSB-first 0/1 characters with '|' between subregisters, e.g. "01|10|00".
std::string format_bits(const BitString& x, const EncodingSpec& spec);

}  // namespace feascirc
