#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "feascirc/permutation.hpp"

namespace feascirc {

enum class SequenceKind { Bubble, BinaryInsertion, Custom };

/// Side on which sequence elements multiply a basis permutation.
/// Right multiplication is what subregister swaps realise on encoded tours.
enum class ActionSide { Left, Right };

/// Ordered list h_1, ..., h_d of involutions. h_1 is applied first: the
/// element selected by a bit mask b is h_d^{b_d} ∘ ... ∘ h_1^{b_1}.
struct GeneratingSequence {
  std::size_t degree = 0;
  SequenceKind kind = SequenceKind::Custom;
  ActionSide side = ActionSide::Right;
  std::vector<Permutation> elements;

  std::size_t size() const { return elements.size(); }
};

using BitMask = std::vector<std::uint8_t>;

// ⌈log2 n⌉, with ceil_log2(1) == 0.
std::size_t ceil_log2(std::size_t n);

std::size_t bubble_length(std::size_t n);            // n(n-1)/2
std::size_t binary_insertion_length(std::size_t n);  // sum_{i=2}^n ⌈log2 i⌉

/// Adjacency transpositions grouped in passes. The pass over τ_1..τ_{n-1}
/// comes first, then τ_1..τ_{n-2}, down to the single τ_1; inside a pass τ_1
/// is applied earliest.
GeneratingSequence bubble_sequence(std::size_t n,
                                   ActionSide side = ActionSide::Right);

/// Built inductively from the empty sequence of S_1: at step k the previous
/// sequence is shifted onto {2, ..., k} and the block involutions
/// π_1, ..., π_{⌈log2 k⌉} of S_k are appended, where π_l swaps j and j + 2^{l-1}
/// for every j <= min(k - 2^{l-1}, 2^{l-1}).
GeneratingSequence binary_insertion_sequence(
    std::size_t n, ActionSide side = ActionSide::Right);

/// The block involution π_l of S_k, shifted up by `offset` points.
Permutation insertion_block(std::size_t n, std::size_t k, std::size_t level,
                            std::size_t offset);

/// Ordered product h_d^{b_d} ∘ ... ∘ h_1^{b_1}.
Permutation recompose(const GeneratingSequence& seq, const BitMask& bits);

/// A bit mask whose recomposition is `g`. Bubble and binary-insertion
/// sequences use their constructive procedures; custom sequences fall back to
/// exhaustive search (capped at d <= 24). Throws NotDecomposableError when no
/// mask exists.
BitMask decompose(const GeneratingSequence& seq, const Permutation& g);

bool all_involutions(const GeneratingSequence& seq);

struct CoverageReport {
  bool generating = false;
  std::uint64_t group_order = 0;
  std::uint64_t reachable = 0;
  std::vector<Permutation> unreachable;
};

inline constexpr std::size_t kMaxVerifyLength = 24;

/// Enumerates all 2^d products. Throws SizeCapError when d > 24.
CoverageReport verify_generating(const GeneratingSequence& seq);

/// Shortest generating sequence made only of adjacency transpositions,
/// found by iterative deepening. Only meant for n <= 5.
std::size_t min_adjacency_length(std::size_t n);

std::string_view to_string(SequenceKind kind);
std::string_view to_string(ActionSide side);
SequenceKind parse_sequence_kind(std::string_view text);
ActionSide parse_action_side(std::string_view text);

/// Header lines `n`, `kind`, `d`, `action_side`, followed by one permutation
/// per line in one-line notation.
std::string serialize(const GeneratingSequence& seq);
GeneratingSequence parse_sequence(std::string_view text);

}  // namespace feascirc
