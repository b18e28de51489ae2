#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace feascirc {

// Largest degree for which ranks are handed out. 12! < 2^29.
inline constexpr std::size_t kMaxRankDegree = 12;

// Index of a permutation in the Lehmer (factorial number system) ordering.
using Rank = std::uint64_t;

std::uint64_t factorial(std::size_t n);

/// A bijection on {0, ..., n-1}, stored in one-line notation.
///
/// Internally everything is 0-based; `from_one_line` and `to_string` use the
/// 1-based convention that external interfaces print.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n);

  // Validating constructors. Throw std::invalid_argument on a non-bijection.
  static Permutation from_images(std::vector<std::uint8_t> images);
  static Permutation from_one_line(std::span<const int> one_based);
  static Permutation from_one_line(std::initializer_list<int> one_based);

  std::size_t degree() const { return image_.size(); }

  // 0-based image.
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  std::span<const std::uint8_t> images() const { return image_; }

  bool is_identity() const;
  bool is_involution() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::uint8_t> images)
      : image_(std::move(images)) {}

  std::vector<std::uint8_t> image_;
};

/// (p ∘ q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

/// Transposition exchanging i and j (1-based, i < j <= n).
Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

/// The reversal i -> n + 1 - i.
Permutation reversal(std::size_t n);

Rank rank(const Permutation& p);
// Unchecked fast path over raw 0-based images (degree <= kMaxRankDegree).
Rank rank_images(std::span<const std::uint8_t> images);
Permutation unrank(Rank r, std::size_t n);

/// Number of pairs i < j with p(i) > p(j).
std::size_t inversion_number(const Permutation& p);

/// Comma-separated 1-based one-line notation, e.g. "2,3,1".
std::string to_string(const Permutation& p);
Permutation parse_permutation(std::string_view text);

}  // namespace feascirc
