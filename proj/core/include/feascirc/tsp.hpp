#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "feascirc/permutation.hpp"

namespace feascirc {

/// Complete weighted digraph on n cities. Off-diagonal weights are strictly
/// positive; the diagonal is ignored.
class TspInstance {
 public:
  TspInstance() = default;
  /// Row-major n×n matrix. Throws std::invalid_argument on a non-positive
  /// off-diagonal weight or a size mismatch.
  TspInstance(std::size_t n, std::vector<double> weights);

  std::size_t cities() const { return n_; }
  // 0-based cities.
  double weight(std::size_t from, std::size_t to) const {
    return w_[from * n_ + to];
  }
  const std::vector<double>& weights() const { return w_; }
  bool symmetric() const;

  friend bool operator==(const TspInstance&, const TspInstance&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

/// Degree of the permutations that index tours.
inline std::size_t tour_degree(const TspInstance& inst, bool reduced) {
  return reduced ? inst.cities() - 1 : inst.cities();
}

/// Cyclic tour cost. In reduced form `p` permutes cities 1..n-1 and the tour
/// starts and ends at city n. Terms are summed left to right in slot order.
double tour_cost(const TspInstance& inst, const Permutation& p, bool reduced);

struct Tour {
  Permutation perm;
  Rank rank = 0;
  double cost = 0.0;
};

inline constexpr std::size_t kMaxEnumerationDegree = 12;

/// Cheapest and most expensive tours by exhaustive enumeration over the
/// effective symmetric group; ties go to the smaller Lehmer rank.
struct TourExtremes {
  Tour best;
  Tour worst;
};
TourExtremes tour_extremes(const TspInstance& inst, bool reduced);
Tour optimum(const TspInstance& inst, bool reduced);

/// Costs of every tour indexed by Lehmer rank.
std::vector<double> cost_by_rank(const TspInstance& inst, bool reduced);

/// Weights drawn independently and uniformly from [lo, hi] using a
/// platform-independent transform of a 64-bit Mersenne twister.
TspInstance random_instance(std::size_t n, std::uint64_t seed, double lo,
                            double hi);

/// Text format:
///   n 9
///   directed 1
///   weights
///   <n rows of n decimals, diagonal written as 0>
/// `#` starts a comment.
std::string serialize(const TspInstance& inst);
TspInstance parse_instance(std::string_view text);

TspInstance load_instance(const std::filesystem::path& path);
void save_instance(const TspInstance& inst, const std::filesystem::path& path);

}  // namespace feascirc
