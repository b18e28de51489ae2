#include "feascirc/permutation.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace feascirc {

namespace {

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
  std::array<std::uint64_t, 21> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}();

void require_bijection(std::span<const std::uint8_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v])
      throw std::invalid_argument("not a permutation of [n]");
    seen[v] = true;
  }
}

void require_same_degree(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("permutation degree mismatch: " +
                                std::to_string(p.degree()) + " vs " +
                                std::to_string(q.degree()));
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  if (n >= kFactorials.size()) throw std::out_of_range("factorial overflow");
  return kFactorials[n];
}

Permutation Permutation::identity(std::size_t n) {
  if (n > 255) throw std::invalid_argument("degree above 255");
  std::vector<std::uint8_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::vector<std::uint8_t> images) {
  require_bijection(images);
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_line(std::span<const int> one_based) {
  if (one_based.size() > 255) throw std::invalid_argument("degree above 255");
  std::vector<std::uint8_t> img(one_based.size());
  for (std::size_t i = 0; i < one_based.size(); ++i) {
    const int v = one_based[i];
    if (v < 1 || static_cast<std::size_t>(v) > one_based.size())
      throw std::invalid_argument("one-line value out of range: " +
                                  std::to_string(v));
    img[i] = static_cast<std::uint8_t>(v - 1);
  }
  return from_images(std::move(img));
}

Permutation Permutation::from_one_line(std::initializer_list<int> one_based) {
  return from_one_line(std::span<const int>(one_based.begin(), one_based.size()));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

bool Permutation::is_involution() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[image_[i]] != i) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q);
  std::vector<std::uint8_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = static_cast<std::uint8_t>(p(q(i)));
  return Permutation::from_images(std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::uint8_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[p(i)] = static_cast<std::uint8_t>(i);
  return Permutation::from_images(std::move(img));
}

Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw std::invalid_argument("transposition indices must be distinct and in [1, n]");
  std::vector<std::uint8_t> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<std::uint8_t>(k);
  std::swap(v[i - 1], v[j - 1]);
  return Permutation::from_images(std::move(v));
}

Permutation reversal(std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>(n - 1 - i);
  return Permutation::from_images(std::move(v));
}

Rank rank(const Permutation& p) {
  if (p.degree() > kMaxRankDegree)
    throw std::out_of_range("ranking capped at degree " +
                            std::to_string(kMaxRankDegree));
  return rank_images(p.images());
}

Rank rank_images(std::span<const std::uint8_t> images) {
  const std::size_t n = images.size();
  // Lehmer digit i = number of values smaller than p(i) not yet used.
  std::uint32_t used = 0;
  Rank r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = images[i];
    const auto smaller_used =
        static_cast<std::uint32_t>(std::popcount(used & ((1u << v) - 1u)));
    r += (v - smaller_used) * kFactorials[n - 1 - i];
    used |= 1u << v;
  }
  return r;
}

Permutation unrank(Rank r, std::size_t n) {
  if (n > kMaxRankDegree)
    throw std::out_of_range("ranking capped at degree " +
                            std::to_string(kMaxRankDegree));
  if (r >= kFactorials[n])
    throw std::out_of_range("rank " + std::to_string(r) + " >= " +
                            std::to_string(n) + "!");
  std::vector<std::uint8_t> img(n);
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rank f = kFactorials[n - 1 - i];
    auto digit = static_cast<std::uint32_t>(r / f);
    r %= f;
    // digit-th unused value
    std::uint32_t v = 0;
    for (;; ++v) {
      if (used & (1u << v)) continue;
      if (digit == 0) break;
      --digit;
    }
    img[i] = static_cast<std::uint8_t>(v);
    used |= 1u << v;
  }
  return Permutation::from_images(std::move(img));
}

std::size_t inversion_number(const Permutation& p) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.degree(); ++i)
    for (std::size_t j = i + 1; j < p.degree(); ++j)
      if (p(i) > p(j)) ++count;
  return count;
}

std::string to_string(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p(i) + 1);
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r'))
      field.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw std::invalid_argument("malformed permutation field '" +
                                  std::string(field) + "'");
    values.push_back(v);
    pos = comma + 1;
  }
  return Permutation::from_one_line(values);
}

}  // namespace feascirc
