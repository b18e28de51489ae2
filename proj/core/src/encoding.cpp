#include "feascirc/encoding.hpp"

#include <stdexcept>

#include "feascirc/errors.hpp"
#include "feascirc/generating_sequence.hpp"

namespace feascirc {

namespace {

void require_size(const BitString& x, const EncodingSpec& spec) {
  if (x.size() != spec.bit_count())
    throw std::invalid_argument("bit string has " + std::to_string(x.size()) +
                                " bits, encoding expects " +
                                std::to_string(spec.bit_count()));
}

}  // namespace

std::size_t EncodingSpec::register_width() const {
  const std::size_t n = degree();
  return kind == EncodingKind::OneHot ? n : ceil_log2(n);
}

std::size_t EncodingSpec::bit_count() const { return degree() * register_width(); }

std::uint64_t to_index(const BitString& x) {
  if (x.size() > 63) throw std::out_of_range("bit string too long for an index");
  std::uint64_t index = 0;
  for (auto b : x.bits) index = (index << 1) | (b & 1u);
  return index;
}

BitString from_index(std::uint64_t index, std::size_t m) {
  BitString x{std::vector<std::uint8_t>(m)};
  for (std::size_t k = 0; k < m; ++k)
    x.bits[k] = static_cast<std::uint8_t>((index >> (m - 1 - k)) & 1u);
  return x;
}

BitString encode(const Permutation& p, const EncodingSpec& spec) {
  const std::size_t n = spec.degree();
  if (p.degree() != n)
    throw std::invalid_argument("encode: permutation degree " +
                                std::to_string(p.degree()) + " != " +
                                std::to_string(n));
  const std::size_t r = spec.register_width();
  BitString x{std::vector<std::uint8_t>(spec.bit_count(), 0)};
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t city = p(t);
    if (spec.kind == EncodingKind::OneHot) {
      x.bits[t * r + city] = 1;
    } else {
      for (std::size_t k = 0; k < r; ++k)
        x.bits[t * r + k] = static_cast<std::uint8_t>((city >> (r - 1 - k)) & 1u);
    }
  }
  return x;
}

Permutation decode(const BitString& x, const EncodingSpec& spec) {
  require_size(x, spec);
  const std::size_t n = spec.degree();
  const std::size_t r = spec.register_width();
  std::vector<std::uint8_t> img(n);
  std::vector<bool> used(n, false);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t city = 0;
    if (spec.kind == EncodingKind::OneHot) {
      std::size_t ones = 0;
      for (std::size_t u = 0; u < r; ++u)
        if (x.bits[t * r + u]) {
          ++ones;
          city = u;
        }
      if (ones != 1)
        throw InfeasibleError("slot " + std::to_string(t + 1) + " holds " +
                              std::to_string(ones) + " cities");
    } else {
      for (std::size_t k = 0; k < r; ++k) city = (city << 1) | x.bits[t * r + k];
      if (city >= n)
        throw InfeasibleError("slot " + std::to_string(t + 1) +
                              " holds out-of-range city " +
                              std::to_string(city + 1));
    }
    if (used[city])
      throw InfeasibleError("city " + std::to_string(city + 1) +
                            " visited more than once");
    used[city] = true;
    img[t] = static_cast<std::uint8_t>(city);
  }
  return Permutation::from_images(std::move(img));
}

bool is_feasible(const BitString& x, const EncodingSpec& spec) {
  if (x.size() != spec.bit_count()) return false;
  try {
    decode(x, spec);
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

BitString subregister_swap(const BitString& x, const Permutation& element,
                           const EncodingSpec& spec) {
  require_size(x, spec);
  if (element.degree() != spec.degree())
    throw std::invalid_argument("subregister_swap: element degree mismatch");
  const std::size_t r = spec.register_width();
  BitString out = x;
  for (std::size_t t = 0; t < spec.degree(); ++t) {
    const std::size_t src = element(t);
    for (std::size_t k = 0; k < r; ++k) out.bits[t * r + k] = x.bits[src * r + k];
  }
  return out;
}

std::uint64_t subregister_swap_index(std::uint64_t index,
                                     const Permutation& element,
                                     const EncodingSpec& spec) {
  const std::size_t n = spec.degree();
  const std::size_t r = spec.register_width();
  const std::size_t m = n * r;
  if (m > 63) throw std::out_of_range("index form needs m <= 63");
  const std::uint64_t reg_mask = (r == 64) ? ~0ULL : ((1ULL << r) - 1);
  // Slot t occupies index bits [m - (t+1) r, m - t r).
  auto shift = [&](std::size_t t) { return m - (t + 1) * r; };
  std::uint64_t out = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint64_t value = (index >> shift(element(t))) & reg_mask;
    out |= value << shift(t);
  }
  return out;
}

std::string format_bits(const BitString& x, const EncodingSpec& spec) {
  require_size(x, spec);
  const std::size_t r = spec.register_width();
  std::string out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k && r && k % r == 0) out += '|';
    out += x.bits[k] ? '1' : '0';
  }
  return out;
}

}  // namespace feascirc
