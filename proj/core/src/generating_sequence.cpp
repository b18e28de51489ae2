#include "feascirc/generating_sequence.hpp"

#include <array>
#include <bitset>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "feascirc/errors.hpp"

namespace feascirc {

namespace {

using Images = std::array<std::uint8_t, 16>;

Permutation select_product(const GeneratingSequence& seq, const BitMask& bits,
                           std::size_t begin, std::size_t end) {
  auto result = Permutation::identity(seq.degree);
  for (std::size_t i = begin; i < end; ++i)
    if (bits[i]) result = compose(seq.elements[i], result);
  return result;
}

void require_structure(const GeneratingSequence& seq, std::size_t expected) {
  if (seq.size() != expected)
    throw NotDecomposableError("sequence length " + std::to_string(seq.size()) +
                               " does not match its declared kind (expected " +
                               std::to_string(expected) + ")");
}

BitMask decompose_bubble(const GeneratingSequence& seq, const Permutation& g) {
  const std::size_t n = seq.degree;
  require_structure(seq, bubble_length(n));
  BitMask bits(seq.size(), 0);
  // g = B_1 ∘ ... ∘ B_{n-1}; the pass B_{top-1} sits first in h-order. It must
  // carry the position holding value `top` up to slot `top`.
  auto rest = g;
  std::size_t pos = 0;
  for (std::size_t top = n; top >= 2; --top) {
    const std::size_t len = top - 1;
    const auto inv = inverse(rest);
    const std::size_t k = inv(top - 1);  // 0-based position of value top
    for (std::size_t j = 0; j < len; ++j) bits[pos + j] = (j >= k) ? 1 : 0;
    const auto pass = select_product(seq, bits, pos, pos + len);
    rest = compose(rest, inverse(pass));
    if (rest(top - 1) != top - 1)
      throw NotDecomposableError("bubble pass failed to fix point " +
                                 std::to_string(top));
    pos += len;
  }
  return bits;
}

BitMask decompose_insertion(const GeneratingSequence& seq,
                            const Permutation& g) {
  const std::size_t n = seq.degree;
  require_structure(seq, binary_insertion_length(n));
  BitMask bits(seq.size(), 0);
  auto rest = g;
  std::size_t end = seq.size();
  // Peel the appended block of S_k (acting on the last k points) for k = n..2.
  for (std::size_t k = n; k >= 2; --k) {
    const std::size_t offset = n - k;
    const std::size_t levels = ceil_log2(k);
    const std::size_t begin = end - levels;
    const std::size_t value = rest(offset) - offset;  // β(1) - 1
    for (std::size_t l = 0; l < levels; ++l)
      bits[begin + l] = static_cast<std::uint8_t>((value >> l) & 1u);
    const auto block = select_product(seq, bits, begin, end);
    rest = compose(inverse(block), rest);
    if (rest(offset) != offset)
      throw NotDecomposableError("insertion block failed to fix point " +
                                 std::to_string(offset + 1));
    end = begin;
  }
  return bits;
}

BitMask decompose_search(const GeneratingSequence& seq, const Permutation& g) {
  const std::size_t d = seq.size();
  if (d > kMaxVerifyLength)
    throw SizeCapError("exhaustive decomposition refused for d = " +
                       std::to_string(d));
  BitMask bits(d, 0);
  std::function<bool(std::size_t, const Permutation&)> dfs =
      [&](std::size_t i, const Permutation& prefix) -> bool {
    if (i == d) return prefix == g;
    bits[i] = 0;
    if (dfs(i + 1, prefix)) return true;
    bits[i] = 1;
    if (dfs(i + 1, compose(seq.elements[i], prefix))) return true;
    bits[i] = 0;
    return false;
  };
  if (!dfs(0, Permutation::identity(seq.degree)))
    throw NotDecomposableError(to_string(g) + " is not a product of the sequence");
  return bits;
}

}  // namespace

std::size_t ceil_log2(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

std::size_t bubble_length(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

std::size_t binary_insertion_length(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 2; i <= n; ++i) total += ceil_log2(i);
  return total;
}

GeneratingSequence bubble_sequence(std::size_t n, ActionSide side) {
  if (n < 1) throw std::invalid_argument("bubble_sequence needs n >= 1");
  GeneratingSequence seq{n, SequenceKind::Bubble, side, {}};
  seq.elements.reserve(bubble_length(n));
  for (std::size_t len = n - 1; len >= 1; --len)
    for (std::size_t j = 1; j <= len; ++j)
      seq.elements.push_back(transposition(n, j, j + 1));
  return seq;
}

Permutation insertion_block(std::size_t n, std::size_t k, std::size_t level,
                            std::size_t offset) {
  if (level < 1 || k < 2 || offset + k > n)
    throw std::invalid_argument("insertion_block arguments out of range");
  const std::size_t half = std::size_t{1} << (level - 1);
  if (half >= k) throw std::invalid_argument("insertion_block level too large");
  std::vector<std::uint8_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
  const std::size_t count = std::min(k - half, half);
  for (std::size_t j = 0; j < count; ++j)
    std::swap(img[offset + j], img[offset + j + half]);
  return Permutation::from_images(std::move(img));
}

GeneratingSequence binary_insertion_sequence(std::size_t n, ActionSide side) {
  if (n < 1)
    throw std::invalid_argument("binary_insertion_sequence needs n >= 1");
  GeneratingSequence seq{n, SequenceKind::BinaryInsertion, side, {}};
  seq.elements.reserve(binary_insertion_length(n));
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t l = 1; l <= ceil_log2(k); ++l)
      seq.elements.push_back(insertion_block(n, k, l, n - k));
  return seq;
}

Permutation recompose(const GeneratingSequence& seq, const BitMask& bits) {
  if (bits.size() != seq.size())
    throw std::invalid_argument("bit mask length " + std::to_string(bits.size()) +
                                " != sequence length " +
                                std::to_string(seq.size()));
  return select_product(seq, bits, 0, seq.size());
}

BitMask decompose(const GeneratingSequence& seq, const Permutation& g) {
  if (g.degree() != seq.degree)
    throw std::invalid_argument("decompose: degree mismatch");
  BitMask bits;
  switch (seq.kind) {
    case SequenceKind::Bubble:
      bits = decompose_bubble(seq, g);
      break;
    case SequenceKind::BinaryInsertion:
      bits = decompose_insertion(seq, g);
      break;
    case SequenceKind::Custom:
      return decompose_search(seq, g);
  }
  // A sequence may claim a kind without having its structure (e.g. a
  // hand-edited file); the recomposition is the ground truth.
  if (recompose(seq, bits) != g)
    throw NotDecomposableError("sequence does not realise " + to_string(g));
  return bits;
}

bool all_involutions(const GeneratingSequence& seq) {
  for (const auto& h : seq.elements)
    if (h.degree() != seq.degree || !h.is_involution()) return false;
  return true;
}

CoverageReport verify_generating(const GeneratingSequence& seq) {
  const std::size_t n = seq.degree;
  const std::size_t d = seq.size();
  if (d > kMaxVerifyLength)
    throw SizeCapError("exhaustive check refused for d = " + std::to_string(d) +
                       " (cap " + std::to_string(kMaxVerifyLength) + ")");
  if (n > kMaxRankDegree)
    throw SizeCapError("exhaustive check refused for n = " + std::to_string(n));
  for (const auto& h : seq.elements)
    if (h.degree() != n)
      throw std::invalid_argument("sequence element of wrong degree");

  const std::uint64_t order = factorial(n);
  std::vector<bool> hit(order, false);
  std::vector<Images> elems(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) elems[i][j] = seq.elements[i].images()[j];

  // Depth-first over the 2^d product tree; prefix[i] holds h_i^{b_i}∘...∘h_1^{b_1}.
  std::vector<Images> prefix(d + 1);
  for (std::size_t j = 0; j < n; ++j) prefix[0][j] = static_cast<std::uint8_t>(j);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == d) {
      hit[rank_images(std::span<const std::uint8_t>(prefix[d].data(), n))] = true;
      return;
    }
    prefix[i + 1] = prefix[i];
    walk(i + 1);
    for (std::size_t j = 0; j < n; ++j) prefix[i + 1][j] = elems[i][prefix[i][j]];
    walk(i + 1);
  };
  walk(0);

  CoverageReport report;
  report.group_order = order;
  for (std::uint64_t r = 0; r < order; ++r) {
    if (hit[r])
      ++report.reachable;
    else
      report.unreachable.push_back(unrank(r, n));
  }
  report.generating = report.reachable == order;
  return report;
}

std::size_t min_adjacency_length(std::size_t n) {
  if (n > 5) throw SizeCapError("min_adjacency_length is limited to n <= 5");
  if (n <= 1) return 0;
  using Set = std::bitset<120>;
  const std::size_t order = factorial(n);
  // left[j][r] = rank(τ_{j+1} ∘ unrank(r))
  std::vector<std::vector<std::uint32_t>> left(n - 1, std::vector<std::uint32_t>(order));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const auto tau = transposition(n, j + 1, j + 2);
    for (std::size_t r = 0; r < order; ++r)
      left[j][r] = static_cast<std::uint32_t>(rank(compose(tau, unrank(r, n))));
  }
  auto extend = [&](const Set& s, std::size_t j) {
    Set out = s;
    for (std::size_t r = 0; r < order; ++r)
      if (s[r]) out.set(left[j][r]);
    return out;
  };

  const std::size_t upper = bubble_length(n);
  for (std::size_t target = 1; target <= upper; ++target) {
    std::vector<std::unordered_set<Set>> seen(target + 1);
    std::function<bool(const Set&, std::size_t)> search =
        [&](const Set& s, std::size_t depth) -> bool {
      if (s.count() == order) return true;
      if (depth == target) return false;
      // Each further factor at most doubles the reachable set.
      if ((s.count() << (target - depth)) < order) return false;
      if (!seen[depth].insert(s).second) return false;
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (search(extend(s, j), depth + 1)) return true;
      return false;
    };
    Set start;
    start.set(0);
    if (search(start, 0)) return target;
  }
  return upper;
}

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Bubble: return "bubble";
    case SequenceKind::BinaryInsertion: return "binary-insertion";
    case SequenceKind::Custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(ActionSide side) {
  return side == ActionSide::Left ? "left" : "right";
}

SequenceKind parse_sequence_kind(std::string_view text) {
  if (text == "bubble") return SequenceKind::Bubble;
  if (text == "binary-insertion") return SequenceKind::BinaryInsertion;
  if (text == "custom") return SequenceKind::Custom;
  throw std::invalid_argument("unknown sequence kind '" + std::string(text) + "'");
}

ActionSide parse_action_side(std::string_view text) {
  if (text == "left") return ActionSide::Left;
  if (text == "right") return ActionSide::Right;
  throw std::invalid_argument("unknown action side '" + std::string(text) + "'");
}

std::string serialize(const GeneratingSequence& seq) {
  std::ostringstream out;
  out << "n " << seq.degree << '\n'
      << "kind " << to_string(seq.kind) << '\n'
      << "d " << seq.size() << '\n'
      << "action_side " << to_string(seq.side) << '\n';
  for (const auto& h : seq.elements) out << to_string(h) << '\n';
  return out.str();
}

GeneratingSequence parse_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  GeneratingSequence seq;
  std::size_t declared_d = 0;
  int headers = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (headers < 4) {
      std::istringstream fields(line);
      std::string key, value;
      if (!(fields >> key >> value))
        throw ParseError("expected '<key> <value>' header", lineno);
      try {
        if (key == "n") seq.degree = std::stoul(value);
        else if (key == "kind") seq.kind = parse_sequence_kind(value);
        else if (key == "d") declared_d = std::stoul(value);
        else if (key == "action_side") seq.side = parse_action_side(value);
        else throw ParseError("unknown header key '" + key + "'", lineno);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
      ++headers;
      continue;
    }
    try {
      auto p = parse_permutation(line);
      if (p.degree() != seq.degree)
        throw ParseError("element degree " + std::to_string(p.degree()) +
                             " != n " + std::to_string(seq.degree),
                         lineno);
      seq.elements.push_back(std::move(p));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (headers < 4) throw ParseError("incomplete header", lineno);
  if (seq.size() != declared_d)
    throw ParseError("declared d = " + std::to_string(declared_d) + " but found " +
                         std::to_string(seq.size()) + " elements",
                     lineno);
  return seq;
}

}  // namespace feascirc
