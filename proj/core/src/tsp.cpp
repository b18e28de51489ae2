#include "feascirc/tsp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "feascirc/errors.hpp"

namespace feascirc {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("failed to format weight");
  return std::string(buf, ptr);
}

void require_enumerable(std::size_t degree) {
  if (degree > kMaxEnumerationDegree)
    throw SizeCapError("exhaustive tour enumeration capped at degree " +
                       std::to_string(kMaxEnumerationDegree) + ", got " +
                       std::to_string(degree));
  if (degree == 0) throw std::invalid_argument("tour of degree 0");
}

// Cost of the tour whose 0-based slot images are `slots`.
double cost_of(const TspInstance& inst, std::span<const std::uint8_t> slots,
               bool reduced) {
  const std::size_t k = slots.size();
  double total = 0.0;
  if (reduced) {
    const std::size_t home = inst.cities() - 1;
    total += inst.weight(home, slots[0]);
    for (std::size_t t = 0; t + 1 < k; ++t)
      total += inst.weight(slots[t], slots[t + 1]);
    total += inst.weight(slots[k - 1], home);
  } else {
    for (std::size_t t = 0; t + 1 < k; ++t)
      total += inst.weight(slots[t], slots[t + 1]);
    if (k > 1) total += inst.weight(slots[k - 1], slots[0]);
  }
  return total;
}

}  // namespace

TspInstance::TspInstance(std::size_t n, std::vector<double> weights)
    : n_(n), w_(std::move(weights)) {
  if (n == 0) throw std::invalid_argument("instance needs at least one city");
  if (w_.size() != n * n)
    throw std::invalid_argument("weight matrix must have n*n entries");
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      double& w = w_[u * n + v];
      if (u == v) {
        w = 0.0;
        continue;
      }
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("weight w(" + std::to_string(u + 1) + "," +
                                    std::to_string(v + 1) +
                                    ") must be positive and finite");
    }
  }
}

bool TspInstance::symmetric() const {
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (weight(u, v) != weight(v, u)) return false;
  return true;
}

double tour_cost(const TspInstance& inst, const Permutation& p, bool reduced) {
  if (p.degree() != tour_degree(inst, reduced) || p.degree() == 0)
    throw std::invalid_argument(
        "tour_cost: permutation degree " + std::to_string(p.degree()) +
        " does not match " + (reduced ? "reduced" : "full") + " degree " +
        std::to_string(tour_degree(inst, reduced)));
  return cost_of(inst, p.images(), reduced);
}

std::vector<double> cost_by_rank(const TspInstance& inst, bool reduced) {
  const std::size_t k = tour_degree(inst, reduced);
  require_enumerable(k);
  std::vector<double> costs(factorial(k));
  // next_permutation walks S_k in lexicographic order, which is rank order.
  std::vector<std::uint8_t> slots(k);
  for (std::size_t i = 0; i < k; ++i) slots[i] = static_cast<std::uint8_t>(i);
  for (std::size_t r = 0; r < costs.size(); ++r) {
    costs[r] = cost_of(inst, slots, reduced);
    std::next_permutation(slots.begin(), slots.end());
  }
  return costs;
}

TourExtremes tour_extremes(const TspInstance& inst, bool reduced) {
  const std::size_t k = tour_degree(inst, reduced);
  const auto costs = cost_by_rank(inst, reduced);
  Rank best = 0, worst = 0;
  for (Rank r = 1; r < costs.size(); ++r) {
    if (costs[r] < costs[best]) best = r;
    if (costs[r] > costs[worst]) worst = r;
  }
  return {{unrank(best, k), best, costs[best]},
          {unrank(worst, k), worst, costs[worst]}};
}

Tour optimum(const TspInstance& inst, bool reduced) {
  return tour_extremes(inst, reduced).best;
}

TspInstance random_instance(std::size_t n, std::uint64_t seed, double lo,
                            double hi) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw std::invalid_argument("random_instance needs 0 < lo <= hi");
  if (n == 0) throw std::invalid_argument("random_instance needs n >= 1");
  std::mt19937_64 gen(seed);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      // 53 random bits -> [0, 1]
      const double unit =
          static_cast<double>(gen() >> 11) / static_cast<double>((1ULL << 53) - 1);
      w[u * n + v] = std::clamp(lo + (hi - lo) * unit, lo, hi);
    }
  }
  return TspInstance(n, std::move(w));
}

std::string serialize(const TspInstance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.cities();
  out << "n " << n << '\n'
      << "directed " << (inst.symmetric() ? 0 : 1) << '\n'
      << "weights\n";
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v) out << ' ';
      out << format_double(inst.weight(u, v));
    }
    out << '\n';
  }
  return out.str();
}

TspInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  int directed = -1;
  bool in_weights = false;
  std::vector<double> w;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;

    if (!in_weights) {
      std::string value;
      if (first == "weights") {
        if (n == 0) throw ParseError("'weights' before 'n'", lineno);
        in_weights = true;
        continue;
      }
      if (!(fields >> value)) throw ParseError("missing value for '" + first + "'", lineno);
      if (first == "n") {
        try {
          n = std::stoul(value);
        } catch (const std::exception&) {
          throw ParseError("bad city count '" + value + "'", lineno);
        }
        if (n == 0) throw ParseError("city count must be positive", lineno);
      } else if (first == "directed") {
        if (value != "0" && value != "1")
          throw ParseError("directed must be 0 or 1", lineno);
        directed = value == "1";
      } else {
        throw ParseError("unknown key '" + first + "'", lineno);
      }
      continue;
    }

    if (rows == n) throw ParseError("more than n weight rows", lineno);
    std::vector<std::string> tokens{first};
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.size() != n)
      throw ParseError("row " + std::to_string(rows + 1) + " has " +
                           std::to_string(tokens.size()) + " fields, expected " +
                           std::to_string(n),
                       lineno);
    for (std::size_t col = 0; col < n; ++col) {
      const auto& tok = tokens[col];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("field " + std::to_string(col + 1) + ": not a number '" +
                             tok + "'",
                         lineno);
      if (col != rows && !(v > 0.0 && std::isfinite(v)))
        throw ParseError("field " + std::to_string(col + 1) + ": weight w(" +
                             std::to_string(rows + 1) + "," +
                             std::to_string(col + 1) + ") must be positive",
                         lineno);
      w.push_back(v);
    }
    ++rows;
  }
  if (n == 0) throw ParseError("missing 'n'", lineno);
  if (!in_weights) throw ParseError("missing 'weights' section", lineno);
  if (rows != n)
    throw ParseError("expected " + std::to_string(n) + " weight rows, found " +
                         std::to_string(rows),
                     lineno);
  TspInstance inst(n, std::move(w));
  if (directed == 0 && !inst.symmetric())
    throw ParseError("'directed 0' but the weight matrix is not symmetric", lineno);
  return inst;
}

TspInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const TspInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file " + path.string());
  out << serialize(inst);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace feascirc
