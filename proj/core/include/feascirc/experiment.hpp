#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "feascirc/encoding.hpp"
#include "feascirc/feasible_sim.hpp"
#include "feascirc/optimizer.hpp"
#include "feascirc/qaoa.hpp"
#include "feascirc/tsp.hpp"

namespace feascirc {

enum class Method { Bubble, BinaryInsertion, Qaoa };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
std::string_view to_string(EncodingKind kind);
EncodingKind parse_encoding(std::string_view text);
std::string_view to_string(QaoaInitial init);
QaoaInitial parse_qaoa_initial(std::string_view text);

/// Shortest decimal that round-trips.
std::string format_number(double value);

/// Parametrised state preparation for one method. Exhaustive methods start
/// from the identity tour; QAOA parameters are laid out [γ_1..γ_p, β_1..β_p].
class Ansatz {
 public:
  /// `qaoa.layers == 0` selects default_qaoa_layers. Throws SizeCapError when
  /// the effective degree exceeds kMaxStateDegree.
  Ansatz(const TspInstance& inst, Method method, bool reduced,
         QaoaConfig qaoa = {0, QaoaInitial::Basis, true});

  Method method() const { return method_; }
  std::size_t degree() const { return costs_.degree(); }
  std::size_t parameter_count() const;
  const TourCostTable& costs() const { return costs_; }
  const Permutation& start() const { return start_; }
  /// Null for QAOA.
  const ExhaustiveCircuit* circuit() const;
  const QaoaConfig& qaoa_config() const { return qaoa_; }

  FeasibleState prepare(std::span<const double> params) const;
  double energy(std::span<const double> params) const;
  /// Period π on exhaustive angles and QAOA β; γ is unbounded.
  ParameterDomain domain() const;

 private:
  Method method_;
  TourCostTable costs_;
  Permutation start_;
  QaoaConfig qaoa_;
  std::optional<ExhaustiveCircuit> exhaustive_;
  std::optional<QaoaCircuit> qaoa_circuit_;
};

struct RunSpec {
  TspInstance instance;
  Method method = Method::Bubble;
  EncodingKind encoding = EncodingKind::Compact;
  bool reduced = true;
  QaoaConfig qaoa{0, QaoaInitial::Basis, true};
  OptConfig optimizer;
  RatioMode ratio_mode = RatioMode::OptOverExpectation;
  /// Uniform [0, π) initial parameters from this seed instead of zeros.
  std::optional<std::uint64_t> random_init;
};

struct RunResult {
  OptTrace trace;
  std::size_t parameters = 0;
  std::size_t qubits = 0;
  std::size_t layers = 0;  // QAOA only
  double optimum_cost = 0.0;
  double initial_ratio = 0.0;
  double final_ratio = 0.0;
  double seconds = 0.0;
  FeasibleState final_state{1};
};

std::vector<double> initial_parameters(const RunSpec& spec, std::size_t count);

/// Builds the ansatz, minimises the expected tour cost and records ratios.
RunResult run_experiment(const RunSpec& spec);

/// Header `iteration,objective,ratio` plus theta_1..theta_d when
/// `with_params` is set.
void write_trace_csv(std::ostream& out, const OptTrace& trace, bool with_params);

void write_summary(std::ostream& out, const RunSpec& spec, const RunResult& result);

struct ProbabilityRow {
  double probability;
  Permutation perm;
};

/// Tours sorted by descending probability (ties by rank), dropping rows at
/// or below `floor`; at most `limit` rows when limit > 0.
std::vector<ProbabilityRow> probability_table(const FeasibleState& state,
                                              double floor = 1e-12,
                                              std::size_t limit = 0);

/// Rows `probability,permutation`.
void write_probability_csv(std::ostream& out, std::span<const ProbabilityRow> rows);

struct ReachReport {
  Permutation start;
  Permutation target;
  BitMask bits;
  std::vector<double> theta;
  double fidelity = 0.0;
  double target_cost = 0.0;
  bool target_is_optimum = false;
};

/// Exact-reachability demonstration. Without a target the optimum witness is
/// used. Throws std::invalid_argument for QAOA.
ReachReport reach(const TspInstance& inst, Method method, bool reduced,
                  const std::optional<Permutation>& target);

void write_reach_report(std::ostream& out, const ReachReport& report);

}  // namespace feascirc
