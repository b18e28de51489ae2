#include "feascirc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "feascirc/errors.hpp"

namespace feascirc {

namespace {

std::size_t checked_degree(const TspInstance& inst, bool reduced) {
  if (inst.cities() < (reduced ? 2u : 1u))
    throw std::invalid_argument("instance too small for the requested encoding");
  const std::size_t deg = tour_degree(inst, reduced);
  if (deg > kMaxStateDegree)
    throw SizeCapError("simulation capped at effective degree " +
                       std::to_string(kMaxStateDegree) + " (got " +
                       std::to_string(deg) + ")");
  return deg;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Bubble: return "bubble";
    case Method::BinaryInsertion: return "binary-insertion";
    case Method::Qaoa: return "qaoa";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "bubble") return Method::Bubble;
  if (text == "binary-insertion") return Method::BinaryInsertion;
  if (text == "qaoa") return Method::Qaoa;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

std::string_view to_string(EncodingKind kind) {
  return kind == EncodingKind::OneHot ? "onehot" : "compact";
}

EncodingKind parse_encoding(std::string_view text) {
  if (text == "onehot") return EncodingKind::OneHot;
  if (text == "compact") return EncodingKind::Compact;
  throw std::invalid_argument("unknown encoding '" + std::string(text) + "'");
}

std::string_view to_string(QaoaInitial init) {
  return init == QaoaInitial::Basis ? "basis" : "uniform";
}

QaoaInitial parse_qaoa_initial(std::string_view text) {
  if (text == "basis") return QaoaInitial::Basis;
  if (text == "uniform") return QaoaInitial::Uniform;
  throw std::invalid_argument("unknown QAOA initial state '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("failed to format number");
  return std::string(buf, end);
}

Ansatz::Ansatz(const TspInstance& inst, Method method, bool reduced, QaoaConfig qaoa)
    : method_(method),
      costs_((checked_degree(inst, reduced), TourCostTable(inst, reduced))),
      start_(Permutation::identity(costs_.degree())),
      qaoa_(qaoa) {
  const std::size_t deg = costs_.degree();
  switch (method) {
    case Method::Bubble:
      exhaustive_.emplace(bubble_sequence(deg));
      break;
    case Method::BinaryInsertion:
      exhaustive_.emplace(binary_insertion_sequence(deg));
      break;
    case Method::Qaoa:
      if (qaoa_.layers == 0) qaoa_.layers = default_qaoa_layers(deg);
      qaoa_circuit_.emplace(costs_, qaoa_);
      break;
  }
}

std::size_t Ansatz::parameter_count() const {
  return exhaustive_ ? exhaustive_->parameter_count()
                     : qaoa_circuit_->parameter_count();
}

const ExhaustiveCircuit* Ansatz::circuit() const {
  return exhaustive_ ? &*exhaustive_ : nullptr;
}

FeasibleState Ansatz::prepare(std::span<const double> params) const {
  if (params.size() != parameter_count())
    throw std::invalid_argument("expected " + std::to_string(parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  if (exhaustive_) return exhaustive_->run(params, start_);
  const std::size_t p = qaoa_.layers;
  return qaoa_circuit_->run(params.subspan(p, p), params.subspan(0, p), start_);
}

double Ansatz::energy(std::span<const double> params) const {
  return expectation(prepare(params), costs_);
}

ParameterDomain Ansatz::domain() const {
  ParameterDomain dom;
  dom.period.assign(parameter_count(), std::numbers::pi);
  if (qaoa_circuit_)
    std::fill_n(dom.period.begin(), static_cast<std::ptrdiff_t>(qaoa_.layers), 0.0);
  return dom;
}

std::vector<double> initial_parameters(const RunSpec& spec, std::size_t count) {
  std::vector<double> x(count, 0.0);
  if (!spec.random_init) return x;
  std::mt19937_64 rng(*spec.random_init);
  for (auto& v : x) v = std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return x;
}

RunResult run_experiment(const RunSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  if (spec.method != Method::Qaoa && spec.qaoa.layers != 0)
    throw std::invalid_argument("QAOA layers given for an exhaustive method");
  const Ansatz ansatz(spec.instance, spec.method, spec.reduced, spec.qaoa);

  RunResult result;
  result.parameters = ansatz.parameter_count();
  result.qubits = EncodingSpec{spec.instance.cities(), spec.encoding, spec.reduced}.bit_count();
  result.layers = spec.method == Method::Qaoa ? ansatz.qaoa_config().layers : 0;
  result.optimum_cost = ansatz.costs().min();

  const double cmin = ansatz.costs().min();
  const double cmax = ansatz.costs().max();
  const RatioMode mode = spec.ratio_mode;
  const RatioFn ratio = [cmin, cmax, mode](double e) {
    if (mode == RatioMode::Normalized && !(cmax > cmin)) return 1.0;
    return approximation_ratio(e, cmin, mode, cmax);
  };
  const ObjectiveFn objective = [&ansatz](std::span<const double> x) {
    return ansatz.energy(x);
  };

  const auto x0 = initial_parameters(spec, result.parameters);
  result.trace = minimize(objective, x0, spec.optimizer, ansatz.domain(), ratio);
  result.initial_ratio = result.trace.records.front().ratio;
  result.final_ratio = result.trace.final().ratio;
  result.final_state = ansatz.prepare(result.trace.final().params);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

void write_trace_csv(std::ostream& out, const OptTrace& trace, bool with_params) {
  out << "iteration,objective,ratio";
  const std::size_t d = trace.records.empty() ? 0 : trace.records.front().params.size();
  if (with_params)
    for (std::size_t i = 1; i <= d; ++i) out << ",theta_" << i;
  out << '\n';
  for (const auto& rec : trace.records) {
    out << rec.iteration << ',' << format_number(rec.objective) << ','
        << format_number(rec.ratio);
    if (with_params)
      for (double v : rec.params) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_summary(std::ostream& out, const RunSpec& spec, const RunResult& result) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.3f", result.seconds);
  out << "method: " << to_string(spec.method) << '\n';
  if (spec.method == Method::Qaoa)
    out << "qaoa_layers: " << result.layers << '\n'
        << "qaoa_init: " << to_string(spec.qaoa.initial) << '\n';
  out << "encoding: " << to_string(spec.encoding) << '\n'
      << "reduced: " << (spec.reduced ? "yes" : "no") << '\n'
      << "qubits: " << result.qubits << '\n'
      << "parameters: " << result.parameters << '\n'
      << "iterations: " << result.trace.records.size() << '\n'
      << "status: " << to_string(result.trace.status) << '\n'
      << "optimum_cost: " << format_number(result.optimum_cost) << '\n'
      << "final_objective: " << format_number(result.trace.final().objective) << '\n'
      << "initial_ratio: " << format_number(result.initial_ratio) << '\n'
      << "final_ratio: " << format_number(result.final_ratio) << '\n'
      << "wall_time_s: " << seconds << '\n';
}

std::vector<ProbabilityRow> probability_table(const FeasibleState& state,
                                              double floor, std::size_t limit) {
  const auto probs = probabilities(state);
  std::vector<Rank> order;
  for (Rank r = 0; r < probs.size(); ++r)
    if (probs[r] > floor) order.push_back(r);
  std::stable_sort(order.begin(), order.end(),
                   [&](Rank a, Rank b) { return probs[a] > probs[b]; });
  if (limit > 0 && order.size() > limit) order.resize(limit);
  std::vector<ProbabilityRow> rows;
  rows.reserve(order.size());
  for (Rank r : order) rows.push_back({probs[r], unrank(r, state.degree())});
  return rows;
}

void write_probability_csv(std::ostream& out, std::span<const ProbabilityRow> rows) {
  out << "probability,permutation\n";
  for (const auto& row : rows)
    out << format_number(row.probability) << ",\"" << to_string(row.perm) << "\"\n";
}

ReachReport reach(const TspInstance& inst, Method method, bool reduced,
                  const std::optional<Permutation>& target) {
  if (method == Method::Qaoa)
    throw std::invalid_argument("reach needs an exhaustive method (bubble or binary-insertion)");
  const Ansatz ansatz(inst, method, reduced);
  const auto& seq = ansatz.circuit()->sequence();

  ReachReport report{ansatz.start(), ansatz.start(), {}, {}, 0.0, 0.0, false};
  if (target) {
    if (target->degree() != ansatz.degree())
      throw std::invalid_argument("target must be a permutation of degree " +
                                  std::to_string(ansatz.degree()));
    report.target = *target;
  } else {
    report.target = optimum(inst, reduced).perm;
  }
  report.bits = decompose(seq, transport_element(seq, report.start, report.target));
  report.theta = reachability_params(seq, report.start, report.target);
  const auto state = ansatz.prepare(report.theta);
  report.fidelity = std::abs(state[rank(report.target)]);
  report.target_cost = ansatz.costs()(rank(report.target));
  report.target_is_optimum = report.target_cost <= ansatz.costs().min();
  return report;
}

void write_reach_report(std::ostream& out, const ReachReport& report) {
  char fid[32];
  std::snprintf(fid, sizeof fid, "%.9f", report.fidelity);
  out << "start: " << to_string(report.start) << '\n'
      << "target: " << to_string(report.target) << '\n'
      << "target_cost: " << format_number(report.target_cost)
      << (report.target_is_optimum ? " (optimal)" : "") << '\n'
      << "bitmask: ";
  for (auto b : report.bits) out << (b ? '1' : '0');
  out << "\ntheta: ";
  for (std::size_t i = 0; i < report.theta.size(); ++i)
    out << (i ? "," : "") << format_number(report.theta[i]);
  out << "\nfidelity: " << fid << '\n';
}

}  // namespace feascirc
