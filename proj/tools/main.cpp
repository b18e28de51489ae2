#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "feascirc/encoding.hpp"
#include "feascirc/errors.hpp"
#include "feascirc/experiment.hpp"
#include "feascirc/generating_sequence.hpp"
#include "feascirc/tsp.hpp"
#include "feascirc/verify.hpp"

namespace fc = feascirc;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitSizeCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceArgs {
  std::string path;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  double lo = 1.0;
  double hi = 10.0;
  CLI::Option* path_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  void add(CLI::App* app) {
    path_opt = app->add_option("--instance", path, "Instance file")->check(CLI::ExistingFile);
    n_opt = app->add_option("--n", n, "Generate a random instance with N cities");
    app->add_option("--seed", seed, "Seed for the random instance")->capture_default_str();
    app->add_option("--lo", lo, "Smallest random weight")->capture_default_str();
    app->add_option("--hi", hi, "Largest random weight")->capture_default_str();
    path_opt->excludes(n_opt);
  }

  fc::TspInstance load() const {
    if (*path_opt) return fc::load_instance(path);
    if (*n_opt) return fc::random_instance(n, seed, lo, hi);
    throw UsageError("either --instance PATH or --n N is required");
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustively parametrised feasibility-respecting circuits for the TSP"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "feascirc 0.1.0");

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "Write a random instance");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  double gen_lo = 1.0, gen_hi = 10.0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of cities")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--lo", gen_lo, "Smallest weight (must be > 0)")->capture_default_str();
  gen->add_option("--hi", gen_hi, "Largest weight")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

  // solve-exact
  auto* solve = app.add_subcommand("solve-exact", "Print the optimal tour by enumeration");
  InstanceArgs solve_inst;
  bool solve_reduced = true;
  solve_inst.add(solve);
  solve->add_flag("--reduced,!--no-reduced", solve_reduced,
                  "Fix the last city as the tour's home");

  // run
  auto* run = app.add_subcommand("run", "Optimise a parametrised circuit");
  InstanceArgs run_inst;
  run_inst.add(run);
  std::string encoding = "compact", method = "bubble", qaoa_init = "basis";
  std::string ratio_mode = "opt-over-exp";
  bool run_reduced = true, dump_params = false;
  std::size_t qaoa_layers = 0;
  fc::OptConfig opt;
  std::uint64_t random_init = 0;
  std::string run_out, probs_out;
  std::size_t probs_top = 0;
  run->add_option("--encoding", encoding, "Qubit encoding")
      ->check(CLI::IsMember({"onehot", "compact"}))->capture_default_str();
  run->add_flag("--reduced,!--no-reduced", run_reduced, "Fix the last city as the tour's home");
  run->add_option("--method", method, "State preparation")
      ->check(CLI::IsMember({"bubble", "binary-insertion", "qaoa"}))->capture_default_str();
  auto* layers_opt = run->add_option("--qaoa-layers", qaoa_layers,
                                     "QAOA layers (default ceil((n-1)/2))")
                         ->check(CLI::PositiveNumber);
  auto* init_opt = run->add_option("--qaoa-init", qaoa_init, "QAOA initial state")
                       ->check(CLI::IsMember({"basis", "uniform"}));
  run->add_option("--max-iters", opt.max_iters, "Iteration cap")
      ->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--grad-threshold", opt.grad_threshold, "Gradient-norm threshold")
      ->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--grad-window", opt.grad_window,
                  "Consecutive small-gradient iterations before stopping")
      ->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--init-step", opt.init_step, "Initial trust radius")
      ->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--ratio", ratio_mode, "Approximation ratio definition")
      ->check(CLI::IsMember({"opt-over-exp", "normalized"}))->capture_default_str();
  auto* random_opt = run->add_option("--random-init", random_init,
                                     "Random initial parameters from this seed");
  run->add_option("--out", run_out, "Trace CSV path (stdout when omitted)");
  run->add_flag("--dump-params", dump_params, "Append parameter columns to the trace");
  run->add_option("--probs", probs_out, "Write the final tour distribution as CSV");
  run->add_option("--top", probs_top, "Keep only the K most likely tours in --probs");

  // reach
  auto* reach = app.add_subcommand("reach", "Prepare a target tour exactly");
  InstanceArgs reach_inst;
  reach_inst.add(reach);
  bool reach_reduced = true;
  std::string reach_method = "bubble", reach_encoding = "compact", target_text;
  reach->add_flag("--reduced,!--no-reduced", reach_reduced, "Fix the last city as the tour's home");
  reach->add_option("--method", reach_method, "Exhaustive circuit")
      ->check(CLI::IsMember({"bubble", "binary-insertion", "qaoa"}))->capture_default_str();
  reach->add_option("--encoding", reach_encoding, "Encoding used to print the target bits")
      ->check(CLI::IsMember({"onehot", "compact"}))->capture_default_str();
  reach->add_option("--target", target_text,
                    "Target permutation, 1-based (default: the optimal tour)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the property checks");
  std::string level = "quick", seq_path;
  verify->add_option("--level", level, "Check depth")
      ->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  verify->add_option("--sequence", seq_path, "Also check a serialized generating sequence")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const auto inst = fc::random_instance(gen_n, gen_seed, gen_lo, gen_hi);
      if (gen_out.empty())
        std::cout << fc::serialize(inst);
      else
        fc::save_instance(inst, gen_out);
      return 0;
    }

    if (*solve) {
      const auto inst = solve_inst.load();
      const auto best = fc::optimum(inst, solve_reduced);
      std::cout << fc::format_number(best.cost) << ' ' << fc::to_string(best.perm) << '\n';
      return 0;
    }

    if (*run) {
      fc::RunSpec spec;
      spec.instance = run_inst.load();
      spec.method = fc::parse_method(method);
      spec.encoding = fc::parse_encoding(encoding);
      spec.reduced = run_reduced;
      if (spec.method != fc::Method::Qaoa && (*layers_opt || *init_opt))
        throw UsageError("--qaoa-layers and --qaoa-init need --method qaoa");
      spec.qaoa.layers = qaoa_layers;
      spec.qaoa.initial = fc::parse_qaoa_initial(qaoa_init);
      spec.optimizer = opt;
      spec.ratio_mode = ratio_mode == "normalized" ? fc::RatioMode::Normalized
                                                   : fc::RatioMode::OptOverExpectation;
      if (*random_opt) spec.random_init = random_init;

      const auto result = fc::run_experiment(spec);
      std::ostringstream trace;
      fc::write_trace_csv(trace, result.trace, dump_params);
      if (run_out.empty()) {
        std::cout << trace.str();
        fc::write_summary(std::cerr, spec, result);
      } else {
        write_text(run_out, trace.str());
        fc::write_summary(std::cout, spec, result);
      }
      if (!probs_out.empty()) {
        std::ostringstream probs;
        const auto rows = fc::probability_table(result.final_state, 1e-12, probs_top);
        fc::write_probability_csv(probs, rows);
        write_text(probs_out, probs.str());
      }
      return 0;
    }

    if (*reach) {
      const auto inst = reach_inst.load();
      std::optional<fc::Permutation> target;
      if (!target_text.empty()) target = fc::parse_permutation(target_text);
      const auto report = fc::reach(inst, fc::parse_method(reach_method), reach_reduced, target);
      fc::write_reach_report(std::cout, report);
      const fc::EncodingSpec spec{inst.cities(), fc::parse_encoding(reach_encoding), reach_reduced};
      std::cout << "target_bits: " << fc::format_bits(fc::encode(report.target, spec), spec)
                << '\n';
      return 0;
    }

    if (*verify) {
      fc::VerifyOptions vo;
      vo.level = level == "full" ? fc::VerifyLevel::Full : fc::VerifyLevel::Quick;
      if (!seq_path.empty()) vo.sequence = fc::parse_sequence(read_text(seq_path));
      bool ok = true;
      fc::run_verification(vo, [&](const fc::PropertyResult& r) {
        ok = ok && r.passed;
        std::printf("%s %-26s %8.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
      });
      return ok ? 0 : kExitVerify;
    }
  } catch (const fc::SizeCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSizeCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
