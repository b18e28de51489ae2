#include "feascirc/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace feascirc {

namespace {

// Simplex acceptability thresholds relative to rho.
constexpr double kMinHeight = 0.25;  // distance of a vertex from the others' face
constexpr double kMaxEdge = 2.1;     // vertex distance from the incumbent
constexpr double kShrink = 0.5;
constexpr double kPoorStep = 0.1;

class Evaluator {
 public:
  Evaluator(const ObjectiveFn& f, const ParameterDomain& domain)
      : f_(f), domain_(domain) {}

  double operator()(const Eigen::VectorXd& x, std::size_t iteration) {
    const auto reduced = domain_.reduce(std::span<const double>(x.data(), x.size()));
    ++count_;
    try {
      return f_(reduced);
    } catch (const std::exception& e) {
      throw std::runtime_error("objective failed at iteration " +
                               std::to_string(iteration) + ": " + e.what());
    }
  }

  std::vector<double> reduced(const Eigen::VectorXd& x) const {
    return domain_.reduce(std::span<const double>(x.data(), x.size()));
  }

  std::size_t count() const { return count_; }

 private:
  const ObjectiveFn& f_;
  const ParameterDomain& domain_;
  std::size_t count_ = 0;
};

}  // namespace

std::vector<double> ParameterDomain::reduce(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  if (period.empty()) return out;
  if (period.size() != x.size())
    throw std::invalid_argument("parameter domain has wrong dimension");
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = period[i];
    if (p <= 0.0) continue;
    double v = std::fmod(out[i], p);
    if (v < 0.0) v += p;
    if (v >= p) v = 0.0;
    out[i] = v;
  }
  return out;
}

std::string_view to_string(OptStatus status) {
  switch (status) {
    case OptStatus::GradientConverged: return "gradient-converged";
    case OptStatus::MaxIterations: return "max-iterations";
    case OptStatus::TrustRegionCollapsed: return "trust-region-collapsed";
  }
  return "unknown";
}

LinearTrustRegion::LinearTrustRegion(OptConfig cfg) : cfg_(cfg) {
  if (cfg_.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(cfg_.init_step > 0.0) || !(cfg_.grad_threshold > 0.0) ||
      !(cfg_.rho_end > 0.0) || !(cfg_.fd_step > 0.0))
    throw std::invalid_argument("optimizer thresholds must be positive");
  if (cfg_.grad_window < 1) throw std::invalid_argument("grad_window must be >= 1");
}

OptTrace LinearTrustRegion::minimize(const ObjectiveFn& objective,
                                     std::span<const double> x0,
                                     const ParameterDomain& domain,
                                     const RatioFn& ratio) const {
  const auto d = static_cast<Eigen::Index>(x0.size());
  if (d < 1) throw std::invalid_argument("minimize needs at least one parameter");
  if (!domain.empty() && domain.period.size() != x0.size())
    throw std::invalid_argument("parameter domain has wrong dimension");

  Evaluator eval(objective, domain);
  OptTrace trace;

  // Vertices as columns; vertex `best` is the incumbent.
  Eigen::MatrixXd verts(d, d + 1);
  Eigen::VectorXd fvals(d + 1);
  Eigen::Index best = 0;
  double rho = cfg_.init_step;

  std::size_t iteration = 0;
  std::size_t small_grad_streak = 0;
  Eigen::Index grad_cached_for = -1;
  Eigen::VectorXd grad_cached_point;
  double grad_norm = std::numeric_limits<double>::infinity();
  bool done = false;

  auto incumbent_gradient_norm = [&]() {
    const Eigen::VectorXd x = verts.col(best);
    if (grad_cached_for == best && grad_cached_point == x) return grad_norm;
    double sq = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::VectorXd probe = x;
      probe(i) += cfg_.fd_step;
      const double g = (eval(probe, iteration) - fvals(best)) / cfg_.fd_step;
      sq += g * g;
    }
    grad_cached_for = best;
    grad_cached_point = x;
    grad_norm = std::sqrt(sq);
    return grad_norm;
  };

  // Records the iteration and decides whether to stop.
  auto finish_iteration = [&](double evaluated, bool simplex_ready) {
    OptRecord rec;
    rec.iteration = iteration;
    rec.params = eval.reduced(verts.col(best));
    rec.objective = fvals(best);
    rec.evaluated = evaluated;
    rec.ratio = ratio ? ratio(fvals(best)) : std::numeric_limits<double>::quiet_NaN();
    trace.records.push_back(std::move(rec));
    ++iteration;
    if (simplex_ready) {
      if (incumbent_gradient_norm() < cfg_.grad_threshold)
        ++small_grad_streak;
      else
        small_grad_streak = 0;
      if (small_grad_streak >= cfg_.grad_window) {
        trace.status = OptStatus::GradientConverged;
        done = true;
        return;
      }
    }
    if (iteration >= cfg_.max_iters) {
      trace.status = OptStatus::MaxIterations;
      done = true;
    }
  };

  auto take_vertex = [&](Eigen::Index j, const Eigen::VectorXd& x, double fx) {
    verts.col(j) = x;
    fvals(j) = fx;
    if (fx < fvals(best)) best = j;
  };

  // Initial simplex: x0 and x0 + rho e_i.
  for (Eigen::Index i = 0; i < d; ++i) verts(i, 0) = x0[static_cast<std::size_t>(i)];
  fvals(0) = eval(verts.col(0), iteration);
  finish_iteration(fvals(0), false);
  for (Eigen::Index i = 0; i < d && !done; ++i) {
    Eigen::VectorXd x = verts.col(0);
    x(i) += rho;
    const double fx = eval(x, iteration);
    take_vertex(i + 1, x, fx);
    finish_iteration(fx, i + 1 == d);
  }

  while (!done) {
    // Edges from the incumbent, one row per other vertex.
    Eigen::MatrixXd edges(d, d);
    Eigen::VectorXd df(d);
    std::vector<Eigen::Index> index_of(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0, row = 0; j <= d; ++j) {
      if (j == best) continue;
      edges.row(row) = (verts.col(j) - verts.col(best)).transpose();
      df(row) = fvals(j) - fvals(best);
      index_of[static_cast<std::size_t>(row)] = j;
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    if (!lu.isInvertible()) {
      // Degenerate simplex: rebuild around the incumbent.
      const Eigen::VectorXd center = verts.col(best);
      const double fc = fvals(best);
      for (Eigen::Index row = 0; row < d && !done; ++row) {
        Eigen::VectorXd x = center;
        x(row) += rho;
        const double fx = eval(x, iteration);
        take_vertex(index_of[static_cast<std::size_t>(row)], x, fx);
        finish_iteration(fx, true);
      }
      (void)fc;
      continue;
    }
    const Eigen::MatrixXd inv = lu.inverse();  // edges * inv = I
    const Eigen::VectorXd grad = lu.solve(df);

    // Geometry: each vertex should lie within kMaxEdge·rho of the incumbent and
    // at least kMinHeight·rho away from the face spanned by the others.
    Eigen::Index worst_row = -1;
    double worst_score = 0.0;
    for (Eigen::Index row = 0; row < d; ++row) {
      const double edge_len = edges.row(row).norm();
      const double height = 1.0 / inv.col(row).norm();
      double score = 0.0;
      if (edge_len > kMaxEdge * rho) score = edge_len / rho;
      else if (height < kMinHeight * rho) score = kMinHeight * rho / height;
      if (score > worst_score) {
        worst_score = score;
        worst_row = row;
      }
    }

    const double gnorm = grad.norm();
    const bool geometry_ok = worst_row < 0;

    if (!geometry_ok && !(gnorm > 0.0 && worst_score <= 1.0)) {
      // Replace the offending vertex by a point orthogonal to the other edges.
      Eigen::VectorXd dir = inv.col(worst_row);
      dir /= dir.norm();
      if (grad.dot(dir) > 0.0) dir = -dir;
      const Eigen::VectorXd x = verts.col(best) + rho * dir;
      const double fx = eval(x, iteration);
      take_vertex(index_of[static_cast<std::size_t>(worst_row)], x, fx);
      finish_iteration(fx, true);
      continue;
    }

    if (!(gnorm > 0.0)) {
      // Flat model: nothing to gain at this radius.
      rho *= kShrink;
      if (rho < cfg_.rho_end) {
        trace.status = OptStatus::TrustRegionCollapsed;
        break;
      }
      continue;
    }

    const Eigen::VectorXd step = -rho / gnorm * grad;
    const Eigen::VectorXd trial = verts.col(best) + step;
    const double ftrial = eval(trial, iteration);
    const double predicted = rho * gnorm;
    const double actual = fvals(best) - ftrial;

    // Vertex whose replacement keeps the simplex volume largest, penalising
    // vertices far from the trial point.
    const Eigen::VectorXd coeff = inv.transpose() * step;  // step = Σ c_j edge_j
    Eigen::Index replace_row = -1;
    double replace_score = actual > 0.0 ? 0.0 : 1.0;
    for (Eigen::Index row = 0; row < d; ++row) {
      const double dist = (verts.col(index_of[static_cast<std::size_t>(row)]) - trial).norm();
      const double weight = std::max(1.0, (dist / rho) * (dist / rho));
      const double score = std::abs(coeff(row)) * weight;
      if (score > replace_score) {
        replace_score = score;
        replace_row = row;
      }
    }
    if (actual > 0.0 && replace_row < 0) replace_row = 0;
    if (replace_row >= 0)
      take_vertex(index_of[static_cast<std::size_t>(replace_row)], trial, ftrial);

    if (actual < kPoorStep * predicted && geometry_ok) {
      rho *= kShrink;
      if (rho < cfg_.rho_end) {
        finish_iteration(ftrial, true);
        if (!done) {
          trace.status = OptStatus::TrustRegionCollapsed;
          done = true;
        }
        break;
      }
    }
    finish_iteration(ftrial, true);
  }

  trace.evaluations = eval.count();
  return trace;
}

OptTrace minimize(const ObjectiveFn& objective, std::span<const double> x0,
                  const OptConfig& cfg, const ParameterDomain& domain,
                  const RatioFn& ratio) {
  return LinearTrustRegion(cfg).minimize(objective, x0, domain, ratio);
}

double approximation_ratio(double expectation, double opt_cost, RatioMode mode,
                           double worst_cost) {
  if (!(opt_cost > 0.0) || !(expectation > 0.0))
    throw std::invalid_argument("approximation ratio needs positive costs");
  if (mode == RatioMode::OptOverExpectation) return opt_cost / expectation;
  if (!(worst_cost > opt_cost))
    throw std::invalid_argument("normalized ratio needs worst cost above optimum");
  return (worst_cost - expectation) / (worst_cost - opt_cost);
}

}  // namespace feascirc
