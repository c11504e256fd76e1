#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "zerograph/graphcap.hpp"

namespace zerograph {

namespace {

// F and its gradient through the HS projections of Y = |psi><phi| and
// Z = |phi><phi| - |psi><psi|: F = ||P(Y)||^2 + ||P(Z)||^2.
class Objective {
 public:
  explicit Objective(const OperatorSpace& space) : space_(space), n_(space.ambient_dim()) {}

  double value(const CVec& phi, const CVec& psi) const {
    return coefficients_y(phi, psi).squaredNorm() + coefficients_z(phi, psi).squaredNorm();
  }

  // Returns F; fills the Euclidean gradients 2 dF/d(conj x).
  double value_and_gradient(const CVec& phi, const CVec& psi, CVec& g_phi, CVec& g_psi) const {
    const CVec cy = coefficients_y(phi, psi);
    const CVec cz = coefficients_z(phi, psi);
    const CMat py = unvectorize(space_.frame() * cy, n_, n_);
    const CMat pz = unvectorize(space_.frame() * cz, n_, n_);
    g_phi = 2.0 * (py.adjoint() * psi + pz * phi + pz.adjoint() * phi);
    g_psi = 2.0 * (py * phi - pz * psi - pz.adjoint() * psi);
    return cy.squaredNorm() + cz.squaredNorm();
  }

 private:
  CVec outer_vec(const CVec& left, const CVec& right) const {
    CVec v(static_cast<Eigen::Index>(n_) * n_);
    const CVec right_conj = right.conjugate();
    for (int a = 0; a < n_; ++a) v.segment(static_cast<Eigen::Index>(a) * n_, n_) = left(a) * right_conj;
    return v;
  }

  CVec coefficients_y(const CVec& phi, const CVec& psi) const {
    return space_.frame().adjoint() * outer_vec(psi, phi);
  }

  CVec coefficients_z(const CVec& phi, const CVec& psi) const {
    return space_.frame().adjoint() * (outer_vec(phi, phi) - outer_vec(psi, psi));
  }

  const OperatorSpace& space_;
  int n_;
};

CVec tangent(const CVec& x, const CVec& g) { return g - x.dot(g).real() * x; }

double real_dot(const CVec& a, const CVec& b) { return a.dot(b).real(); }

CVec random_unit(std::mt19937_64& rng, std::normal_distribution<double>& normal, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

}  // namespace

LocalResult minimize_from_start(const OperatorSpace& space, std::uint64_t seed, int start_index,
                                int max_iterations, double gradient_tolerance) {
  const int n = space.ambient_dim();
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start_index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  LocalResult out;
  out.phi = random_unit(rng, normal, n);
  out.psi = random_unit(rng, normal, n);

  const Objective objective(space);
  CVec g_phi, g_psi;
  double f = objective.value_and_gradient(out.phi, out.psi, g_phi, g_psi);
  CVec t_phi = tangent(out.phi, g_phi);
  CVec t_psi = tangent(out.psi, g_psi);

  constexpr double armijo = 1e-4;
  constexpr double min_step = 1e-14;
  constexpr double max_step = 1e6;
  double step = 1.0;

  for (int iter = 0; iter < max_iterations; ++iter) {
    const double g2 = t_phi.squaredNorm() + t_psi.squaredNorm();
    if (std::sqrt(g2) <= gradient_tolerance) {
      out.converged = true;
      break;
    }
    out.iterations = iter + 1;

    // Backtracking on the retraction x -> normalize(x - step * grad). The
    // slack term absorbs rounding in F once the decrease is below eps * F.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(f, 1e-300);
    CVec next_phi, next_psi;
    double next_f = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      next_phi = out.phi - step * t_phi;
      next_psi = out.psi - step * t_psi;
      next_phi.normalize();
      next_psi.normalize();
      next_f = objective.value(next_phi, next_psi);
      if (next_f <= f - armijo * step * g2 + slack) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < min_step) break;
    }
    if (!accepted) break;

    CVec next_g_phi, next_g_psi;
    next_f = objective.value_and_gradient(next_phi, next_psi, next_g_phi, next_g_psi);
    const CVec next_t_phi = tangent(next_phi, next_g_phi);
    const CVec next_t_psi = tangent(next_psi, next_g_psi);

    // Barzilai-Borwein trial step for the next iteration.
    const double ss = (next_phi - out.phi).squaredNorm() + (next_psi - out.psi).squaredNorm();
    const double sy = real_dot(next_phi - out.phi, next_t_phi - t_phi) + real_dot(next_psi - out.psi, next_t_psi - t_psi);
    step = sy > 0.0 ? std::clamp(ss / sy, min_step, max_step) : std::min(2.0 * step, max_step);

    out.phi = next_phi;
    out.psi = next_psi;
    t_phi = next_t_phi;
    t_psi = next_t_psi;
    f = next_f;
  }
  if (!out.converged) {
    out.converged = std::sqrt(t_phi.squaredNorm() + t_psi.squaredNorm()) <= gradient_tolerance;
  }
  out.value = f;
  return out;
}

int resolve_threads(int requested) {
  if (const char* env = std::getenv("ZEROGRAPH_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
      // fall through to the requested count
    }
  }
  if (requested >= 1) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

ViolationReport search_violation(const OperatorSpace& space, const SearchOptions& options) {
  if (options.starts < 1) throw ConfigError("search_violation: starts must be at least 1");
  if (options.max_iterations < 1) throw ConfigError("search_violation: max_iterations must be at least 1");

  std::vector<LocalResult> results(static_cast<std::size_t>(options.starts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < options.starts; k = next++) {
      results[static_cast<std::size_t>(k)] =
          minimize_from_start(space, options.seed, k, options.max_iterations, options.gradient_tolerance);
    }
  };
  const int threads = std::min(resolve_threads(options.threads), options.starts);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  int best = 0;
  int converged = 0;
  for (int k = 0; k < options.starts; ++k) {
    const LocalResult& r = results[static_cast<std::size_t>(k)];
    if (r.converged) ++converged;
    if (r.value < results[static_cast<std::size_t>(best)].value) best = k;
  }

  ViolationReport report;
  const LocalResult& winner = results[static_cast<std::size_t>(best)];
  report.graph_dim = space.dim();
  report.phi = winner.phi;
  report.psi = winner.psi;
  report.best_value = violation_functional(space, winner.phi, winner.psi);
  report.starts = options.starts;
  report.seed = options.seed;
  report.converged_fraction = static_cast<double>(converged) / options.starts;
  report.best_start = best;
  return report;
}

ViolationReport search_violation(const OperatorSpace& space, int starts, std::uint64_t seed) {
  SearchOptions options;
  options.starts = starts;
  options.seed = seed;
  return search_violation(space, options);
}

}  // namespace zerograph
