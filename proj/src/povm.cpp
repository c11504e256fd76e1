#include "zerograph/povm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace zerograph {

Eigen::VectorXd Observable::probabilities(const CMat& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionError("probabilities: state has wrong shape");
  Eigen::VectorXd p(outcomes());
  for (int i = 0; i < outcomes(); ++i) p(i) = (effects_[static_cast<std::size_t>(i)] * rho).trace().real();
  return p;
}

Observable make_observable(std::vector<CMat> effects) {
  if (effects.empty()) throw ValidationError("make_observable: no effects", 0.0);
  const Eigen::Index n = effects.front().rows();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& m : effects) {
    if (m.rows() != n || m.cols() != n) throw DimensionError("make_observable: effects differ in shape");
    if (!is_hermitian(m)) throw ValidationError("make_observable: effect is not Hermitian", (m - m.adjoint()).norm());
    const double low = eig_hermitian(m).eigenvalues.minCoeff();
    if (low < -tol::exact) throw ValidationError("make_observable: effect is not positive", low);
    sum += m;
  }
  const double dev = (sum - CMat::Identity(n, n)).norm();
  if (dev > tol::exact) throw ValidationError("make_observable: effects do not sum to the identity", dev);

  bool sharp = true;
  for (std::size_t i = 0; i < effects.size() && sharp; ++i) {
    for (std::size_t j = 0; j < effects.size() && sharp; ++j) {
      const CMat prod = effects[i] * effects[j];
      const CMat expected = i == j ? effects[i] : CMat::Zero(n, n);
      sharp = (prod - expected).norm() <= tol::exact;
    }
  }
  return Observable(static_cast<int>(n), std::move(effects), sharp);
}

QuantumChannel pi_channel(const Observable& obs) {
  std::vector<CVec> labels;
  for (int i = 0; i < obs.outcomes(); ++i) labels.push_back(basis_vector(obs.outcomes(), i));
  return measure_prepare(obs.effects(), labels);
}

OperatorSpace effect_span(const Observable& obs) { return span(obs.effects(), obs.dim()); }

CodeCertificate is_indistinguishable(const Observable& obs, const CodeSubspace& code) {
  if (code.ambient_dim() != obs.dim()) throw DimensionError("is_indistinguishable: code lives in a different space");
  return check_code(effect_span(obs), code);
}

Observable tensor_observables(const Observable& a, const Observable& b) {
  std::vector<CMat> effects;
  effects.reserve(static_cast<std::size_t>(a.outcomes()) * b.outcomes());
  for (const CMat& x : a.effects())
    for (const CMat& y : b.effects()) effects.push_back(tensor(x, y));
  return make_observable(std::move(effects));
}

ViolationReport find_indistinguishable(const Observable& obs, const SearchOptions& options) {
  return search_violation(effect_span(obs), options);
}

ViolationReport find_indistinguishable(const Observable& obs, int starts, std::uint64_t seed) {
  return search_violation(effect_span(obs), starts, seed);
}

Observable observable_from_graph(const OperatorSpace& space) {
  return make_observable(positive_basis(space).ops());
}

namespace {

CVec random_in_code(const CodeSubspace& code, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec coeffs(code.size());
  for (int i = 0; i < code.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    coeffs(i) = Complex(re, im);
  }
  return code.vectors() * coeffs;
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace

double orthogonal_pair_residual(const Observable& obs, const CodeSubspace& code, int samples, std::uint64_t seed) {
  if (code.ambient_dim() != obs.dim()) throw DimensionError("orthogonal_pair_residual: dimension mismatch");
  if (code.size() < 2) return 0.0;
  std::mt19937_64 rng = seeded(seed, 0x6f7270u);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVec phi = random_in_code(code, rng);
    phi.normalize();
    CVec psi = random_in_code(code, rng);
    psi -= phi.dot(psi) * phi;
    psi.normalize();
    for (const CMat& m : obs.effects()) worst = std::max(worst, std::abs(psi.dot(m * phi)));
  }
  return worst;
}

double distribution_spread(const Observable& obs, const CodeSubspace& code, int states, std::uint64_t seed) {
  if (code.ambient_dim() != obs.dim()) throw DimensionError("distribution_spread: dimension mismatch");
  std::mt19937_64 rng = seeded(seed, 0x646566u);
  const Eigen::VectorXd reference = obs.probabilities(code.projector() / static_cast<double>(code.size()));
  double worst = 0.0;
  for (int s = 0; s < states; ++s) {
    // Normalized Gram construction: rho = X X^dagger / trace over code vectors.
    CMat x(obs.dim(), code.size());
    for (int c = 0; c < code.size(); ++c) x.col(c) = random_in_code(code, rng);
    CMat rho = x * x.adjoint();
    rho /= rho.trace().real();
    worst = std::max(worst, (obs.probabilities(rho) - reference).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace zerograph
