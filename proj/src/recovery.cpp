#include <algorithm>
#include <cmath>

#include "zerograph/graphcap.hpp"

namespace zerograph {

QuantumChannel build_recovery(const QuantumChannel& ch, const CodeSubspace& code) {
  if (code.ambient_dim() != ch.dim_in()) throw DimensionError("build_recovery: code lives in a different space");
  const CMat& c = code.vectors();
  const int env = ch.env_dim();
  const int k = code.size();

  // G_l = K_l C. The code is correctable iff G_l^dagger G_k = lambda_lk I for
  // all l, k, i.e. the zero-error conditions on the spanning set {K_l^dagger K_k}
  // of the channel's graph.
  std::vector<CMat> g;
  g.reserve(static_cast<std::size_t>(env));
  for (const CMat& kr : ch.kraus()) g.push_back(kr * c);

  CMat lambda(env, env);
  double residual = 0.0;
  for (int l = 0; l < env; ++l) {
    for (int m = 0; m < env; ++m) {
      const CMat compressed = g[static_cast<std::size_t>(l)].adjoint() * g[static_cast<std::size_t>(m)];
      lambda(l, m) = compressed(0, 0);
      residual = std::max(residual, (compressed - lambda(l, m) * CMat::Identity(k, k)).cwiseAbs().maxCoeff());
    }
  }
  if (residual > tol::code) throw ValidationError("build_recovery: code is not certified for this channel", residual);

  // Rotate the Kraus family so that the error subspaces become orthogonal.
  const Spectrum spec = eig_hermitian(0.5 * (lambda + lambda.adjoint()));
  std::vector<CMat> kraus;
  CMat covered = CMat::Zero(ch.dim_out(), ch.dim_out());
  for (int a = 0; a < env; ++a) {
    const double weight = spec.eigenvalues(a);
    if (weight <= 1e-14) continue;
    CMat fa_c = CMat::Zero(ch.dim_out(), k);
    for (int l = 0; l < env; ++l) fa_c += spec.eigenvectors(l, a) * g[static_cast<std::size_t>(l)];
    fa_c /= std::sqrt(weight);  // isometry from C^k onto the a-th error subspace
    kraus.push_back(c * fa_c.adjoint());
    covered += fa_c * fa_c.adjoint();
  }

  // Send the rest of the output space to a fixed code state.
  const CMat rest = CMat::Identity(ch.dim_out(), ch.dim_out()) - covered;
  const Spectrum rest_spec = eig_hermitian(0.5 * (rest + rest.adjoint()));
  for (Eigen::Index j = 0; j < rest_spec.eigenvalues.size(); ++j) {
    if (rest_spec.eigenvalues(j) < 0.5) continue;
    kraus.push_back(c.col(0) * rest_spec.eigenvectors.col(j).adjoint());
  }
  return make_channel(std::move(kraus));
}

}  // namespace zerograph
