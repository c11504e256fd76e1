#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zerograph/channel.hpp"
#include "zerograph/graphcap.hpp"
#include "zerograph/opalg.hpp"

namespace testutil {

using zerograph::CMat;
using zerograph::Complex;
using zerograph::CVec;

inline CMat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline CVec random_unit(std::mt19937_64& rng, int n) {
  CVec v = random_matrix(rng, n, 1);
  return v / v.norm();
}

inline CMat random_state(std::mt19937_64& rng, int n) {
  const CMat g = random_matrix(rng, n, n);
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline CMat random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<CMat> qr(random_matrix(rng, n, n));
  return qr.householderQ() * CMat::Identity(n, n);
}

/// Random Kraus family: blocks of a random isometry C^n -> C^{m*k}.
inline zerograph::QuantumChannel random_channel(std::mt19937_64& rng, int n, int m, int k) {
  Eigen::HouseholderQR<CMat> qr(random_matrix(rng, m * k, n));
  const CMat iso = qr.householderQ() * CMat::Identity(m * k, n);
  std::vector<CMat> kraus;
  for (int j = 0; j < k; ++j) kraus.push_back(iso.middleRows(j * m, m));
  return zerograph::make_channel(std::move(kraus));
}

/// Orthonormal k-frame in C^n.
inline CMat random_frame(std::mt19937_64& rng, int n, int k) {
  Eigen::HouseholderQR<CMat> qr(random_matrix(rng, n, k));
  return qr.householderQ() * CMat::Identity(n, k);
}

inline zerograph::CodeSubspace code_from(const CMat& columns) {
  std::vector<CVec> v;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) v.push_back(columns.col(j));
  return zerograph::CodeSubspace::from_vectors(v);
}

/// Orthonormalized witness pair. A witness with F <= 1e-10 has overlap at
/// most 1e-5, which is above the CodeSubspace tolerance.
inline zerograph::CodeSubspace witness_code(const zerograph::ViolationReport& r) {
  CVec psi = r.psi - r.phi.dot(r.psi) * r.phi;
  psi.normalize();
  const std::vector<CVec> pair{r.phi, psi};
  return zerograph::CodeSubspace::from_vectors(pair);
}

inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testutil
