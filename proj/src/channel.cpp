#include "zerograph/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zerograph {

QuantumChannel make_channel(std::vector<CMat> kraus) {
  if (kraus.empty()) throw ValidationError("make_channel: no Kraus operators", 0.0);
  const Eigen::Index rows = kraus.front().rows();
  const Eigen::Index cols = kraus.front().cols();
  if (rows < 1 || cols < 1) throw DimensionError("make_channel: empty Kraus operator");
  CMat sum = CMat::Zero(cols, cols);
  for (const CMat& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) throw DimensionError("make_channel: Kraus operators differ in shape");
    if (!all_finite(k)) throw ValidationError("make_channel: non-finite Kraus entry", 0.0);
    sum += k.adjoint() * k;
  }
  const double dev = (sum - CMat::Identity(cols, cols)).norm();
  if (dev > tol::exact) {
    throw ValidationError("make_channel: not trace preserving (deviation " + std::to_string(dev) + ")", dev);
  }
  return QuantumChannel(static_cast<int>(cols), static_cast<int>(rows), std::move(kraus));
}

CMat apply(const QuantumChannel& ch, const CMat& rho) {
  if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in()) throw DimensionError("apply: state has wrong shape");
  CMat out = CMat::Zero(ch.dim_out(), ch.dim_out());
  for (const CMat& k : ch.kraus()) out += k * rho * k.adjoint();
  return out;
}

QuantumChannel complementary(const QuantumChannel& ch) {
  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(ch.dim_out()));
  for (int b = 0; b < ch.dim_out(); ++b) {
    CMat r(ch.env_dim(), ch.dim_in());
    for (int k = 0; k < ch.env_dim(); ++k) r.row(k) = ch.kraus()[static_cast<std::size_t>(k)].row(b);
    kraus.push_back(std::move(r));
  }
  return make_channel(std::move(kraus));
}

OperatorSpace ncgraph(const QuantumChannel& ch) {
  std::vector<CMat> products;
  products.reserve(static_cast<std::size_t>(ch.env_dim()) * ch.env_dim());
  for (const CMat& l : ch.kraus())
    for (const CMat& k : ch.kraus()) products.push_back(l.adjoint() * k);
  return span(products, ch.dim_in());
}

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(a.env_dim()) * b.env_dim());
  for (const CMat& k : a.kraus())
    for (const CMat& l : b.kraus()) kraus.push_back(tensor(k, l));
  return make_channel(std::move(kraus));
}

CMat choi(const QuantumChannel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  CMat out = CMat::Zero(static_cast<Eigen::Index>(din) * dout, static_cast<Eigen::Index>(din) * dout);
  // Block (i, j) is sum_k K_k |i><j| K_k^dagger = sum_k col_i(K_k) col_j(K_k)^dagger.
  for (const CMat& k : ch.kraus()) {
    for (int i = 0; i < din; ++i)
      for (int j = 0; j < din; ++j)
        out.block(static_cast<Eigen::Index>(i) * dout, static_cast<Eigen::Index>(j) * dout, dout, dout) +=
            k.col(i) * k.col(j).adjoint();
  }
  return out;
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw DimensionError("channel_distance: channels act between different spaces");
  return (choi(a) - choi(b)).norm();
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b) {
  return channel_distance(a, b) <= tol::exact;
}

QuantumChannel measure_prepare(std::span<const CMat> effects, std::span<const CVec> states) {
  if (effects.empty() || effects.size() != states.size())
    throw DimensionError("measure_prepare: need one state per effect");
  std::vector<CMat> kraus;
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const Spectrum s = eig_hermitian(effects[i]);
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
      if (s.eigenvalues(j) <= tol::rank) continue;
      kraus.push_back(std::sqrt(s.eigenvalues(j)) * states[i] * s.eigenvectors.col(j).adjoint());
    }
  }
  return make_channel(std::move(kraus));
}

PositiveBasis PositiveBasis::from_ops(std::vector<CMat> ops) {
  if (ops.empty()) throw ValidationError("PositiveBasis: no operators", 0.0);
  const Eigen::Index n = ops.front().rows();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& op : ops) {
    if (op.rows() != n || op.cols() != n) throw DimensionError("PositiveBasis: operators differ in shape");
    if (!is_hermitian(op)) throw ValidationError("PositiveBasis: operator is not Hermitian", (op - op.adjoint()).norm());
    const double low = eig_hermitian(op).eigenvalues.minCoeff();
    if (low < -tol::exact) throw ValidationError("PositiveBasis: operator is not positive", low);
    sum += op;
  }
  const double dev = (sum - CMat::Identity(n, n)).norm();
  if (dev > tol::exact) throw ValidationError("PositiveBasis: operators do not sum to the identity", dev);
  const int spanned = span(ops, static_cast<int>(n)).dim();
  if (spanned != static_cast<int>(ops.size()))
    throw ValidationError("PositiveBasis: operators are linearly dependent", static_cast<double>(spanned));
  return PositiveBasis(std::move(ops));
}

namespace {

// Hermitian basis {H_2..H_d} of the traceless-direction part of an
// adjoint-closed space: the real span of the Hermitian and anti-Hermitian
// parts of every basis element, with the identity direction removed, then
// orthonormalized by a real SVD (order independent).
std::vector<CMat> hermitian_complement_of_identity(const OperatorSpace& space) {
  const int n = space.ambient_dim();
  const CMat unit = identity(n) / std::sqrt(static_cast<double>(n));
  std::vector<CMat> herm;
  for (const CMat& b : space.basis()) {
    herm.push_back(0.5 * (b + b.adjoint()));
    herm.push_back(Complex(0.0, -0.5) * (b - b.adjoint()));
  }
  // Real coordinates of a Hermitian matrix: its entries' real and imaginary parts.
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  Eigen::MatrixXd stacked(2 * n2, static_cast<Eigen::Index>(herm.size()));
  for (std::size_t k = 0; k < herm.size(); ++k) {
    CMat h = herm[k] - hs_inner(unit, herm[k]).real() * unit;
    const CVec v = vectorize(h);
    stacked.col(static_cast<Eigen::Index>(k)) << v.real(), v.imag();
  }
  std::vector<CMat> out;
  const int wanted = space.dim() - 1;
  if (wanted == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU);
  for (int k = 0; k < wanted; ++k) {
    if (svd.singularValues()(k) <= tol::rank)
      throw ValidationError("positive_basis: Hermitian part has too few directions", svd.singularValues()(k));
    const Eigen::VectorXd u = svd.matrixU().col(k);
    CVec v(n2);
    v.real() = u.head(n2);
    v.imag() = u.tail(n2);
    CMat h = unvectorize(v, n, n);
    out.push_back(0.5 * (h + h.adjoint()));
  }
  return out;
}

}  // namespace

PositiveBasis positive_basis(const OperatorSpace& space) {
  const GraphConditions cond = graph_conditions(space);
  if (!cond.contains_identity)
    throw ValidationError("positive_basis: space does not contain the identity", cond.identity_residual);
  if (!cond.adjoint_closed)
    throw ValidationError("positive_basis: space is not closed under the adjoint", cond.adjoint_residual);

  const int n = space.ambient_dim();
  const int d = space.dim();
  const std::vector<CMat> herm = hermitian_complement_of_identity(space);

  std::vector<CMat> ops(static_cast<std::size_t>(d));
  CMat rest = identity(n);
  for (int j = 1; j < d; ++j) {
    const CMat& h = herm[static_cast<std::size_t>(j - 1)];
    const double op_norm = eig_hermitian(h).eigenvalues.cwiseAbs().maxCoeff();
    CMat b = (h + op_norm * identity(n)) / (4.0 * (d - 1) * op_norm);
    rest -= b;
    ops[static_cast<std::size_t>(j)] = std::move(b);
  }
  ops[0] = rest;
  return PositiveBasis::from_ops(std::move(ops));
}

int minimal_env_dim(int d) {
  if (d < 1) throw ConfigError("minimal_env_dim: dimension must be positive");
  int m = 1;
  while (m * m < d) ++m;
  return m;
}

std::vector<CVec> default_psis(int d, int m) {
  if (d > m * m) throw ValidationError("default_psis: need d <= m^2", static_cast<double>(d));
  std::vector<CVec> seq;
  for (int k = 0; k < m; ++k) seq.push_back(basis_vector(m, k));
  const double r = 1.0 / std::numbers::sqrt2;
  for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
    for (int j = m - 1; j >= 1; --j)
      for (int i = 0; i < j; ++i) seq.push_back(r * (basis_vector(m, i) + phase * basis_vector(m, j)));
  }
  seq.resize(static_cast<std::size_t>(d));
  return seq;
}

int projector_rank(std::span<const CVec> psis) {
  if (psis.empty()) return 0;
  std::vector<CMat> projectors;
  for (const CVec& v : psis) projectors.push_back(v * v.adjoint());
  return span(projectors, static_cast<int>(psis.front().size())).dim();
}

QuantumChannel build_pseudo_diagonal(const PositiveBasis& basis, std::span<const CVec> psis) {
  return build_pseudo_diagonal(std::span<const CMat>(basis.ops()), psis);
}

QuantumChannel build_pseudo_diagonal(std::span<const CMat> ops, std::span<const CVec> psis) {
  if (ops.empty()) throw DimensionError("build_pseudo_diagonal: no operators");
  const int d = static_cast<int>(ops.size());
  if (static_cast<int>(psis.size()) != d) throw DimensionError("build_pseudo_diagonal: need one vector per operator");
  const int m = static_cast<int>(psis.front().size());
  if (d > m * m) throw ValidationError("build_pseudo_diagonal: more operators than m^2", static_cast<double>(d));
  for (const CVec& v : psis) {
    if (v.size() != m) throw DimensionError("build_pseudo_diagonal: vectors differ in length");
    if (std::abs(v.norm() - 1.0) > tol::exact) throw ValidationError("build_pseudo_diagonal: non-unit vector", v.norm());
  }
  const int independent = projector_rank(psis);
  if (independent != d)
    throw ValidationError("build_pseudo_diagonal: projectors |psi><psi| are linearly dependent",
                          static_cast<double>(independent));

  const int n = static_cast<int>(ops.front().rows());
  // Block i of the output holds diag(sqrt(lambda)) * eigenvectors^dagger of A_i.
  std::vector<CMat> blocks;
  int dim_out = 0;
  for (const CMat& a : ops) {
    if (a.rows() != n || a.cols() != n) throw DimensionError("build_pseudo_diagonal: operators differ in shape");
    const Spectrum s = eig_hermitian(a);
    if (s.eigenvalues.minCoeff() < -tol::exact)
      throw ValidationError("build_pseudo_diagonal: operator is not positive", s.eigenvalues.minCoeff());
    CMat block(s.rank, n);
    for (int j = 0; j < s.rank; ++j)
      block.row(j) = std::sqrt(std::max(0.0, s.eigenvalues(j))) * s.eigenvectors.col(j).adjoint();
    dim_out += s.rank;
    blocks.push_back(std::move(block));
  }

  std::vector<CMat> kraus;
  for (int k = 0; k < m; ++k) {
    CMat v = CMat::Zero(dim_out, n);
    int offset = 0;
    for (int i = 0; i < d; ++i) {
      const CMat& block = blocks[static_cast<std::size_t>(i)];
      v.middleRows(offset, block.rows()) = psis[static_cast<std::size_t>(i)](k) * block;
      offset += static_cast<int>(block.rows());
    }
    kraus.push_back(std::move(v));
  }
  return make_channel(std::move(kraus));
}

}  // namespace zerograph
