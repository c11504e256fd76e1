#include "zerograph/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zerograph {

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat partial_trace(const CMat& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1) throw DimensionError("partial_trace: factor dimensions must be positive");
  const Eigen::Index total = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (m.rows() != total || m.cols() != total) {
    throw DimensionError("partial_trace: expected a " + std::to_string(total) + "x" +
                         std::to_string(total) + " operator");
  }
  if (keep == Subsystem::A) {
    CMat out = CMat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  CMat out = CMat::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

Complex hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hs_inner: shape mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const CMat& a) { return a.norm(); }

CVec vectorize(const CMat& a) {
  CVec v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

CMat unvectorize(const CVec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) throw DimensionError("unvectorize: length mismatch");
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = v(static_cast<Eigen::Index>(i) * cols + j);
  return a;
}

bool is_hermitian(const CMat& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tolerance * std::max(1.0, a.norm());
}

bool all_finite(const CMat& a) {
  return a.real().allFinite() && a.imag().allFinite();
}

CMat identity(int n) { return CMat::Identity(n, n); }

CVec basis_vector(int n, int k) {
  CVec v = CVec::Zero(n);
  v(k) = 1.0;
  return v;
}

CMat matrix_unit(int n, int i, int j) {
  CMat e = CMat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Spectrum eig_hermitian(const CMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("eig_hermitian: matrix is not square");
  if (!is_hermitian(a)) throw ValidationError("eig_hermitian: matrix is not Hermitian", (a - a.adjoint()).norm());

  const CMat sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  const Eigen::Index n = a.rows();

  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    s.eigenvalues(k) = solver.eigenvalues()(src);
    CVec v = solver.eigenvectors().col(src);

    const double biggest = v.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(v(pivot)) < biggest * (1.0 - 1e-12)) ++pivot;
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    v(pivot) = std::abs(v(pivot));

    s.eigenvectors.col(k) = v;
    if (std::abs(s.eigenvalues(k)) > tol::rank) ++s.rank;
  }
  return s;
}

CMat sqrt_psd(const CMat& a) {
  const Spectrum s = eig_hermitian(a);
  const Eigen::VectorXd roots = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return s.eigenvectors * roots.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
}

double trace_norm_hermitian(const CMat& a) {
  return eig_hermitian(a).eigenvalues.cwiseAbs().sum();
}

OperatorSpace::OperatorSpace(int ambient_dim, std::vector<CMat> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(ambient_dim_) * ambient_dim_;
  frame_.resize(n2, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) frame_.col(static_cast<Eigen::Index>(k)) = vectorize(basis_[k]);
}

OperatorSpace OperatorSpace::from_orthonormal(int ambient_dim, std::vector<CMat> basis) {
  if (ambient_dim < 1) throw DimensionError("OperatorSpace: ambient dimension must be positive");
  if (basis.empty()) throw ValidationError("OperatorSpace: basis is empty", 0.0);
  if (basis.size() > static_cast<std::size_t>(ambient_dim) * ambient_dim)
    throw ValidationError("OperatorSpace: more basis elements than n^2", static_cast<double>(basis.size()));
  for (const CMat& b : basis) {
    if (b.rows() != ambient_dim || b.cols() != ambient_dim)
      throw DimensionError("OperatorSpace: basis element has wrong shape");
    if (!all_finite(b)) throw ValidationError("OperatorSpace: non-finite entry", 0.0);
  }
  OperatorSpace space(ambient_dim, std::move(basis));
  const CMat gram = space.frame_.adjoint() * space.frame_;
  const double dev = (gram - CMat::Identity(gram.rows(), gram.cols())).norm();
  if (dev > tol::exact) throw ValidationError("OperatorSpace: basis is not HS-orthonormal", dev);
  return space;
}

CMat OperatorSpace::project(const CMat& m) const {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_)
    throw DimensionError("OperatorSpace::project: operator has wrong shape");
  const CVec coeffs = frame_.adjoint() * vectorize(m);
  return unvectorize(frame_ * coeffs, ambient_dim_, ambient_dim_);
}

OperatorSpace span(std::span<const CMat> mats, int n) {
  if (mats.empty()) throw ValidationError("span: no generators", 0.0);
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  CMat stacked(n2, static_cast<Eigen::Index>(mats.size()));
  double largest = 0.0;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != n || mats[k].cols() != n) throw DimensionError("span: generator has wrong shape");
    stacked.col(static_cast<Eigen::Index>(k)) = vectorize(mats[k]);
    largest = std::max(largest, mats[k].norm());
  }
  if (largest <= tol::rank) throw ValidationError("span: all generators vanish", largest);

  Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = tol::rank * std::max(1.0, sv(0));
  std::vector<CMat> basis;
  for (Eigen::Index k = 0; k < sv.size() && sv(k) > cutoff; ++k) {
    basis.push_back(unvectorize(svd.matrixU().col(k), n, n));
  }
  return OperatorSpace::from_orthonormal(n, std::move(basis));
}

Membership contains(const OperatorSpace& space, const CMat& m) {
  const CMat residual = m - space.project(m);
  Membership out;
  out.residual = residual.norm();
  out.member = out.residual <= tol::member * std::max(1.0, m.norm());
  return out;
}

SpaceComparison compare_spaces(const OperatorSpace& a, const OperatorSpace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("compare_spaces: ambient dimensions differ");
  SpaceComparison out;
  out.equal = true;
  auto absorb = [&out](const OperatorSpace& from, const OperatorSpace& into) {
    for (const CMat& m : from.basis()) {
      const Membership mem = contains(into, m);
      out.max_residual = std::max(out.max_residual, mem.residual);
      out.equal = out.equal && mem.member;
    }
  };
  absorb(a, b);
  absorb(b, a);
  return out;
}

OperatorSpace tensor_spaces(const OperatorSpace& a, const OperatorSpace& b) {
  std::vector<CMat> basis;
  basis.reserve(static_cast<std::size_t>(a.dim()) * b.dim());
  for (const CMat& x : a.basis())
    for (const CMat& y : b.basis()) basis.push_back(tensor(x, y));
  return OperatorSpace::from_orthonormal(a.ambient_dim() * b.ambient_dim(), std::move(basis));
}

GraphConditions graph_conditions(const OperatorSpace& space) {
  GraphConditions out;
  const Membership id = contains(space, identity(space.ambient_dim()));
  out.contains_identity = id.member;
  out.identity_residual = id.residual;
  out.adjoint_closed = true;
  for (const CMat& b : space.basis()) {
    const Membership adj = contains(space, b.adjoint());
    out.adjoint_residual = std::max(out.adjoint_residual, adj.residual);
    out.adjoint_closed = out.adjoint_closed && adj.member;
  }
  return out;
}

}  // namespace zerograph
