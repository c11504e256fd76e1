#include "zerograph/graphcap.hpp"

#include <algorithm>
#include <cmath>

namespace zerograph {

CodeSubspace::CodeSubspace(CMat vectors) : vectors_(std::move(vectors)) {
  if (vectors_.cols() < 1 || vectors_.rows() < 1) throw ValidationError("CodeSubspace: empty code", 0.0);
  if (!all_finite(vectors_)) throw ValidationError("CodeSubspace: non-finite entry", 0.0);
  const CMat gram = vectors_.adjoint() * vectors_;
  const double dev = (gram - CMat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > tol::exact) throw ValidationError("CodeSubspace: vectors are not orthonormal", dev);
}

CodeSubspace CodeSubspace::from_vectors(std::span<const CVec> vectors) {
  if (vectors.empty()) throw ValidationError("CodeSubspace: empty code", 0.0);
  CMat cols(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != cols.rows()) throw DimensionError("CodeSubspace: vectors differ in length");
    cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return CodeSubspace(std::move(cols));
}

namespace {

void absorb_compressed(const CMat& compressed, CodeCertificate& cert) {
  const Eigen::Index k = compressed.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (i != j) {
        cert.max_offdiag_residual = std::max(cert.max_offdiag_residual, std::abs(compressed(i, j)));
      }
      cert.max_diag_residual = std::max(cert.max_diag_residual, std::abs(compressed(i, i) - compressed(j, j)));
    }
  }
}

void finish(CodeCertificate& cert, int code_size) {
  cert.passed = cert.max_offdiag_residual <= tol::code && cert.max_diag_residual <= tol::code;
  cert.capacity_bound_bits = cert.passed ? std::log2(static_cast<double>(code_size)) : 0.0;
}

}  // namespace

CodeCertificate check_code(const OperatorSpace& space, const CodeSubspace& code) {
  if (space.ambient_dim() != code.ambient_dim()) throw DimensionError("check_code: code lives in a different space");
  CodeCertificate cert;
  const CMat& c = code.vectors();
  for (const CMat& a : space.basis()) absorb_compressed(c.adjoint() * a * c, cert);
  finish(cert, code.size());
  return cert;
}

CodeCertificate check_code(const ProductSpace& space, const CodeSubspace& code) {
  if (space.ambient_dim() != code.ambient_dim()) throw DimensionError("check_code: code lives in a different space");
  const int n1 = space.left.ambient_dim();
  const int n2 = space.right.ambient_dim();
  const int k = code.size();

  // phi = vec(Phi) row-major, so (A (x) B) phi = vec(A Phi B^T) and
  // <phi_i|(A (x) B) phi_j> = sum_{pq} (Phi_i^dagger A Phi_j)_{pq} B_{pq}.
  std::vector<CMat> reshaped;
  for (int i = 0; i < k; ++i) reshaped.push_back(unvectorize(code.vector(i), n1, n2));

  CodeCertificate cert;
  const auto dl = static_cast<std::size_t>(space.left.dim());
  const auto dr = static_cast<std::size_t>(space.right.dim());
  // entries[a][b] is the k x k compression of left_a (x) right_b.
  std::vector<std::vector<CMat>> entries(dl, std::vector<CMat>(dr, CMat::Zero(k, k)));
  for (std::size_t a = 0; a < dl; ++a) {
    const CMat& left = space.left.basis()[a];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const CMat x = reshaped[static_cast<std::size_t>(i)].adjoint() * left * reshaped[static_cast<std::size_t>(j)];
        for (std::size_t b = 0; b < dr; ++b) entries[a][b](i, j) = x.cwiseProduct(space.right.basis()[b]).sum();
      }
    }
    for (std::size_t b = 0; b < dr; ++b) absorb_compressed(entries[a][b], cert);
  }
  finish(cert, k);
  return cert;
}

double violation_functional(const OperatorSpace& space, const CVec& phi, const CVec& psi) {
  if (phi.size() != space.ambient_dim() || psi.size() != space.ambient_dim())
    throw DimensionError("violation_functional: vector length does not match the space");
  if (std::abs(phi.norm() - 1.0) > tol::exact || std::abs(psi.norm() - 1.0) > tol::exact)
    throw ValidationError("violation_functional: vectors must be unit norm",
                          std::max(std::abs(phi.norm() - 1.0), std::abs(psi.norm() - 1.0)));
  double total = 0.0;
  for (const CMat& a : space.basis()) {
    const CVec a_phi = a * phi;
    const CVec a_psi = a * psi;
    total += std::norm(psi.dot(a_phi)) + std::norm(phi.dot(a_phi) - psi.dot(a_psi));
  }
  return total;
}

}  // namespace zerograph
