#pragma once

// Dense complex linear algebra and Hilbert-Schmidt operator spaces.
//
// Conventions used throughout the library:
//   * operators are Eigen::MatrixXcd, vectors are n x 1 (Eigen::VectorXcd);
//   * the HS inner product is <A, B> = trace(A^dagger B);
//   * operators are vectorized in row-major order.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zerograph/errors.hpp"

namespace zerograph {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

namespace tol {
inline constexpr double exact = 1e-10;   // algebraic identities
inline constexpr double rank = 1e-8;     // numerical rank cut-offs
inline constexpr double member = 1e-8;   // membership residuals
}  // namespace tol

enum class Subsystem { A, B };

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
CMat tensor(const CMat& a, const CMat& b);

/// Reduced operator on the kept factor of C^dim_a (x) C^dim_b.
CMat partial_trace(const CMat& m, int dim_a, int dim_b, Subsystem keep);

Complex hs_inner(const CMat& a, const CMat& b);
double hs_norm(const CMat& a);

/// Row-major flattening and its inverse.
CVec vectorize(const CMat& a);
CMat unvectorize(const CVec& v, int rows, int cols);

bool is_hermitian(const CMat& a, double tolerance = tol::exact);
bool all_finite(const CMat& a);

CMat identity(int n);
/// Standard basis column |k> in C^n (0-based).
CVec basis_vector(int n, int k);
/// Matrix unit E_ij in M_n (0-based).
CMat matrix_unit(int n, int i, int j);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  CMat eigenvectors;            // orthonormal columns, phase-fixed
  int rank = 0;                 // |eigenvalue| > tol::rank
};

/// Eigendecomposition of a Hermitian matrix. Each eigenvector is rotated so
/// that its first component of largest magnitude is real positive.
Spectrum eig_hermitian(const CMat& a);

/// Principal square root of a positive semidefinite matrix.
CMat sqrt_psd(const CMat& a);

/// Trace norm of a Hermitian matrix.
double trace_norm_hermitian(const CMat& a);

/// A linear subspace of M_n stored as an HS-orthonormal basis.
class OperatorSpace {
 public:
  /// Wraps a basis that is already HS-orthonormal; the Gram matrix is
  /// checked against the identity to tol::exact.
  static OperatorSpace from_orthonormal(int ambient_dim, std::vector<CMat> basis);

  int ambient_dim() const noexcept { return ambient_dim_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<CMat>& basis() const noexcept { return basis_; }

  /// Columns are the row-major vectorized basis elements (n^2 x dim).
  const CMat& frame() const noexcept { return frame_; }

  /// Orthogonal projection of m onto the space.
  CMat project(const CMat& m) const;

 private:
  OperatorSpace(int ambient_dim, std::vector<CMat> basis);

  int ambient_dim_;
  std::vector<CMat> basis_;
  CMat frame_;
};

/// HS-orthonormal basis of lin{mats}, computed from the SVD of the stacked
/// vectorized generators.
OperatorSpace span(std::span<const CMat> mats, int n);

struct Membership {
  bool member = false;
  double residual = 0.0;
};

/// Residual of projecting m onto the space; member iff
/// residual <= tol::member * max(1, ||m||_HS).
Membership contains(const OperatorSpace& space, const CMat& m);

struct SpaceComparison {
  bool equal = false;
  double max_residual = 0.0;
};

/// Mutual containment of the two bases.
SpaceComparison compare_spaces(const OperatorSpace& a, const OperatorSpace& b);

/// Elementwise tensor products of the two orthonormal bases. Products of
/// orthonormal families are orthonormal, so no re-orthonormalization happens.
OperatorSpace tensor_spaces(const OperatorSpace& a, const OperatorSpace& b);

/// The algebraic requirements on a noncommutative graph: contains the
/// identity and is closed under the adjoint.
struct GraphConditions {
  bool contains_identity = false;
  bool adjoint_closed = false;
  double identity_residual = 0.0;
  double adjoint_residual = 0.0;

  bool ok() const noexcept { return contains_identity && adjoint_closed; }
};

GraphConditions graph_conditions(const OperatorSpace& space);

/// A tensor product of two operator spaces kept in factored form. Used where
/// the materialized product would be too large (e.g. 144 x 144 operators).
struct ProductSpace {
  OperatorSpace left;
  OperatorSpace right;

  int ambient_dim() const noexcept { return left.ambient_dim() * right.ambient_dim(); }
  int dim() const noexcept { return left.dim() * right.dim(); }
  OperatorSpace materialize() const { return tensor_spaces(left, right); }
};

}  // namespace zerograph
