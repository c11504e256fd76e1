#pragma once

// Zero-error code certification, the pair-violation functional and its
// multi-start search, and recovery channels for certified codes.

#include <cstdint>
#include <span>
#include <vector>

#include "zerograph/channel.hpp"
#include "zerograph/opalg.hpp"

namespace zerograph {

namespace tol {
inline constexpr double code = 1e-9;
inline constexpr double recover = 1e-8;
/// Search values at or above this are reported as "no witness found".
inline constexpr double gap = 1e-4;
}  // namespace tol

/// Orthonormal family of vectors, stored as the columns of a matrix.
class CodeSubspace {
 public:
  /// Throws ValidationError unless the columns are orthonormal to tol::exact.
  explicit CodeSubspace(CMat vectors);
  static CodeSubspace from_vectors(std::span<const CVec> vectors);

  int ambient_dim() const noexcept { return static_cast<int>(vectors_.rows()); }
  int size() const noexcept { return static_cast<int>(vectors_.cols()); }
  const CMat& vectors() const noexcept { return vectors_; }
  CVec vector(int i) const { return vectors_.col(i); }
  CMat projector() const { return vectors_ * vectors_.adjoint(); }

 private:
  CMat vectors_;
};

struct CodeCertificate {
  bool passed = false;
  double max_offdiag_residual = 0.0;  // max |<phi_i|A phi_j>|, i != j
  double max_diag_residual = 0.0;     // max |<phi_i|A phi_i> - <phi_j|A phi_j>|
  double capacity_bound_bits = 0.0;   // log2(code size) when passed
};

/// Evaluates the zero-error conditions on every basis element of the space.
CodeCertificate check_code(const OperatorSpace& space, const CodeSubspace& code);

/// Same conditions over the elementary tensors left_a (x) right_b, evaluated
/// without forming the product operators.
CodeCertificate check_code(const ProductSpace& space, const CodeSubspace& code);

/// F(phi, psi) = sum_A |<psi|A phi>|^2 + |<phi|A phi> - <psi|A psi>|^2 over an
/// orthonormal basis of the space. Zero exactly at witness pairs.
double violation_functional(const OperatorSpace& space, const CVec& phi, const CVec& psi);

struct ViolationReport {
  int graph_dim = 0;
  double best_value = 0.0;
  CVec phi;
  CVec psi;
  int starts = 0;
  std::uint64_t seed = 0;
  double converged_fraction = 0.0;
  int best_start = -1;

  bool witness_found() const noexcept { return best_value <= tol::exact; }
  bool gap_found() const noexcept { return best_value >= tol::gap; }
};

struct SearchOptions {
  int starts = 1;
  std::uint64_t seed = 0;
  /// 0 selects std::thread::hardware_concurrency().
  int threads = 0;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-10;
};

/// One local minimization from the start drawn for (seed, start_index).
struct LocalResult {
  double value = 0.0;
  CVec phi;
  CVec psi;
  int iterations = 0;
  bool converged = false;
};

LocalResult minimize_from_start(const OperatorSpace& space, std::uint64_t seed, int start_index,
                                int max_iterations = 5000, double gradient_tolerance = 1e-10);

/// Multi-start projected gradient descent over pairs of unit vectors. Start k
/// depends only on (seed, k), so results are reproducible and independent of
/// the thread count; ties are broken by the lower start index.
ViolationReport search_violation(const OperatorSpace& space, const SearchOptions& options);
ViolationReport search_violation(const OperatorSpace& space, int starts, std::uint64_t seed);

/// Recovery channel Theta with Theta(ch(rho)) = rho for states on the code.
/// Refuses (ValidationError) unless check_code(ncgraph(ch), code) passes.
QuantumChannel build_recovery(const QuantumChannel& ch, const CodeSubspace& code);

/// Thread count from ZEROGRAPH_THREADS if set, else `requested`, else the
/// hardware concurrency.
int resolve_threads(int requested);

}  // namespace zerograph
