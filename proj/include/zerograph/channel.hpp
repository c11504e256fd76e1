#pragma once

// Quantum channels in Kraus form and the pseudo-diagonal channel builder.

#include <span>
#include <vector>

#include "zerograph/opalg.hpp"

namespace zerograph {

class QuantumChannel {
 public:
  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  /// Number of Kraus operators, i.e. the environment dimension of the
  /// associated Stinespring isometry.
  int env_dim() const noexcept { return static_cast<int>(kraus_.size()); }
  const std::vector<CMat>& kraus() const noexcept { return kraus_; }

 private:
  friend QuantumChannel make_channel(std::vector<CMat> kraus);
  QuantumChannel(int dim_in, int dim_out, std::vector<CMat> kraus)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {}

  int dim_in_;
  int dim_out_;
  std::vector<CMat> kraus_;
};

/// Validates shapes and trace preservation (||sum K^dagger K - I||_HS <= tol::exact).
/// Throws ValidationError carrying the deviation on failure.
QuantumChannel make_channel(std::vector<CMat> kraus);

CMat apply(const QuantumChannel& ch, const CMat& rho);

/// Channel to the environment: entry (k, l) of the output is
/// trace(K_l^dagger K_k rho). Its Kraus operators are the rows of the shared
/// Stinespring isometry, one per output basis vector.
QuantumChannel complementary(const QuantumChannel& ch);

/// Noncommutative graph span{K_l^dagger K_k}.
OperatorSpace ncgraph(const QuantumChannel& ch);

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b);

/// Choi matrix sum_ij |i><j| (x) ch(|i><j|), of size dim_in*dim_out.
CMat choi(const QuantumChannel& ch);

/// HS distance between Choi matrices; the channel equality predicate.
double channel_distance(const QuantumChannel& a, const QuantumChannel& b);
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b);

/// Measure-and-prepare channel rho -> sum_i trace(M_i rho) |psi_i><psi_i|.
QuantumChannel measure_prepare(std::span<const CMat> effects, std::span<const CVec> states);

/// Linearly independent positive operators summing to the identity.
class PositiveBasis {
 public:
  /// Validates positivity, the identity sum, and linear independence.
  static PositiveBasis from_ops(std::vector<CMat> ops);

  int count() const noexcept { return static_cast<int>(ops_.size()); }
  int dim() const noexcept { return static_cast<int>(ops_.front().rows()); }
  const std::vector<CMat>& ops() const noexcept { return ops_; }

 private:
  explicit PositiveBasis(std::vector<CMat> ops) : ops_(std::move(ops)) {}
  std::vector<CMat> ops_;
};

/// Positive basis of a space that contains I and is adjoint-closed. Built
/// from a Hermitian basis {I, H_2, ..., H_d} with H_j orthogonal to I:
/// B_j = (H_j + ||H_j|| I) / (4 (d - 1) ||H_j||) for j >= 2 and
/// B_1 = I - sum_j B_j, so every B_j >= 0 and B_1 >= I / 2.
PositiveBasis positive_basis(const OperatorSpace& space);

/// Smallest m with d <= m^2.
int minimal_env_dim(int d);

/// First d unit vectors of the sequence e_1..e_m, (e_i + e_j)/sqrt2 for
/// j = m..2, i = 1..j-1, then (e_i + i e_j)/sqrt2 in the same order. Their
/// rank-one projectors are linearly independent for every d <= m^2.
std::vector<CVec> default_psis(int d, int m);

/// Numerical rank of the projectors |psi_i><psi_i| as elements of M_m.
int projector_rank(std::span<const CVec> psis);

/// Kraus operators V_k = sum_i <k|psi_i> W_i A_i^{1/2} into the direct sum of
/// C^{rank A_i}. W_i sends the eigenvectors of A_i with nonzero eigenvalue
/// (descending, phase-fixed) to the standard basis of the i-th block.
QuantumChannel build_pseudo_diagonal(const PositiveBasis& basis, std::span<const CVec> psis);

/// Same construction for positive operators that sum to the identity but need
/// not be linearly independent. The graph is then span{A_i}.
QuantumChannel build_pseudo_diagonal(std::span<const CMat> ops, std::span<const CVec> psis);

}  // namespace zerograph
