#pragma once

// Finite quantum observables (POVMs), their quantum-classical channels, and
// indistinguishable subspaces.

#include <cstdint>
#include <span>
#include <vector>

#include "zerograph/channel.hpp"
#include "zerograph/graphcap.hpp"

namespace zerograph {

class Observable {
 public:
  int dim() const noexcept { return dim_; }
  int outcomes() const noexcept { return static_cast<int>(effects_.size()); }
  const std::vector<CMat>& effects() const noexcept { return effects_; }
  /// All effects are mutually orthogonal projectors.
  bool sharp() const noexcept { return sharp_; }

  /// Outcome probabilities trace(M_i rho), indexed 0..m-1 in effect order.
  Eigen::VectorXd probabilities(const CMat& rho) const;

 private:
  friend Observable make_observable(std::vector<CMat> effects);
  Observable(int dim, std::vector<CMat> effects, bool sharp)
      : dim_(dim), effects_(std::move(effects)), sharp_(sharp) {}

  int dim_;
  std::vector<CMat> effects_;
  bool sharp_;
};

/// Throws ValidationError on a non-positive effect or when the effects do not
/// sum to the identity.
Observable make_observable(std::vector<CMat> effects);

/// rho -> sum_i trace(M_i rho) |i><i|.
QuantumChannel pi_channel(const Observable& obs);

OperatorSpace effect_span(const Observable& obs);

/// The basis conditions on the code over span{M_i}. Passed iff the code spans
/// an indistinguishable subspace.
CodeCertificate is_indistinguishable(const Observable& obs, const CodeSubspace& code);

Observable tensor_observables(const Observable& a, const Observable& b);

/// Witness search for a 2-dimensional indistinguishable subspace.
ViolationReport find_indistinguishable(const Observable& obs, const SearchOptions& options);
ViolationReport find_indistinguishable(const Observable& obs, int starts, std::uint64_t seed);

/// Effects form a positive basis of the space.
Observable observable_from_graph(const OperatorSpace& space);

/// Largest |<psi|M_i phi>| over `samples` random orthogonal pairs drawn from
/// the code's span. Zero (to rounding) iff orthogonal vectors are never
/// mixed by any effect.
double orthogonal_pair_residual(const Observable& obs, const CodeSubspace& code, int samples, std::uint64_t seed);

/// Largest difference between outcome distributions of `states` random
/// density matrices supported on the code's span and the maximally mixed
/// state there.
double distribution_spread(const Observable& obs, const CodeSubspace& code, int states, std::uint64_t seed);

}  // namespace zerograph
