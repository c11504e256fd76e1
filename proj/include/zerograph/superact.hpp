#pragma once

// The concrete superactivation constructions: the graphs L0 and Ln, the
// printed POVM, preparation vectors and Kraus operators for the 4-dimensional
// channel, the entangled code families, and end-to-end reproduction drivers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerograph/channel.hpp"
#include "zerograph/graphcap.hpp"

namespace zerograph {

/// exp(i pi / 4).
Complex eta();
/// diag(eta, conj(eta)).
CMat unitary_u();

enum class GraphVariant { L0, Ln };

struct GraphFamilySpec {
  int n = 2;  // number of 2x2 blocks
  GraphVariant variant = GraphVariant::L0;
};

/// Raw generators: the four block-diagonal matrix-unit slots followed by one
/// generator per independent off-diagonal lambda slot (U^* above the block
/// diagonal, U below; a single shared slot for L0).
std::vector<CMat> graph_generators(const GraphFamilySpec& spec);
OperatorSpace make_graph(const GraphFamilySpec& spec);

/// n^2 - n + 4.
int ln_dimension(int n);

/// The five printed positive operators A_1..A_5 summing to I_4. They are
/// linearly dependent (A_3 lies in the span of A_1+A_2 and A_4+A_5), so the
/// list is returned as is rather than as a PositiveBasis.
std::vector<CMat> paper_povm();
/// e1, e2, e3, (e1+e3)/sqrt2, (e2+e3)/sqrt2 in C^3.
std::vector<CVec> paper_psis();
/// The three printed 12x4 Kraus operators V_1, V_2, V_3.
QuantumChannel paper_kraus();

/// phi_k = (|2k-1>|2k-1> + e^{it} |2k>|2k>)/sqrt2, k = 1..n, in C^{2n} (x) C^{2n}.
CodeSubspace code_vectors(int n, double t);

/// t folded into [0, 2 pi).
double fold_angle(double t);

/// 16 evenly spaced points 2 pi k / 16.
std::vector<double> default_t_grid();

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct Report {
  nlohmann::json construction;
  std::vector<Check> checks;
  std::optional<ViolationReport> violation;
  double capacity_bound_bits = 0.0;

  bool all_passed() const;
  std::vector<std::string> failing() const;
};

struct DriverOptions {
  int starts = 1000;
  std::uint64_t seed = 42;
  int threads = 0;
};

/// 4-dimensional channel with a 3-dimensional environment: fixtures, the
/// single-copy search gap, codes for the tensor square at every t, recovery,
/// and the builder cross-check.
Report reproduce_corollary1(std::span<const double> t_grid, const DriverOptions& options);

inline constexpr int kMinBlocks = 2;
inline constexpr int kMaxBlocks = 6;

/// n-block generalization: Ln, its positive basis, the pseudo-diagonal
/// channel with minimal environment, the single-copy gap and the n-dimensional
/// code for the tensor square.
Report reproduce_theorem2(int n, double t, const DriverOptions& options);

}  // namespace zerograph
