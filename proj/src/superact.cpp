#include "zerograph/superact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace zerograph {

Complex eta() { return std::polar(1.0, std::numbers::pi / 4.0); }

CMat unitary_u() {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = eta();
  u(1, 1) = std::conj(eta());
  return u;
}

int ln_dimension(int n) { return n * n - n + 4; }

std::vector<CMat> graph_generators(const GraphFamilySpec& spec) {
  if (spec.variant == GraphVariant::L0 && spec.n != 2) throw ConfigError("make_graph: L0 is defined for n = 2 only");
  if (spec.n < 2) throw ConfigError("make_graph: need at least two blocks");
  const int n = spec.n;
  const int dim = 2 * n;
  const CMat u = unitary_u();

  std::vector<CMat> gens;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CMat g = CMat::Zero(dim, dim);
      for (int b = 0; b < n; ++b) g(2 * b + i, 2 * b + j) = 1.0;
      gens.push_back(std::move(g));
    }
  }
  if (spec.variant == GraphVariant::L0) {
    CMat g = CMat::Zero(dim, dim);
    g.block(0, 2, 2, 2) = u.adjoint();
    g.block(2, 0, 2, 2) = u;
    gens.push_back(std::move(g));
    return gens;
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == c) continue;
      CMat g = CMat::Zero(dim, dim);
      g.block(2 * r, 2 * c, 2, 2) = r < c ? CMat(u.adjoint()) : u;
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

OperatorSpace make_graph(const GraphFamilySpec& spec) {
  const std::vector<CMat> gens = graph_generators(spec);
  return span(gens, 2 * spec.n);
}

std::vector<CMat> paper_povm() {
  const Complex e = eta();
  const Complex ec = std::conj(e);
  const double r3 = std::numbers::sqrt3;

  CMat a1(4, 4), a2(4, 4), a3 = CMat::Zero(4, 4), a4 = CMat::Zero(4, 4), a5 = CMat::Zero(4, 4);
  a1 << 1.0, 0.0, ec, 0.0,
        0.0, 2.0, 0.0, e,
        e, 0.0, 1.0, 0.0,
        0.0, ec, 0.0, 2.0;
  a1 /= 6.0;
  a2 << 1.0, 0.0, -ec, 0.0,
        0.0, 2.0, 0.0, -e,
        -e, 0.0, 1.0, 0.0,
        0.0, -ec, 0.0, 2.0;
  a2 /= 6.0;
  a3(0, 0) = a3(2, 2) = 5.0 / 9.0;
  for (const double sign : {1.0, -1.0}) {
    CMat& a = sign > 0 ? a4 : a5;
    for (int b = 0; b < 2; ++b) {
      a(2 * b, 2 * b) = 1.0 / 18.0;
      a(2 * b, 2 * b + 1) = a(2 * b + 1, 2 * b) = sign * r3 / 18.0;
      a(2 * b + 1, 2 * b + 1) = 3.0 / 18.0;
    }
  }
  return {a1, a2, a3, a4, a5};
}

std::vector<CVec> paper_psis() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2),
          r * (basis_vector(3, 0) + basis_vector(3, 2)), r * (basis_vector(3, 1) + basis_vector(3, 2))};
}

QuantumChannel paper_kraus() {
  const Complex e = eta();
  const Complex ec = std::conj(e);
  const double r3 = std::numbers::sqrt3;
  const double r6 = std::sqrt(6.0);
  const double r5x2 = 2.0 * std::sqrt(5.0);
  const double alpha = (3.0 + r3) / std::numbers::sqrt2;
  const Complex beta = e * (3.0 - r3) / std::numbers::sqrt2;

  CMat v1 = CMat::Zero(12, 4), v2 = CMat::Zero(12, 4), v3 = CMat::Zero(12, 4);
  v1.row(0) << r6, 0.0, r6 * ec, 0.0;
  v1.row(1) << 0.0, alpha, 0.0, beta;
  v1.row(2) << 0.0, std::conj(beta), 0.0, alpha;
  v1.row(8) << 1.0, r3, 0.0, 0.0;
  v1.row(9) << 0.0, 0.0, 1.0, r3;

  v2.row(3) << r6, 0.0, -r6 * ec, 0.0;
  v2.row(4) << 0.0, alpha, 0.0, -beta;
  v2.row(5) << 0.0, -std::conj(beta), 0.0, alpha;
  v2.row(10) << 1.0, -r3, 0.0, 0.0;
  v2.row(11) << 0.0, 0.0, 1.0, -r3;

  v3.row(6) << r5x2, 0.0, 0.0, 0.0;
  v3.row(7) << 0.0, 0.0, r5x2, 0.0;
  v3.row(8) << 1.0, r3, 0.0, 0.0;
  v3.row(9) << 0.0, 0.0, 1.0, r3;
  v3.row(10) << 1.0, -r3, 0.0, 0.0;
  v3.row(11) << 0.0, 0.0, 1.0, -r3;

  return make_channel({v1 / 6.0, v2 / 6.0, v3 / 6.0});
}

double fold_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

CodeSubspace code_vectors(int n, double t) {
  if (n < 2) throw ConfigError("code_vectors: need n >= 2");
  const int dim = 2 * n;
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex phase = std::polar(1.0, fold_angle(t));
  CMat cols = CMat::Zero(static_cast<Eigen::Index>(dim) * dim, n);
  for (int k = 0; k < n; ++k) {
    const int first = 2 * k;
    const int second = 2 * k + 1;
    cols(first * dim + first, k) = r;
    cols(second * dim + second, k) = r * phase;
  }
  return CodeSubspace(std::move(cols));
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int k = 0; k < 16; ++k) grid.push_back(2.0 * std::numbers::pi * k / 16.0);
  return grid;
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> Report::failing() const {
  std::vector<std::string> out;
  for (const Check& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

namespace {

void add(Report& report, std::string name, bool pass, double residual) {
  report.checks.push_back({std::move(name), pass, residual});
}

void add_space_equality(Report& report, std::string name, const OperatorSpace& a, const OperatorSpace& b) {
  const SpaceComparison cmp = compare_spaces(a, b);
  add(report, std::move(name), cmp.equal && a.dim() == b.dim(), cmp.max_residual);
}

std::string t_label(double t) {
  std::ostringstream os;
  os.precision(6);
  os << "t=" << t;
  return os.str();
}

// Random density matrix supported on the code.
CMat random_code_state(const CodeSubspace& code, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = code.size();
  CMat x(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(i, j) = Complex(re, im);
    }
  CMat rho = x * x.adjoint();
  rho /= rho.trace().real();
  return code.vectors() * rho * code.vectors().adjoint();
}

double worst_roundtrip(const QuantumChannel& ch, const QuantumChannel& recovery, const CodeSubspace& code,
                       std::uint64_t seed, int samples) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x7265u};
  std::mt19937_64 rng(seq);
  // R_a K_l C, so that a code state sigma maps to sum X sigma X^dagger.
  const CMat& c = code.vectors();
  std::vector<CMat> composed;
  for (const CMat& r : recovery.kraus())
    for (const CMat& k : ch.kraus()) {
      CMat x = r * (k * c);
      if (x.norm() > 1e-15) composed.push_back(std::move(x));
    }
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMat rho = random_code_state(code, rng);
    const CMat sigma = c.adjoint() * rho * c;
    CMat back = CMat::Zero(rho.rows(), rho.cols());
    for (const CMat& x : composed) back += x * sigma * x.adjoint();
    worst = std::max(worst, 0.5 * trace_norm_hermitian(0.5 * ((back - rho) + (back - rho).adjoint())));
  }
  return worst;
}

void validate(const DriverOptions& options) {
  if (options.starts < 1) throw ConfigError("invalid search configuration: starts must be at least 1");
}

}  // namespace

Report reproduce_corollary1(std::span<const double> t_grid, const DriverOptions& options) {
  validate(options);
  if (t_grid.empty()) throw ConfigError("reproduce_corollary1: empty t grid");

  Report report;
  const OperatorSpace l0 = make_graph({2, GraphVariant::L0});
  const std::vector<CMat> povm = paper_povm();
  const std::vector<CVec> psis = paper_psis();
  const QuantumChannel printed = paper_kraus();

  std::vector<double> folded;
  for (double t : t_grid) folded.push_back(fold_angle(t));

  // Printed POVM.
  CMat sum = CMat::Zero(4, 4);
  double min_eig = 0.0;
  std::vector<int> ranks;
  for (const CMat& a : povm) {
    sum += a;
    const Spectrum s = eig_hermitian(a);
    min_eig = std::min(min_eig, s.eigenvalues.minCoeff());
    ranks.push_back(s.rank);
  }
  const double sum_dev = (sum - identity(4)).norm();
  add(report, "povm_sums_to_identity", sum_dev <= tol::exact, sum_dev);
  add(report, "povm_positive", min_eig >= -tol::exact, -min_eig);
  add(report, "povm_ranks_33222", ranks == std::vector<int>{3, 3, 2, 2, 2}, 0.0);
  add_space_equality(report, "povm_span_equals_L0", span(povm, 4), l0);

  // Printed Kraus operators.
  CMat tp = CMat::Zero(4, 4);
  for (const CMat& v : printed.kraus()) tp += v.adjoint() * v;
  const double tp_dev = (tp - identity(4)).norm();
  add(report, "kraus_trace_preserving", tp_dev <= tol::exact, tp_dev);
  add_space_equality(report, "kraus_graph_equals_L0", ncgraph(printed), l0);
  add(report, "kraus_choi_rank_3", eig_hermitian(choi(printed)).rank == 3, 0.0);
  const QuantumChannel psi_channel = measure_prepare(povm, psis);
  const double comp_dist = channel_distance(complementary(printed), psi_channel);
  add(report, "kraus_complementary_equals_measure_prepare", comp_dist <= tol::exact, comp_dist);

  // Builder cross-check at channel level.
  const QuantumChannel built = build_pseudo_diagonal(povm, psis);
  add(report, "builder_dimensions_4_3_12", built.dim_in() == 4 && built.env_dim() == 3 && built.dim_out() == 12, 0.0);
  add_space_equality(report, "builder_graph_equals_L0", ncgraph(built), l0);
  const double builder_dist = channel_distance(complementary(built), complementary(printed));
  add(report, "builder_complementary_matches_printed", builder_dist <= tol::exact, builder_dist);
  double entry_diff = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    entry_diff = std::max(entry_diff, (built.kraus()[k] - printed.kraus()[k]).cwiseAbs().maxCoeff());

  // Single copy: no witness pair.
  SearchOptions search;
  search.starts = options.starts;
  search.seed = options.seed;
  search.threads = options.threads;
  report.violation = search_violation(l0, search);
  add(report, "single_copy_gap", report.violation->gap_found(), report.violation->best_value);
  // The printed channel's own graph, reported alongside.
  const OperatorSpace printed_graph = ncgraph(printed);
  const ViolationReport printed_search = search_violation(printed_graph, search);

  // Tensor square: a qubit code for every t, plus recovery.
  const OperatorSpace square = tensor_spaces(l0, l0);
  const QuantumChannel doubled = tensor_channels(printed, printed);
  bool all_codes = true;
  for (std::size_t i = 0; i < folded.size(); ++i) {
    const double t = folded[i];
    const CodeSubspace code = code_vectors(2, t);
    const CodeCertificate cert = check_code(square, code);
    const double f = violation_functional(square, code.vector(0), code.vector(1));
    const bool ok = cert.passed && f <= tol::exact;
    all_codes = all_codes && ok;
    add(report, "tensor_square_code[" + t_label(t) + "]", ok,
        std::max({cert.max_offdiag_residual, cert.max_diag_residual, f}));

    const QuantumChannel recovery = build_recovery(doubled, code);
    const double worst = worst_roundtrip(doubled, recovery, code, options.seed + i, 20);
    add(report, "recovery_roundtrip[" + t_label(t) + "]", worst <= tol::recover, worst);
  }
  report.capacity_bound_bits = all_codes ? 1.0 : 0.0;

  report.construction = {
      {"name", "corollary1"},
      {"dim_in", printed.dim_in()},
      {"env_dim", printed.env_dim()},
      {"dim_out", printed.dim_out()},
      {"graph_dim", l0.dim()},
      {"t_grid", folded},
      {"starts", options.starts},
      {"seed", options.seed},
      {"builder_vs_printed_max_entry_diff", entry_diff},
      {"printed_graph_dim", printed_graph.dim()},
      {"printed_graph_best_value", printed_search.best_value},
  };
  return report;
}

Report reproduce_theorem2(int n, double t, const DriverOptions& options) {
  if (n < kMinBlocks || n > kMaxBlocks)
    throw ConfigError("reproduce_theorem2: n must lie in [" + std::to_string(kMinBlocks) + ", " +
                      std::to_string(kMaxBlocks) + "]");
  validate(options);
  t = fold_angle(t);

  Report report;
  const OperatorSpace ln = make_graph({n, GraphVariant::Ln});
  const int d = ln.dim();
  add(report, "graph_dimension", d == ln_dimension(n), std::abs(d - ln_dimension(n)));
  const GraphConditions cond = graph_conditions(ln);
  add(report, "graph_conditions", cond.ok(), std::max(cond.identity_residual, cond.adjoint_residual));

  const PositiveBasis basis = positive_basis(ln);
  add(report, "positive_basis_count", basis.count() == d, std::abs(basis.count() - d));
  const OperatorSpace basis_span = span(basis.ops(), 2 * n);
  add_space_equality(report, "positive_basis_spans_graph", basis_span, ln);

  const int m = minimal_env_dim(d);
  add(report, "env_dim_minimal", m * m >= d && (m - 1) * (m - 1) < d, 0.0);
  const std::vector<CVec> psis = default_psis(d, m);
  const QuantumChannel ch = build_pseudo_diagonal(basis, psis);
  add(report, "channel_env_dim", ch.env_dim() == m, std::abs(ch.env_dim() - m));
  add_space_equality(report, "channel_graph_equals_Ln", ncgraph(ch), ln);
  const double comp_dist = channel_distance(complementary(ch), measure_prepare(basis.ops(), psis));
  add(report, "complementary_equals_measure_prepare", comp_dist <= tol::exact, comp_dist);

  SearchOptions search;
  search.starts = options.starts;
  search.seed = options.seed;
  search.threads = options.threads;
  report.violation = search_violation(ln, search);
  add(report, "single_copy_gap", report.violation->gap_found(), report.violation->best_value);

  const CodeSubspace code = code_vectors(n, t);
  const CodeCertificate cert = check_code(ProductSpace{basis_span, basis_span}, code);
  add(report, "tensor_square_code[" + t_label(t) + "]", cert.passed,
      std::max(cert.max_offdiag_residual, cert.max_diag_residual));
  report.capacity_bound_bits = cert.capacity_bound_bits;

  report.construction = {
      {"name", "theorem2"},
      {"n", n},
      {"t", t},
      {"dim_in", ch.dim_in()},
      {"env_dim", ch.env_dim()},
      {"dim_out", ch.dim_out()},
      {"graph_dim", d},
      {"starts", options.starts},
      {"seed", options.seed},
  };
  return report;
}

}  // namespace zerograph
