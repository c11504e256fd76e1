#include "zerograph/json_io.hpp"

#include <cmath>
#include <string>

namespace zerograph::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int positive_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw FormatError(std::string("field \"") + key + "\" must be a positive integer");
  return v.get<int>();
}

std::vector<CMat> cmat_list(const json& j, const char* key) {
  const json& arr = field(j, key);
  if (!arr.is_array() || arr.empty()) throw FormatError(std::string("field \"") + key + "\" must be a nonempty array");
  std::vector<CMat> out;
  for (const json& m : arr) out.push_back(cmat_from_json(m));
  return out;
}

json cmat_array(const std::vector<CMat>& mats) {
  json arr = json::array();
  for (const CMat& m : mats) arr.push_back(to_json(m));
  return arr;
}

}  // namespace

json to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat cmat_from_json(const json& j) {
  const int rows = positive_int(j, "rows");
  const int cols = positive_int(j, "cols");
  const json& data = field(j, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols)
    throw FormatError("CMat: data length must equal rows * cols");
  CMat m(rows, cols);
  std::size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c, ++k) {
      const json& entry = data[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw FormatError("CMat: each entry must be [re, im]");
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("CMat: non-finite entry");
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

json to_json(const QuantumChannel& ch) {
  return {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", cmat_array(ch.kraus())}};
}

QuantumChannel channel_from_json(const json& j) {
  const int dim_in = positive_int(j, "dim_in");
  const int dim_out = positive_int(j, "dim_out");
  std::vector<CMat> kraus = cmat_list(j, "kraus");
  for (const CMat& k : kraus) {
    if (k.rows() != dim_out || k.cols() != dim_in)
      throw FormatError("channel: Kraus operator shape disagrees with dim_in/dim_out");
  }
  return make_channel(std::move(kraus));
}

json to_json(const PositiveBasis& basis) { return {{"ops", cmat_array(basis.ops())}}; }

PositiveBasis positive_basis_from_json(const json& j) { return PositiveBasis::from_ops(cmat_list(j, "ops")); }

json to_json(const Observable& obs) { return {{"dim", obs.dim()}, {"effects", cmat_array(obs.effects())}}; }

Observable observable_from_json(const json& j) {
  const int dim = positive_int(j, "dim");
  std::vector<CMat> effects = cmat_list(j, "effects");
  for (const CMat& m : effects)
    if (m.rows() != dim || m.cols() != dim) throw FormatError("observable: effect shape disagrees with dim");
  return make_observable(std::move(effects));
}

json graph_to_json(int ambient_dim, const std::vector<CMat>& generators) {
  return {{"ambient_dim", ambient_dim}, {"generators", cmat_array(generators)}};
}

OperatorSpace graph_from_json(const json& j) {
  const int n = positive_int(j, "ambient_dim");
  const std::vector<CMat> gens = cmat_list(j, "generators");
  for (const CMat& g : gens)
    if (g.rows() != n || g.cols() != n) throw FormatError("graph: generator shape disagrees with ambient_dim");
  return span(gens, n);
}

json to_json(const ViolationReport& report) {
  return {
      {"graph_dim", report.graph_dim},
      {"best_value", report.best_value},
      {"phi", to_json(CMat(report.phi))},
      {"psi", to_json(CMat(report.psi))},
      {"starts", report.starts},
      {"seed", report.seed},
      {"converged_fraction", report.converged_fraction},
  };
}

json to_json(const Report& report) {
  json checks = json::array();
  for (const Check& c : report.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  return {
      {"schema", kSchemaVersion},
      {"construction", report.construction},
      {"checks", std::move(checks)},
      {"violation", report.violation ? to_json(*report.violation) : json(nullptr)},
      {"capacity_bound_bits", report.capacity_bound_bits},
  };
}

}  // namespace zerograph::io
