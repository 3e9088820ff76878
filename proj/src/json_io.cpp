#include "flatfold/json_io.hpp"

namespace flatfold {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object())
    throw Error("bad-json", std::string("expected an object holding \"") + name + "\"");
  auto it = j.find(name);
  if (it == j.end())
    throw Error("bad-json", std::string("missing field \"") + name + "\"");
  return *it;
}

std::size_t dim_from_json(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1)
    throw Error("bad-json", "\"dim\" must be a positive integer");
  return d.get<std::size_t>();
}

std::string status_name(MinimalityStatus s) {
  return s == MinimalityStatus::certified ? "certified" : "search-bound";
}

}  // namespace

Json rat_to_json(const Rat& v) { return format_rat(v); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  throw Error("bad-json", "expected a rational as \"p/q\" string or integer");
}

Json vec_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& e : v) out.push_back(rat_to_json(e));
  return out;
}

Json vec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& e : v) out.push_back(e.get_str());
  return out;
}

RatVec rat_vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error("bad-json", "expected an array of rationals");
  RatVec out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(rat_from_json(e));
  return out;
}

Json mat_to_json(const RatMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json mat_to_json(const IntMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    out.push_back(std::move(row));
  }
  return out;
}

RatMat rat_mat_from_json(const Json& j) {
  if (!j.is_array()) throw Error("bad-json", "expected an array of matrix rows");
  std::size_t rows = j.size();
  std::size_t cols = rows ? j.at(0).size() : 0;
  RatMat out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw Error("bad-json", "matrix rows must be arrays of equal length");
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = rat_from_json(row.at(k));
  }
  return out;
}

IntMat int_mat_from_json(const Json& j) { return to_int(rat_mat_from_json(j)); }

Json group_to_json(const CrystGroup& g) {
  Json out;
  out["dim"] = g.dim();
  out["gram"] = mat_to_json(g.gram());
  Json gens = Json::array();
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (i == g.points().identity_index()) continue;
    Json one;
    one["matrix"] = mat_to_json(g.element(i));
    one["translation"] = vec_to_json(g.vector_system(i));
    gens.push_back(std::move(one));
  }
  out["generators"] = gens;
  return out;
}

CrystGroup group_from_json(const Json& j, std::size_t cap) {
  std::size_t dim = dim_from_json(j);
  RatMat gram = RatMat::identity(dim);
  if (j.contains("gram")) {
    gram = rat_mat_from_json(j.at("gram"));
    if (gram.rows() != dim || gram.cols() != dim)
      throw Error("bad-json", "\"gram\" must be dim x dim");
  }
  std::vector<CrystGenerator> gens;
  if (j.contains("generators")) {
    const Json& list = j.at("generators");
    if (!list.is_array()) throw Error("bad-json", "\"generators\" must be an array");
    for (const Json& one : list) {
      IntMat m = int_mat_from_json(field(one, "matrix"));
      if (m.rows() != dim || m.cols() != dim)
        throw Error("bad-json", "generator matrix must be dim x dim");
      RatVec t = rat_vec_from_json(field(one, "translation"));
      if (t.size() != dim)
        throw Error("bad-json", "generator translation must have dim entries");
      gens.push_back({std::move(m), std::move(t)});
    }
  }
  return CrystGroup::from_generators(dim, gram, gens, cap);
}

Json subspace_to_json(const Subspace& s) {
  Json out;
  out["ambient_dim"] = s.ambient_dim();
  out["dim"] = s.dim();
  out["sat_basis"] = mat_to_json(s.sat_basis());
  return out;
}

Subspace subspace_from_json(const Json& j) {
  if (j.is_object() && j.contains("generators"))
    return Subspace::saturate(rat_mat_from_json(j.at("generators")));
  const Json& basis = field(j, "sat_basis");
  IntMat m = int_mat_from_json(basis);
  std::size_t ambient = m.rows();
  if (j.contains("ambient_dim")) {
    const Json& a = j.at("ambient_dim");
    if (!a.is_number_integer() || a.get<std::size_t>() != ambient)
      throw Error("bad-json", "\"ambient_dim\" does not match the basis rows");
  }
  return Subspace::from_sat_basis(ambient, m);
}

Json report_to_json(const CrystReport& r) {
  Json out;
  out["passed"] = r.passed;
  Json checks = Json::array();
  for (const CrystCheck& c : r.checks) {
    Json one;
    one["name"] = c.name;
    one["passed"] = c.passed;
    one["detail"] = c.detail;
    checks.push_back(std::move(one));
  }
  out["checks"] = checks;
  return out;
}

Json stabilizer_to_json(const StabilizerGroup& s, const CrystGroup& g) {
  Json out;
  Json entries = Json::array();
  for (const StabilizerEntry& e : s.entries) {
    Json one;
    one["element"] = e.element;
    one["matrix"] = mat_to_json(g.element(e.element));
    one["lambda"] = vec_to_json(e.lambda);
    entries.push_back(std::move(one));
  }
  out["entries"] = entries;
  out["entry_count"] = s.entries.size();
  out["common_sublattice"] = mat_to_json(s.common_sublattice);
  return out;
}

Json leaf_sequence_to_json(const LeafSequence& s) {
  Json out;
  out["leaf_lattice"] = mat_to_json(s.leaf_lattice);
  Json hol = Json::array();
  for (const IntMat& m : s.leaf_holonomy) hol.push_back(mat_to_json(m));
  out["leaf_holonomy"] = hol;
  out["lattice_index"] = s.lattice_index.get_str();
  out["covering_degree"] = s.covering_degree.get_str();
  out["generic"] = s.generic;
  out["kprime_order"] = s.kprime_order;
  out["kprime_restriction_matches"] = s.kprime_restriction_matches;
  return out;
}

Json orbifold_to_json(const OrbifoldData& o) {
  Json out;
  out["quotient_dim"] = o.quotient_dim;
  out["quotient_lattice"] = mat_to_json(o.quotient_lattice);
  out["group"] = group_to_json(o.quotient_group);
  out["torsion_free"] = o.torsion_free;
  return out;
}

Json decomposition_to_json(const Decomposition& d) {
  Json out;
  Json list = Json::array();
  for (const DecompositionSummand& s : d.summands) {
    Json one;
    one["dim"] = s.space.space.dim();
    one["sat_basis"] = mat_to_json(s.space.space.sat_basis());
    one["status"] = status_name(s.status);
    one["bound"] = s.bound;
    list.push_back(std::move(one));
  }
  out["summands"] = list;
  return out;
}

Json pair_report_to_json(const PairReport& r) {
  Json out;
  out["passed"] = r.passed;
  Json checks = Json::array();
  for (const PairCheck& c : r.checks) {
    Json one;
    one["name"] = c.name;
    one["passed"] = c.passed;
    one["detail"] = c.detail;
    checks.push_back(std::move(one));
  }
  out["checks"] = checks;
  return out;
}

Json intersection_to_json(const IntersectionReport& r) {
  Json out;
  out["torus_count"] = r.torus_count.get_str();
  out["hhat_order"] = r.hhat_order.get_str();
  out["leaf_count"] = r.leaf_count.get_str();
  out["oracle_count"] = r.oracle_count.get_str();
  out["oracle_consistent"] = r.oracle_consistent;
  return out;
}

Json inclusion_to_json(const InclusionReport& r) {
  Json out;
  out["injective"] = r.injective;
  out["kernel_order"] = r.kernel_order.get_str();
  out["image_order"] = r.image_order.get_str();
  out["coset_count"] = r.coset_count.get_str();
  out["sequence_exact"] = r.sequence_exact;
  return out;
}

Json klein_to_json(const KleinFixture& fx) {
  Json out = group_to_json(fx.group);
  out["conversion"] = mat_to_json(fx.conversion);
  out["vprime"] = subspace_to_json(fx.vprime);
  out["vsecond"] = subspace_to_json(fx.vsecond);
  Json pred;
  pred["orientable"] = fx.expected.orientable;
  pred["summand_dims"] = fx.expected.summand_dims;
  pred["strata"] = fx.expected.strata;
  pred["torus_count"] = fx.expected.torus_count.get_str();
  pred["hhat_order"] = fx.expected.hhat_order.get_str();
  pred["leaf_count"] = fx.expected.leaf_count.get_str();
  pred["covering_degree"] = fx.expected.covering_degree.get_str();
  pred["lattice_index"] = fx.expected.lattice_index.get_str();
  out["predictions"] = pred;
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error("bad-json", e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flatfold
