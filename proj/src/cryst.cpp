#include "flatfold/cryst.hpp"

#include <algorithm>
#include <deque>

namespace flatfold {

namespace {
constexpr std::size_t kEagerTableLimit = 1024;
}

AffineElement affine_mul(const AffineElement& a, const AffineElement& b) {
  AffineElement out;
  out.linear = mul(a.linear, b.linear);
  RatVec moved(b.translation.size(), Rat(0));
  for (std::size_t i = 0; i < a.linear.rows(); ++i)
    for (std::size_t j = 0; j < a.linear.cols(); ++j)
      moved[i] += Rat(a.linear(i, j)) * b.translation[j];
  out.translation = vec_add(moved, a.translation);
  return out;
}

AffineElement affine_inv(const AffineElement& a) {
  AffineElement out;
  out.linear = inverse_unimodular(a.linear);
  out.translation.assign(a.translation.size(), Rat(0));
  for (std::size_t i = 0; i < out.linear.rows(); ++i)
    for (std::size_t j = 0; j < out.linear.cols(); ++j)
      out.translation[i] -= Rat(out.linear(i, j)) * a.translation[j];
  return out;
}

std::string element_key(const IntMat& m) {
  std::string key;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      key += m(i, j).get_str();
      key += ',';
    }
  return key;
}

PointGroup PointGroup::close(std::size_t dim, const std::vector<IntMat>& generators,
                             std::size_t cap) {
  for (const IntMat& g : generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw Error("dimension-mismatch", "generator has wrong shape");
    Int d = det(g);
    if (d != 1 && d != -1)
      throw Error("not-unimodular", "generator is not in GL(n, Z)");
  }

  std::vector<IntMat> discovered;
  std::map<std::string, std::size_t> seen;
  auto push = [&](const IntMat& m) -> bool {
    std::string key = element_key(m);
    if (seen.count(key)) return false;
    if (discovered.size() >= cap)
      throw Error("cap-exceeded", "point-group closure exceeded element cap");
    seen.emplace(std::move(key), discovered.size());
    discovered.push_back(m);
    return true;
  };
  push(IntMat::identity(dim));
  std::deque<std::size_t> work = {0};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (const IntMat& g : generators) {
      IntMat next = flatfold::mul(discovered[i], g);
      std::string key = element_key(next);
      if (!seen.count(key)) {
        push(next);
        work.push_back(seen[key]);
      }
    }
  }

  PointGroup out;
  out.dim_ = dim;
  out.elements_ = std::move(discovered);
  std::sort(out.elements_.begin(), out.elements_.end(),
            [](const IntMat& a, const IntMat& b) { return lex_compare(a, b) < 0; });
  for (std::size_t i = 0; i < out.elements_.size(); ++i)
    out.index_.emplace(element_key(out.elements_[i]), i);
  out.identity_ = out.index_.at(element_key(IntMat::identity(dim)));

  const std::size_t n = out.elements_.size();
  if (n <= kEagerTableLimit) {
    out.mul_table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.mul_table_[i][j] = out.index_.at(element_key(flatfold::mul(out.elements_[i], out.elements_[j])));
  }
  out.inv_table_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    out.inv_table_[i] = out.index_.at(element_key(inverse_unimodular(out.elements_[i])));
  return out;
}

std::optional<std::size_t> PointGroup::find(const IntMat& m) const {
  auto it = index_.find(element_key(m));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PointGroup::index_of(const IntMat& m) const {
  auto found = find(m);
  if (!found) throw Error("not-in-group", "matrix is not a group element");
  return *found;
}

std::size_t PointGroup::mul(std::size_t i, std::size_t j) const {
  if (!mul_table_.empty()) return mul_table_[i][j];
  return index_.at(element_key(flatfold::mul(elements_[i], elements_[j])));
}

std::size_t PointGroup::inv(std::size_t i) const { return inv_table_[i]; }

unsigned PointGroup::element_order(std::size_t i) const {
  unsigned order = 1;
  std::size_t acc = i;
  while (acc != identity_) {
    acc = mul(acc, i);
    ++order;
  }
  return order;
}

std::vector<std::size_t> PointGroup::subgroup_generated(
    const std::vector<std::size_t>& gens) const {
  std::vector<bool> in(order(), false);
  in[identity_] = true;
  std::deque<std::size_t> work = {identity_};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (std::size_t g : gens) {
      std::size_t next = mul(i, g);
      if (!in[next]) {
        in[next] = true;
        work.push_back(next);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < order(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

CrystGroup CrystGroup::from_generators(std::size_t dim, const RatMat& gram,
                                       const std::vector<CrystGenerator>& generators,
                                       std::size_t cap) {
  CrystGroup g;
  g.dim_ = dim;
  g.gram_ = gram.rows() ? gram : to_rat(IntMat::identity(dim));
  if (g.gram_.rows() != dim || g.gram_.cols() != dim)
    throw Error("dimension-mismatch", "gram matrix has wrong shape");
  for (const CrystGenerator& gen : generators)
    if (gen.translation.size() != dim)
      throw Error("dimension-mismatch", "generator translation has wrong length");

  std::vector<IntMat> mats;
  for (const CrystGenerator& gen : generators) mats.push_back(gen.matrix);
  g.points_ = PointGroup::close(dim, mats, cap);

  // Induce the vector system over the closed group: a(identity) = 0 and
  // a(E * B) = frac(E * a(B) + a(E)) along generator edges. Conflicting
  // reassignments mean the generator translations are not a cocycle.
  const std::size_t order = g.points_.order();
  std::vector<bool> assigned(order, false);
  g.vs_.assign(order, RatVec(dim, Rat(0)));
  std::size_t id = g.points_.identity_index();
  assigned[id] = true;
  std::deque<std::size_t> work = {id};
  auto normalize = [dim](RatVec v) {
    for (std::size_t i = 0; i < dim; ++i) v[i] = frac(v[i]);
    return v;
  };
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (const CrystGenerator& gen : generators) {
      std::size_t k = g.points_.index_of(gen.matrix);
      std::size_t j = g.points_.mul(i, k);
      RatVec moved(dim, Rat(0));
      const IntMat& e = g.points_.element(i);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) moved[r] += Rat(e(r, c)) * gen.translation[c];
      RatVec candidate = normalize(vec_add(moved, g.vs_[i]));
      if (!assigned[j]) {
        g.vs_[j] = candidate;
        assigned[j] = true;
        work.push_back(j);
      } else if (g.vs_[j] != candidate) {
        throw Error("inconsistent-vector-system",
                    "generator translations do not extend to a vector system");
      }
    }
  }
  return g;
}

AffineElement CrystGroup::affine(std::size_t i) const {
  return AffineElement{points_.element(i), vs_[i]};
}

AffineElement CrystGroup::affine(std::size_t i, const IntVec& lambda) const {
  AffineElement out{points_.element(i), vs_[i]};
  for (std::size_t t = 0; t < dim_; ++t) out.translation[t] += Rat(lambda[t]);
  return out;
}

CrystReport verify_cryst(const CrystGroup& g) {
  CrystReport report;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, ok ? "" : detail});
    if (!ok) report.passed = false;
  };
  const std::size_t n = g.dim(), order = g.order();
  const PointGroup& pts = g.points();

  bool symmetric = true;
  for (std::size_t i = 0; i < n && symmetric; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g.gram()(i, j) != g.gram()(j, i)) {
        symmetric = false;
        break;
      }
  check("gram-symmetric", symmetric, "gram matrix is not symmetric");

  // Sylvester: all leading principal minors positive.
  bool posdef = symmetric;
  if (symmetric)
    for (std::size_t k = 1; k <= n; ++k) {
      RatMat lead(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead(i, j) = g.gram()(i, j);
      if (det(lead) <= 0) {
        posdef = false;
        break;
      }
    }
  check("gram-positive-definite", posdef, "gram matrix is not positive definite");

  bool unimodular = true;
  for (std::size_t i = 0; i < order; ++i) {
    Int d = det(pts.element(i));
    if (d != 1 && d != -1) {
      unimodular = false;
      break;
    }
  }
  check("point-group-unimodular", unimodular, "element with |det| != 1");

  bool closed = true;
  if (order <= 512) {
    for (std::size_t i = 0; i < order && closed; ++i)
      for (std::size_t j = 0; j < order; ++j)
        if (!pts.find(mul(pts.element(i), pts.element(j)))) {
          closed = false;
          break;
        }
  }
  check("point-group-closed", closed, "product escaped the element set");

  bool isometry = true;
  std::string isometry_detail;
  for (std::size_t i = 0; i < order; ++i) {
    RatMat a = to_rat(pts.element(i));
    if (mul(mul(transpose(a), g.gram()), a) != g.gram()) {
      isometry = false;
      isometry_detail = "element " + std::to_string(i) + " does not preserve the gram form";
      break;
    }
  }
  check("isometry", isometry, isometry_detail);

  bool normalized = true;
  for (std::size_t i = 0; i < order && normalized; ++i)
    for (const Rat& v : g.vector_system(i))
      if (v < 0 || v >= 1) {
        normalized = false;
        break;
      }
  check("vector-system-normalized", normalized, "vector system entry outside [0,1)");

  check("identity-translation-zero",
        is_zero_vec(g.vector_system(pts.identity_index())),
        "identity carries a nonzero translation");

  // Cocycle over all pairs (quadratic, so only for small groups; closure
  // construction already guarantees it via generator edges).
  bool cocycle = true;
  std::string cocycle_detail;
  if (order <= 512) {
    for (std::size_t i = 0; i < order && cocycle; ++i)
      for (std::size_t j = 0; j < order; ++j) {
        std::size_t k = pts.mul(i, j);
        RatVec expect(n, Rat(0));
        const IntMat& a = pts.element(i);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            expect[r] += Rat(a(r, c)) * g.vector_system(j)[c];
        expect = vec_add(expect, g.vector_system(i));
        for (std::size_t r = 0; r < n; ++r) expect[r] = frac(expect[r]);
        if (expect != g.vector_system(k)) {
          cocycle = false;
          cocycle_detail = "cocycle identity fails at pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")";
          break;
        }
      }
  }
  check("cocycle", cocycle, cocycle_detail);
  return report;
}

TorsionResult is_torsion_free(const CrystGroup& g) {
  const std::size_t n = g.dim();
  TorsionResult out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (i == g.points().identity_index()) continue;
    unsigned m = g.points().element_order(i);
    IntMat nsum(n, n);
    IntMat power = IntMat::identity(n);
    for (unsigned k = 0; k < m; ++k) {
      nsum = add(nsum, power);
      power = mul(power, g.element(i));
    }
    // Need lambda with nsum * lambda = -nsum * a(A); rhs must be integral.
    RatVec rhs(n, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rhs[r] -= Rat(nsum(r, c)) * g.vector_system(i)[c];
    bool integral = true;
    IntVec rhs_int(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!is_integer(rhs[r])) {
        integral = false;
        break;
      }
      rhs_int[r] = rhs[r].get_num();
    }
    if (!integral) continue;
    auto sol = integer_solve(nsum, rhs_int);
    if (sol) {
      out.torsion_free = false;
      out.witness_element = i;
      out.witness_lambda = sol->particular;
      return out;
    }
  }
  return out;
}

bool is_orientable(const CrystGroup& g) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (det(g.element(i)) != 1) return false;
  return true;
}

CrystGroup direct_product(const CrystGroup& a, const CrystGroup& b) {
  const std::size_t da = a.dim(), db = b.dim(), n = da + db;
  RatMat gram(n, n);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) gram(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) gram(da + i, da + j) = b.gram()(i, j);

  std::vector<CrystGenerator> gens;
  for (std::size_t i = 0; i < a.order(); ++i) {
    CrystGenerator g;
    g.matrix = IntMat::identity(n);
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) g.matrix(r, c) = a.element(i)(r, c);
    g.translation.assign(n, Rat(0));
    for (std::size_t r = 0; r < da; ++r) g.translation[r] = a.vector_system(i)[r];
    gens.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < b.order(); ++i) {
    CrystGenerator g;
    g.matrix = IntMat::identity(n);
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t c = 0; c < db; ++c) g.matrix(da + r, da + c) = b.element(i)(r, c);
    g.translation.assign(n, Rat(0));
    for (std::size_t r = 0; r < db; ++r) g.translation[da + r] = b.vector_system(i)[r];
    gens.push_back(std::move(g));
  }
  return CrystGroup::from_generators(n, gram, gens);
}

}  // namespace flatfold
