#include "flatfold/intersect.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace flatfold {

namespace {

struct QuotientElement {
  std::size_t element;
  IntVec residue;
};

std::string quotient_key(const QuotientElement& q) {
  std::string key = std::to_string(q.element);
  for (const Int& r : q.residue) {
    key += ':';
    key += r.get_str();
  }
  return key;
}

// The finite quotient Q = group / L0 with L0 = (Z^n ∩ V') ⊕ (Z^n ∩ V'').
// L0 is normal (both sublattices are H-stable), so Q is a group of order
// |H| * [Z^n : L0]; translation classes are tracked as Smith residues.
struct QuotientModel {
  const CrystGroup* g = nullptr;
  SnfResult smith;  // u * [S' | S''] * v = d
  IntMat uinv;
  std::vector<Int> divisors;
  Int lattice_order;
  Int full_order;

  IntVec residue(const IntVec& x) const {
    IntVec ux = mul(smith.u, x);
    IntVec r(ux.size());
    for (std::size_t i = 0; i < ux.size(); ++i)
      mpz_fdiv_r(r[i].get_mpz_t(), ux[i].get_mpz_t(), divisors[i].get_mpz_t());
    return r;
  }
  IntVec lift(const IntVec& r) const { return mul(uinv, r); }

  QuotientElement mul_q(const QuotientElement& a, const QuotientElement& b) const {
    std::size_t k = g->points().mul(a.element, b.element);
    RatVec c = vec_sub(vec_add(mul(to_rat(g->element(a.element)), g->vector_system(b.element)),
                               g->vector_system(a.element)),
                       g->vector_system(k));
    IntVec v = vec_add(mul(g->element(a.element), lift(b.residue)), lift(a.residue));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_integer(c[i]))
        throw Error("internal", "cocycle defect is not integral");
      v[i] += c[i].get_num();
    }
    return {k, residue(v)};
  }
  QuotientElement identity() const {
    return {g->points().identity_index(), IntVec(divisors.size(), Int(0))};
  }
};

QuotientModel build_quotient(const ComplementaryPair& pair, const CrystGroup& g,
                             const Int& cap) {
  const Subspace& vp = pair.leaf_a.vprime;
  const Subspace& vs = pair.leaf_b.vprime;
  if (vp.ambient_dim() != g.dim() || vs.ambient_dim() != g.dim() ||
      vp.dim() + vs.dim() != g.dim())
    throw Error("not-complementary", "subspace dimensions do not sum to the ambient");
  QuotientModel m;
  m.g = &g;
  IntMat b0 = hconcat(vp.sat_basis(), vs.sat_basis());
  m.smith = snf(b0);
  m.divisors = m.smith.divisors;
  m.lattice_order = 1;
  for (const Int& d : m.divisors) {
    if (d == 0) throw Error("not-complementary", "sublattices do not span");
    m.lattice_order *= d;
  }
  m.uinv = inverse_unimodular(m.smith.u);
  m.full_order = Int(g.order()) * m.lattice_order;
  if (m.full_order > cap)
    throw Error("quotient-cap-exceeded", "finite quotient larger than the cap");
  return m;
}

std::vector<QuotientElement> stabilizer_image(const StabilizerGroup& stab,
                                              const QuotientModel& m) {
  // The image of the full stabilizer: lattice parts die in Q, so one
  // element per entry; a homomorphic image needs no extra closure.
  std::vector<QuotientElement> out;
  out.reserve(stab.entries.size());
  for (const StabilizerEntry& e : stab.entries)
    out.push_back({e.element, m.residue(e.lambda)});
  return out;
}

bool advance(IntVec& r, const std::vector<Int>& d) {
  for (std::size_t i = r.size(); i-- > 0;) {
    if (++r[i] < d[i]) return true;
    r[i] = 0;
  }
  return false;
}

}  // namespace

PairReport validate_pair(const ComplementaryPair& pair, const CrystGroup& g) {
  PairReport rep;
  auto add = [&rep](std::string name, bool ok, std::string detail) {
    rep.passed = rep.passed && ok;
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const Subspace& vp = pair.leaf_a.vprime;
  const Subspace& vs = pair.leaf_b.vprime;
  bool comp = vp.ambient_dim() == g.dim() && vs.ambient_dim() == g.dim() &&
              vp.dim() + vs.dim() == g.dim() &&
              intersect_subspaces(vp, vs).dim() == 0;
  add("complementary", comp,
      comp ? "subspaces span and meet trivially" : "subspaces are not complementary");
  bool inv = comp && is_invariant(vp, g) && is_invariant(vs, g);
  add("invariant", inv, inv ? "both subspaces are H-invariant" : "invariance fails");
  if (!comp || !inv) {
    rep.passed = false;
    return rep;
  }

  bool gen = is_generic(pair.leaf_a, g) && is_generic(pair.leaf_b, g);
  add("generic", gen, gen ? "both leaves are generic" : "a leaf has extra stabilizer");

  StabilizerGroup stab_a = coset_stabilizer(pair.leaf_a, g);
  StabilizerGroup stab_b = coset_stabilizer(pair.leaf_b, g);
  auto generators_of = [&g](const StabilizerGroup& stab) {
    std::vector<AffineElement> out;
    for (const StabilizerEntry& e : stab.entries)
      out.push_back(g.affine(e.element, e.lambda));
    const IntMat& s = stab.common_sublattice;
    for (std::size_t j = 0; j < s.cols(); ++j)
      out.push_back({IntMat::identity(g.dim()), to_rat(s.column(j))});
    return out;
  };
  bool commute = true;
  for (const AffineElement& x : generators_of(stab_a))
    for (const AffineElement& y : generators_of(stab_b)) {
      AffineElement xy = affine_mul(x, y), yx = affine_mul(y, x);
      if (xy.linear != yx.linear || xy.translation != yx.translation) commute = false;
    }
  add("stabilizers-commute", commute,
      commute ? "stabilizer generators commute pairwise" : "a generator pair does not commute");

  // Shared linear part i with compatible lambda cosets would put a
  // non-translation element into both stabilizers.
  IntMat both = hconcat(vp.sat_basis(), vs.sat_basis());
  bool trivial = true;
  for (const StabilizerEntry& ea : stab_a.entries) {
    if (ea.element == g.points().identity_index()) continue;
    for (const StabilizerEntry& eb : stab_b.entries)
      if (eb.element == ea.element &&
          integer_solve(both, vec_sub(ea.lambda, eb.lambda)).has_value())
        trivial = false;
  }
  add("trivial-intersection", trivial,
      trivial ? "stabilizers share only translations of the zero coset"
              : "stabilizers share a nontrivial element");
  return rep;
}

Int torus_intersection_count(const Subspace& vprime, const Subspace& vsecond,
                             const CrystGroup& g) {
  if (vprime.ambient_dim() != g.dim() || vsecond.ambient_dim() != g.dim())
    throw Error("dimension-mismatch", "subspace does not match the group dimension");
  if (vprime.dim() + vsecond.dim() != g.dim())
    throw Error("not-complementary", "subspace dimensions do not sum to the ambient");
  Int d = det(hconcat(vprime.sat_basis(), vsecond.sat_basis()));
  if (d == 0) throw Error("not-complementary", "sublattices do not span");
  return abs(d);
}

Int h_hat_order(const ComplementaryPair& pair, const CrystGroup& g) {
  std::vector<std::size_t> gens;
  for (const StabilizerEntry& e : coset_stabilizer(pair.leaf_a, g).entries)
    gens.push_back(e.element);
  for (const StabilizerEntry& e : coset_stabilizer(pair.leaf_b, g).entries)
    gens.push_back(e.element);
  std::size_t sub = g.points().subgroup_generated(gens).size();
  if (g.order() % sub != 0)
    throw Error("internal", "subgroup order does not divide the group order");
  return Int(g.order() / sub);
}

Int finite_quotient_oracle(const ComplementaryPair& pair, const CrystGroup& g,
                           const Int& cap) {
  QuotientModel m = build_quotient(pair, g, cap);
  std::vector<QuotientElement> im_a = stabilizer_image(coset_stabilizer(pair.leaf_a, g), m);
  std::vector<QuotientElement> im_b = stabilizer_image(coset_stabilizer(pair.leaf_b, g), m);

  // Every double coset im_a * q * im_b is the full product set (no closure
  // pass needed); sweep Q once and count the orbits.
  Int count(0);
  std::set<std::string> visited;
  for (std::size_t i = 0; i < g.order(); ++i) {
    IntVec r(m.divisors.size(), Int(0));
    do {
      QuotientElement q{i, r};
      if (visited.count(quotient_key(q))) continue;
      count += 1;
      for (const QuotientElement& s1 : im_a)
        for (const QuotientElement& s2 : im_b)
          visited.insert(quotient_key(m.mul_q(m.mul_q(s1, q), s2)));
    } while (advance(r, m.divisors));
  }
  return count;
}

IntersectionReport leaf_intersection_count(const ComplementaryPair& pair,
                                           const CrystGroup& g) {
  PairReport rep = validate_pair(pair, g);
  if (!rep.passed) {
    for (const PairCheck& c : rep.checks)
      if (!c.passed) throw Error("invalid-pair", "pair check failed: " + c.name);
    throw Error("invalid-pair", "pair validation failed");
  }
  IntersectionReport out;
  out.torus_count = torus_intersection_count(pair.leaf_a.vprime, pair.leaf_b.vprime, g);
  out.hhat_order = h_hat_order(pair, g);
  out.leaf_count = out.torus_count * out.hhat_order;
  out.oracle_count = finite_quotient_oracle(pair, g);
  out.oracle_consistent = out.oracle_count == out.leaf_count;
  return out;
}

InclusionReport intersection_inclusion_map(const ComplementaryPair& pair,
                                           const CrystGroup& g, const Int& cap) {
  QuotientModel m = build_quotient(pair, g, cap);
  std::vector<QuotientElement> gens = stabilizer_image(coset_stabilizer(pair.leaf_a, g), m);
  for (const QuotientElement& e : stabilizer_image(coset_stabilizer(pair.leaf_b, g), m))
    gens.push_back(e);

  // Subgroup of Q generated by both stabilizer images.
  std::vector<QuotientElement> subgroup{m.identity()};
  std::set<std::string> seen{quotient_key(m.identity())};
  for (std::size_t head = 0; head < subgroup.size(); ++head)
    for (const QuotientElement& s : gens) {
      QuotientElement next = m.mul_q(subgroup[head], s);
      if (seen.insert(quotient_key(next)).second) subgroup.push_back(next);
    }

  InclusionReport out;
  out.kernel_order = 0;
  for (const QuotientElement& e : subgroup)
    if (e.element == g.points().identity_index()) out.kernel_order += 1;
  out.injective = out.kernel_order == 1;
  if (m.lattice_order % out.kernel_order != 0 ||
      m.full_order % Int(subgroup.size()) != 0)
    throw Error("internal", "subgroup orders do not divide");
  out.image_order = m.lattice_order / out.kernel_order;
  out.coset_count = m.full_order / Int(subgroup.size());
  out.sequence_exact =
      out.injective && out.coset_count == out.image_order * h_hat_order(pair, g);
  return out;
}

}  // namespace flatfold
