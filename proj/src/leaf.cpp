#include "flatfold/leaf.hpp"

#include <algorithm>
#include <random>

namespace flatfold {

namespace {

void require_invariant(const Subspace& vprime, const CrystGroup& g) {
  if (vprime.ambient_dim() != g.dim())
    throw Error("dimension-mismatch", "subspace ambient dimension does not match the group");
  if (!is_invariant(vprime, g))
    throw Error("not-invariant", "subspace is not invariant under the point group");
}

void require_ambient(const CosetLeaf& leaf, const CrystGroup& g) {
  if (leaf.vprime.ambient_dim() != g.dim() || leaf.basepoint.size() != g.dim())
    throw Error("dimension-mismatch", "leaf data does not match the group dimension");
}

// {w : <w, v>_G = 0 for all v in V'}; complementary to V' because the Gram
// form is definite.
Subspace gram_orthocomplement(const Subspace& vprime, const CrystGroup& g) {
  std::size_t n = g.dim();
  RatMat constraints = mul(transpose(to_rat(vprime.sat_basis())), g.gram());
  std::vector<RatVec> ker = rational_kernel(constraints);
  RatMat gens(n, ker.size());
  for (std::size_t j = 0; j < ker.size(); ++j) gens.set_column(j, ker[j]);
  Subspace w = Subspace::saturate(gens);
  if (w.dim() + vprime.dim() != n)
    throw Error("internal", "orthocomplement has the wrong dimension");
  return w;
}

bool preserves(const IntMat& a, const Subspace& v) {
  // a is invertible, so image ⊆ v already gives image = v.
  IntMat image = mul(a, v.sat_basis());
  for (std::size_t j = 0; j < image.cols(); ++j)
    if (!v.contains(to_rat(image.column(j)))) return false;
  return true;
}

// Some lambda in Z^n with t + lambda in V', or nullopt.
std::optional<IntVec> coset_shift(const RatVec& t, const Subspace& vprime) {
  auto w = affine_lattice_membership(t, to_rat(vprime.sat_basis()),
                                     IntMat::identity(t.size()));
  if (!w) return std::nullopt;
  IntVec lambda(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) lambda[i] = -w->lattice_coords[i];
  return lambda;
}

std::size_t pivot_row(const IntMat& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, j) != 0) return i;
  throw Error("internal", "zero column in a basis");
}

// Canonical representative of v modulo the column lattice of a Hermite
// basis: reduces at each pivot row in turn (columns right of a pivot are
// zero in its row, so earlier reductions stay intact).
IntVec reduce_mod_lattice(IntVec v, const IntMat& sat) {
  for (std::size_t j = 0; j < sat.cols(); ++j) {
    std::size_t r = pivot_row(sat, j);
    Int q = floor_div(v[r], sat(r, j));
    if (q != 0)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= q * sat(i, j);
  }
  return v;
}

// (A_i - I) x0 + a_i (+ extra): the vector whose membership in V' decides
// whether (A_i, a_i + lambda) can stabilize the leaf through x0.
RatVec stabilizer_defect(const CrystGroup& g, std::size_t i, const RatVec& x0) {
  IntMat shift = sub(g.element(i), IntMat::identity(g.dim()));
  return vec_add(mul(to_rat(shift), x0), g.vector_system(i));
}

void check_stabilizer_closed(const StabilizerGroup& stab, const CrystGroup& g) {
  const IntMat& s = stab.common_sublattice;
  for (const StabilizerEntry& ea : stab.entries)
    for (const StabilizerEntry& eb : stab.entries) {
      std::size_t k = g.points().mul(ea.element, eb.element);
      auto it = std::find_if(stab.entries.begin(), stab.entries.end(),
                             [&](const StabilizerEntry& e) { return e.element == k; });
      if (it == stab.entries.end())
        throw Error("internal", "stabilizer entries are not closed");
      AffineElement prod = affine_mul(g.affine(ea.element, ea.lambda),
                                      g.affine(eb.element, eb.lambda));
      RatVec diff = vec_sub(prod.translation,
                            vec_add(g.vector_system(k), to_rat(it->lambda)));
      IntVec d(diff.size());
      for (std::size_t i = 0; i < diff.size(); ++i) {
        if (!is_integer(diff[i]))
          throw Error("internal", "stabilizer product has a fractional defect");
        d[i] = diff[i].get_num();
      }
      if (s.cols() == 0 ? !is_zero_vec(d) : !integer_solve(s, d).has_value())
        throw Error("internal", "stabilizer product escapes its lambda coset");
    }
}

}  // namespace

std::vector<std::size_t> k_prime(const Subspace& vprime, const CrystGroup& g) {
  require_invariant(vprime, g);
  std::size_t n = g.dim();
  Subspace w = gram_orthocomplement(vprime, g);
  RatMat c = to_rat(w.sat_basis());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const IntMat& a = g.element(i);
    bool fixes_w = mul(to_rat(a), c) == c;
    // Dual reading: A - I maps everything into V'. Both must agree.
    IntMat shift = sub(a, IntMat::identity(n));
    bool into_vprime = true;
    for (std::size_t j = 0; j < n && into_vprime; ++j)
      into_vprime = vprime.contains(to_rat(shift.column(j)));
    if (fixes_w != into_vprime)
      throw Error("internal", "k_prime characterizations disagree");
    if (fixes_w) out.push_back(i);
  }
  // Conjugates fix W as well, so this subgroup is normal; assert it.
  for (std::size_t idx : out)
    for (std::size_t h = 0; h < g.order(); ++h) {
      std::size_t conj = g.points().mul(g.points().mul(h, idx), g.points().inv(h));
      if (!std::binary_search(out.begin(), out.end(), conj))
        throw Error("internal", "k_prime is not normal");
    }
  return out;
}

StabilizerGroup coset_stabilizer(const CosetLeaf& leaf, const CrystGroup& g) {
  require_ambient(leaf, g);
  StabilizerGroup stab;
  stab.common_sublattice = leaf.vprime.sat_basis();
  for (std::size_t i = 0; i < g.order(); ++i) {
    // Only elements whose linear part preserves V' can map one coset of V'
    // to another; the rest contribute nothing for any lambda.
    if (!preserves(g.element(i), leaf.vprime)) continue;
    auto lambda = coset_shift(stabilizer_defect(g, i, leaf.basepoint), leaf.vprime);
    if (lambda)
      stab.entries.push_back({i, reduce_mod_lattice(*lambda, stab.common_sublattice)});
  }
  check_stabilizer_closed(stab, g);
  return stab;
}

bool is_generic(const CosetLeaf& leaf, const CrystGroup& g) {
  require_invariant(leaf.vprime, g);
  StabilizerGroup stab = coset_stabilizer(leaf, g);
  std::vector<std::size_t> stab_set;
  stab_set.reserve(stab.entries.size());
  for (const StabilizerEntry& e : stab.entries) stab_set.push_back(e.element);
  // The kernel of the action on the leaf space: elements of k_prime whose
  // translation already lies in V' + Z^n. It stabilizes every leaf, so
  // genericity is the statement that nothing else does.
  std::vector<std::size_t> kernel;
  for (std::size_t i : k_prime(leaf.vprime, g))
    if (coset_shift(g.vector_system(i), leaf.vprime)) kernel.push_back(i);
  for (std::size_t i : kernel)
    if (!std::binary_search(stab_set.begin(), stab_set.end(), i))
      throw Error("internal", "kernel element missing from a stabilizer");
  return stab_set == kernel;
}

CosetLeaf find_generic_coset(const Subspace& vprime, const CrystGroup& g,
                             std::uint64_t seed) {
  require_invariant(vprime, g);
  std::mt19937_64 rng(seed);
  for (std::uint64_t den = 16; den <= 65536; den *= 2)
    for (int attempt = 0; attempt < 4; ++attempt) {
      RatVec x(g.dim());
      for (Rat& e : x) {
        e = Rat(Int(rng() % den), Int(den));
        e.canonicalize();
      }
      CosetLeaf leaf{vprime, x};
      if (is_generic(leaf, g)) return leaf;
    }
  throw Error("retries-exhausted", "no generic coset found");
}

LeafSequence leaf_exact_sequence(const CosetLeaf& leaf, const CrystGroup& g) {
  require_invariant(leaf.vprime, g);
  require_ambient(leaf, g);
  std::size_t d = leaf.vprime.dim();
  const IntMat& s = leaf.vprime.sat_basis();
  RatMat s_rat = to_rat(s);
  StabilizerGroup stab = coset_stabilizer(leaf, g);

  auto restrict_to_leaf = [&](std::size_t element) {
    IntMat img = mul(g.element(element), s);
    IntMat r(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto sol = integer_solve(s, img.column(j));
      if (!sol) throw Error("internal", "restriction escapes the saturated basis");
      r.set_column(j, sol->particular);
    }
    return r;
  };
  auto push_unique = [](std::vector<IntMat>& list, const IntMat& m) {
    if (std::find(list.begin(), list.end(), m) == list.end()) list.push_back(m);
  };

  LeafSequence out;
  std::vector<RatVec> translation_coords;
  for (const StabilizerEntry& e : stab.entries) {
    IntMat r = restrict_to_leaf(e.element);
    if (r == IntMat::identity(d)) {
      // Acts on the leaf as a pure translation by
      // (A - I) x0 + a + lambda, a vector of V'; collect its s-coordinates.
      RatVec t = vec_add(stabilizer_defect(g, e.element, leaf.basepoint),
                         to_rat(e.lambda));
      auto sol = solve_rational(s_rat, t);
      if (!sol) throw Error("internal", "leaf translation escapes the leaf");
      translation_coords.push_back(sol->particular);
    }
    push_unique(out.leaf_holonomy, r);
  }
  std::sort(out.leaf_holonomy.begin(), out.leaf_holonomy.end(),
            [](const IntMat& a, const IntMat& b) { return lex_compare(a, b) < 0; });

  // L' in s-coordinates: translations of the stabilizer plus Z^n ∩ V'.
  RatMat coords(d, translation_coords.size() + d);
  for (std::size_t j = 0; j < translation_coords.size(); ++j)
    coords.set_column(j, translation_coords[j]);
  for (std::size_t j = 0; j < d; ++j)
    coords(j, translation_coords.size() + j) = Rat(1);
  RatMat bc = rational_lattice_basis(coords);
  if (bc.cols() != d) throw Error("internal", "leaf lattice lost rank");
  out.leaf_lattice = mul(s_rat, bc);

  Int den(1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Int g2 = bc(i, j).get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g2.get_mpz_t());
    }
  IntMat bscaled(d, d), zscaled(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    zscaled(i, i) = den;
    for (std::size_t j = 0; j < d; ++j) {
      Rat v = bc(i, j) * Rat(den);
      bscaled(i, j) = v.get_num();
    }
  }
  out.lattice_index = sublattice_index(zscaled, bscaled);
  out.covering_degree = Int(out.leaf_holonomy.size()) * out.lattice_index;
  out.generic = is_generic(leaf, g);

  std::vector<std::size_t> kp = k_prime(leaf.vprime, g);
  out.kprime_order = kp.size();
  std::vector<IntMat> kp_restrictions;
  for (std::size_t i : kp) push_unique(kp_restrictions, restrict_to_leaf(i));
  std::sort(kp_restrictions.begin(), kp_restrictions.end(),
            [](const IntMat& a, const IntMat& b) { return lex_compare(a, b) < 0; });
  out.kprime_restriction_matches = kp_restrictions == out.leaf_holonomy;
  return out;
}

Int stabilizer_index(const CosetLeaf& leaf_a, const CosetLeaf& leaf_b,
                     const CrystGroup& g) {
  if (leaf_a.vprime != leaf_b.vprime)
    throw Error("vprime-mismatch", "leaves do not belong to the same foliation");
  StabilizerGroup sa = coset_stabilizer(leaf_a, g);
  StabilizerGroup sb = coset_stabilizer(leaf_b, g);
  const IntMat& s = sa.common_sublattice;
  for (const StabilizerEntry& ea : sa.entries) {
    auto it = std::find_if(sb.entries.begin(), sb.entries.end(),
                           [&](const StabilizerEntry& e) { return e.element == ea.element; });
    bool ok = it != sb.entries.end();
    if (ok) {
      IntVec diff = vec_sub(ea.lambda, it->lambda);
      ok = s.cols() == 0 ? is_zero_vec(diff) : integer_solve(s, diff).has_value();
    }
    if (!ok)
      throw Error("not-nested", "first stabilizer is not inside the second");
  }
  // Each linear part contributes a single (Z^n ∩ V')-coset of lambdas, so
  // the group index is the ratio of entry counts.
  if (sa.entries.empty() || sb.entries.size() % sa.entries.size() != 0)
    throw Error("internal", "stabilizer entry counts are inconsistent");
  return Int(sb.entries.size() / sa.entries.size());
}

bool same_leaf(const CosetLeaf& a, const CosetLeaf& b, const CrystGroup& g) {
  require_ambient(a, g);
  require_ambient(b, g);
  if (a.vprime != b.vprime)
    throw Error("vprime-mismatch", "leaves do not belong to the same foliation");
  RatMat s_rat = to_rat(a.vprime.sat_basis());
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!preserves(g.element(i), a.vprime)) continue;
    RatVec t = vec_sub(b.basepoint, vec_add(mul(to_rat(g.element(i)), a.basepoint),
                                            g.vector_system(i)));
    if (affine_lattice_membership(t, s_rat, IntMat::identity(g.dim()))) return true;
  }
  return false;
}

OrbifoldData leaf_space_orbifold(const Subspace& vprime, const CrystGroup& g) {
  require_invariant(vprime, g);
  std::size_t n = g.dim(), d = vprime.dim(), q = n - d;
  Subspace w = gram_orthocomplement(vprime, g);
  RatMat c = to_rat(w.sat_basis());
  RatMat binv = inverse(hconcat(to_rat(vprime.sat_basis()), c));
  // W-coordinates of the projection onto W along V'.
  RatMat pc(q, n);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < n; ++j) pc(i, j) = binv(d + i, j);

  std::vector<std::size_t> kp = k_prime(vprime, g);

  // Translation lattice downstairs: the projection of Z^n together with the
  // projected translations of k_prime (those elements act on the leaf space
  // as pure translations).
  RatMat gens(q, n + kp.size());
  for (std::size_t j = 0; j < n; ++j) gens.set_column(j, pc.column(j));
  for (std::size_t k = 0; k < kp.size(); ++k)
    gens.set_column(n + k, mul(pc, g.vector_system(kp[k])));
  RatMat t = rational_lattice_basis(gens);
  if (t.cols() != q) throw Error("internal", "quotient lattice lost rank");
  RatMat tinv = q ? inverse(t) : t;

  // One induced element per distinct action on W, translation taken from
  // the first group element inducing it (well defined modulo the lattice).
  std::vector<CrystGenerator> quotient_gens;
  std::vector<IntMat> seen;
  for (std::size_t i = 0; i < g.order(); ++i) {
    RatMat action = mul(tinv, mul(mul(pc, mul(to_rat(g.element(i)), c)), t));
    IntMat adapted = to_int(action);
    if (std::find(seen.begin(), seen.end(), adapted) != seen.end()) continue;
    seen.push_back(adapted);
    RatVec tr = mul(tinv, mul(pc, g.vector_system(i)));
    for (Rat& e : tr) e = frac(e);
    quotient_gens.push_back({adapted, tr});
  }

  RatMat u = mul(c, t);
  OrbifoldData out;
  out.quotient_dim = q;
  out.quotient_lattice = u;
  out.quotient_group = CrystGroup::from_generators(
      q, mul(transpose(u), mul(g.gram(), u)), quotient_gens);
  out.torsion_free = is_torsion_free(out.quotient_group).torsion_free;
  return out;
}

}  // namespace flatfold
