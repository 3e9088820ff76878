#include "flatfold/invariant.hpp"

#include <algorithm>

namespace flatfold {

namespace {

// The search machinery runs both on the ambient group and on restrictions
// to summands, so the core routines take a plain list of matrices (a finite
// subgroup of GL(k, Z), possibly with the group structure implicit).

bool is_invariant_core(const Subspace& v, const std::vector<IntMat>& elements) {
  RatMat basis = to_rat(v.sat_basis());
  for (const IntMat& a : elements) {
    for (std::size_t j = 0; j < v.dim(); ++j) {
      RatVec moved = mul(to_rat(a), to_rat(v.sat_basis().column(j)));
      if (!solve_rational(basis, moved)) return false;
    }
  }
  return true;
}

Subspace fixed_core(const std::vector<IntMat>& elements, std::size_t dim) {
  IntMat m(dim, dim);
  for (const IntMat& a : elements) m = add(m, a);
  IntMat scaled_id = IntMat::identity(dim);
  Int count(static_cast<long>(elements.size()));
  for (std::size_t i = 0; i < dim; ++i) scaled_id(i, i) = count;
  return Subspace::saturate(integer_kernel(sub(m, scaled_id)));
}

Subspace orbit_core(const std::vector<IntMat>& elements, const IntVec& v) {
  IntMat orbit(v.size(), elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) orbit.set_column(k, mul(elements[k], v));
  return Subspace::saturate(orbit);
}

RatMat averaged_projection_core(const Subspace& vprime, const std::vector<IntMat>& elements) {
  const std::size_t n = vprime.ambient_dim(), d = vprime.dim();
  IntMat basis = extend_to_basis(vprime);
  RatMat inv = inverse(to_rat(basis));
  // P0 = S * (first d rows of basis^-1): projection onto V' along the
  // complement columns of the completed basis.
  RatMat p0(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k)
        p0(i, j) += Rat(vprime.sat_basis()(i, k)) * inv(k, j);

  RatMat p(n, n);
  for (const IntMat& a : elements) {
    RatMat conj = mul(mul(to_rat(a), p0), to_rat(inverse_unimodular(a)));
    p = add(p, conj);
  }
  Rat scale(1, static_cast<unsigned long>(elements.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) *= scale;

  if (mul(p, p) != p) throw Error("internal", "averaged projection is not idempotent");
  for (const IntMat& a : elements)
    if (mul(p, to_rat(a)) != mul(to_rat(a), p))
      throw Error("internal", "averaged projection does not commute with the group");
  for (std::size_t j = 0; j < d; ++j) {
    RatVec col = to_rat(vprime.sat_basis().column(j));
    if (mul(p, col) != col) throw Error("internal", "averaged projection does not fix V'");
  }
  return p;
}

Subspace complement_core(const Subspace& vprime, const std::vector<IntMat>& elements) {
  RatMat p = averaged_projection_core(vprime, elements);
  std::vector<RatVec> kernel = rational_kernel(p);
  RatMat gens(vprime.ambient_dim(), kernel.size());
  for (std::size_t j = 0; j < kernel.size(); ++j) gens.set_column(j, kernel[j]);
  Subspace out = Subspace::saturate(gens);
  if (out.dim() + vprime.dim() != vprime.ambient_dim() ||
      intersect_subspaces(out, vprime).dim() != 0)
    throw Error("internal", "complement does not split the ambient space");
  if (!is_invariant_core(out, elements))
    throw Error("internal", "complement is not invariant");
  return out;
}

std::optional<Subspace> find_proper_core(const std::vector<IntMat>& elements, std::size_t dim,
                                         long bound) {
  if (dim < 2) return std::nullopt;
  // The fixed subspace would be the cheapest win; its complement is proper
  // nonzero exactly when it is, so when neither applies the sweep below is
  // the only remaining source of candidates.
  Subspace fixed = fixed_core(elements, dim);
  if (fixed.dim() > 0 && fixed.dim() < dim) return fixed;

  // Orbit-span sweep over v with sup-norm <= bound, first nonzero entry
  // positive (signs and zero skipped). Keep the subspace_less-least hit.
  std::optional<Subspace> best;
  IntVec v(dim, Int(-bound));
  for (;;) {
    bool zero = true, canonical_sign = true;
    for (std::size_t i = 0; i < dim; ++i) {
      if (v[i] != 0) {
        canonical_sign = v[i] > 0;
        zero = false;
        break;
      }
    }
    if (!zero && canonical_sign) {
      Subspace orbit = orbit_core(elements, v);
      if (orbit.dim() > 0 && orbit.dim() < dim)
        if (!best || subspace_less(orbit, *best)) best = orbit;
    }
    std::size_t pos = 0;
    while (pos < dim && v[pos] == bound) v[pos++] = -bound;
    if (pos == dim) break;
    v[pos] += 1;
  }
  return best;
}

std::vector<IntMat> group_elements(const CrystGroup& g) {
  std::vector<IntMat> out;
  for (std::size_t i = 0; i < g.order(); ++i) out.push_back(g.element(i));
  return out;
}

// Restriction of each element to the saturated lattice of w, expressed in
// the sat_basis coordinates; integral because the lattice is invariant.
// Duplicates are collapsed so the list is again a group.
std::vector<IntMat> restricted_elements(const std::vector<IntMat>& elements, const Subspace& w) {
  std::vector<IntMat> out;
  std::vector<std::string> seen;
  for (const IntMat& a : elements) {
    IntMat r(w.dim(), w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) {
      auto sol = integer_solve(w.sat_basis(), mul(a, w.sat_basis().column(j)));
      if (!sol) throw Error("not-invariant", "subspace lattice is not preserved");
      r.set_column(j, sol->particular);
    }
    std::string key = element_key(r);
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(key);
      out.push_back(std::move(r));
    }
  }
  return out;
}

Subspace lift_to_ambient(const Subspace& inner, const Subspace& w) {
  IntMat ambient_gens(w.ambient_dim(), inner.dim());
  for (std::size_t j = 0; j < inner.dim(); ++j)
    ambient_gens.set_column(j, mul(w.sat_basis(), inner.sat_basis().column(j)));
  return Subspace::saturate(ambient_gens);
}

}  // namespace

bool is_invariant(const Subspace& v, const CrystGroup& g) {
  if (v.ambient_dim() != g.dim()) throw Error("dimension-mismatch", "subspace vs group size");
  return is_invariant_core(v, group_elements(g));
}

InvariantSubspace fixed_subspace(const CrystGroup& g) {
  return {fixed_core(group_elements(g), g.dim()), true};
}

InvariantSubspace orbit_span(const IntVec& v, const CrystGroup& g) {
  if (v.size() != g.dim()) throw Error("dimension-mismatch", "vector vs group size");
  if (is_zero_vec(v)) throw Error("empty-input", "orbit span of the zero vector");
  return {orbit_core(group_elements(g), v), true};
}

RatMat averaged_projection(const Subspace& vprime, const CrystGroup& g) {
  if (!is_invariant(vprime, g)) throw Error("not-invariant", "subspace is not invariant");
  return averaged_projection_core(vprime, group_elements(g));
}

InvariantSubspace invariant_complement(const Subspace& vprime, const CrystGroup& g) {
  if (!is_invariant(vprime, g)) throw Error("not-invariant", "subspace is not invariant");
  return {complement_core(vprime, group_elements(g)), true};
}

std::optional<InvariantSubspace> find_proper_invariant(const CrystGroup& g, long bound) {
  auto found = find_proper_core(group_elements(g), g.dim(), bound);
  if (!found) return std::nullopt;
  return InvariantSubspace{*found, true};
}

Decomposition minimal_decomposition(const CrystGroup& g, const Subspace& start, long bound) {
  if (start.ambient_dim() != g.dim())
    throw Error("dimension-mismatch", "decomposition start vs group size");
  std::vector<IntMat> ambient = group_elements(g);
  if (!is_invariant_core(start, ambient))
    throw Error("not-invariant", "decomposition start is not invariant");

  Decomposition out;
  std::vector<Subspace> work = {start};
  while (!work.empty()) {
    Subspace w = work.back();
    work.pop_back();
    if (w.dim() == 0) continue;
    std::vector<IntMat> restricted = restricted_elements(ambient, w);
    auto split = find_proper_core(restricted, w.dim(), bound);
    if (!split) {
      DecompositionSummand summand;
      summand.space = {w, true};
      summand.status =
          w.dim() == 1 ? MinimalityStatus::certified : MinimalityStatus::search_bound_only;
      summand.bound = bound;
      out.summands.push_back(std::move(summand));
      continue;
    }
    Subspace inner_comp = complement_core(*split, restricted);
    work.push_back(lift_to_ambient(*split, w));
    work.push_back(lift_to_ambient(inner_comp, w));
  }

  std::sort(out.summands.begin(), out.summands.end(),
            [](const DecompositionSummand& a, const DecompositionSummand& b) {
              return subspace_less(a.space.space, b.space.space);
            });

  // The pieces must reassemble exactly.
  std::size_t total = 0;
  for (const auto& s : out.summands) total += s.space.space.dim();
  std::vector<Subspace> spaces;
  for (const auto& s : out.summands) spaces.push_back(s.space.space);
  if (total != start.dim() || (total > 0 && span_subspaces(spaces) != start))
    throw Error("internal", "decomposition does not reassemble the start space");
  for (std::size_t i = 0; i < spaces.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (intersect_subspaces(spaces[i], spaces[j]).dim() != 0)
        throw Error("internal", "decomposition summands overlap");
  return out;
}

}  // namespace flatfold
