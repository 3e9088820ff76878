#pragma once

#include <optional>

#include "flatfold/cryst.hpp"

namespace flatfold {

// A subspace together with the fact that it was checked (or constructed)
// to be H-invariant.
struct InvariantSubspace {
  Subspace space;
  bool certified_invariant = false;
};

bool is_invariant(const Subspace& v, const CrystGroup& g);

// Fixed vectors of the whole point group: the saturated kernel of
// (sum of elements) - |H| * I.
InvariantSubspace fixed_subspace(const CrystGroup& g);

// Saturated span of the orbit {A v : A in H}; v must be nonzero.
InvariantSubspace orbit_span(const IntVec& v, const CrystGroup& g);

// The H-equivariant projection with image V': average of A P0 A^{-1} over
// the group, where P0 is the coordinate projection attached to a unimodular
// completion of the saturated basis. Exact identities P^2 = P and PA = AP
// hold and are asserted.
RatMat averaged_projection(const Subspace& vprime, const CrystGroup& g);

// Invariant complement: the saturated kernel of averaged_projection.
// V' ⊕ result = Q^n.
InvariantSubspace invariant_complement(const Subspace& vprime, const CrystGroup& g);

// Searches for a proper nonzero invariant subspace: first the fixed
// subspace, then its complement, then orbit spans of all lattice vectors
// with sup-norm <= bound. Among sweep candidates the winner is the least
// under subspace_less. nullopt means only that nothing was found up to the
// bound; it is never a certificate of irreducibility.
std::optional<InvariantSubspace> find_proper_invariant(const CrystGroup& g, long bound = 2);

enum class MinimalityStatus { certified, search_bound_only };

struct DecompositionSummand {
  InvariantSubspace space;
  MinimalityStatus status = MinimalityStatus::search_bound_only;
  long bound = 2;  // the sweep bound backing a search_bound_only label
};

// Direct-sum decomposition of `start` into invariant summands obtained by
// recursive splitting (found subspace + its invariant complement inside the
// current summand). Summands of dimension 1 are certified minimal; larger
// summands where the bounded search found nothing are labeled
// search_bound_only. Summands are sorted by subspace_less.
struct Decomposition {
  std::vector<DecompositionSummand> summands;
};
Decomposition minimal_decomposition(const CrystGroup& g, const Subspace& start, long bound = 2);

}  // namespace flatfold
