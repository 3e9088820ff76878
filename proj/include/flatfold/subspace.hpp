#pragma once

#include <vector>

#include "flatfold/linalg.hpp"

namespace flatfold {

// A rational subspace V' of Q^n represented by the canonical Hermite basis
// of the saturated lattice Z^n ∩ V'. Equality of subspaces is equality of
// this basis. dim() is the number of basis columns.
class Subspace {
 public:
  Subspace() = default;

  // Z^n ∩ span(generators); accepts any generating set (integer columns).
  static Subspace saturate(const IntMat& generators);
  // Same, from rational generators (denominators cleared first).
  static Subspace saturate(const RatMat& generators);
  // The zero subspace of Q^n.
  static Subspace zero(std::size_t ambient_dim);
  // All of Q^n.
  static Subspace full(std::size_t ambient_dim);
  // Wraps a matrix that is already a canonical saturated Hermite basis;
  // throws unless it is exactly that (used by deserialization).
  static Subspace from_sat_basis(std::size_t ambient_dim, const IntMat& sat_basis);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const IntMat& sat_basis() const { return basis_; }

  bool contains(const RatVec& v) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }
  bool operator!=(const Subspace& other) const { return !(*this == other); }

 private:
  std::size_t ambient_ = 0;
  IntMat basis_;  // n x dim, canonical Hermite form, zero columns dropped
};

// Deterministic total order used for tie-breaking between candidate
// subspaces: dimension, then pivot-row pattern, then basis entries.
bool subspace_less(const Subspace& a, const Subspace& b);

// True iff ambient/sub have the stated lattice inclusion and the quotient
// ambient_lattice / sub_lattice is torsion-free (all Smith divisors of the
// coefficient matrix are 1). Throws when sub is not contained in ambient.
bool is_direct_summand(const IntMat& sub_lattice, const IntMat& ambient_lattice);

// Completes sat_basis(sub) to a basis of Z^n: returns an n x n unimodular
// matrix whose first dim(sub) columns are the sat_basis. Throws when the
// input is not saturated.
IntMat extend_to_basis(const Subspace& sub);

Subspace span_subspaces(const std::vector<Subspace>& parts);
Subspace intersect_subspaces(const std::vector<Subspace>& parts);
Subspace span_subspaces(const Subspace& a, const Subspace& b);
Subspace intersect_subspaces(const Subspace& a, const Subspace& b);

// Shape of the quotient Z^n / (Z^n ∩ V'). The quotient of a saturated
// sublattice is free: cyclic_factors lists one 0 per free rank, index is 1
// when the quotient is trivial (dim = n) and 0 (infinite) otherwise.
// projection is the (n-dim) x n matrix sending a lattice vector to its
// coordinates along the chosen complement; it maps Z^n onto Z^(n-dim).
struct SublatticeQuotient {
  Int index;
  std::vector<Int> cyclic_factors;
  IntMat projection;
};
SublatticeQuotient quotient_data(const Subspace& sub);

// [ambient : sub] for column lattices; 0 encodes an infinite index (rank
// drop). Throws when sub is not contained in ambient.
Int sublattice_index(const IntMat& sub_lattice, const IntMat& ambient_lattice);

}  // namespace flatfold
