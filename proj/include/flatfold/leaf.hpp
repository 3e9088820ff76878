#pragma once

#include <cstdint>

#include "flatfold/invariant.hpp"

namespace flatfold {

// A leaf of the linear foliation by cosets of an invariant subspace V',
// named by one basepoint: the coset basepoint + V'.
struct CosetLeaf {
  Subspace vprime;
  RatVec basepoint;
};

// Indices of the elements acting as the identity on the Gram-orthogonal
// complement of vprime. Computed twice (exact identity on the complement,
// and (A - I) mapping everything into vprime); both characterizations must
// agree, and the set is checked to be a normal subgroup.
std::vector<std::size_t> k_prime(const Subspace& vprime, const CrystGroup& g);

// The stabilizer of the coset inside the affine group: for each linear part
// A present, the solutions lambda of (A - I) x0 + a(A) + lambda ∈ V' form
// one coset lambda_A + (Z^n ∩ V'); entries record a representative.
struct StabilizerEntry {
  std::size_t element;
  IntVec lambda;
};
struct StabilizerGroup {
  std::vector<StabilizerEntry> entries;  // ascending element index
  IntMat common_sublattice;              // sat basis of Z^n ∩ V'
};
StabilizerGroup coset_stabilizer(const CosetLeaf& leaf, const CrystGroup& g);

// A leaf is generic when its stabilizer equals the kernel of the action on
// the leaf space, i.e. the stabilizer's linear parts are exactly
// {A in K' : a(A) ∈ V' + Z^n} (the kernel is always contained, so this is
// the same as "linear parts inside k_prime").
bool is_generic(const CosetLeaf& leaf, const CrystGroup& g);

// Seeded search for a generic coset: basepoint entries i/D with D running
// through a doubling sequence and i drawn from a deterministic generator.
CosetLeaf find_generic_coset(const Subspace& vprime, const CrystGroup& g, std::uint64_t seed);

// Data of the exact sequence 1 -> L' -> stabilizer -> H' -> 1 describing
// the leaf as a flat manifold: L' is the translation lattice induced on the
// leaf (possibly finer than Z^n ∩ V'), H' the linear parts restricted to
// V'. The leaf covers the generic torus fiber with degree
// |H'| * [L' : Z^n ∩ V'].
struct LeafSequence {
  RatMat leaf_lattice;                // ambient-coordinate basis of L'
  std::vector<IntMat> leaf_holonomy;  // distinct restrictions, sat-basis coords
  Int lattice_index;                  // [L' : Z^n ∩ V']
  Int covering_degree;
  bool generic = false;
  std::size_t kprime_order = 0;
  // True when the restrictions of k_prime to V' coincide with
  // leaf_holonomy; recorded rather than assumed (they can differ).
  bool kprime_restriction_matches = false;
};
LeafSequence leaf_exact_sequence(const CosetLeaf& leaf, const CrystGroup& g);

// [stab(b) : stab(a)] for nested stabilizers of parallel leaves (same
// vprime); throws "not-nested" when stab(a) is not inside stab(b).
Int stabilizer_index(const CosetLeaf& leaf_a, const CosetLeaf& leaf_b, const CrystGroup& g);

// Whether the two cosets name the same leaf, i.e. lie in one orbit of the
// affine group.
bool same_leaf(const CosetLeaf& a, const CosetLeaf& b, const CrystGroup& g);

// Crystallographic data of the leaf space: the quotient of the ambient
// space by V', modeled on the Gram-orthogonal complement W. The quotient
// translation lattice is generated by the projection of Z^n together with
// the projected translations of k_prime elements; the quotient point group
// is the induced action. torsion_free reports whether the quotient is a
// manifold (no finite-order isometries) rather than a strict orbifold.
struct OrbifoldData {
  std::size_t quotient_dim = 0;
  RatMat quotient_lattice;  // ambient-coordinate basis, columns inside W
  CrystGroup quotient_group;
  bool torsion_free = false;
};
OrbifoldData leaf_space_orbifold(const Subspace& vprime, const CrystGroup& g);

}  // namespace flatfold
