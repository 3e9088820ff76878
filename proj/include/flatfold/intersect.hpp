#pragma once

#include "flatfold/leaf.hpp"

namespace flatfold {

// Two leaves of complementary invariant foliations: leaf_a along V',
// leaf_b along V'' with V' ⊕ V'' = Q^n.
struct ComplementaryPair {
  CosetLeaf leaf_a;
  CosetLeaf leaf_b;
};

struct PairCheck {
  std::string name;
  bool passed;
  std::string detail;
};
struct PairReport {
  bool passed = true;
  std::vector<PairCheck> checks;
};
// Checks the hypotheses behind the intersection count: complementary
// subspaces, invariance, genericity of both leaves, elementwise commuting
// stabilizers, and trivial stabilizer intersection.
PairReport validate_pair(const ComplementaryPair& pair, const CrystGroup& g);

// [Z^n : (Z^n ∩ V') ⊕ (Z^n ∩ V'')]: the number of intersection points of
// the corresponding leaves on the plain torus. Needs only the subspaces;
// throws "not-complementary" when the sublattices do not span.
Int torus_intersection_count(const Subspace& vprime, const Subspace& vsecond,
                             const CrystGroup& g);

// |H| / |subgroup generated by the linear parts of both stabilizers|.
Int h_hat_order(const ComplementaryPair& pair, const CrystGroup& g);

struct IntersectionReport {
  Int torus_count;
  Int hhat_order;
  Int leaf_count;    // torus_count * hhat_order
  Int oracle_count;  // independent double-coset count
  bool oracle_consistent = false;
};
// The predicted count together with the independent recount; throws
// "invalid-pair" when validate_pair fails.
IntersectionReport leaf_intersection_count(const ComplementaryPair& pair,
                                           const CrystGroup& g);

// Independent recount of the intersection points: in the finite quotient
// Q = group / ((Z^n ∩ V') ⊕ (Z^n ∩ V'')) the intersection points biject
// with double cosets of the two stabilizer images. Enumerates Q directly
// (Smith residues for the translation part); throws
// "quotient-cap-exceeded" when |Q| > cap.
Int finite_quotient_oracle(const ComplementaryPair& pair, const CrystGroup& g,
                           const Int& cap = Int(1000000));

// Behaviour of L/(L' ⊕ L'') inside Q modulo the subgroup generated by both
// stabilizer images: kernel of the induced map on cosets, and whether the
// counts assemble into the expected extension (coset count =
// lattice image * h_hat).
struct InclusionReport {
  bool injective = false;
  Int kernel_order;
  Int image_order;
  Int coset_count;
  bool sequence_exact = false;
};
InclusionReport intersection_inclusion_map(const ComplementaryPair& pair,
                                           const CrystGroup& g,
                                           const Int& cap = Int(1000000));

}  // namespace flatfold
