#pragma once

#include "flatfold/cryst.hpp"

namespace flatfold {

// Hand-derivable reference values attached to the fixture; tests compare
// the library's output against these.
struct KleinExpected {
  bool orientable = false;
  std::vector<std::size_t> summand_dims;  // ascending: {phi(d) : d | n}
  std::vector<unsigned> strata;           // divisors of n, ascending
  Int torus_count;                        // complementary-pair counts
  Int hhat_order;
  Int leaf_count;
  Int covering_degree;  // leaf through the origin along vprime
  Int lattice_index;    // its translation refinement
};

// The n-fold generalized Klein bottle: the cyclic shift of n coordinates
// composed with a 1/n translation along the diagonal, written in the
// lattice-adapted basis (diagonal vector first, then successive
// differences). n = 2 is the classical Klein bottle.
struct KleinFixture {
  unsigned n = 0;
  CrystGroup group;
  Subspace vprime;    // the translated diagonal direction
  Subspace vsecond;   // the complementary zero-sum block
  IntMat conversion;  // columns: adapted basis in the permutation coordinates
  KleinExpected expected;
};

KleinFixture build_klein(unsigned n);

}  // namespace flatfold
