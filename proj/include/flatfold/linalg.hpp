#pragma once

#include <optional>
#include <vector>

#include "flatfold/matrix.hpp"

namespace flatfold {

// Column-style Hermite normal form: input * u = h with u unimodular
// (|det u| = 1). Nonzero columns of h come first, their pivot rows strictly
// increase, pivots are positive, and every entry left of a pivot in the
// pivot's row lies in [0, pivot). Trailing columns (from rank on) are zero.
// Two integer matrices generate the same column lattice iff their nonzero
// h-columns agree; that makes h the canonical form used everywhere here.
struct HnfResult {
  IntMat h;
  IntMat u;
  std::size_t rank = 0;
};
HnfResult hnf(const IntMat& m);

// Nonzero columns of hnf(m).h: the canonical basis of the column lattice.
IntMat hnf_basis(const IntMat& m);

// Smith normal form: u * input * v = d with u, v unimodular and d diagonal,
// entries nonnegative with d[i] | d[i+1]. divisors has min(rows, cols)
// entries (zeros at the tail when rank is deficient).
struct SnfResult {
  IntMat d;
  IntMat u;
  IntMat v;
  std::vector<Int> divisors;
};
SnfResult snf(const IntMat& m);

// Solution of a * x = b over the rationals: one particular solution plus a
// basis of the kernel of a. nullopt when the system is inconsistent.
struct RatSolution {
  RatVec particular;
  std::vector<RatVec> kernel;
};
std::optional<RatSolution> solve_rational(const RatMat& a, const RatVec& b);

// Basis of {x : a * x = 0} over the rationals.
std::vector<RatVec> rational_kernel(const RatMat& a);

// Solution of a * x = b over the integers: particular solution plus a
// Z-basis of the integer kernel (automatically saturated). nullopt when no
// integer solution exists.
struct IntSolution {
  IntVec particular;
  std::vector<IntVec> kernel;
};
std::optional<IntSolution> integer_solve(const IntMat& a, const IntVec& b);

// Columns form a Z-basis of {x : a * x = 0}.
IntMat integer_kernel(const IntMat& a);

// Decides target ∈ span(subspace_basis) + lattice(lattice_basis) and
// returns a witness target = in_subspace + lattice_basis * lattice_coords
// when it holds. subspace_basis is n x d over Q, lattice_basis n x m over Z.
struct AffineWitness {
  RatVec in_subspace;
  IntVec lattice_coords;
};
std::optional<AffineWitness> affine_lattice_membership(const RatVec& target,
                                                       const RatMat& subspace_basis,
                                                       const IntMat& lattice_basis);

// Exact determinants (Bareiss over Z, Gaussian over Q).
Int det(const IntMat& m);
Rat det(const RatMat& m);

// Gauss-Jordan inverse; throws Error("singular") when not invertible.
RatMat inverse(const RatMat& m);

// Inverse of a unimodular integer matrix, exact over Z.
IntMat inverse_unimodular(const IntMat& m);

// Canonical basis of the lattice generated by the columns of a rational
// matrix: scale to integers, take the Hermite basis, scale back.
RatMat rational_lattice_basis(const RatMat& generators);

std::size_t rank_of(const RatMat& m);

}  // namespace flatfold
