#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatfold/subspace.hpp"

namespace flatfold {

inline constexpr std::size_t kDefaultCloseCap = 100000;

// Affine map x -> linear * x + translation.
struct AffineElement {
  IntMat linear;
  RatVec translation;
};
AffineElement affine_mul(const AffineElement& a, const AffineElement& b);
AffineElement affine_inv(const AffineElement& a);

// A finite subgroup of GL(n, Z). Elements are stored sorted by the
// entrywise lexicographic order, so indices are canonical for the group no
// matter how it was generated.
class PointGroup {
 public:
  static PointGroup close(std::size_t dim, const std::vector<IntMat>& generators,
                          std::size_t cap = kDefaultCloseCap);

  std::size_t dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const IntMat& element(std::size_t i) const { return elements_[i]; }
  std::size_t identity_index() const { return identity_; }

  std::optional<std::size_t> find(const IntMat& m) const;
  std::size_t index_of(const IntMat& m) const;  // throws when absent

  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  unsigned element_order(std::size_t i) const;

  // Indices of the subgroup generated by the given element indices.
  std::vector<std::size_t> subgroup_generated(const std::vector<std::size_t>& gens) const;

 private:
  std::size_t dim_ = 0;
  std::size_t identity_ = 0;
  std::vector<IntMat> elements_;
  std::map<std::string, std::size_t> index_;           // entry key -> index
  std::vector<std::vector<std::size_t>> mul_table_;    // eager when order is small
  std::vector<std::size_t> inv_table_;
};

std::string element_key(const IntMat& m);

// Crystallographic data in lattice-adapted coordinates: lattice Z^n, finite
// point group H, rational Gram matrix, and a vector system a : H -> [0,1)^n
// with a(AB) = A a(B) + a(A) mod Z^n. The group consists of the affine maps
// (A, a(A) + lambda) for A in H, lambda in Z^n.
struct CrystGenerator {
  IntMat matrix;
  RatVec translation;
};

class CrystGroup {
 public:
  static CrystGroup from_generators(std::size_t dim, const RatMat& gram,
                                    const std::vector<CrystGenerator>& generators,
                                    std::size_t cap = kDefaultCloseCap);

  std::size_t dim() const { return dim_; }
  const PointGroup& points() const { return points_; }
  std::size_t order() const { return points_.order(); }
  const RatMat& gram() const { return gram_; }
  const RatVec& vector_system(std::size_t i) const { return vs_[i]; }
  const IntMat& element(std::size_t i) const { return points_.element(i); }

  AffineElement affine(std::size_t i) const;                       // (A_i, a_i)
  AffineElement affine(std::size_t i, const IntVec& lambda) const; // (A_i, a_i + lambda)

 private:
  std::size_t dim_ = 0;
  PointGroup points_;
  RatMat gram_;
  std::vector<RatVec> vs_;
};

struct CrystCheck {
  std::string name;
  bool passed;
  std::string detail;
};
struct CrystReport {
  bool passed = true;
  std::vector<CrystCheck> checks;
};
// Re-derives every structural invariant: closure, unimodularity, isometry
// against the Gram matrix, Gram symmetry/positivity, the cocycle identity
// (all pairs for small groups), and vector-system normalization.
CrystReport verify_cryst(const CrystGroup& g);

// Decides existence of a nontrivial finite-order element. An element
// (A, a(A) + lambda) with ord(A) = m has finite order iff
// N_A (a(A) + lambda) = 0 for N_A = I + A + ... + A^(m-1); solvability in
// lambda is an integer linear problem per element.
struct TorsionResult {
  bool torsion_free = true;
  std::size_t witness_element = 0;  // meaningful when !torsion_free
  IntVec witness_lambda;
};
TorsionResult is_torsion_free(const CrystGroup& g);

bool is_orientable(const CrystGroup& g);

CrystGroup direct_product(const CrystGroup& a, const CrystGroup& b);

}  // namespace flatfold
