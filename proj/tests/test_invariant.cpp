#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatfold/invariant.hpp"

using namespace flatfold;

namespace {

const IntMat kRot90{{0, -1}, {1, 0}};
const IntMat kFlip{{1, 0}, {0, -1}};

CrystGroup klein_bottle() {
  return CrystGroup::from_generators(2, to_rat(IntMat{{2, 0}, {0, 2}}),
                                     {{kFlip, RatVec{Rat(1, 2), Rat(0)}}});
}

CrystGroup rotation_group() {
  return CrystGroup::from_generators(2, to_rat(IntMat{{2, 0}, {0, 2}}), {{kRot90, RatVec(2)}});
}

CrystGroup minus_identity(std::size_t n) {
  IntMat neg(n, n);
  for (std::size_t i = 0; i < n; ++i) neg(i, i) = Int(-1);
  return CrystGroup::from_generators(n, to_rat(IntMat::identity(n)), {{neg, RatVec(n)}});
}

CrystGroup trivial_group(std::size_t n) {
  return CrystGroup::from_generators(n, to_rat(IntMat::identity(n)), {});
}

const Subspace kE1 = Subspace::saturate(IntMat{{1}, {0}});
const Subspace kE2 = Subspace::saturate(IntMat{{0}, {1}});

}  // namespace

TEST_CASE("invariance checks") {
  CHECK(is_invariant(kE1, klein_bottle()));
  CHECK(is_invariant(kE2, klein_bottle()));
  CHECK_FALSE(is_invariant(kE1, rotation_group()));
  CHECK(is_invariant(Subspace::full(2), rotation_group()));
  CHECK(is_invariant(Subspace::zero(2), rotation_group()));
}

TEST_CASE("fixed subspaces") {
  InvariantSubspace f = fixed_subspace(klein_bottle());
  CHECK(f.certified_invariant);
  CHECK(f.space == kE1);
  CHECK(fixed_subspace(rotation_group()).space == Subspace::zero(2));
  CHECK(fixed_subspace(minus_identity(2)).space == Subspace::zero(2));
  CHECK(fixed_subspace(trivial_group(3)).space == Subspace::full(3));
}

TEST_CASE("orbit spans") {
  CHECK(orbit_span(IntVec{Int(1), Int(0)}, rotation_group()).space == Subspace::full(2));
  CHECK(orbit_span(IntVec{Int(1), Int(0)}, minus_identity(2)).space == kE1);
  CHECK(orbit_span(IntVec{Int(2), Int(0)}, klein_bottle()).space == kE1);
}

TEST_CASE("averaged projection onto the fixed line") {
  CrystGroup g = klein_bottle();
  RatMat p = averaged_projection(kE1, g);
  CHECK(p == to_rat(IntMat{{1, 0}, {0, 0}}));
  CHECK(mul(p, p) == p);
  for (std::size_t i = 0; i < g.order(); ++i) {
    RatMat a = to_rat(g.element(i));
    CHECK(mul(p, a) == mul(a, p));
  }
}

TEST_CASE("invariant complements") {
  CHECK(invariant_complement(kE1, klein_bottle()).space == kE2);
  CHECK(invariant_complement(kE2, klein_bottle()).space == kE1);
  CHECK(invariant_complement(Subspace::zero(2), rotation_group()).space == Subspace::full(2));
  Subspace skew = Subspace::saturate(IntMat{{1}, {1}});
  InvariantSubspace c = invariant_complement(skew, minus_identity(2));
  CHECK(c.certified_invariant);
  CHECK(c.space.dim() == 1);
  CHECK(intersect_subspaces(c.space, skew).dim() == 0);
  CHECK(span_subspaces(c.space, skew) == Subspace::full(2));
}

TEST_CASE("proper invariant search") {
  CHECK_FALSE(find_proper_invariant(rotation_group(), 2).has_value());

  // Every line is invariant under -I; the sweep keeps the subspace_less
  // least orbit span, which at bound 2 is the line through (1, -2).
  auto f = find_proper_invariant(minus_identity(2), 2);
  REQUIRE(f.has_value());
  CHECK(f->space == Subspace::saturate(IntMat{{1}, {-2}}));

  // The fixed subspace is proper here, so it wins before any sweep.
  auto k = find_proper_invariant(klein_bottle(), 2);
  REQUIRE(k.has_value());
  CHECK(k->space == kE1);
}

TEST_CASE("minimal decomposition of the klein bottle plane") {
  Decomposition d = minimal_decomposition(klein_bottle(), Subspace::full(2), 2);
  REQUIRE(d.summands.size() == 2);
  CHECK(d.summands[0].space.space == kE1);
  CHECK(d.summands[1].space.space == kE2);
  for (const DecompositionSummand& s : d.summands) {
    CHECK(s.space.certified_invariant);
    CHECK(s.status == MinimalityStatus::certified);
  }
}

TEST_CASE("minimal decomposition splits into lines") {
  Decomposition d = minimal_decomposition(minus_identity(3), Subspace::full(3), 2);
  REQUIRE(d.summands.size() == 3);
  std::vector<Subspace> parts;
  for (const DecompositionSummand& s : d.summands) {
    CHECK(s.space.space.dim() == 1);
    CHECK(s.status == MinimalityStatus::certified);
    parts.push_back(s.space.space);
  }
  CHECK(span_subspaces(parts) == Subspace::full(3));
}

TEST_CASE("irreducible spaces stay whole") {
  Decomposition d = minimal_decomposition(rotation_group(), Subspace::full(2), 2);
  REQUIRE(d.summands.size() == 1);
  CHECK(d.summands[0].space.space == Subspace::full(2));
  CHECK(d.summands[0].status == MinimalityStatus::search_bound_only);
  CHECK(d.summands[0].bound == 2);
}
