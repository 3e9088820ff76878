#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatfold/cryst.hpp"

using namespace flatfold;

namespace {

template <typename F>
std::string thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

const IntMat kRot90{{0, -1}, {1, 0}};
const IntMat kFlip{{1, 0}, {0, -1}};

CrystGroup klein_bottle() {
  return CrystGroup::from_generators(2, to_rat(IntMat{{2, 0}, {0, 2}}),
                                     {{kFlip, RatVec{Rat(1, 2), Rat(0)}}});
}

CrystGroup minus_identity(std::size_t n) {
  IntMat neg(n, n);
  for (std::size_t i = 0; i < n; ++i) neg(i, i) = Int(-1);
  return CrystGroup::from_generators(n, to_rat(IntMat::identity(n)), {{neg, RatVec(n)}});
}

}  // namespace

TEST_CASE("point group closure of a rotation") {
  PointGroup c4 = PointGroup::close(2, {kRot90});
  CHECK(c4.order() == 4);
  CHECK(c4.element(c4.identity_index()) == IntMat::identity(2));
  CHECK(c4.element_order(c4.index_of(kRot90)) == 4);
  CHECK(c4.element_order(c4.identity_index()) == 1);

  // The stored product and inverse tables agree with matrix arithmetic.
  for (std::size_t i = 0; i < c4.order(); ++i) {
    for (std::size_t j = 0; j < c4.order(); ++j)
      CHECK(c4.element(c4.mul(i, j)) == flatfold::mul(c4.element(i), c4.element(j)));
    CHECK(c4.mul(i, c4.inv(i)) == c4.identity_index());
  }

  CHECK(c4.subgroup_generated({c4.index_of(flatfold::mul(kRot90, kRot90))}).size() == 2);
  CHECK_FALSE(c4.find(IntMat{{1, 1}, {0, 1}}).has_value());
}

TEST_CASE("closure is canonical under generator choice") {
  PointGroup a = PointGroup::close(2, {kRot90});
  PointGroup b = PointGroup::close(2, {flatfold::mul(kRot90, kRot90), inverse_unimodular(kRot90)});
  REQUIRE(a.order() == b.order());
  for (std::size_t i = 0; i < a.order(); ++i) CHECK(a.element(i) == b.element(i));
}

TEST_CASE("closure rejects infinite and ill-formed generators") {
  CHECK(thrown_code([] { PointGroup::close(2, {IntMat{{1, 1}, {0, 1}}}, 50); }) ==
        "cap-exceeded");
  CHECK(thrown_code([] { PointGroup::close(2, {IntMat{{2, 0}, {0, 1}}}); }) ==
        "not-unimodular");
  CHECK(thrown_code([] { PointGroup::close(2, {IntMat{{1}, {0}}}); }) == "dimension-mismatch");
}

TEST_CASE("klein bottle group") {
  CrystGroup g = klein_bottle();
  CHECK(g.dim() == 2);
  CHECK(g.order() == 2);
  std::size_t r = g.points().index_of(kFlip);
  CHECK(g.vector_system(r) == RatVec{Rat(1, 2), Rat(0)});
  CHECK(is_zero_vec(g.vector_system(g.points().identity_index())));

  AffineElement e = g.affine(r, IntVec{Int(1), Int(0)});
  CHECK(e.translation == RatVec{Rat(3, 2), Rat(0)});
  AffineElement square = affine_mul(g.affine(r), g.affine(r));
  CHECK(square.linear == IntMat::identity(2));
  CHECK(square.translation == RatVec{Rat(1), Rat(0)});  // pure lattice shift
  AffineElement idw = affine_mul(g.affine(r), affine_inv(g.affine(r)));
  CHECK(idw.linear == IntMat::identity(2));
  CHECK(is_zero_vec(idw.translation));
}

TEST_CASE("vector systems must satisfy the cocycle rule") {
  CHECK(thrown_code([] {
          CrystGroup::from_generators(
              2, to_rat(IntMat::identity(2)),
              {{kFlip, RatVec{Rat(1, 3), Rat(0)}}, {kFlip, RatVec{Rat(1, 2), Rat(0)}}});
        }) == "inconsistent-vector-system");
}

TEST_CASE("structural verification") {
  CHECK(verify_cryst(klein_bottle()).passed);

  // A Gram matrix the point group does not respect must be flagged.
  CrystGroup bad = CrystGroup::from_generators(2, to_rat(IntMat{{1, 0}, {0, 2}}),
                                               {{kRot90, RatVec(2)}});
  CrystReport r = verify_cryst(bad);
  CHECK_FALSE(r.passed);
  bool isometry_failed = false;
  for (const CrystCheck& c : r.checks)
    if (!c.passed && c.name == "isometry") isometry_failed = true;
  CHECK(isometry_failed);

  CrystGroup indef = CrystGroup::from_generators(2, to_rat(IntMat{{1, 0}, {0, -1}}),
                                                 {{kFlip, RatVec{Rat(1, 2), Rat(0)}}});
  CrystReport r2 = verify_cryst(indef);
  CHECK_FALSE(r2.passed);
  bool pd_failed = false;
  for (const CrystCheck& c : r2.checks)
    if (!c.passed && c.name == "gram-positive-definite") pd_failed = true;
  CHECK(pd_failed);
}

TEST_CASE("torsion detection") {
  CHECK(is_torsion_free(klein_bottle()).torsion_free);

  CrystGroup pm = minus_identity(2);
  TorsionResult t = is_torsion_free(pm);
  REQUIRE_FALSE(t.torsion_free);
  // Re-check the witness: N_A (a + lambda) must vanish for A = -I (N_A = 0).
  AffineElement w = pm.affine(t.witness_element, t.witness_lambda);
  CHECK(w.linear != IntMat::identity(2));
  AffineElement sq = affine_mul(w, w);
  CHECK(sq.linear == IntMat::identity(2));
  CHECK(is_zero_vec(sq.translation));
}

TEST_CASE("orientability") {
  CHECK_FALSE(is_orientable(klein_bottle()));
  CHECK(is_orientable(CrystGroup::from_generators(2, to_rat(IntMat{{2, 0}, {0, 2}}),
                                                  {{kRot90, RatVec(2)}})));
  CHECK_FALSE(is_orientable(minus_identity(3)));
}

TEST_CASE("direct products") {
  CrystGroup p = direct_product(klein_bottle(), klein_bottle());
  CHECK(p.dim() == 4);
  CHECK(p.order() == 4);
  CHECK(verify_cryst(p).passed);
  CHECK(is_torsion_free(p).torsion_free);
  CHECK(p.gram()(0, 0) == Rat(2));
  CHECK(p.gram()(0, 2) == Rat(0));
}
