#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "flatfold/invariant.hpp"
#include "flatfold/klein.hpp"

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

}  // namespace

TEST_CASE("the classical bottle in adapted coordinates") {
  KleinFixture fx = build_klein(2);
  CHECK(fx.group.dim() == 2);
  CHECK(fx.group.order() == 2);
  CHECK(fx.conversion == IntMat{{1, -1}, {1, 1}});
  CHECK(fx.group.gram() == to_rat(IntMat{{2, 0}, {0, 2}}));

  std::size_t r = fx.group.points().index_of(IntMat{{1, 0}, {0, -1}});
  CHECK(fx.group.vector_system(r) == RatVec{Rat(1, 2), Rat(0)});
  CHECK(fx.vprime.sat_basis() == IntMat{{1}, {0}});
  CHECK(fx.vsecond.sat_basis() == IntMat{{0}, {1}});
  CHECK_FALSE(fx.expected.orientable);
  CHECK(fx.expected.summand_dims == std::vector<std::size_t>{1, 1});
  CHECK(fx.expected.strata == std::vector<unsigned>{1, 2});
}

TEST_CASE("fixture structure across orders") {
  for (unsigned n = 2; n <= 8; ++n) {
    KleinFixture fx = build_klein(n);
    CHECK(fx.group.order() == n);
    CHECK(verify_cryst(fx.group).passed);
    CHECK(is_torsion_free(fx.group).torsion_free);
    CHECK(is_orientable(fx.group) == (n % 2 == 1));

    // The adapted lattice sits inside the permutation lattice with index n.
    CHECK(abs(det(fx.conversion)) == n);

    // An element of order n generates the point group.
    bool top_order = false;
    for (std::size_t i = 0; i < fx.group.order(); ++i)
      if (fx.group.points().element_order(i) == n) top_order = true;
    CHECK(top_order);

    CHECK(fx.vprime.dim() == 1);
    CHECK(fx.vsecond.dim() == n - 1);
    CHECK(span_subspaces(fx.vprime, fx.vsecond) == Subspace::full(n));
    CHECK(intersect_subspaces(fx.vprime, fx.vsecond).dim() == 0);
    CHECK(is_invariant(fx.vprime, fx.group));
    CHECK(is_invariant(fx.vsecond, fx.group));

    // Gram blocks: diagonal norm n, difference block 2 on / 1 off, no mixing.
    CHECK(fx.group.gram()(0, 0) == Rat(static_cast<long>(n)));
    for (unsigned j = 1; j < n; ++j) {
      CHECK(fx.group.gram()(0, j) == Rat(0));
      CHECK(fx.group.gram()(j, j) == Rat(2));
    }

    std::size_t dim_sum = 0;
    for (std::size_t d : fx.expected.summand_dims) dim_sum += d;
    CHECK(dim_sum == n);
    CHECK(fx.expected.strata.front() == 1);
    CHECK(fx.expected.strata.back() == n);
  }
}

TEST_CASE("the conversion matrix conjugates the coordinate shift") {
  for (unsigned n = 2; n <= 6; ++n) {
    KleinFixture fx = build_klein(n);
    IntMat shift(n, n);
    for (unsigned j = 0; j < n; ++j) shift((j + n - 1) % n, j) = 1;
    // Find the group element with translation (1/n, 0, ...): the generator.
    std::size_t gen = fx.group.order();
    for (std::size_t i = 0; i < fx.group.order(); ++i) {
      const RatVec& v = fx.group.vector_system(i);
      bool match = v[0] == Rat(1, static_cast<unsigned long>(n));
      for (unsigned t = 1; t < n && match; ++t) match = v[t] == Rat(0);
      if (match) gen = i;
    }
    REQUIRE(gen < fx.group.order());
    CHECK(mul(shift, fx.conversion) == mul(fx.conversion, fx.group.element(gen)));
  }
}

TEST_CASE("decompositions match the predicted dimension multiset") {
  for (unsigned n : {2u, 3u, 4u, 6u}) {
    KleinFixture fx = build_klein(n);
    Decomposition d = minimal_decomposition(fx.group, Subspace::full(n), 2);
    std::vector<std::size_t> dims;
    for (const DecompositionSummand& s : d.summands) dims.push_back(s.space.space.dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == fx.expected.summand_dims);
  }
}

TEST_CASE("fixed subspace and complement recover the split") {
  for (unsigned n = 2; n <= 5; ++n) {
    KleinFixture fx = build_klein(n);
    CHECK(fixed_subspace(fx.group).space == fx.vprime);
    CHECK(invariant_complement(fx.vprime, fx.group).space == fx.vsecond);
  }
}

TEST_CASE("order bounds") {
  CHECK(thrown_code([] { build_klein(1); }) == "bad-usage");
  CHECK(thrown_code([] { build_klein(0); }) == "bad-usage");
}
