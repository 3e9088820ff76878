#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flatfold/linalg.hpp"

using namespace flatfold;

namespace {

IntMat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(d(rng));
  return m;
}

bool unimodular(const IntMat& u) { return abs(det(u)) == 1; }

// The canonical column shape: nonzero columns first, strictly increasing
// positive pivots, entries left of a pivot reduced into [0, pivot).
bool canonical_hnf_shape(const IntMat& h, std::size_t rank) {
  long prev = -1;
  for (std::size_t j = 0; j < rank; ++j) {
    std::size_t i = 0;
    while (i < h.rows() && h(i, j) == 0) ++i;
    if (i == h.rows()) return false;
    if (static_cast<long>(i) <= prev) return false;
    prev = static_cast<long>(i);
    if (h(i, j) <= 0) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (h(i, k) < 0 || h(i, k) >= h(i, j)) return false;
  }
  for (std::size_t j = rank; j < h.cols(); ++j)
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (h(i, j) != 0) return false;
  return true;
}

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

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-6/8") == Rat(-3, 4));
  CHECK(parse_rat("7/-2") == Rat(-7, 2));
  CHECK(parse_rat("5") == Rat(5));
  CHECK(format_rat(Rat(-7, 2)) == "-7/2");
  CHECK(format_rat(Rat(4)) == "4");
  CHECK(thrown_code([] { parse_rat("1/0"); }) == "bad-rational");
  CHECK(thrown_code([] { parse_rat(""); }) == "bad-rational");
  CHECK(thrown_code([] { parse_rat("x"); }) == "bad-rational");
  CHECK(frac(Rat(-1, 4)) == Rat(3, 4));
  CHECK(frac(Rat(9, 4)) == Rat(1, 4));
  CHECK(floor_div(Int(-7), Int(2)) == Int(-4));
}

TEST_CASE("hermite form of a 2x2 lattice") {
  IntMat m{{2, 4}, {1, 3}};
  HnfResult r = hnf(m);
  CHECK(r.rank == 2);
  CHECK(mul(m, r.u) == r.h);
  CHECK(unimodular(r.u));
  CHECK(r.h == IntMat{{2, 0}, {0, 1}});
  CHECK(hnf_basis(m) == IntMat{{2, 0}, {0, 1}});
}

TEST_CASE("hermite form handles rank deficiency") {
  IntMat m{{1, 2, 3}, {2, 4, 6}};
  HnfResult r = hnf(m);
  CHECK(r.rank == 1);
  CHECK(mul(m, r.u) == r.h);
  CHECK(unimodular(r.u));
  CHECK(hnf_basis(m) == IntMat{{1}, {2}});
  CHECK(canonical_hnf_shape(r.h, r.rank));
}

TEST_CASE("smith form divisor chains") {
  SnfResult a = snf(IntMat{{2, 0}, {0, 3}});
  CHECK(a.divisors == std::vector<Int>{1, 6});
  SnfResult b = snf(IntMat{{2, 0}, {0, 4}});
  CHECK(b.divisors == std::vector<Int>{2, 4});
  CHECK(mul(mul(a.u, IntMat{{2, 0}, {0, 3}}), a.v) == a.d);
  SnfResult c = snf(IntMat{{0, 0}, {0, 0}});
  CHECK(c.divisors == std::vector<Int>{0, 0});
}

TEST_CASE("integer solve over a line") {
  auto sol = integer_solve(IntMat{{1, 1}}, IntVec{Int(5)});
  REQUIRE(sol.has_value());
  CHECK(sol->particular[0] + sol->particular[1] == 5);
  REQUIRE(sol->kernel.size() == 1);
  IntVec k = sol->kernel[0];
  CHECK(((k == IntVec{Int(1), Int(-1)}) || (k == IntVec{Int(-1), Int(1)})));
  CHECK_FALSE(integer_solve(IntMat{{2, 0}, {0, 2}}, IntVec{Int(1), Int(0)}).has_value());
}

TEST_CASE("rational solve and kernel") {
  auto sol = solve_rational(to_rat(IntMat{{1, 2}, {2, 4}}), RatVec{Rat(1), Rat(2)});
  REQUIRE(sol.has_value());
  CHECK(sol->particular[0] + 2 * sol->particular[1] == Rat(1));
  CHECK(sol->kernel.size() == 1);
  CHECK_FALSE(solve_rational(to_rat(IntMat{{1, 2}, {2, 4}}), RatVec{Rat(1), Rat(3)}).has_value());
  CHECK(rational_kernel(to_rat(IntMat{{1, 1, 1}})).size() == 2);
}

TEST_CASE("affine membership in subspace plus lattice") {
  RatMat line{{Rat(1)}, {Rat(1)}};
  auto w = affine_lattice_membership(RatVec{Rat(1, 2), Rat(1, 2)}, line, IntMat::identity(2));
  REQUIRE(w.has_value());
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(w->in_subspace[i] + Rat(w->lattice_coords[i]) == Rat(1, 2));
  CHECK_FALSE(affine_lattice_membership(RatVec{Rat(1, 2), Rat(0)}, line, IntMat::identity(2))
                  .has_value());
}

TEST_CASE("determinants and inverses") {
  CHECK(det(IntMat{{2, 4}, {1, 3}}) == 2);
  CHECK(det(IntMat{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
  CHECK(det(IntMat{{1, 2}, {2, 4}}) == 0);
  CHECK(inverse(to_rat(IntMat{{2, 1}, {1, 1}})) == to_rat(IntMat{{1, -1}, {-1, 2}}));
  CHECK(inverse_unimodular(IntMat{{1, 1}, {0, 1}}) == IntMat{{1, -1}, {0, 1}});
  CHECK(thrown_code([] { inverse(to_rat(IntMat{{1, 2}, {2, 4}})); }) == "singular");
}

TEST_CASE("rational lattice basis") {
  RatMat gens(2, 2);
  gens(0, 0) = Rat(1, 2);
  gens(1, 1) = Rat(1);
  RatMat b = rational_lattice_basis(gens);
  RatMat want(2, 2);
  want(0, 0) = Rat(1, 2);
  want(1, 1) = Rat(1);
  CHECK(b == want);
  CHECK(rank_of(to_rat(IntMat{{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("randomized certificates") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 2 + trial % 3, c = 2 + (trial / 3) % 3;
    IntMat m = random_mat(rng, r, c, -6, 6);

    HnfResult h = hnf(m);
    CHECK(mul(m, h.u) == h.h);
    CHECK(unimodular(h.u));
    CHECK(canonical_hnf_shape(h.h, h.rank));
    CHECK(hnf_basis(hnf_basis(m)) == hnf_basis(m));

    SnfResult s = snf(m);
    CHECK(mul(mul(s.u, m), s.v) == s.d);
    CHECK(unimodular(s.u));
    CHECK(unimodular(s.v));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] >= 0);
      if (s.divisors[i] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
      if (s.divisors[i] == 0) CHECK(s.divisors[i + 1] == 0);
    }

    // A solvable right-hand side must round-trip.
    IntMat x = random_mat(rng, c, 1, -4, 4);
    IntVec b = mul(m, x.column(0));
    auto sol = integer_solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(mul(m, sol->particular) == b);
    for (const IntVec& k : sol->kernel) CHECK(is_zero_vec(mul(m, k)));
  }
}
