#include "flatfold/klein.hpp"

#include <algorithm>

namespace flatfold {

namespace {

std::vector<unsigned> divisors_of(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::size_t phi(unsigned n) {
  std::size_t count = 0;
  for (unsigned k = 1; k <= n; ++k) {
    unsigned a = k, b = n;
    while (b) {
      unsigned t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++count;
  }
  return count;
}

}  // namespace

KleinFixture build_klein(unsigned n) {
  if (n < 2) throw Error("bad-usage", "the fixture needs n >= 2");
  KleinFixture fx;
  fx.n = n;

  // Adapted basis in the permutation coordinates: the diagonal, then the
  // differences e_j - e_0.
  IntMat b(n, n);
  for (unsigned i = 0; i < n; ++i) b(i, 0) = 1;
  for (unsigned j = 1; j < n; ++j) {
    b(j, j) = 1;
    b(0, j) = -1;
  }
  fx.conversion = b;

  // Cyclic shift e_j -> e_{j-1}, conjugated into the adapted basis.
  IntMat shift(n, n);
  for (unsigned j = 0; j < n; ++j) shift((j + n - 1) % n, j) = 1;
  IntMat a = to_int(mul(inverse(to_rat(b)), mul(to_rat(shift), to_rat(b))));

  RatVec translation(n);
  translation[0] = Rat(1, n);

  // Gram of the adapted basis for the permutation-invariant unit form:
  // the diagonal has norm n and is orthogonal to the differences, whose
  // pairwise products are 1 + delta.
  RatMat gram(n, n);
  gram(0, 0) = Rat(static_cast<long>(n));
  for (unsigned i = 1; i < n; ++i)
    for (unsigned j = 1; j < n; ++j) gram(i, j) = Rat(i == j ? 2 : 1);

  fx.group = CrystGroup::from_generators(n, gram, {{a, translation}});

  IntMat e0(n, 1);
  e0(0, 0) = 1;
  fx.vprime = Subspace::saturate(e0);
  IntMat rest(n, n - 1);
  for (unsigned j = 1; j < n; ++j) rest(j, j - 1) = 1;
  fx.vsecond = Subspace::saturate(rest);

  KleinExpected& ex = fx.expected;
  ex.orientable = n % 2 == 1;
  ex.strata = divisors_of(n);
  for (unsigned d : ex.strata) ex.summand_dims.push_back(phi(d));
  std::sort(ex.summand_dims.begin(), ex.summand_dims.end());
  ex.torus_count = 1;
  ex.hhat_order = n;
  ex.leaf_count = n;
  ex.covering_degree = n;
  ex.lattice_index = n;
  return fx;
}

}  // namespace flatfold
