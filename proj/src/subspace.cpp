#include "flatfold/subspace.hpp"

#include <algorithm>

namespace flatfold {

namespace {

// First nonzero row index of each basis column (columns of a Hermite basis
// have strictly increasing pivot rows).
std::vector<std::size_t> pivot_rows(const IntMat& basis) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    std::size_t r = basis.rows();
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (basis(i, j) != 0) {
        r = i;
        break;
      }
    out.push_back(r);
  }
  return out;
}

// Coefficient matrix X with ambient * X = sub; throws when some column of
// sub is outside the ambient lattice.
IntMat coefficients_in(const IntMat& sub, const IntMat& ambient) {
  if (sub.rows() != ambient.rows())
    throw Error("dimension-mismatch", "lattice inclusion shapes");
  IntMat x(ambient.cols(), sub.cols());
  for (std::size_t j = 0; j < sub.cols(); ++j) {
    auto sol = integer_solve(ambient, sub.column(j));
    if (!sol) throw Error("not-contained", "sublattice is not contained in ambient lattice");
    x.set_column(j, sol->particular);
  }
  return x;
}

}  // namespace

Subspace Subspace::saturate(const IntMat& generators) {
  Subspace s;
  s.ambient_ = generators.rows();
  // Saturation = integer kernel of the dual constraints: rows annihilating
  // span(generators) cut out exactly Z^n ∩ span(generators).
  IntMat constraints = transpose(integer_kernel(transpose(generators)));
  s.basis_ = hnf_basis(integer_kernel(constraints));
  return s;
}

Subspace Subspace::saturate(const RatMat& generators) {
  RatMat scaled = rational_lattice_basis(generators);
  Int denom(1);
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < scaled.cols(); ++j)
      mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), scaled(i, j).get_den().get_mpz_t());
  IntMat ints(scaled.rows(), scaled.cols());
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
      Rat v = scaled(i, j) * Rat(denom);
      ints(i, j) = v.get_num();
    }
  return saturate(ints);
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = IntMat(ambient_dim, 0);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = IntMat::identity(ambient_dim);
  return s;
}

Subspace Subspace::from_sat_basis(std::size_t ambient_dim, const IntMat& sat_basis) {
  if (sat_basis.rows() != ambient_dim)
    throw Error("dimension-mismatch", "sat_basis ambient dimension");
  Subspace canonical = saturate(sat_basis);
  if (canonical.basis_ != sat_basis)
    throw Error("not-canonical", "matrix is not a canonical saturated basis");
  return canonical;
}

bool Subspace::contains(const RatVec& v) const {
  if (v.size() != ambient_) throw Error("dimension-mismatch", "contains() vector size");
  return solve_rational(to_rat(basis_), v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  for (std::size_t j = 0; j < other.basis_.cols(); ++j)
    if (!contains(to_rat(other.basis_.column(j)))) return false;
  return true;
}

bool subspace_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  auto pa = pivot_rows(a.sat_basis()), pb = pivot_rows(b.sat_basis());
  if (pa != pb) return pa < pb;
  return lex_compare(a.sat_basis(), b.sat_basis()) < 0;
}

bool is_direct_summand(const IntMat& sub_lattice, const IntMat& ambient_lattice) {
  // Canonicalize both presentations so the coefficient matrix is unique.
  IntMat x = coefficients_in(hnf_basis(sub_lattice), hnf_basis(ambient_lattice));
  for (const Int& d : snf(x).divisors)
    if (d != 1) return false;
  return true;
}

IntMat extend_to_basis(const Subspace& sub) {
  const std::size_t n = sub.ambient_dim(), d = sub.dim();
  SnfResult s = snf(sub.sat_basis());
  for (const Int& div : s.divisors)
    if (div != 1) throw Error("not-saturated", "basis does not span a saturated lattice");
  // u * basis * v = [I_d; 0], so [basis | u^-1 * e_(d+1..n)] is unimodular.
  IntMat uinv = inverse_unimodular(s.u);
  IntMat out(n, n);
  for (std::size_t j = 0; j < d; ++j) out.set_column(j, sub.sat_basis().column(j));
  for (std::size_t j = d; j < n; ++j) out.set_column(j, uinv.column(j));
  Int dt = det(out);
  if (dt != 1 && dt != -1) throw Error("internal", "basis completion lost unimodularity");
  return out;
}

Subspace span_subspaces(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error("dimension-mismatch", "span of subspaces in different ambients");
  return Subspace::saturate(hconcat(a.sat_basis(), b.sat_basis()));
}

Subspace intersect_subspaces(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error("dimension-mismatch", "intersection of subspaces in different ambients");
  // Stack the dual constraints of both subspaces; their joint kernel is the
  // intersection (saturated since it is a full integer kernel).
  IntMat ca = transpose(integer_kernel(transpose(a.sat_basis())));
  IntMat cb = transpose(integer_kernel(transpose(b.sat_basis())));
  IntMat stacked(ca.rows() + cb.rows(), a.ambient_dim());
  for (std::size_t i = 0; i < ca.rows(); ++i)
    for (std::size_t j = 0; j < ca.cols(); ++j) stacked(i, j) = ca(i, j);
  for (std::size_t i = 0; i < cb.rows(); ++i)
    for (std::size_t j = 0; j < cb.cols(); ++j) stacked(ca.rows() + i, j) = cb(i, j);
  Subspace out;
  out = Subspace::saturate(integer_kernel(stacked));
  return out;
}

Subspace span_subspaces(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw Error("empty-input", "span of an empty list");
  Subspace acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = span_subspaces(acc, parts[i]);
  return acc;
}

Subspace intersect_subspaces(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw Error("empty-input", "intersection of an empty list");
  Subspace acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect_subspaces(acc, parts[i]);
  return acc;
}

SublatticeQuotient quotient_data(const Subspace& sub) {
  const std::size_t n = sub.ambient_dim(), d = sub.dim();
  IntMat basis = extend_to_basis(sub);
  IntMat inv = inverse_unimodular(basis);
  SublatticeQuotient q;
  q.index = (d == n) ? Int(1) : Int(0);
  q.cyclic_factors.assign(n - d, Int(0));
  q.projection = IntMat(n - d, n);
  for (std::size_t i = d; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q.projection(i - d, j) = inv(i, j);
  return q;
}

Int sublattice_index(const IntMat& sub_lattice, const IntMat& ambient_lattice) {
  IntMat amb = hnf_basis(ambient_lattice);
  IntMat x = coefficients_in(hnf_basis(sub_lattice), amb);
  std::size_t nonzero = 0;
  Int product(1);
  for (const Int& d : snf(x).divisors)
    if (d != 0) {
      ++nonzero;
      product *= d;
    }
  if (nonzero < amb.cols()) return Int(0);  // rank drop: infinite index
  return product;
}

}  // namespace flatfold
