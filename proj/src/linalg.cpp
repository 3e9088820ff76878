#include "flatfold/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace flatfold {

namespace {

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_col(IntMat& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

void negate_row(IntMat& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// col_a -= f * col_b
void axpy_col(IntMat& m, std::size_t a, const Int& f, std::size_t b) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= f * m(i, b);
}

void axpy_row(IntMat& m, std::size_t a, const Int& f, std::size_t b) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= f * m(b, j);
}

// (col_a, col_b) <- (p*col_a + q*col_b, alpha*col_b - beta*col_a); the 2x2
// transform [[p, -beta], [q, alpha]] has determinant 1 when
// p*aa + q*bb = g, alpha = aa/g, beta = bb/g.
void combine_cols(IntMat& m, std::size_t a, std::size_t b, const Int& p, const Int& q,
                  const Int& alpha, const Int& beta) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int na = p * m(i, a) + q * m(i, b);
    Int nb = alpha * m(i, b) - beta * m(i, a);
    m(i, a) = na;
    m(i, b) = nb;
  }
}

void combine_rows(IntMat& m, std::size_t a, std::size_t b, const Int& p, const Int& q,
                  const Int& alpha, const Int& beta) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int na = p * m(a, j) + q * m(b, j);
    Int nb = alpha * m(b, j) - beta * m(a, j);
    m(a, j) = na;
    m(b, j) = nb;
  }
}

struct Xgcd {
  Int g, p, q;  // g = p*a + q*b, g >= 0
};

Xgcd xgcd(const Int& a, const Int& b) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.p.get_mpz_t(), r.q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

HnfResult hnf(const IntMat& m) {
  HnfResult res;
  res.h = m;
  res.u = IntMat::identity(m.cols());
  std::size_t rank = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t i = 0; i < rows && rank < cols; ++i) {
    std::size_t pivot = cols;
    for (std::size_t j = rank; j < cols; ++j)
      if (res.h(i, j) != 0) {
        pivot = j;
        break;
      }
    if (pivot == cols) continue;
    swap_cols(res.h, pivot, rank);
    swap_cols(res.u, pivot, rank);
    for (std::size_t j = rank + 1; j < cols; ++j) {
      if (res.h(i, j) == 0) continue;
      Xgcd x = xgcd(res.h(i, rank), res.h(i, j));
      Int alpha = res.h(i, rank) / x.g;
      Int beta = res.h(i, j) / x.g;
      combine_cols(res.h, rank, j, x.p, x.q, alpha, beta);
      combine_cols(res.u, rank, j, x.p, x.q, alpha, beta);
    }
    if (res.h(i, rank) < 0) {
      negate_col(res.h, rank);
      negate_col(res.u, rank);
    }
    for (std::size_t j = 0; j < rank; ++j) {
      Int f = floor_div(res.h(i, j), res.h(i, rank));
      axpy_col(res.h, j, f, rank);
      axpy_col(res.u, j, f, rank);
    }
    ++rank;
  }
  res.rank = rank;
  return res;
}

IntMat hnf_basis(const IntMat& m) {
  HnfResult r = hnf(m);
  IntMat out(m.rows(), r.rank);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < r.rank; ++j) out(i, j) = r.h(i, j);
  return out;
}

SnfResult snf(const IntMat& m) {
  SnfResult res;
  res.d = m;
  res.u = IntMat::identity(m.rows());
  res.v = IntMat::identity(m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      // Move some nonzero entry of the trailing block to (k, k).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows && pi == rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (res.d(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == rows) break;  // trailing block is zero; remaining divisors are 0
      swap_rows(res.d, k, pi);
      swap_rows(res.u, k, pi);
      swap_cols(res.d, k, pj);
      swap_cols(res.v, k, pj);

      // Clear column k below and row k to the right. When the pivot
      // already divides the entry, a plain axpy removes it without
      // touching row or column k, so nothing gets refilled; the gcd
      // combine is reserved for entries that strictly shrink the pivot,
      // which bounds the number of refill rounds. (An unconditional gcd
      // combine can cycle: for equal entries xgcd may return p = 0,
      // q = 1, turning the combine into a swap.)
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (std::size_t i = k + 1; i < rows; ++i) {
          if (res.d(i, k) == 0) continue;
          if (res.d(i, k) % res.d(k, k) == 0) {
            Int f = res.d(i, k) / res.d(k, k);
            axpy_row(res.d, i, f, k);
            axpy_row(res.u, i, f, k);
            continue;
          }
          Xgcd x = xgcd(res.d(k, k), res.d(i, k));
          Int alpha = res.d(k, k) / x.g;
          Int beta = res.d(i, k) / x.g;
          combine_rows(res.d, k, i, x.p, x.q, alpha, beta);
          combine_rows(res.u, k, i, x.p, x.q, alpha, beta);
          dirty = true;
        }
        for (std::size_t j = k + 1; j < cols; ++j) {
          if (res.d(k, j) == 0) continue;
          if (res.d(k, j) % res.d(k, k) == 0) {
            Int f = res.d(k, j) / res.d(k, k);
            axpy_col(res.d, j, f, k);
            axpy_col(res.v, j, f, k);
            continue;
          }
          Xgcd x = xgcd(res.d(k, k), res.d(k, j));
          Int alpha = res.d(k, k) / x.g;
          Int beta = res.d(k, j) / x.g;
          combine_cols(res.d, k, j, x.p, x.q, alpha, beta);
          combine_cols(res.v, k, j, x.p, x.q, alpha, beta);
          dirty = true;
        }
      }

      // Divisibility: d(k,k) must divide the whole trailing block.
      bool fixed = false;
      for (std::size_t i = k + 1; i < rows && !fixed; ++i)
        for (std::size_t j = k + 1; j < cols && !fixed; ++j)
          if (res.d(i, j) % res.d(k, k) != 0) {
            axpy_row(res.d, k, Int(-1), i);  // row k += row i
            axpy_row(res.u, k, Int(-1), i);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (res.d(k, k) < 0) {
      negate_row(res.d, k);
      negate_row(res.u, k);
    }
  }
  res.divisors.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) res.divisors[k] = res.d(k, k);
  return res;
}

std::optional<RatSolution> solve_rational(const RatMat& a, const RatVec& b) {
  if (a.rows() != b.size()) throw Error("dimension-mismatch", "solve_rational shapes");
  RatMat m = a;
  RatVec rhs = b;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::vector<bool> is_pivot_col(cols, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = row; i < rows; ++i)
      if (m(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(row, j));
      std::swap(rhs[sel], rhs[row]);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col) / m(row, col);
      for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(row, j);
      rhs[i] -= f * rhs[row];
    }
    pivots.emplace_back(row, col);
    is_pivot_col[col] = true;
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;

  RatSolution sol;
  sol.particular.assign(cols, Rat(0));
  for (auto [pi, pj] : pivots) sol.particular[pj] = rhs[pi] / m(pi, pj);
  for (std::size_t jf = 0; jf < cols; ++jf) {
    if (is_pivot_col[jf]) continue;
    RatVec v(cols, Rat(0));
    v[jf] = 1;
    for (auto [pi, pj] : pivots) v[pj] = -m(pi, jf) / m(pi, pj);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<RatVec> rational_kernel(const RatMat& a) {
  RatVec zero(a.rows(), Rat(0));
  return solve_rational(a, zero)->kernel;
}

std::optional<IntSolution> integer_solve(const IntMat& a, const IntVec& b) {
  if (a.rows() != b.size()) throw Error("dimension-mismatch", "integer_solve shapes");
  HnfResult r = hnf(a);
  IntVec residual = b;
  IntVec y(a.cols(), Int(0));
  for (std::size_t j = 0; j < r.rank; ++j) {
    std::size_t pivot_row = a.rows();
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (r.h(i, j) != 0) {
        pivot_row = i;
        break;
      }
    const Int& den = r.h(pivot_row, j);
    if (residual[pivot_row] % den != 0) return std::nullopt;
    y[j] = residual[pivot_row] / den;
    if (y[j] != 0)
      for (std::size_t i = 0; i < a.rows(); ++i) residual[i] -= y[j] * r.h(i, j);
  }
  if (!is_zero_vec(residual)) return std::nullopt;

  IntSolution sol;
  sol.particular = mul(r.u, y);
  for (std::size_t j = r.rank; j < a.cols(); ++j) sol.kernel.push_back(r.u.column(j));
  return sol;
}

IntMat integer_kernel(const IntMat& a) {
  HnfResult r = hnf(a);
  IntMat out(a.cols(), a.cols() - r.rank);
  for (std::size_t j = r.rank; j < a.cols(); ++j)
    out.set_column(j - r.rank, r.u.column(j));
  return out;
}

std::optional<AffineWitness> affine_lattice_membership(const RatVec& target,
                                                       const RatMat& subspace_basis,
                                                       const IntMat& lattice_basis) {
  const std::size_t n = target.size();
  if (subspace_basis.rows() != n || lattice_basis.rows() != n)
    throw Error("dimension-mismatch", "affine membership shapes");

  // Rows of ann annihilate the subspace; target - B*lambda must be killed.
  std::vector<RatVec> ann = rational_kernel(transpose(subspace_basis));
  const std::size_t k = ann.size(), mcols = lattice_basis.cols();
  IntMat sys(k, mcols);
  IntVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    RatVec row(mcols, Rat(0));
    for (std::size_t j = 0; j < mcols; ++j)
      for (std::size_t t = 0; t < n; ++t) row[j] += ann[i][t] * Rat(lattice_basis(t, j));
    Rat rv(0);
    for (std::size_t t = 0; t < n; ++t) rv += ann[i][t] * target[t];
    Int scale(1);
    for (std::size_t j = 0; j < mcols; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), row[j].get_den().get_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), rv.get_den().get_mpz_t());
    for (std::size_t j = 0; j < mcols; ++j) {
      Rat scaled = row[j] * Rat(scale);
      sys(i, j) = scaled.get_num();
    }
    Rat scaled = rv * Rat(scale);
    rhs[i] = scaled.get_num();
  }
  auto sol = integer_solve(sys, rhs);
  if (!sol) return std::nullopt;

  AffineWitness w;
  w.lattice_coords = sol->particular;
  w.in_subspace = target;
  for (std::size_t j = 0; j < mcols; ++j) {
    if (w.lattice_coords[j] == 0) continue;
    for (std::size_t t = 0; t < n; ++t)
      w.in_subspace[t] -= Rat(w.lattice_coords[j]) * Rat(lattice_basis(t, j));
  }
  // By construction the remainder is annihilated by ann, hence in the span.
  if (!solve_rational(subspace_basis, w.in_subspace))
    throw Error("internal", "affine membership witness escaped the subspace");
  return w;
}

Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("dimension-mismatch", "determinant of non-square");
  const std::size_t n = m.rows();
  if (n == 0) return Int(1);
  IntMat a = m;
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t sel = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          sel = i;
          break;
        }
      if (sel == n) return Int(0);
      swap_rows(a, k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = num / prev;  // Bareiss: division is exact
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("dimension-mismatch", "determinant of non-square");
  const std::size_t n = m.rows();
  RatMat a = m;
  Rat out(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0) {
        sel = i;
        break;
      }
    if (sel == n) return Rat(0);
    if (sel != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(k, j));
      out = -out;
    }
    out *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return out;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("dimension-mismatch", "inverse of non-square");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0) {
        sel = i;
        break;
      }
    if (sel == n) throw Error("singular", "matrix is not invertible");
    if (sel != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(sel, j), a(k, j));
        std::swap(inv(sel, j), inv(k, j));
      }
    Rat p = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IntMat inverse_unimodular(const IntMat& m) {
  return to_int(inverse(to_rat(m)));
}

RatMat rational_lattice_basis(const RatMat& generators) {
  Int scale(1);
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), generators(i, j).get_den().get_mpz_t());
  IntMat scaled(generators.rows(), generators.cols());
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) {
      Rat s = generators(i, j) * Rat(scale);
      scaled(i, j) = s.get_num();
    }
  IntMat basis = hnf_basis(scaled);
  RatMat out(basis.rows(), basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) out(i, j) = Rat(basis(i, j)) / Rat(scale);
  return out;
}

std::size_t rank_of(const RatMat& m) {
  return m.cols() - rational_kernel(m).size();
}

}  // namespace flatfold
