#include "linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace filtspec::linalg {

namespace {

Int mod_nonneg(const Int& x, unsigned p) {
  Int m = x % p;
  if (m < 0) m += p;
  return m;
}

Int mod_inverse(const Int& a, unsigned p) {
  Int t = 0, new_t = 1, r = p, new_r = mod_nonneg(a, p);
  while (new_r != 0) {
    Int q = r / new_r;
    Int tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_nonneg(t, p);
}

}  // namespace

Rational FieldContext::reduce(const Rational& x) const {
  if (p == 0) return x;
  Int num = mod_nonneg(numerator(x), p);
  Int den = mod_nonneg(denominator(x), p);
  if (den == 0) throw std::domain_error("FieldContext: denominator divisible by p");
  if (den != 1) num = mod_nonneg(num * mod_inverse(den, p), p);
  return Rational(num);
}

Rational FieldContext::inv(const Rational& a) const {
  if (p == 0) {
    if (a == 0) throw std::domain_error("FieldContext::inv of zero");
    return Rational(1) / a;
  }
  return Rational(mod_inverse(numerator(reduce(a)), p));
}

namespace {

// Row-reduces a (optionally with an attached right-hand side), returning pivot
// columns. Works in place.
std::vector<int> row_echelon(const FieldContext& F, Matrix& a, std::vector<Rational>* rhs) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (F.reduce(a[i][c]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    if (rhs) std::swap((*rhs)[r], (*rhs)[pivot]);
    Rational inv = F.inv(a[r][c]);
    for (int j = c; j < cols; ++j) a[r][j] = F.mul(a[r][j], inv);
    if (rhs) (*rhs)[r] = F.mul((*rhs)[r], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Rational f = F.reduce(a[i][c]);
      if (f == 0) continue;
      for (int j = c; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
      if (rhs) (*rhs)[i] = F.sub((*rhs)[i], F.mul(f, (*rhs)[r]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace

int rank(const FieldContext& F, Matrix a) {
  return static_cast<int>(row_echelon(F, a, nullptr).size());
}

std::optional<std::vector<Rational>> solve(const FieldContext& F, Matrix a,
                                           std::vector<Rational> b, int cols) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return std::vector<Rational>(cols, Rational(0));
  auto pivots = row_echelon(F, a, &b);
  int r = static_cast<int>(pivots.size());
  for (int i = r; i < rows; ++i)
    if (F.reduce(b[i]) != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (int i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return x;
}

std::vector<std::vector<Rational>> kernel(const FieldContext& F, Matrix a, int cols) {
  int rows = static_cast<int>(a.size());
  if (rows == 0 || cols == 0) {
    // no constraints: the whole space
    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < cols; ++c) {
      std::vector<Rational> v(cols, Rational(0));
      v[c] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  auto pivots = row_echelon(F, a, nullptr);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(a[i][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (int i = 0; i < rank; ++i) out.push_back(d[i][i]);
  return out;
}

SmithForm smith_normal_form(IntMatrix a, int cols) {
  int rows = static_cast<int>(a.size());
  SmithForm out;
  out.u.assign(rows, std::vector<Int>(rows, 0));
  out.u_inv.assign(rows, std::vector<Int>(rows, 0));
  out.v.assign(cols, std::vector<Int>(cols, 0));
  for (int i = 0; i < rows; ++i) out.u[i][i] = out.u_inv[i][i] = 1;
  for (int j = 0; j < cols; ++j) out.v[j][j] = 1;
  out.d = std::move(a);
  IntMatrix& d = out.d;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    std::swap(d[i], d[j]);
    std::swap(out.u[i], out.u[j]);
    for (int r = 0; r < rows; ++r) std::swap(out.u_inv[r][i], out.u_inv[r][j]);
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(d[r][i], d[r][j]);
    for (std::size_t r = 0; r < out.v.size(); ++r) std::swap(out.v[r][i], out.v[r][j]);
  };
  auto add_row = [&](int dst, int src, const Int& f) {  // row_dst += f * row_src
    for (int c = 0; c < cols; ++c) d[dst][c] += f * d[src][c];
    for (int c = 0; c < rows; ++c) out.u[dst][c] += f * out.u[src][c];
    for (int r = 0; r < rows; ++r) out.u_inv[r][src] -= f * out.u_inv[r][dst];
  };
  auto add_col = [&](int dst, int src, const Int& f) {  // col_dst += f * col_src
    for (int r = 0; r < rows; ++r) d[r][dst] += f * d[r][src];
    for (std::size_t r = 0; r < out.v.size(); ++r) out.v[r][dst] += f * out.v[r][src];
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < cols; ++c) d[i][c] = -d[i][c];
    for (int c = 0; c < rows; ++c) out.u[i][c] = -out.u[i][c];
    for (int r = 0; r < rows; ++r) out.u_inv[r][i] = -out.u_inv[r][i];
  };

  int t = 0;
  while (true) {
    // smallest-magnitude nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (d[i][j] != 0 && (pi < 0 || abs(d[i][j]) < abs(d[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        Int q = d[i][t] / d[t][t];
        if (q != 0) add_row(i, t, -q);
        if (d[i][t] != 0) {  // remainder is strictly smaller; make it the pivot
          swap_rows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        Int q = d[t][j] / d[t][t];
        if (q != 0) add_col(j, t, -q);
        if (d[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }

    // enforce d_t | remaining entries
    bool divisible = true;
    for (int i = t + 1; i < rows && divisible; ++i)
      for (int j = t + 1; j < cols && divisible; ++j)
        if (d[i][j] % d[t][t] != 0) {
          add_row(t, i, Int(1));
          divisible = false;
        }
    if (!divisible) continue;  // redo the pivot at position t

    if (d[t][t] < 0) negate_row(t);
    ++t;
    if (t >= rows || t >= cols) break;
  }
  out.rank = t;
  return out;
}

std::optional<std::vector<Int>> solve_integer(const SmithForm& snf, const std::vector<Int>& b) {
  int rows = static_cast<int>(snf.u.size());
  int cols = static_cast<int>(snf.v.size());
  std::vector<Int> ub(rows, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) ub[i] += snf.u[i][j] * b[j];
  std::vector<Int> y(cols, 0);
  for (int i = 0; i < rows; ++i) {
    if (i < snf.rank && i < cols) {
      if (ub[i] % snf.d[i][i] != 0) return std::nullopt;
      y[i] = ub[i] / snf.d[i][i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += snf.v[i][j] * y[j];
  return x;
}

std::vector<std::vector<Int>> kernel_integer(const SmithForm& snf) {
  int cols = static_cast<int>(snf.v.size());
  std::vector<std::vector<Int>> basis;
  for (int j = snf.rank; j < cols; ++j) {
    std::vector<Int> v(cols);
    for (int i = 0; i < cols; ++i) v[i] = snf.v[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace filtspec::linalg
