#pragma once

// Internal exact linear algebra: dense Gaussian elimination over Q / F_p and
// Smith normal form over Z. Desk-scale (a few hundred rows) dense code.

#include <optional>
#include <vector>

#include "filtspec/numbers.hpp"

namespace filtspec::linalg {

struct FieldContext {
  unsigned p = 0;  // 0 = rationals, otherwise the prime
  Rational reduce(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational neg(const Rational& a) const { return reduce(-a); }
  Rational inv(const Rational& a) const;
};

using Matrix = std::vector<std::vector<Rational>>;  // row-major, rows x cols

int rank(const FieldContext& F, Matrix a);

/// Solves A x = b; returns a witness or nullopt when inconsistent.
/// cols is passed explicitly so zero-row systems keep their shape.
std::optional<std::vector<Rational>> solve(const FieldContext& F, Matrix a,
                                           std::vector<Rational> b, int cols);

/// Basis of the null space of A.
std::vector<std::vector<Rational>> kernel(const FieldContext& F, Matrix a, int cols);

using IntMatrix = std::vector<std::vector<Int>>;

/// D = U A V with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r.
/// u_inv tracks the inverse of U (used to pull quotient generators back).
struct SmithForm {
  IntMatrix d, u, u_inv, v;
  int rank = 0;
  std::vector<Int> diagonal() const;
};

/// Pivot selection by minimal absolute value to control entry growth.
SmithForm smith_normal_form(IntMatrix a, int cols);

/// Solves A x = b over Z via a precomputed Smith form of A.
std::optional<std::vector<Int>> solve_integer(const SmithForm& snf, const std::vector<Int>& b);

/// Lattice basis of ker A (columns of V past the rank).
std::vector<std::vector<Int>> kernel_integer(const SmithForm& snf);

}  // namespace filtspec::linalg
