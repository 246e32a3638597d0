#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "filtspec/complex.hpp"

namespace filtspec {

struct HomologyBasis {
  int degree = 0;
  std::vector<ChainClass> free_part;
  std::vector<std::pair<ChainClass, Int>> torsion_part;  // (representative, order); Z only
  int rank() const { return static_cast<int>(free_part.size()); }
};

/// Exact homology in one degree. Fields: Gaussian elimination (the returned
/// free basis is action-adapted, see FieldReduction); Z: Smith normal form
/// with free rank and torsion orders. Novikov rings are not handled here;
/// the spectral module windows them down to a base ring first.
HomologyBasis homology(const FilteredComplex& c, int degree);

/// Witness x with d x = z when z is a boundary, nullopt otherwise.
/// z must be a cycle, which ChainClass already guarantees.
std::optional<std::vector<Coefficient>> boundary_witness(const FilteredComplex& c,
                                                         const ChainClass& z);
bool is_boundary(const FilteredComplex& c, const ChainClass& z);

/// Membership of alpha in im(H(V^a) -> H(V)) for the strict sublevel at a:
/// decided exactly as solvability of (d x = alpha) on the rows with
/// action >= a.
bool in_image_of_sublevel(const FilteredComplex& c, const Rational& a, const ChainClass& alpha);

/// Threshold-sweep membership solver with cached factorizations per
/// (degree, row prefix). Confine one instance to one thread; results equal
/// the one-shot in_image_of_sublevel.
class MembershipOracle {
 public:
  explicit MembershipOracle(const FilteredComplex& c);
  ~MembershipOracle();
  MembershipOracle(MembershipOracle&&) noexcept;

  bool in_image(const Rational& threshold, const ChainClass& alpha);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Persistence-style left-to-right column reduction of the boundary matrix in
/// action order (ties by stable input order), over a field. Provides minimal
/// max-action representatives and an adapted homology basis: for classes
/// written in this basis, ell of a combination is the max of the ell's over
/// its support.
class FieldReduction {
 public:
  explicit FieldReduction(const FilteredComplex& c);
  ~FieldReduction();
  FieldReduction(FieldReduction&&) noexcept;

  /// Max action over the support of the minimal representative of [alpha];
  /// nullopt when alpha is a boundary.
  std::optional<Rational> minimal_max_action(const ChainClass& alpha) const;
  std::vector<ChainClass> homology_basis(int degree) const;
  const FilteredComplex& complex() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace filtspec
