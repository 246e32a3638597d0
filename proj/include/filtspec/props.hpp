#pragma once

#include <string>
#include <vector>

#include "filtspec/complex.hpp"
#include "filtspec/models.hpp"
#include "filtspec/parallel.hpp"
#include "filtspec/spectral.hpp"

namespace filtspec::props {

struct PropertyReport {
  std::string property;
  int instances = 0;
  struct Entry {
    std::string inputs;
    std::string lhs;
    std::string rhs;
  };
  std::vector<Entry> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// ell = -inf exactly for boundary classes.
PropertyReport check_finiteness(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                                Exec mode = Exec::serial);

/// Every finite ell lies in the action spectrum.
PropertyReport check_spectrality(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                                 Exec mode = Exec::serial);

/// ell_target(f alpha) <= ell_source(alpha) + f.shift.
PropertyReport check_continuation(const FilteredMap& f, const std::vector<ChainClass>& classes,
                                  Exec mode = Exec::serial);

/// Re-verifies the product identities, then ell(a*b) <= ell(a) + ell(b) + slack
/// for every pair. When a unit u is declared, also derives the corollaries:
/// ell([u]) >= -slack, and ell(u*a) <= ell([u]) + ell(a) + slack with u*a = a.
PropertyReport check_triangle(const ProductData& p,
                              const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                              Exec mode = Exec::serial);

/// Same mechanism with the ambient complex's invariant playing c(a; .).
PropertyReport check_module_structure(const ModuleActionData& m,
                                      const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                                      Exec mode = Exec::serial);

/// ell-dual(alpha-dual) <= inf { ell(beta) : <alpha-dual, beta> != 0 }, with
/// equality over fields; scanned over the (adapted) homology bases of c and
/// its dual in every degree.
PropertyReport check_duality(const FilteredComplex& c, Exec mode = Exec::serial);

/// ell(t^k alpha) = ell(alpha) - k * period_action.
PropertyReport check_novikov_action(const FilteredComplex& lift,
                                    const std::vector<ChainClass>& classes,
                                    const std::vector<int>& powers, Exec mode = Exec::serial);

/// ell(a (x) b) <= ell(a) + ell(b), with equality over fields.
PropertyReport check_tensor(const FilteredComplex& c1, const FilteredComplex& c2,
                            const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                            Exec mode = Exec::serial);

/// Spectral invariants agree between c and diagonal_repackage(c) on a
/// homology basis (or on explicitly supplied classes, e.g. for Novikov
/// complexes whose bases are windowed).
PropertyReport check_diagonal(const FilteredComplex& c, Exec mode = Exec::serial);
PropertyReport check_diagonal(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                              Exec mode = Exec::serial);

/// Verifies the supplied homotopy witnesses (throwing invalid_witness_error if
/// they fail), then |ell_src(alpha) - ell_tgt(f alpha)| <= f.shift + g.shift.
PropertyReport check_conjugation_stability(const FilteredMap& f, const FilteredMap& g,
                                           const SparseLinearMap& homotopy_src,
                                           const SparseLinearMap& homotopy_tgt,
                                           const std::vector<ChainClass>& classes,
                                           Exec mode = Exec::serial);

/// The Koszul tensor cycle a (x) b on tensor(c1, c2).
ChainClass tensor_class(const FilteredComplex& product, const ChainClass& a, const ChainClass& b);

/// Homology basis classes in every degree (free + torsion representatives).
std::vector<ChainClass> basis_classes(const FilteredComplex& c);

}  // namespace filtspec::props
