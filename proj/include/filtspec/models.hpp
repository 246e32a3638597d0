#pragma once

#include <optional>
#include <vector>

#include "filtspec/complex.hpp"

namespace filtspec {

inline constexpr const char* kPeriodicOrbitTag = "periodic-orbit-model";
inline constexpr const char* kLagrangianTag = "lagrangian-model";
inline constexpr const char* kFloerModelTag = "floer-model";

/// Morse model of S^1: min (deg 0), max (deg 1), zero boundary (the two
/// gradient lines cancel over Z, and add to zero in characteristic 2).
FilteredComplex morse_circle(const Rational& v_min, const Rational& v_max, const Ring& ring);
FilteredComplex morse_sphere(const Rational& v_min, const Rational& v_max, const Ring& ring);
FilteredComplex morse_torus(const Rational& v0, const Rational& v1a, const Rational& v1b,
                            const Rational& v2, const Ring& ring);
/// RP^2 with the integral boundary d c2 = 2 c1 (zero over F2); torsion model.
FilteredComplex morse_rp2(const Rational& v0, const Rational& v1, const Rational& v2,
                          const Ring& ring);
/// Interval with two minima: d a = b - b'; handy nonzero-boundary model.
FilteredComplex morse_interval(const Rational& v_max, const Rational& v_min1,
                               const Rational& v_min2, const Ring& ring);

struct ProductEntry {
  int g1, g2, g_out;
  Coefficient coeff;
};

/// Chain-level product table (a supplied operation, not computed from
/// geometry) with two certifiable identities: the Leibniz rule and
/// action(g_out) <= action(g1) + action(g2) + slack on every entry.
/// Also doubles as module-action data with factor1 the ambient complex;
/// degree_shift then records the ambient grading offset.
struct ProductData {
  const FilteredComplex* factor1 = nullptr;
  const FilteredComplex* factor2 = nullptr;
  const FilteredComplex* target = nullptr;
  std::vector<ProductEntry> entries;
  Rational slack;                 // nonnegative
  std::optional<int> unit;        // generator index in factor1 whose class is the unit
  std::optional<int> degree_shift;
};

using ModuleActionData = ProductData;

/// Returns the list of violated identities (empty means the data is valid).
std::vector<std::string> verify_product(const ProductData& p);

/// Bilinear application of the table to a pair of cycles.
ChainClass apply_product(const ProductData& p, const ChainClass& a, const ChainClass& b);
ChainClass unit_class(const ProductData& p);

/// The intersection product on a torus model (one generator in degrees 0 and
/// 2, two in degree 1): unit is the top class, the two saddles multiply to
/// +-point, slack 0. Throws invalid_model_error when the action values cannot
/// support a slack-0 table.
ProductData torus_intersection_product(const FilteredComplex& torus);

/// Novikov lift tagged for valuation queries.
FilteredComplex floer_model(const FilteredComplex& base, int period_degree,
                            const Rational& period_action, int k_min, int k_max);

/// Tags a complex as the Hamiltonian (ambient) side of the diagonal
/// correspondence; diagonal_repackage consumes it.
FilteredComplex periodic_orbit_model(const FilteredComplex& base);

}  // namespace filtspec
