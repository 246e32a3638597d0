#pragma once

#include <string>
#include <vector>

#include "filtspec/complex.hpp"
#include "filtspec/parallel.hpp"

namespace filtspec {

/// An exact spectral value: a rational, or one of the explicit sentinels
/// -inf (homological Finiteness convention) / +inf (cohomological mirror).
class SpectralValue {
 public:
  static SpectralValue minus_infinity() { return SpectralValue(Kind::minus_inf); }
  static SpectralValue plus_infinity() { return SpectralValue(Kind::plus_inf); }
  static SpectralValue finite(Rational v) {
    SpectralValue s(Kind::finite);
    s.value_ = std::move(v);
    return s;
  }

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_minus_infinity() const { return kind_ == Kind::minus_inf; }
  bool is_plus_infinity() const { return kind_ == Kind::plus_inf; }
  const Rational& value() const;

  SpectralValue negated() const;
  /// Adds a rational shift; infinities absorb it.
  SpectralValue plus(const Rational& s) const;
  /// Division by a positive rational; infinities absorb it.
  SpectralValue divided_by(const Rational& s) const;

  bool operator==(const SpectralValue& o) const;
  bool operator!=(const SpectralValue& o) const { return !(*this == o); }
  bool operator<(const SpectralValue& o) const;
  bool operator<=(const SpectralValue& o) const { return *this < o || *this == o; }

  std::string to_string() const;

 private:
  enum class Kind { minus_inf, finite, plus_inf };
  explicit SpectralValue(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

struct ActionSpectrum {
  std::vector<Rational> values;  // sorted, distinct
  bool contains(const Rational& v) const;
  std::string to_string() const;
};

/// The set of (windowed, Novikov-weighted) generator actions.
ActionSpectrum action_spectrum(const FilteredComplex& c);

/// Window-stabilization diagnostics for Novikov computations.
struct NovikovStats {
  int window_growths = 0;
};

/// ell(alpha) = inf { a : alpha in im(H(V^a) -> H(V)) }, exactly.
/// Fields: persistence-style column reduction. Z: binary scan over the action
/// spectrum via cached sublevel membership. Novikov: windowed computation,
/// doubling the window until two consecutive answers agree.
SpectralValue spectral_invariant(const FilteredComplex& c, const ChainClass& alpha);
SpectralValue spectral_invariant(const FilteredComplex& c, const ChainClass& alpha,
                                 NovikovStats* stats);

/// Reference semantics: the membership scan, also available over fields.
/// The fast path is certified against this on the golden corpus.
SpectralValue spectral_invariant_by_scan(const FilteredComplex& c, const ChainClass& alpha);

/// ell-dual of a cocycle class, given as a class on the dualize() output:
/// the sup over quotient-kernel thresholds equals -ell on the opposite
/// complex. The zero class maps to +inf.
SpectralValue cohomological_invariant(const ChainClass& alpha_dual);

/// Quantum valuation nu = ell / period_action (Finiteness gives nu(0) = -inf).
SpectralValue valuation(const FilteredComplex& c, const ChainClass& alpha,
                        const Rational& period_action);

struct OracleLimits {
  long long cap = 531441;  // 3^12 candidate representatives
};

/// Independent oracle over F_p: enumerates every representative alpha + dx
/// and minimizes the max action over supports. OpenMP-parallel reduction.
SpectralValue brute_force_invariant(const FilteredComplex& c, const ChainClass& alpha,
                                    const OracleLimits& limits = {});
/// Plain-loop reference implementation of the same enumeration.
SpectralValue brute_force_invariant_serial(const FilteredComplex& c, const ChainClass& alpha,
                                           const OracleLimits& limits = {});

struct SpectralJob {
  const FilteredComplex* complex;
  const ChainClass* cls;
};

/// Evaluates independent (complex, class) pairs; parallel results must equal
/// serial evaluation (tested).
std::vector<SpectralValue> spectral_batch(const std::vector<SpectralJob>& jobs, Exec mode);

}  // namespace filtspec
