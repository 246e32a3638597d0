#include "filtspec/spectral.hpp"

#include <algorithm>
#include <set>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"
#include "linalg.hpp"

namespace filtspec {

const Rational& SpectralValue::value() const {
  if (!is_finite()) throw std::logic_error("SpectralValue::value on a sentinel");
  return value_;
}

SpectralValue SpectralValue::negated() const {
  switch (kind_) {
    case Kind::minus_inf: return plus_infinity();
    case Kind::plus_inf: return minus_infinity();
    case Kind::finite: return finite(-value_);
  }
  throw std::logic_error("SpectralValue::negated");
}

SpectralValue SpectralValue::plus(const Rational& s) const {
  return is_finite() ? finite(value_ + s) : *this;
}

SpectralValue SpectralValue::divided_by(const Rational& s) const {
  if (s <= 0) throw std::invalid_argument("SpectralValue::divided_by: divisor must be positive");
  return is_finite() ? finite(value_ / s) : *this;
}

bool SpectralValue::operator==(const SpectralValue& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::finite || value_ == o.value_;
}

bool SpectralValue::operator<(const SpectralValue& o) const {
  auto level = [](Kind k) { return k == Kind::minus_inf ? 0 : (k == Kind::finite ? 1 : 2); };
  if (level(kind_) != level(o.kind_)) return level(kind_) < level(o.kind_);
  return kind_ == Kind::finite && value_ < o.value_;
}

std::string SpectralValue::to_string() const {
  switch (kind_) {
    case Kind::minus_inf: return "-inf";
    case Kind::plus_inf: return "+inf";
    case Kind::finite: return format_rational(value_);
  }
  return "?";
}

bool ActionSpectrum::contains(const Rational& v) const {
  return std::binary_search(values.begin(), values.end(), v);
}

std::string ActionSpectrum::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += " ";
    out += format_rational(values[i]);
  }
  return out;
}

ActionSpectrum action_spectrum(const FilteredComplex& c) {
  std::set<Rational> acc;
  if (c.ring().is_novikov()) {
    auto w = c.window().value_or(std::pair<int, int>{0, 0});
    const Rational& area = c.ring().period_action();
    for (int i = 0; i < c.size(); ++i)
      for (int k = w.first; k <= w.second; ++k)
        acc.insert(c.generator(i).action - Rational(k) * area);
  } else {
    for (int i = 0; i < c.size(); ++i) acc.insert(c.generator(i).action);
  }
  ActionSpectrum out;
  out.values.assign(acc.begin(), acc.end());
  return out;
}

namespace {

SpectralValue scan_base(const FilteredComplex& c, const ChainClass& alpha) {
  if (alpha.is_zero()) return SpectralValue::minus_infinity();
  auto spectrum = action_spectrum(c).values;
  int m = static_cast<int>(spectrum.size());
  MembershipOracle oracle(c);
  auto member = [&](int j) {  // membership on the threshold block (s_{j-1}, s_j]
    if (j > m) return true;
    return oracle.in_image(spectrum[j - 1], alpha);
  };
  // binary search for the first solvable block; membership is monotone in j
  int lo = 1, hi = m + 1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (member(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == 1) return SpectralValue::minus_infinity();
  return SpectralValue::finite(spectrum[lo - 2]);
}

// Expands a class on a Novikov complex into the windowed monomial complex.
ChainClass expand_class(const FilteredComplex& novikov_cx, const ChainClass& alpha,
                        const FilteredComplex& mono, int k_min) {
  std::vector<std::pair<int, Coefficient>> support;
  for (const auto& [gen, coeff] : alpha.support())
    for (const auto& term : coeff.terms()) {
      std::string name = novikov_cx.generator(gen).name + "@" + std::to_string(term.power);
      auto idx = mono.find(name);
      if (!idx) throw window_error("expand_class: class power outside the window");
      support.push_back({*idx, Coefficient::from_rational(mono.ring(), term.scalar)});
    }
  (void)k_min;
  return ChainClass(mono, alpha.degree(), std::move(support));
}

template <class Eval>
SpectralValue windowed_novikov(const FilteredComplex& c, const ChainClass& alpha,
                               NovikovStats* stats, Eval eval) {
  if (alpha.is_zero()) return SpectralValue::minus_infinity();
  auto w = c.window().value_or(std::pair<int, int>{0, 0});
  int lo = w.first, hi = w.second;
  for (const auto& [gen, coeff] : alpha.support()) {
    (void)gen;
    for (const auto& term : coeff.terms()) {
      lo = std::min(lo, term.power);
      hi = std::max(hi, term.power);
    }
  }
  std::optional<SpectralValue> previous;
  for (int iter = 0; iter < 9; ++iter) {
    FilteredComplex mono = materialize_window(c, lo, hi);
    ChainClass expanded = expand_class(c, alpha, mono, lo);
    SpectralValue value = eval(mono, expanded);
    if (previous && *previous == value) return value;
    previous = value;
    if (stats) stats->window_growths = iter + 1;
    int pad = std::max(1, (hi - lo + 1) / 2);
    lo -= pad;
    hi += pad;
  }
  throw window_error("spectral_invariant: Novikov window did not stabilize after 8 doublings");
}

}  // namespace

SpectralValue spectral_invariant(const FilteredComplex& c, const ChainClass& alpha,
                                 NovikovStats* stats) {
  if (&alpha.complex() != &c)
    throw std::invalid_argument("spectral_invariant: class/complex mismatch");
  if (alpha.is_zero()) return SpectralValue::minus_infinity();
  if (c.ring().is_novikov())
    return windowed_novikov(c, alpha, stats,
                            [](const FilteredComplex& mono, const ChainClass& a) {
                              return spectral_invariant(mono, a);
                            });
  if (c.ring().is_field()) {
    FieldReduction reduction(c);
    auto r = reduction.minimal_max_action(alpha);
    return r ? SpectralValue::finite(*r) : SpectralValue::minus_infinity();
  }
  return scan_base(c, alpha);
}

SpectralValue spectral_invariant(const FilteredComplex& c, const ChainClass& alpha) {
  return spectral_invariant(c, alpha, nullptr);
}

SpectralValue spectral_invariant_by_scan(const FilteredComplex& c, const ChainClass& alpha) {
  if (&alpha.complex() != &c)
    throw std::invalid_argument("spectral_invariant_by_scan: class/complex mismatch");
  if (c.ring().is_novikov())
    return windowed_novikov(c, alpha, nullptr,
                            [](const FilteredComplex& mono, const ChainClass& a) {
                              return spectral_invariant_by_scan(mono, a);
                            });
  return scan_base(c, alpha);
}

SpectralValue cohomological_invariant(const ChainClass& alpha_dual) {
  return spectral_invariant(alpha_dual.complex(), alpha_dual).negated();
}

SpectralValue valuation(const FilteredComplex& c, const ChainClass& alpha,
                        const Rational& period_action) {
  if (period_action <= 0) throw std::invalid_argument("valuation: period must be positive");
  return spectral_invariant(c, alpha).divided_by(period_action);
}

namespace {

struct OracleSetup {
  unsigned p = 0;
  long long total = 0;                       // p^m candidates
  std::vector<int> support_rows;             // generators of the class degree
  std::vector<Rational> base;                // alpha restricted to support_rows
  std::vector<std::vector<Rational>> cols;   // boundary columns on support_rows
};

OracleSetup oracle_setup(const FilteredComplex& c, const ChainClass& alpha,
                         const OracleLimits& limits) {
  if (c.ring().kind() != RingKind::prime_field)
    throw unsupported_ring_error("brute_force_invariant: requires a prime field");
  if (&alpha.complex() != &c)
    throw std::invalid_argument("brute_force_invariant: class/complex mismatch");
  OracleSetup s;
  s.p = c.ring().prime();
  int degree = alpha.degree();
  for (int i = 0; i < c.size(); ++i)
    if (c.generator(i).degree == degree) s.support_rows.push_back(i);
  std::vector<int> up;
  for (int i = 0; i < c.size(); ++i)
    if (c.generator(i).degree == degree + 1) up.push_back(i);

  Int total = 1;
  for (std::size_t i = 0; i < up.size(); ++i) {
    total *= s.p;
    if (total > limits.cap)
      throw enumeration_cap_error("brute_force_invariant: p^dim exceeds the enumeration cap");
  }
  s.total = total.convert_to<long long>();

  std::map<int, int> row_pos;
  for (std::size_t i = 0; i < s.support_rows.size(); ++i)
    row_pos[s.support_rows[i]] = static_cast<int>(i);
  auto dense = alpha.dense();
  for (int g : s.support_rows) s.base.push_back(dense[g].rational_value());
  for (int src : up) {
    std::vector<Rational> col(s.support_rows.size(), Rational(0));
    for (const auto& [dst, coeff] : c.column(src)) {
      auto it = row_pos.find(dst);
      if (it != row_pos.end()) col[it->second] = coeff.rational_value();
    }
    s.cols.push_back(std::move(col));
  }
  return s;
}

// max action over the support of (base - sum digit_k * col_k), or -inf
SpectralValue candidate_value(const FilteredComplex& c, const OracleSetup& s, long long index) {
  std::vector<Rational> z = s.base;
  long long rest = index;
  for (const auto& col : s.cols) {
    long long digit = rest % s.p;
    rest /= s.p;
    if (digit == 0) continue;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (col[i] != 0) z[i] -= Rational(digit) * col[i];
  }
  SpectralValue best = SpectralValue::minus_infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (numerator(z[i]) % s.p == 0) continue;
    const Rational& a = c.generator(s.support_rows[i]).action;
    SpectralValue v = SpectralValue::finite(a);
    if (best < v) best = v;
  }
  return best;
}

}  // namespace

SpectralValue brute_force_invariant_serial(const FilteredComplex& c, const ChainClass& alpha,
                                           const OracleLimits& limits) {
  OracleSetup s = oracle_setup(c, alpha, limits);
  SpectralValue best = SpectralValue::plus_infinity();
  for (long long index = 0; index < s.total; ++index) {
    SpectralValue v = candidate_value(c, s, index);
    if (v < best) best = v;
    if (best.is_minus_infinity()) break;
  }
  return best;
}

SpectralValue brute_force_invariant(const FilteredComplex& c, const ChainClass& alpha,
                                    const OracleLimits& limits) {
  OracleSetup s = oracle_setup(c, alpha, limits);
  SpectralValue best = SpectralValue::plus_infinity();
#ifdef FILTSPEC_HAVE_OPENMP
#pragma omp parallel
  {
    SpectralValue local = SpectralValue::plus_infinity();
#pragma omp for schedule(static) nowait
    for (long long index = 0; index < s.total; ++index) {
      SpectralValue v = candidate_value(c, s, index);
      if (v < local) local = v;
    }
#pragma omp critical
    if (local < best) best = local;
  }
#else
  for (long long index = 0; index < s.total; ++index) {
    SpectralValue v = candidate_value(c, s, index);
    if (v < best) best = v;
  }
#endif
  return best;
}

std::vector<SpectralValue> spectral_batch(const std::vector<SpectralJob>& jobs, Exec mode) {
  std::vector<SpectralValue> out(jobs.size(), SpectralValue::minus_infinity());
  parallel_for(jobs.size(), mode,
               [&](std::size_t i) { out[i] = spectral_invariant(*jobs[i].complex, *jobs[i].cls); });
  return out;
}

}  // namespace filtspec
