#include "filtspec/props.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"

namespace filtspec::props {

namespace {

SpectralValue sv_sum(const SpectralValue& a, const SpectralValue& b) {
  if (a.is_minus_infinity() || b.is_minus_infinity()) return SpectralValue::minus_infinity();
  if (a.is_plus_infinity() || b.is_plus_infinity()) return SpectralValue::plus_infinity();
  return SpectralValue::finite(a.value() + b.value());
}

std::string class_label(const ChainClass& cls) {
  if (cls.is_zero()) return "0";
  std::string out;
  for (const auto& [gen, coeff] : cls.support()) {
    if (!out.empty()) out += "+";
    out += coeff.to_string() + "." + cls.complex().generator(gen).name;
  }
  return out;
}

// Runs one checker per instance (possibly in parallel) and aggregates the
// violations in input order.
template <class Check>
PropertyReport run_instances(std::string property, std::size_t n, Exec mode, Check&& check) {
  PropertyReport report;
  report.property = std::move(property);
  report.instances = static_cast<int>(n);
  std::vector<std::vector<PropertyReport::Entry>> slots(n);
  parallel_for(n, mode, [&](std::size_t i) { slots[i] = check(i); });
  for (auto& s : slots)
    for (auto& e : s) report.violations.push_back(std::move(e));
  return report;
}

}  // namespace

std::string PropertyReport::to_string() const {
  std::ostringstream os;
  if (ok()) {
    os << "pass " << property << " instances=" << instances;
  } else {
    os << "FAIL " << property << " instances=" << instances
       << " violations=" << violations.size();
    for (const auto& v : violations)
      os << "\n  " << v.inputs << " :: lhs=" << v.lhs << " rhs=" << v.rhs;
  }
  return os.str();
}

PropertyReport check_finiteness(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                                Exec mode) {
  return run_instances("finiteness", classes.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    const ChainClass& cls = classes[i];
    SpectralValue ell = spectral_invariant(c, cls);
    bool bounding;
    if (c.ring().is_novikov()) {
      auto w = c.window().value_or(std::pair<int, int>{0, 0});
      int lo = w.first, hi = w.second;
      for (const auto& [gen, coeff] : cls.support()) {
        (void)gen;
        for (const auto& term : coeff.terms()) {
          lo = std::min(lo, term.power);
          hi = std::max(hi, term.power);
        }
      }
      FilteredComplex mono = materialize_window(c, lo, hi);
      std::vector<std::pair<int, Coefficient>> support;
      for (const auto& [gen, coeff] : cls.support())
        for (const auto& term : coeff.terms()) {
          auto idx = mono.find(c.generator(gen).name + "@" + std::to_string(term.power));
          support.push_back({*idx, Coefficient::from_rational(mono.ring(), term.scalar)});
        }
      bounding = is_boundary(mono, ChainClass(mono, cls.degree(), std::move(support)));
    } else {
      bounding = is_boundary(c, cls);
    }
    if (ell.is_minus_infinity() != bounding)
      out.push_back({class_label(cls), ell.to_string(), bounding ? "boundary" : "non-boundary"});
    return out;
  });
}

PropertyReport check_spectrality(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                                 Exec mode) {
  ActionSpectrum spectrum = action_spectrum(c);
  if (c.ring().is_novikov()) {
    // widen the window to cover the class powers
    auto w = c.window().value_or(std::pair<int, int>{0, 0});
    int lo = w.first, hi = w.second;
    for (const auto& cls : classes)
      for (const auto& [gen, coeff] : cls.support()) {
        (void)gen;
        for (const auto& term : coeff.terms()) {
          lo = std::min(lo, term.power);
          hi = std::max(hi, term.power);
        }
      }
    FilteredComplex widened = c;
    widened.set_window(lo, hi);
    spectrum = action_spectrum(widened);
  }
  return run_instances("spectrality", classes.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    SpectralValue ell = spectral_invariant(c, classes[i]);
    if (ell.is_finite() && !spectrum.contains(ell.value()))
      out.push_back({class_label(classes[i]), ell.to_string(), "Spec = " + spectrum.to_string()});
    return out;
  });
}

PropertyReport check_continuation(const FilteredMap& f, const std::vector<ChainClass>& classes,
                                  Exec mode) {
  return run_instances("continuation", classes.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    SpectralValue lhs = spectral_invariant(f.target(), f.apply(classes[i]));
    SpectralValue rhs = spectral_invariant(f.source(), classes[i]).plus(f.shift());
    if (!(lhs <= rhs)) out.push_back({class_label(classes[i]), lhs.to_string(), rhs.to_string()});
    return out;
  });
}

namespace {

PropertyReport triangle_like(const std::string& property, const ProductData& p,
                             const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                             Exec mode) {
  {
    auto problems = verify_product(p);
    if (!problems.empty()) {
      PropertyReport report;
      report.property = property;
      report.instances = static_cast<int>(pairs.size());
      for (const auto& msg : problems) report.violations.push_back({"product-data", msg, ""});
      return report;
    }
  }
  PropertyReport report = run_instances(property, pairs.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    const auto& [a, b] = pairs[i];
    SpectralValue lhs = spectral_invariant(*p.target, apply_product(p, a, b));
    SpectralValue rhs = sv_sum(spectral_invariant(*p.factor1, a), spectral_invariant(*p.factor2, b))
                            .plus(p.slack);
    if (!(lhs <= rhs))
      out.push_back({"(" + class_label(a) + ", " + class_label(b) + ")", lhs.to_string(),
                     rhs.to_string()});
    return out;
  });

  if (p.unit) {
    ChainClass u = unit_class(p);
    SpectralValue ell_u = spectral_invariant(*p.factor1, u);
    // Non-negativity corollary from u*u = u (only meaningful when the unit
    // multiplies classes of its own complex)
    if (p.factor1 == p.factor2) {
      ++report.instances;
      SpectralValue bound = SpectralValue::finite(-p.slack);
      if (!(bound <= ell_u))
        report.violations.push_back({"corollary non-negativity", ell_u.to_string(),
                                     ">= " + bound.to_string()});
    }
    // Maximum corollary: ell(u * a) <= ell(u) + ell(a) + slack, with u acting
    // as the declared unit on every supplied second factor
    for (const auto& [a, b] : pairs) {
      (void)a;
      ++report.instances;
      SpectralValue lhs = spectral_invariant(*p.target, apply_product(p, u, b));
      SpectralValue rhs = sv_sum(ell_u, spectral_invariant(*p.factor2, b)).plus(p.slack);
      if (!(lhs <= rhs))
        report.violations.push_back({"corollary maximum (" + class_label(b) + ")",
                                     lhs.to_string(), rhs.to_string()});
      if (p.factor2 == p.target) {
        ChainClass ub = apply_product(p, u, b);
        if (!(ub == b))
          report.violations.push_back({"unit-law (" + class_label(b) + ")", class_label(ub),
                                       class_label(b)});
      }
    }
  }
  return report;
}

}  // namespace

PropertyReport check_triangle(const ProductData& p,
                              const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                              Exec mode) {
  return triangle_like("triangle", p, pairs, mode);
}

PropertyReport check_module_structure(const ModuleActionData& m,
                                      const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                                      Exec mode) {
  return triangle_like("module-structure", m, pairs, mode);
}

std::vector<ChainClass> basis_classes(const FilteredComplex& c) {
  std::vector<ChainClass> out;
  if (c.size() == 0) return out;
  int lo = c.generator(0).degree, hi = lo;
  for (int i = 0; i < c.size(); ++i) {
    lo = std::min(lo, c.generator(i).degree);
    hi = std::max(hi, c.generator(i).degree);
  }
  if (c.ring().is_field()) {
    FieldReduction red(c);
    for (int d = lo; d <= hi; ++d)
      for (auto& cls : red.homology_basis(d)) out.push_back(std::move(cls));
    return out;
  }
  for (int d = lo; d <= hi; ++d) {
    HomologyBasis basis = homology(c, d);
    for (auto& cls : basis.free_part) out.push_back(std::move(cls));
    for (auto& [cls, order] : basis.torsion_part) {
      (void)order;
      out.push_back(std::move(cls));
    }
  }
  return out;
}

PropertyReport check_duality(const FilteredComplex& c, Exec mode) {
  FilteredComplex dual = dualize(c);
  bool field = c.ring().is_field();
  unsigned p = c.ring().kind() == RingKind::prime_field ? c.ring().prime() : 0;

  std::vector<ChainClass> hom = basis_classes(c);
  std::vector<ChainClass> cohom = basis_classes(dual);
  std::vector<SpectralValue> hom_ell(hom.size(), SpectralValue::minus_infinity());
  parallel_for(hom.size(), mode,
               [&](std::size_t i) { hom_ell[i] = spectral_invariant(c, hom[i]); });

  auto pairing_nonzero = [&](const ChainClass& alpha_dual, const ChainClass& beta) {
    // <alpha-dual, beta> = sum over generators of the coefficient product;
    // dual generator order matches the primal one
    Rational acc(0);
    std::map<int, Rational> dual_coeffs;
    for (const auto& [gen, coeff] : alpha_dual.support())
      dual_coeffs[gen] = coeff.rational_value();
    for (const auto& [gen, coeff] : beta.support()) {
      auto it = dual_coeffs.find(gen);
      if (it != dual_coeffs.end()) acc += it->second * coeff.rational_value();
    }
    if (p) return numerator(acc) % p != 0;
    return acc != 0;
  };

  return run_instances("duality", cohom.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    const ChainClass& alpha_dual = cohom[i];
    SpectralValue lhs = cohomological_invariant(alpha_dual);
    SpectralValue inf = SpectralValue::plus_infinity();
    for (std::size_t j = 0; j < hom.size(); ++j)
      if (pairing_nonzero(alpha_dual, hom[j]) && hom_ell[j] < inf) inf = hom_ell[j];
    if (!(lhs <= inf))
      out.push_back({class_label(alpha_dual) + " (inequality)", lhs.to_string(), inf.to_string()});
    else if (field && lhs != inf)
      out.push_back({class_label(alpha_dual) + " (field equality)", lhs.to_string(),
                     inf.to_string()});
    return out;
  });
}

PropertyReport check_novikov_action(const FilteredComplex& lift,
                                    const std::vector<ChainClass>& classes,
                                    const std::vector<int>& powers, Exec mode) {
  if (!lift.ring().is_novikov())
    throw unsupported_ring_error("check_novikov_action: complex is not over a Novikov ring");
  const Rational& area = lift.ring().period_action();
  std::vector<std::pair<const ChainClass*, int>> instances;
  for (const auto& cls : classes)
    for (int k : powers) instances.push_back({&cls, k});
  return run_instances("novikov-action", instances.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    const auto& [cls, k] = instances[i];
    Coefficient tk = Coefficient::monomial(lift.ring(), k, Rational(1));
    SpectralValue lhs = spectral_invariant(lift, scale_class(tk, *cls));
    SpectralValue rhs = spectral_invariant(lift, *cls).plus(Rational(-k) * area);
    if (lhs != rhs)
      out.push_back({"t^" + std::to_string(k) + " . " + class_label(*cls), lhs.to_string(),
                     rhs.to_string()});
    return out;
  });
}

ChainClass tensor_class(const FilteredComplex& product, const ChainClass& a, const ChainClass& b) {
  std::vector<std::pair<int, Coefficient>> support;
  for (const auto& [i, ci] : a.support())
    for (const auto& [j, cj] : b.support()) {
      std::string name = "(" + a.complex().generator(i).name + "," +
                         b.complex().generator(j).name + ")";
      auto idx = product.find(name);
      if (!idx) throw std::invalid_argument("tensor_class: missing generator " + name);
      support.push_back({*idx, mul(ci, cj)});
    }
  int degree = a.degree() + b.degree();
  return ChainClass(product, degree, std::move(support));
}

PropertyReport check_tensor(const FilteredComplex& c1, const FilteredComplex& c2,
                            const std::vector<std::pair<ChainClass, ChainClass>>& pairs,
                            Exec mode) {
  FilteredComplex product = tensor(c1, c2);
  bool field = product.ring().is_field();
  return run_instances("tensor", pairs.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    const auto& [a, b] = pairs[i];
    SpectralValue lhs = spectral_invariant(product, tensor_class(product, a, b));
    SpectralValue rhs = sv_sum(spectral_invariant(c1, a), spectral_invariant(c2, b));
    bool bad = field ? (lhs != rhs) : !(lhs <= rhs);
    if (bad)
      out.push_back({"(" + class_label(a) + ") (x) (" + class_label(b) + ")", lhs.to_string(),
                     rhs.to_string()});
    return out;
  });
}

PropertyReport check_diagonal(const FilteredComplex& c, const std::vector<ChainClass>& classes,
                              Exec mode) {
  FilteredComplex repackaged = diagonal_repackage(c);
  return run_instances("diagonal", classes.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    // repackaging preserves generator order, so supports transport by index
    std::vector<std::pair<int, Coefficient>> support = classes[i].support();
    ChainClass image(repackaged, classes[i].degree(), std::move(support));
    SpectralValue lhs = spectral_invariant(c, classes[i]);
    SpectralValue rhs = spectral_invariant(repackaged, image);
    if (lhs != rhs) out.push_back({class_label(classes[i]), lhs.to_string(), rhs.to_string()});
    return out;
  });
}

PropertyReport check_diagonal(const FilteredComplex& c, Exec mode) {
  return check_diagonal(c, basis_classes(c), mode);
}

namespace {

void verify_homotopy_identity(const FilteredComplex& cx, const FilteredMap& first,
                              const FilteredMap& second, const SparseLinearMap& homotopy,
                              const char* side) {
  // d h + h d = second . first - id on cx
  if (homotopy.src != &cx || homotopy.dst != &cx)
    throw invalid_witness_error(std::string("conjugation: homotopy witness is not an endomap of the ") +
                                side + " complex");
  for (int g = 0; g < cx.size(); ++g) {
    std::vector<Coefficient> unit(cx.size(), Coefficient::zero(cx.ring()));
    unit[g] = Coefficient::one(cx.ring());
    auto lhs = cx.boundary_of(homotopy.apply_dense(unit));
    auto hd = homotopy.apply_dense(cx.boundary_of(unit));
    for (int i = 0; i < cx.size(); ++i) lhs[i] = add(lhs[i], hd[i]);
    auto rhs = second.apply_dense(first.apply_dense(unit));
    rhs[g] = sub(rhs[g], Coefficient::one(cx.ring()));
    for (int i = 0; i < cx.size(); ++i)
      if (!sub(lhs[i], rhs[i]).is_zero())
        throw invalid_witness_error(std::string("conjugation: homotopy identity fails on the ") +
                                    side + " complex at " + cx.generator(g).name);
  }
}

}  // namespace

PropertyReport check_conjugation_stability(const FilteredMap& f, const FilteredMap& g,
                                           const SparseLinearMap& homotopy_src,
                                           const SparseLinearMap& homotopy_tgt,
                                           const std::vector<ChainClass>& classes, Exec mode) {
  if (&f.source() != &g.target() || &f.target() != &g.source())
    throw std::invalid_argument("check_conjugation_stability: f and g are not a round trip");
  verify_homotopy_identity(f.source(), f, g, homotopy_src, "source");
  verify_homotopy_identity(f.target(), g, f, homotopy_tgt, "target");

  Rational bound = f.shift() + g.shift();
  return run_instances("conjugation-stability", classes.size(), mode, [&](std::size_t i) {
    std::vector<PropertyReport::Entry> out;
    SpectralValue a = spectral_invariant(f.source(), classes[i]);
    SpectralValue b = spectral_invariant(f.target(), f.apply(classes[i]));
    bool bad;
    std::string delta;
    if (a.is_finite() != b.is_finite()) {
      bad = true;
      delta = a.to_string() + " vs " + b.to_string();
    } else if (!a.is_finite()) {
      bad = false;  // both -inf: the classes vanish on both sides
    } else {
      Rational d = a.value() - b.value();
      if (d < 0) d = -d;
      bad = d > bound;
      delta = format_rational(d);
    }
    if (bad)
      out.push_back({class_label(classes[i]), "|delta|=" + delta,
                     "<= " + format_rational(bound)});
    return out;
  });
}

}  // namespace filtspec::props
