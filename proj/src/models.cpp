#include "filtspec/models.hpp"

#include <map>
#include <sstream>

#include "filtspec/errors.hpp"

namespace filtspec {

namespace {
void require_increasing(std::initializer_list<std::pair<Rational, Rational>> pairs,
                        const char* who) {
  for (const auto& [lo, hi] : pairs)
    if (!(lo < hi)) throw invalid_model_error(std::string(who) + ": critical values must increase with the index");
}
}  // namespace

FilteredComplex morse_circle(const Rational& v_min, const Rational& v_max, const Ring& ring) {
  require_increasing({{v_min, v_max}}, "morse_circle");
  FilteredComplex c(ring);
  c.add_generator("min", 0, v_min);
  c.add_generator("max", 1, v_max);
  return c;
}

FilteredComplex morse_sphere(const Rational& v_min, const Rational& v_max, const Ring& ring) {
  require_increasing({{v_min, v_max}}, "morse_sphere");
  FilteredComplex c(ring);
  c.add_generator("min", 0, v_min);
  c.add_generator("max", 2, v_max);
  return c;
}

FilteredComplex morse_torus(const Rational& v0, const Rational& v1a, const Rational& v1b,
                            const Rational& v2, const Ring& ring) {
  require_increasing({{v0, v1a}, {v0, v1b}, {v1a, v2}, {v1b, v2}}, "morse_torus");
  FilteredComplex c(ring);
  c.add_generator("pt", 0, v0);
  c.add_generator("s1", 1, v1a);
  c.add_generator("s2", 1, v1b);
  c.add_generator("top", 2, v2);
  return c;
}

FilteredComplex morse_rp2(const Rational& v0, const Rational& v1, const Rational& v2,
                          const Ring& ring) {
  if (ring.kind() != RingKind::integers && !(ring.kind() == RingKind::prime_field && ring.prime() == 2))
    throw invalid_model_error("morse_rp2: supported over Z and F2 only");
  require_increasing({{v0, v1}, {v1, v2}}, "morse_rp2");
  FilteredComplex c(ring);
  c.add_generator("c0", 0, v0);
  c.add_generator("c1", 1, v1);
  c.add_generator("c2", 2, v2);
  // d c1 = 0 (two flow lines cancel); d c2 = 2 c1, which vanishes over F2
  c.add_boundary("c2", "c1", Coefficient::from_rational(ring, Rational(2)));
  return c;
}

FilteredComplex morse_interval(const Rational& v_max, const Rational& v_min1,
                               const Rational& v_min2, const Ring& ring) {
  if (!(v_min1 < v_max) || !(v_min2 < v_max))
    throw invalid_model_error("morse_interval: maximum must lie above both minima");
  FilteredComplex c(ring);
  c.add_generator("a", 1, v_max);
  c.add_generator("b", 0, v_min1);
  c.add_generator("b'", 0, v_min2);
  c.add_boundary("a", "b", Coefficient::one(ring));
  c.add_boundary("a", "b'", neg(Coefficient::one(ring)));
  return c;
}

std::vector<std::string> verify_product(const ProductData& p) {
  std::vector<std::string> problems;
  const FilteredComplex& f1 = *p.factor1;
  const FilteredComplex& f2 = *p.factor2;
  const FilteredComplex& target = *p.target;
  const Ring& ring = target.ring();
  if (f1.ring() != ring || f2.ring() != ring) {
    problems.push_back("ring mismatch between factors and target");
    return problems;
  }
  if (p.slack < 0) problems.push_back("slack is negative");

  std::map<std::pair<int, int>, std::vector<std::pair<int, Coefficient>>> table;
  for (const auto& e : p.entries) {
    if (e.g1 < 0 || e.g1 >= f1.size() || e.g2 < 0 || e.g2 >= f2.size() || e.g_out < 0 ||
        e.g_out >= target.size()) {
      problems.push_back("entry index out of range");
      return problems;
    }
    table[{e.g1, e.g2}].push_back({e.g_out, e.coeff});
  }

  const Rational& area = ring.period_action();
  for (const auto& e : p.entries)
    for (const auto& term : e.coeff.terms()) {
      Rational out_action = target.generator(e.g_out).action - Rational(term.power) * area;
      Rational bound = f1.generator(e.g1).action + f2.generator(e.g2).action + p.slack;
      if (out_action > bound) {
        std::ostringstream os;
        os << "filtration: " << f1.generator(e.g1).name << " * " << f2.generator(e.g2).name
           << " -> " << target.generator(e.g_out).name << " has action "
           << format_rational(out_action) << " > " << format_rational(bound);
        problems.push_back(os.str());
      }
    }

  // Leibniz: d(g1*g2) = dg1*g2 + (-1)^{deg g1} g1*dg2 for every pair
  auto product_of = [&](int g1, int g2) {
    std::vector<Coefficient> out(target.size(), Coefficient::zero(ring));
    auto it = table.find({g1, g2});
    if (it != table.end())
      for (const auto& [g_out, coeff] : it->second) out[g_out] = add(out[g_out], coeff);
    return out;
  };
  for (int g1 = 0; g1 < f1.size(); ++g1)
    for (int g2 = 0; g2 < f2.size(); ++g2) {
      std::vector<Coefficient> lhs = target.boundary_of(product_of(g1, g2));
      std::vector<Coefficient> rhs(target.size(), Coefficient::zero(ring));
      for (const auto& [h1, c1] : f1.column(g1)) {
        auto prod = product_of(h1, g2);
        for (int i = 0; i < target.size(); ++i)
          if (!prod[i].is_zero()) rhs[i] = add(rhs[i], mul(c1, prod[i]));
      }
      bool odd = f1.generator(g1).degree % 2 != 0;
      for (const auto& [h2, c2] : f2.column(g2)) {
        auto prod = product_of(g1, h2);
        Coefficient sign_c2 = odd ? neg(c2) : c2;
        for (int i = 0; i < target.size(); ++i)
          if (!prod[i].is_zero()) rhs[i] = add(rhs[i], mul(sign_c2, prod[i]));
      }
      for (int i = 0; i < target.size(); ++i)
        if (sub(lhs[i], rhs[i]).is_zero() == false) {
          std::ostringstream os;
          os << "leibniz: fails for (" << f1.generator(g1).name << ", " << f2.generator(g2).name
             << ") at " << target.generator(i).name;
          problems.push_back(os.str());
          break;
        }
    }

  if (p.unit && (*p.unit < 0 || *p.unit >= f1.size()))
    problems.push_back("unit index out of range");
  return problems;
}

ChainClass apply_product(const ProductData& p, const ChainClass& a, const ChainClass& b) {
  if (&a.complex() != p.factor1 || &b.complex() != p.factor2)
    throw std::invalid_argument("apply_product: class/complex mismatch");
  const FilteredComplex& target = *p.target;
  std::vector<Coefficient> out(target.size(), Coefficient::zero(target.ring()));
  std::map<std::pair<int, int>, std::vector<const ProductEntry*>> table;
  for (const auto& e : p.entries) table[{e.g1, e.g2}].push_back(&e);
  for (const auto& [g1, c1] : a.support())
    for (const auto& [g2, c2] : b.support()) {
      auto it = table.find({g1, g2});
      if (it == table.end()) continue;
      Coefficient factor = mul(c1, c2);
      for (const ProductEntry* e : it->second)
        out[e->g_out] = add(out[e->g_out], mul(factor, e->coeff));
    }
  int degree = 0;
  for (int i = 0; i < target.size(); ++i)
    if (!out[i].is_zero()) {
      degree = target.generator(i).degree;
      if (target.ring().is_novikov())
        degree -= out[i].terms().front().power * target.ring().period_degree();
      break;
    }
  return ChainClass::from_chain(target, degree, out);
}

ChainClass unit_class(const ProductData& p) {
  if (!p.unit) throw std::invalid_argument("unit_class: no unit declared");
  const FilteredComplex& f1 = *p.factor1;
  return ChainClass(f1, f1.generator(*p.unit).degree,
                    {{*p.unit, Coefficient::one(f1.ring())}});
}

ProductData torus_intersection_product(const FilteredComplex& torus) {
  std::vector<int> deg0, deg1, deg2;
  for (int i = 0; i < torus.size(); ++i) {
    switch (torus.generator(i).degree) {
      case 0: deg0.push_back(i); break;
      case 1: deg1.push_back(i); break;
      case 2: deg2.push_back(i); break;
      default: throw invalid_model_error("torus_intersection_product: unexpected degree");
    }
  }
  if (deg0.size() != 1 || deg1.size() != 2 || deg2.size() != 1)
    throw invalid_model_error("torus_intersection_product: not a torus model");
  int pt = deg0[0], s1 = deg1[0], s2 = deg1[1], top = deg2[0];

  const Ring& ring = torus.ring();
  Coefficient one = Coefficient::one(ring);
  ProductData p;
  p.factor1 = p.factor2 = p.target = &torus;
  p.slack = 0;
  p.unit = top;
  // [T^2] is the two-sided unit; saddles intersect in +-pt; everything else
  // vanishes for degree reasons (j + k - 2 < 0)
  for (int x : {pt, s1, s2, top}) p.entries.push_back({top, x, x, one});
  for (int x : {pt, s1, s2}) p.entries.push_back({x, top, x, one});
  p.entries.push_back({s1, s2, pt, one});
  p.entries.push_back({s2, s1, pt, neg(one)});

  auto problems = verify_product(p);
  if (!problems.empty())
    throw invalid_model_error("torus_intersection_product: " + problems.front());
  return p;
}

FilteredComplex floer_model(const FilteredComplex& base, int period_degree,
                            const Rational& period_action, int k_min, int k_max) {
  FilteredComplex out = novikov_lift(base, period_degree, period_action, k_min, k_max);
  out.add_tag(kFloerModelTag);
  return out;
}

FilteredComplex periodic_orbit_model(const FilteredComplex& base) {
  FilteredComplex out = base;
  out.add_tag(kPeriodicOrbitTag);
  return out;
}

}  // namespace filtspec
