#include "filtspec/random_complexes.hpp"

#include <algorithm>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"
#include "filtspec/props.hpp"

namespace filtspec::gen {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational random_scalar(std::mt19937_64& rng, const Ring& ring) {
  switch (ring.kind()) {
    case RingKind::prime_field:
      return Rational(pick(rng, 1, static_cast<int>(ring.prime()) - 1));
    case RingKind::rationals: {
      static const Rational pool[] = {Rational(1),      Rational(-1), Rational(2),
                                      Rational(-2),     Rational(3),  Rational(1, 2),
                                      Rational(-1, 2)};
      return pool[pick(rng, 0, 6)];
    }
    case RingKind::integers: {
      static const Rational pool[] = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                      Rational(3)};
      return pool[pick(rng, 0, 4)];
    }
    case RingKind::novikov: break;
  }
  throw unsupported_ring_error("random_scalar: base rings only");
}

Rational reduce_entry(const Ring& ring, const Rational& v) {
  if (ring.kind() != RingKind::prime_field) return v;
  Int m = numerator(v) % ring.prime();
  if (m < 0) m += ring.prime();
  return Rational(m);
}

}  // namespace

FilteredComplex random_complex(std::mt19937_64& rng, const Ring& ring,
                               const RandomComplexOptions& opt) {
  if (ring.is_novikov())
    throw unsupported_ring_error("random_complex: base rings only (lift afterwards)");
  int n = pick(rng, opt.min_gens, opt.max_gens);
  std::vector<int> degree(n);
  std::vector<Rational> action(n);
  for (int i = 0; i < n; ++i) {
    degree[i] = pick(rng, opt.min_degree, opt.max_degree);
    action[i] = Rational(pick(rng, 0, opt.max_action_numerator), opt.action_denominator);
  }

  // start from an acyclic matching: sources and targets disjoint
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (degree[u] == degree[v] + 1 && action[u] > action[v]) candidates.push_back({u, v});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<bool> used(n, false);
  for (const auto& [u, v] : candidates) {
    if (used[u] || used[v]) continue;
    if (pick(rng, 0, 3) == 0) continue;  // leave some generators unmatched
    used[u] = used[v] = true;
    m[v][u] = random_scalar(rng, ring);
  }

  // conjugate by random filtered transvections e_g -> e_g + c e_h,
  // deg h = deg g and action(h) <= action(g)
  for (int step = 0; step < opt.mix_ops; ++step) {
    int g = pick(rng, 0, n - 1);
    std::vector<int> partners;
    for (int h = 0; h < n; ++h)
      if (h != g && degree[h] == degree[g] && action[h] <= action[g]) partners.push_back(h);
    if (partners.empty()) continue;
    int h = partners[pick(rng, 0, static_cast<int>(partners.size()) - 1)];
    Rational c = random_scalar(rng, ring);
    if (ring.kind() == RingKind::integers) c = (pick(rng, 0, 1) ? Rational(1) : Rational(-1)) * Rational(pick(rng, 1, 2));
    for (int r = 0; r < n; ++r) m[r][g] = reduce_entry(ring, m[r][g] + c * m[r][h]);
    for (int j = 0; j < n; ++j) m[h][j] = reduce_entry(ring, m[h][j] - c * m[g][j]);
  }

  FilteredComplex out(ring);
  for (int i = 0; i < n; ++i)
    out.add_generator("g" + std::to_string(i), degree[i], action[i]);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (m[v][u] != 0) out.add_boundary(u, v, Coefficient::from_rational(ring, m[v][u]));
  if (!validate(out).ok())
    throw std::logic_error("random_complex: generated an invalid complex");
  return out;
}

std::vector<ChainClass> sample_classes(std::mt19937_64& rng, const FilteredComplex& c, int extra) {
  std::vector<ChainClass> out;
  std::vector<ChainClass> basis = props::basis_classes(c);
  out.insert(out.end(), basis.begin(), basis.end());

  if (c.ring().kind() == RingKind::integers && c.size() > 0) {
    // torsion multiples are boundaries: the -inf branch of Finiteness
    int lo = c.generator(0).degree, hi = lo;
    for (int i = 0; i < c.size(); ++i) {
      lo = std::min(lo, c.generator(i).degree);
      hi = std::max(hi, c.generator(i).degree);
    }
    for (int d = lo; d <= hi; ++d) {
      auto h = homology(c, d);
      for (const auto& [cls, order] : h.torsion_part) {
        long f = order.convert_to<long>();
        out.push_back(scale_class(Coefficient::from_rational(c.ring(), Rational(f)), cls));
      }
    }
  }

  if (!basis.empty()) {
    for (int k = 0; k < extra; ++k) {
      const ChainClass& seed = basis[pick(rng, 0, static_cast<int>(basis.size()) - 1)];
      int degree = seed.degree();
      std::vector<Coefficient> chain(c.size(), Coefficient::zero(c.ring()));
      for (const auto& cls : basis) {
        if (cls.degree() != degree || pick(rng, 0, 1) == 0) continue;
        Coefficient r = Coefficient::from_rational(c.ring(), random_scalar(rng, c.ring()));
        for (const auto& [gen, coeff] : cls.support()) chain[gen] = add(chain[gen], mul(r, coeff));
      }
      // plus a random boundary from the next degree
      std::vector<Coefficient> x(c.size(), Coefficient::zero(c.ring()));
      for (int i = 0; i < c.size(); ++i)
        if (c.generator(i).degree == degree + 1 && pick(rng, 0, 2) == 0)
          x[i] = Coefficient::from_rational(c.ring(), random_scalar(rng, c.ring()));
      auto dx = c.boundary_of(x);
      for (int i = 0; i < c.size(); ++i) chain[i] = add(chain[i], dx[i]);
      out.push_back(ChainClass::from_chain(c, degree, chain));
    }
    out.push_back(ChainClass::zero(c, basis[0].degree()));
  } else if (c.size() > 0) {
    out.push_back(ChainClass::zero(c, c.generator(0).degree));
  }
  return out;
}

PerturbationSample random_perturbation(std::mt19937_64& rng, const FilteredComplex& c) {
  auto slack = c.min_filtration_slack();
  Rational eps = slack ? *slack / 2 : Rational(1);
  std::vector<Rational> delta(c.size());
  for (auto& d : delta) d = eps * Rational(pick(rng, -7, 7), 8);
  return {perturb_actions(c, delta, eps), eps};
}

namespace {

ConjugationSample identity_pair(const FilteredComplex& base, FilteredComplex mapped,
                                const Rational& shift_fwd, const Rational& shift_back,
                                std::mt19937_64& rng, int extra_classes) {
  ConjugationSample s;
  s.source = std::make_shared<FilteredComplex>(base);
  s.target = std::make_shared<FilteredComplex>(std::move(mapped));
  s.f = std::make_shared<FilteredMap>(FilteredMap::identity(*s.source, *s.target, shift_fwd));
  s.g = std::make_shared<FilteredMap>(FilteredMap::identity(*s.target, *s.source, shift_back));
  s.homotopy_src = SparseLinearMap{s.source.get(), s.source.get(), {}};
  s.homotopy_tgt = SparseLinearMap{s.target.get(), s.target.get(), {}};
  s.classes = sample_classes(rng, *s.source, extra_classes);
  return s;
}

}  // namespace

ConjugationSample shift_pair(const FilteredComplex& c, const Rational& s, std::mt19937_64& rng,
                             int extra_classes) {
  Rational fwd = s > 0 ? s : Rational(0);
  Rational back = s < 0 ? -s : Rational(0);
  return identity_pair(c, shift_actions(c, s), fwd, back, rng, extra_classes);
}

ConjugationSample perturbation_pair(std::mt19937_64& rng, const FilteredComplex& c,
                                    int extra_classes) {
  PerturbationSample p = random_perturbation(rng, c);
  return identity_pair(c, std::move(p.perturbed), p.eps, p.eps, rng, extra_classes);
}

ConjugationSample cone_pair(std::mt19937_64& rng, const FilteredComplex& c, int extra_classes) {
  ConjugationSample s;
  int cone_degree = c.size() ? c.generator(pick(rng, 0, c.size() - 1)).degree : 0;
  Rational bot_action = Rational(pick(rng, 0, 8), 2);
  Rational top_action = bot_action + Rational(pick(rng, 1, 4), 2);

  FilteredComplex source = c;
  int bot = source.add_generator("cone_bot", cone_degree, bot_action);
  int top = source.add_generator("cone_top", cone_degree + 1, top_action);
  source.add_boundary(top, bot, Coefficient::one(c.ring()));
  s.source = std::make_shared<FilteredComplex>(std::move(source));
  s.target = std::make_shared<FilteredComplex>(c);

  std::vector<MapEntry> proj, incl;
  for (int i = 0; i < c.size(); ++i) {
    proj.push_back({i, i, Coefficient::one(c.ring())});
    incl.push_back({i, i, Coefficient::one(c.ring())});
  }
  s.f = std::make_shared<FilteredMap>(*s.source, *s.target, Rational(0), std::move(proj));
  s.g = std::make_shared<FilteredMap>(*s.target, *s.source, Rational(0), std::move(incl));
  // g f - id = -id on the cone: h(bot) = -top kills it
  s.homotopy_src = SparseLinearMap{
      s.source.get(), s.source.get(), {{bot, top, neg(Coefficient::one(c.ring()))}}};
  s.homotopy_tgt = SparseLinearMap{s.target.get(), s.target.get(), {}};
  s.classes = sample_classes(rng, *s.source, extra_classes);
  return s;
}

}  // namespace filtspec::gen
