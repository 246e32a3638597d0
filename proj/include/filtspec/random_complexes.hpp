#pragma once

#include <memory>
#include <random>
#include <vector>

#include "filtspec/complex.hpp"

namespace filtspec::gen {

struct RandomComplexOptions {
  int min_gens = 4;
  int max_gens = 10;
  int min_degree = 0;
  int max_degree = 3;
  int action_denominator = 4;
  int max_action_numerator = 24;
  int mix_ops = 8;  // filtered base changes applied after the initial matching
};

/// A random valid based filtered complex: an acyclic matching conjugated by
/// random filtration-preserving base changes. Always passes validate().
FilteredComplex random_complex(std::mt19937_64& rng, const Ring& ring,
                               const RandomComplexOptions& opt = {});

/// Homology basis classes, torsion multiples (boundaries), the zero class,
/// and `extra` random cycles (basis combinations plus boundaries).
std::vector<ChainClass> sample_classes(std::mt19937_64& rng, const FilteredComplex& c, int extra);

struct PerturbationSample {
  FilteredComplex perturbed;
  Rational eps;
};

/// Per-generator action jitter with eps = half the smallest filtration slack;
/// the result always validates.
PerturbationSample random_perturbation(std::mt19937_64& rng, const FilteredComplex& c);

/// A pair of shift-bounded filtered isomorphisms-up-to-homotopy, with
/// homotopy witnesses and sample classes on the source.
struct ConjugationSample {
  std::shared_ptr<FilteredComplex> source;
  std::shared_ptr<FilteredComplex> target;
  std::shared_ptr<FilteredMap> f;  // source -> target
  std::shared_ptr<FilteredMap> g;  // target -> source
  SparseLinearMap homotopy_src;    // d h + h d = g f - id
  SparseLinearMap homotopy_tgt;    // d h + h d = f g - id
  std::vector<ChainClass> classes;
};

/// target = shift_actions(source, s); identities with shifts max(+-s, 0).
ConjugationSample shift_pair(const FilteredComplex& c, const Rational& s,
                             std::mt19937_64& rng, int extra_classes = 2);
/// target = random perturbation; identities with shift eps both ways.
ConjugationSample perturbation_pair(std::mt19937_64& rng, const FilteredComplex& c,
                                    int extra_classes = 2);
/// source = c plus an acyclic cone pair; f collapses the cone, g includes,
/// with a nontrivial homotopy witness on the source.
ConjugationSample cone_pair(std::mt19937_64& rng, const FilteredComplex& c,
                            int extra_classes = 2);

}  // namespace filtspec::gen
