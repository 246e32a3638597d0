#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "filtspec/ring.hpp"

namespace filtspec {

struct Generator {
  std::string name;
  int degree;
  Rational action;
  bool operator==(const Generator& o) const {
    return name == o.name && degree == o.degree && action == o.action;
  }
};

struct Violation {
  enum class Kind { duplicate_name, degree, action, dsquare };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> problems;
  bool ok() const { return problems.empty(); }
  std::string to_string() const;
};

struct validation_error : std::runtime_error {
  explicit validation_error(ValidationReport r)
      : std::runtime_error("validation failed:\n" + r.to_string()), report(std::move(r)) {}
  ValidationReport report;
};

/// A based filtered chain complex: named generators with integer degrees and
/// exact rational actions, plus a sparse boundary operator that must square to
/// zero and strictly decrease action (Novikov-weighted when the ring is a
/// Novikov extension).
///
/// Instances are immutable once built; all operations below are pure
/// constructors, so complexes can be shared freely across threads.
class FilteredComplex {
 public:
  explicit FilteredComplex(Ring ring) : ring_(std::move(ring)) {}

  int add_generator(const std::string& name, int degree, const Rational& action);
  void add_boundary(int src, int dst, const Coefficient& coeff);
  void add_boundary(const std::string& src, const std::string& dst, const Coefficient& coeff);
  void add_tag(const std::string& tag);
  void set_window(int k_min, int k_max);

  const Ring& ring() const { return ring_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<int> find(const std::string& name) const;
  /// Boundary column of generator i: (target index, coefficient), sorted by target.
  const std::vector<std::pair<int, Coefficient>>& column(int i) const { return columns_[i]; }
  const std::vector<std::string>& tags() const { return tags_; }
  bool has_tag(const std::string& tag) const;
  const std::optional<std::pair<int, int>>& window() const { return window_; }

  /// d applied to a dense chain (one coefficient per generator).
  std::vector<Coefficient> boundary_of(const std::vector<Coefficient>& chain) const;

  /// Smallest slack action(src) - action(dst) - shift over boundary entries
  /// (per Novikov term); nullopt when the boundary is zero.
  std::optional<Rational> min_filtration_slack() const;

  bool operator==(const FilteredComplex& o) const;

 private:
  Ring ring_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::pair<int, Coefficient>>> columns_;
  std::vector<std::string> tags_;
  std::optional<std::pair<int, int>> window_;
};

ValidationReport validate(const FilteredComplex& c);

/// Span of generators with action strictly below the threshold (the full
/// complex when threshold is nullopt). For Novikov rings the sublevel is taken
/// in the monomial basis of the active window, over the base ring.
FilteredComplex sublevel(const FilteredComplex& c, const std::optional<Rational>& threshold);

/// The dual cochain complex in the opposite-complex convention: generators
/// "g^" with negated degree and action, boundary transposed with the sign
/// (-1)^(k-1) for source degree k, so the result is again a chain complex.
FilteredComplex dualize(const FilteredComplex& c);

/// Graded tensor product; generators "(g,h)", degree and action sums, Koszul
/// signs on the second factor.
FilteredComplex tensor(const FilteredComplex& c1, const FilteredComplex& c2);

FilteredComplex shift_actions(const FilteredComplex& c, const Rational& s);

/// Moves action(g) by delta[g] with |delta[g]| <= eps; throws filtration_error
/// if strict action decrease would break.
FilteredComplex perturb_actions(const FilteredComplex& c, const std::vector<Rational>& delta,
                                const Rational& eps);

/// Presents a base-ring complex as a module over Novikov(base, N, A) with the
/// same generators and boundary; the window bounds the monomial expansions
/// materialized by downstream scans.
FilteredComplex novikov_lift(const FilteredComplex& base, int period_degree,
                             const Rational& period_action, int k_min, int k_max);

/// Expands a Novikov complex into its monomial basis over the base ring:
/// generators "g@k" for k in the window, degree deg(g) - k*N, action
/// action(g) - k*A; entries are kept when both endpoints lie in the window.
FilteredComplex materialize_window(const FilteredComplex& c, int k_min, int k_max);

/// Generator-repackaging constructor for the periodic-orbit/Lagrangian
/// correspondence: a renamed copy ("g'") with identical degrees, actions and
/// boundary, retagged as a Lagrangian model.
FilteredComplex diagonal_repackage(const FilteredComplex& c);

/// A cycle with homogeneous (Novikov-weighted) degree.
class ChainClass {
 public:
  ChainClass(const FilteredComplex& cx, int degree,
             std::vector<std::pair<int, Coefficient>> support);
  static ChainClass zero(const FilteredComplex& cx, int degree);
  /// Builds a class from a dense chain, checking homogeneity and cyclehood.
  static ChainClass from_chain(const FilteredComplex& cx, int degree,
                               const std::vector<Coefficient>& chain);

  const FilteredComplex& complex() const { return *cx_; }
  int degree() const { return degree_; }
  const std::vector<std::pair<int, Coefficient>>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  std::vector<Coefficient> dense() const;

  bool operator==(const ChainClass& o) const;

 private:
  const FilteredComplex* cx_;
  int degree_;
  std::vector<std::pair<int, Coefficient>> support_;  // sorted by generator index
};

ChainClass add_classes(const ChainClass& a, const ChainClass& b);
ChainClass scale_class(const Coefficient& r, const ChainClass& a);
/// Transports a class along the identity on names (complexes with the same
/// generator names, e.g. shifted or perturbed copies).
ChainClass transport_by_name(const ChainClass& a, const FilteredComplex& target);

struct MapEntry {
  int src;
  int dst;
  Coefficient coeff;
};

/// A chain map f between filtered complexes with a certified action-shift
/// bound b: every matrix entry u -> w satisfies action(w) <= action(u) + b
/// (Novikov-weighted), and d_target f = f d_source exactly. Both conditions
/// are verified at construction.
class FilteredMap {
 public:
  FilteredMap(const FilteredComplex& src, const FilteredComplex& dst, Rational shift,
              std::vector<MapEntry> entries);

  const FilteredComplex& source() const { return *src_; }
  const FilteredComplex& target() const { return *dst_; }
  const Rational& shift() const { return shift_; }
  const std::vector<MapEntry>& entries() const { return entries_; }

  std::vector<Coefficient> apply_dense(const std::vector<Coefficient>& chain) const;
  ChainClass apply(const ChainClass& a) const;

  static FilteredMap identity(const FilteredComplex& src, const FilteredComplex& dst,
                              const Rational& shift);

 private:
  const FilteredComplex* src_;
  const FilteredComplex* dst_;
  Rational shift_;
  std::vector<MapEntry> entries_;
};

/// A bare degree-(+1) linear map used as a chain-homotopy witness; no
/// invariants are enforced.
struct SparseLinearMap {
  const FilteredComplex* src = nullptr;
  const FilteredComplex* dst = nullptr;
  std::vector<MapEntry> entries;
  std::vector<Coefficient> apply_dense(const std::vector<Coefficient>& chain) const;
};

}  // namespace filtspec
