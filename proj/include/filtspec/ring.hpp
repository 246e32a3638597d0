#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "filtspec/errors.hpp"
#include "filtspec/numbers.hpp"

namespace filtspec {

enum class RingKind { integers, prime_field, rationals, novikov };

/// A coefficient-ring descriptor. Supported rings: Z, F_p (p prime), Q, and a
/// Novikov extension R[t,t^-1] of one of those, where t carries a degree shift
/// of -period_degree and an action shift of -period_action.
///
/// Immutable and cheap to copy; values from different Ring objects may be
/// combined iff the descriptors compare equal.
class Ring {
 public:
  static Ring integers();
  static Ring prime_field(unsigned p);  // throws std::invalid_argument unless p is prime
  static Ring rationals();
  static Ring novikov(const Ring& base, int period_degree, const Rational& period_action);

  RingKind kind() const { return d_->kind; }
  bool is_novikov() const { return d_->kind == RingKind::novikov; }
  /// F_p and Q are fields; a Novikov ring is not (units are the monomials).
  bool is_field() const { return d_->kind == RingKind::prime_field || d_->kind == RingKind::rationals; }

  /// The base ring of a Novikov ring; identity on base rings.
  Ring base() const;
  RingKind base_kind() const { return is_novikov() ? d_->base_kind : d_->kind; }
  /// Characteristic prime for (base) prime fields, 0 otherwise.
  unsigned prime() const { return is_novikov() ? d_->base_p : d_->p; }

  int period_degree() const { return d_->period_degree; }
  const Rational& period_action() const { return d_->period_action; }

  bool operator==(const Ring& other) const;
  bool operator!=(const Ring& other) const { return !(*this == other); }

  /// Descriptor syntax used in complex files: "Z", "F5", "Q",
  /// "Novikov(F2, deg=2, area=1)" (area may be a fraction).
  std::string to_string() const;
  static std::optional<Ring> parse(const std::string& text);

 private:
  struct Data {
    RingKind kind;
    unsigned p = 0;
    RingKind base_kind = RingKind::integers;
    unsigned base_p = 0;
    int period_degree = 0;
    Rational period_action{};
  };
  explicit Ring(Data d) : d_(std::make_shared<const Data>(std::move(d))) {}
  std::shared_ptr<const Data> d_;
};

struct CoeffTerm {
  int power;        // exponent of t; always 0 for base rings
  Rational scalar;  // base-ring element; integral for Z and F_p (reduced mod p)
  bool operator==(const CoeffTerm& o) const { return power == o.power && scalar == o.scalar; }
};

struct NovikovWeight {
  int min_degree_shift;       // degree shift of the lowest-power term
  Rational max_action_shift;  // max over terms k of -k * period_action
};

/// An exact ring element in canonical form: terms sorted by strictly
/// increasing power, no zero scalars, base-ring elements as a single t^0 term.
class Coefficient {
 public:
  static Coefficient zero(const Ring& ring) { return Coefficient(ring); }
  static Coefficient one(const Ring& ring);
  static Coefficient from_rational(const Ring& ring, const Rational& value);
  static Coefficient monomial(const Ring& ring, int power, const Rational& scalar);
  static Coefficient from_terms(const Ring& ring, std::vector<CoeffTerm> terms);

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<CoeffTerm>& terms() const { return terms_; }

  /// The scalar value of a base-ring element (zero when is_zero()).
  Rational rational_value() const;

  bool is_unit() const;
  NovikovWeight novikov_weight() const;

  bool operator==(const Coefficient& o) const;
  bool operator!=(const Coefficient& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  explicit Coefficient(const Ring& ring) : ring_(ring) {}
  friend Coefficient add(const Coefficient&, const Coefficient&);
  friend Coefficient sub(const Coefficient&, const Coefficient&);
  friend Coefficient neg(const Coefficient&);
  friend Coefficient mul(const Coefficient&, const Coefficient&);
  friend Coefficient div_unit(const Coefficient&, const Coefficient&);

  Ring ring_;
  std::vector<CoeffTerm> terms_;
};

Coefficient add(const Coefficient& a, const Coefficient& b);
Coefficient sub(const Coefficient& a, const Coefficient& b);
Coefficient neg(const Coefficient& a);
Coefficient mul(const Coefficient& a, const Coefficient& b);
/// a / u for a unit u; throws non_unit_error otherwise.
Coefficient div_unit(const Coefficient& a, const Coefficient& u);
/// Scale by an integer (convenience for Z-module operations).
Coefficient scale(const Coefficient& a, long factor);

}  // namespace filtspec
