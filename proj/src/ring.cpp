#include "filtspec/ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace filtspec {

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (!is_integer(q)) os << "/" << denominator(q);
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  auto parse_int = [](const std::string& s, Int& out) -> bool {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = Int(s);
    return true;
  };
  Int num, den = 1;
  if (slash == std::string::npos) {
    if (!parse_int(text, num)) return std::nullopt;
  } else {
    if (!parse_int(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; static_cast<unsigned long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int mod_nonneg(const Int& x, unsigned p) {
  Int m = x % p;
  if (m < 0) m += p;
  return m;
}

Int mod_inverse(const Int& a, unsigned p) {
  // extended Euclid; a must be nonzero mod p
  Int t = 0, new_t = 1, r = p, new_r = mod_nonneg(a, p);
  while (new_r != 0) {
    Int q = r / new_r;
    Int tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw non_unit_error("element not invertible mod p");
  return mod_nonneg(t, p);
}

// Normalizes a scalar into the base ring's canonical form.
Rational canon_scalar(RingKind base, unsigned p, const Rational& q) {
  switch (base) {
    case RingKind::integers:
      if (!is_integer(q)) throw std::invalid_argument("non-integer scalar in Z");
      return q;
    case RingKind::rationals:
      return q;
    case RingKind::prime_field: {
      Int num = mod_nonneg(numerator(q), p);
      Int den = mod_nonneg(denominator(q), p);
      if (den == 0) throw non_unit_error("denominator vanishes mod p");
      if (den != 1) num = mod_nonneg(num * mod_inverse(den, p), p);
      return Rational(num);
    }
    case RingKind::novikov:
      break;
  }
  throw std::logic_error("canon_scalar: bad base kind");
}

Rational scalar_add(RingKind base, unsigned p, const Rational& a, const Rational& b) {
  return canon_scalar(base, p, a + b);
}

Rational scalar_neg(RingKind base, unsigned p, const Rational& a) {
  return canon_scalar(base, p, -a);
}

bool scalar_is_unit(RingKind base, const Rational& a) {
  switch (base) {
    case RingKind::integers: return a == 1 || a == -1;
    case RingKind::rationals:
    case RingKind::prime_field: return a != 0;
    case RingKind::novikov: break;
  }
  throw std::logic_error("scalar_is_unit: bad base kind");
}

Rational scalar_inv(RingKind base, unsigned p, const Rational& a) {
  if (!scalar_is_unit(base, a)) throw non_unit_error("scalar is not a unit");
  switch (base) {
    case RingKind::integers: return a;  // +-1
    case RingKind::rationals: return Rational(1) / a;
    case RingKind::prime_field: return Rational(mod_inverse(numerator(a), p));
    case RingKind::novikov: break;
  }
  throw std::logic_error("scalar_inv: bad base kind");
}

}  // namespace

Ring Ring::integers() { return Ring(Data{.kind = RingKind::integers}); }

Ring Ring::rationals() { return Ring(Data{.kind = RingKind::rationals}); }

Ring Ring::prime_field(unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
  Data d{.kind = RingKind::prime_field};
  d.p = p;
  return Ring(d);
}

Ring Ring::novikov(const Ring& base, int period_degree, const Rational& period_action) {
  if (base.is_novikov()) throw std::invalid_argument("novikov: base must be Z, F_p or Q");
  if (period_action <= 0) throw std::invalid_argument("novikov: period_action must be positive");
  Data d{.kind = RingKind::novikov};
  d.base_kind = base.kind();
  d.base_p = base.prime();
  d.period_degree = period_degree;
  d.period_action = period_action;
  return Ring(d);
}

Ring Ring::base() const {
  if (!is_novikov()) return *this;
  switch (d_->base_kind) {
    case RingKind::integers: return integers();
    case RingKind::rationals: return rationals();
    case RingKind::prime_field: return prime_field(d_->base_p);
    case RingKind::novikov: break;
  }
  throw std::logic_error("Ring::base: bad base kind");
}

bool Ring::operator==(const Ring& other) const {
  const Data& a = *d_;
  const Data& b = *other.d_;
  if (a.kind != b.kind) return false;
  if (a.kind == RingKind::prime_field) return a.p == b.p;
  if (a.kind == RingKind::novikov)
    return a.base_kind == b.base_kind && a.base_p == b.base_p &&
           a.period_degree == b.period_degree && a.period_action == b.period_action;
  return true;
}

std::string Ring::to_string() const {
  switch (kind()) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::prime_field: return "F" + std::to_string(d_->p);
    case RingKind::novikov:
      return "Novikov(" + base().to_string() + ", deg=" + std::to_string(d_->period_degree) +
             ", area=" + format_rational(d_->period_action) + ")";
  }
  return "?";
}

std::optional<Ring> Ring::parse(const std::string& text) {
  auto strip = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string s = strip(text);
  if (s == "Z") return integers();
  if (s == "Q") return rationals();
  if (s.size() >= 2 && s[0] == 'F') {
    unsigned long p = 0;
    try {
      std::size_t pos = 0;
      p = std::stoul(s.substr(1), &pos);
      if (pos + 1 != s.size()) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
    if (!is_prime(static_cast<unsigned>(p))) return std::nullopt;
    return prime_field(static_cast<unsigned>(p));
  }
  if (s.rfind("Novikov(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(8, s.size() - 9);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || inner[i] == ',') {
        parts.push_back(strip(inner.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (parts.size() != 3) return std::nullopt;
    auto base = parse(parts[0]);
    if (!base || base->is_novikov()) return std::nullopt;
    if (parts[1].rfind("deg=", 0) != 0 || parts[2].rfind("area=", 0) != 0) return std::nullopt;
    int deg = 0;
    try {
      std::size_t pos = 0;
      deg = std::stoi(parts[1].substr(4), &pos);
      if (pos != parts[1].size() - 4) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
    auto area = parse_rational(parts[2].substr(5));
    if (!area || *area <= 0) return std::nullopt;
    return novikov(*base, deg, *area);
  }
  return std::nullopt;
}

Coefficient Coefficient::one(const Ring& ring) { return from_rational(ring, Rational(1)); }

Coefficient Coefficient::from_rational(const Ring& ring, const Rational& value) {
  Coefficient c(ring);
  Rational v = canon_scalar(ring.base_kind(), ring.prime(), value);
  if (v != 0) c.terms_.push_back({0, v});
  return c;
}

Coefficient Coefficient::monomial(const Ring& ring, int power, const Rational& scalar) {
  if (!ring.is_novikov() && power != 0)
    throw std::invalid_argument("monomial: nonzero t-power over a base ring");
  Coefficient c(ring);
  Rational v = canon_scalar(ring.base_kind(), ring.prime(), scalar);
  if (v != 0) c.terms_.push_back({power, v});
  return c;
}

Coefficient Coefficient::from_terms(const Ring& ring, std::vector<CoeffTerm> terms) {
  std::map<int, Rational> acc;
  for (auto& t : terms) {
    if (!ring.is_novikov() && t.power != 0)
      throw std::invalid_argument("from_terms: nonzero t-power over a base ring");
    auto [it, fresh] = acc.emplace(t.power, t.scalar);
    if (!fresh) it->second += t.scalar;
  }
  Coefficient c(ring);
  for (auto& [power, scalar] : acc) {
    Rational v = canon_scalar(ring.base_kind(), ring.prime(), scalar);
    if (v != 0) c.terms_.push_back({power, v});
  }
  return c;
}

Rational Coefficient::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (ring_.is_novikov() && (terms_.size() > 1 || terms_[0].power != 0))
    throw std::invalid_argument("rational_value: not a base-ring element");
  return terms_[0].scalar;
}

bool Coefficient::is_unit() const {
  if (terms_.empty()) return false;
  if (!ring_.is_novikov()) return scalar_is_unit(ring_.kind(), terms_[0].scalar);
  // Novikov: monomials with unit base scalar. Over Z only +-t^k is accepted;
  // over a field any single nonzero term is invertible.
  if (terms_.size() != 1) return false;
  return scalar_is_unit(ring_.base_kind(), terms_[0].scalar);
}

NovikovWeight Coefficient::novikov_weight() const {
  if (!ring_.is_novikov()) throw unsupported_ring_error("novikov_weight: ring is not Novikov");
  if (terms_.empty()) throw undefined_weight_error("novikov_weight of zero");
  int k_min = terms_.front().power;  // terms sorted ascending
  return NovikovWeight{-k_min * ring_.period_degree(), Rational(-k_min) * ring_.period_action()};
}

bool Coefficient::operator==(const Coefficient& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

std::string Coefficient::to_string() const {
  if (!ring_.is_novikov()) return format_rational(rational_value());
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    std::string s = format_rational(terms_[i].scalar);
    if (i > 0) {
      if (!s.empty() && s[0] == '-') {
        out += "-";
        s = s.substr(1);
      } else {
        out += "+";
      }
    }
    out += s + "*t^" + std::to_string(terms_[i].power);
  }
  return out;
}

namespace {
void require_same_ring(const Coefficient& a, const Coefficient& b, const char* op) {
  if (a.ring() != b.ring())
    throw ring_mismatch_error(std::string(op) + ": operands from different rings (" +
                              a.ring().to_string() + " vs " + b.ring().to_string() + ")");
}
}  // namespace

Coefficient add(const Coefficient& a, const Coefficient& b) {
  require_same_ring(a, b, "add");
  const Ring& ring = a.ring_;
  Coefficient out(ring);
  RingKind base = ring.base_kind();
  unsigned p = ring.prime();
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->power < ib->power)) {
      out.terms_.push_back(*ia++);
    } else if (ia == a.terms_.end() || ib->power < ia->power) {
      out.terms_.push_back(*ib++);
    } else {
      Rational s = scalar_add(base, p, ia->scalar, ib->scalar);
      if (s != 0) out.terms_.push_back({ia->power, s});
      ++ia;
      ++ib;
    }
  }
  return out;
}

Coefficient neg(const Coefficient& a) {
  Coefficient out(a.ring_);
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.scalar = scalar_neg(a.ring_.base_kind(), a.ring_.prime(), t.scalar);
  return out;
}

Coefficient sub(const Coefficient& a, const Coefficient& b) { return add(a, neg(b)); }

Coefficient mul(const Coefficient& a, const Coefficient& b) {
  require_same_ring(a, b, "mul");
  const Ring& ring = a.ring_;
  RingKind base = ring.base_kind();
  unsigned p = ring.prime();
  std::map<int, Rational> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      auto [it, fresh] = acc.emplace(ta.power + tb.power, Rational(0));
      it->second += ta.scalar * tb.scalar;
      (void)fresh;
    }
  Coefficient out(ring);
  for (auto& [power, scalar] : acc) {
    Rational s = canon_scalar(base, p, scalar);
    if (s != 0) out.terms_.push_back({power, s});
  }
  return out;
}

Coefficient div_unit(const Coefficient& a, const Coefficient& u) {
  require_same_ring(a, u, "div_unit");
  if (!u.is_unit()) throw non_unit_error("div_unit: divisor " + u.to_string() + " is not a unit");
  const Ring& ring = a.ring_;
  Coefficient inv(ring);
  inv.terms_.push_back(
      {-u.terms_[0].power, scalar_inv(ring.base_kind(), ring.prime(), u.terms_[0].scalar)});
  return mul(a, inv);
}

Coefficient scale(const Coefficient& a, long factor) {
  return mul(a, Coefficient::from_rational(a.ring(), Rational(factor)));
}

}  // namespace filtspec
