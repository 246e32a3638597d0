#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "filtspec/errors.hpp"
#include "filtspec/models.hpp"
#include "filtspec/random_complexes.hpp"

using namespace filtspec;

namespace {

std::multiset<std::pair<int, Rational>> degree_action_multiset(const FilteredComplex& c) {
  std::multiset<std::pair<int, Rational>> out;
  for (int i = 0; i < c.size(); ++i)
    out.insert({c.generator(i).degree, c.generator(i).action});
  return out;
}

int entry_count(const FilteredComplex& c) {
  int n = 0;
  for (int i = 0; i < c.size(); ++i) n += static_cast<int>(c.column(i).size());
  return n;
}

}  // namespace

TEST_CASE("validate: constructed models are valid") {
  CHECK(validate(morse_circle(0, 1, Ring::integers())).ok());
  CHECK(validate(morse_rp2(0, 1, 2, Ring::integers())).ok());
  CHECK(validate(morse_interval(1, 0, 0, Ring::rationals())).ok());
}

TEST_CASE("validate: equal actions on a boundary entry") {
  FilteredComplex c(Ring::integers());
  c.add_generator("min", 0, Rational(1));
  c.add_generator("max", 1, Rational(1));
  c.add_boundary("max", "min", Coefficient::one(c.ring()));
  auto report = validate(c);
  REQUIRE(report.problems.size() == 1);
  CHECK(report.problems[0].kind == Violation::Kind::action);
}

TEST_CASE("validate: d squared violation") {
  FilteredComplex c(Ring::integers());
  c.add_generator("a", 1, Rational(2));
  c.add_generator("b", 0, Rational(1));
  c.add_boundary("a", "b", Coefficient::one(c.ring()));
  c.add_boundary("b", "a", Coefficient::one(c.ring()));
  auto report = validate(c);
  CHECK(!report.ok());
  bool has_dsquare = false;
  for (const auto& v : report.problems) has_dsquare |= v.kind == Violation::Kind::dsquare;
  CHECK(has_dsquare);
}

TEST_CASE("validate: duplicate names") {
  FilteredComplex c(Ring::integers());
  c.add_generator("x", 0, Rational(0));
  c.add_generator("x", 1, Rational(1));
  auto report = validate(c);
  REQUIRE(report.problems.size() == 1);
  CHECK(report.problems[0].kind == Violation::Kind::duplicate_name);
}

TEST_CASE("sublevel of the circle") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto below_half = sublevel(circle, Rational(1, 2));
  REQUIRE(below_half.size() == 1);
  CHECK(below_half.generator(0).name == "min");
  CHECK(sublevel(circle, Rational(-1)).size() == 0);
  CHECK(sublevel(circle, std::nullopt) == circle);
}

TEST_CASE("sublevel is a monotone subcomplex") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    auto c = gen::random_complex(rng, i % 2 ? Ring::rationals() : Ring::prime_field(3));
    for (int num = -1; num < 8; ++num) {
      auto small = sublevel(c, Rational(num, 2));
      auto big = sublevel(c, Rational(num + 1, 2));
      CHECK(validate(small).ok());
      for (int g = 0; g < small.size(); ++g)
        CHECK(big.find(small.generator(g).name).has_value());
    }
  }
}

TEST_CASE("dualize the circle: zero differential") {
  auto dual = dualize(morse_circle(0, 1, Ring::integers()));
  CHECK(dual.size() == 2);
  CHECK(entry_count(dual) == 0);
  CHECK(validate(dual).ok());
  // opposite-complex convention: negated degrees and actions
  auto idx = dual.find("max^");
  REQUIRE(idx.has_value());
  CHECK(dual.generator(*idx).degree == -1);
  CHECK(dual.generator(*idx).action == Rational(-1));
}

TEST_CASE("dualize RP2 over Z: transpose with sign") {
  auto dual = dualize(morse_rp2(0, 1, 2, Ring::integers()));
  auto c1 = dual.find("c1^");
  auto c2 = dual.find("c2^");
  REQUIRE(c1.has_value());
  REQUIRE(c2.has_value());
  // delta(c1-dual) = (-1)^(1-1) * 2 * c2-dual = +2 c2-dual
  REQUIRE(dual.column(*c1).size() == 1);
  CHECK(dual.column(*c1)[0].first == *c2);
  CHECK(dual.column(*c1)[0].second == Coefficient::from_rational(dual.ring(), Rational(2)));
  CHECK(validate(dual).ok());
}

TEST_CASE("dualize is an involution up to renaming and signs") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Ring ring = i % 2 ? Ring::prime_field(2) : Ring::integers();
    auto c = gen::random_complex(rng, ring);
    auto dd = dualize(dualize(c));
    REQUIRE(dd.size() == c.size());
    for (int g = 0; g < c.size(); ++g) {
      CHECK(dd.generator(g).name == c.generator(g).name + "^^");
      CHECK(dd.generator(g).degree == c.generator(g).degree);
      CHECK(dd.generator(g).action == c.generator(g).action);
    }
    // entries agree up to sign; exactly over F2
    for (int g = 0; g < c.size(); ++g) {
      REQUIRE(dd.column(g).size() == c.column(g).size());
      for (std::size_t e = 0; e < c.column(g).size(); ++e) {
        CHECK(dd.column(g)[e].first == c.column(g)[e].first);
        const auto& a = dd.column(g)[e].second;
        const auto& b = c.column(g)[e].second;
        if (ring.prime() == 2)
          CHECK(a == b);
        else
          CHECK((a == b || a == neg(b)));
      }
    }
  }
}

TEST_CASE("tensor: circle x circle is the torus model") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto product = tensor(circle, circle);
  CHECK(product.size() == 4);
  CHECK(entry_count(product) == 0);
  std::multiset<Rational> actions;
  for (int i = 0; i < product.size(); ++i) actions.insert(product.generator(i).action);
  CHECK(actions == std::multiset<Rational>{Rational(0), Rational(1), Rational(1), Rational(2)});
  CHECK(validate(product).ok());
}

TEST_CASE("tensor: point complex is a unit") {
  auto circle = morse_circle(0, 1, Ring::rationals());
  FilteredComplex point(Ring::rationals());
  point.add_generator("pt", 0, Rational(0));
  auto product = tensor(circle, point);
  CHECK(degree_action_multiset(product) == degree_action_multiset(circle));
  CHECK(entry_count(product) == 0);
}

TEST_CASE("tensor: interval x interval validates") {
  auto interval = morse_interval(1, 0, 0, Ring::integers());
  auto product = tensor(interval, interval);
  CHECK(validate(product).ok());
}

TEST_CASE("tensor of random complexes validates") {
  std::mt19937_64 rng(13);
  gen::RandomComplexOptions opt;
  opt.max_gens = 6;
  for (int i = 0; i < 25; ++i) {
    Ring ring = i % 2 ? Ring::integers() : Ring::prime_field(3);
    auto a = gen::random_complex(rng, ring, opt);
    auto b = gen::random_complex(rng, ring, opt);
    CHECK(validate(tensor(a, b)).ok());
  }
}

TEST_CASE("tensor: ring mismatch") {
  auto a = morse_circle(0, 1, Ring::integers());
  auto b = morse_circle(0, 1, Ring::rationals());
  CHECK_THROWS_AS(tensor(a, b), ring_mismatch_error);
}

TEST_CASE("shift_actions") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto shifted = shift_actions(circle, Rational(3));
  CHECK(shifted.generator(0).action == Rational(3));
  CHECK(shifted.generator(1).action == Rational(4));
  CHECK(shift_actions(circle, Rational(0)) == circle);
  CHECK(shift_actions(shift_actions(circle, Rational(-1)), Rational(1)) == circle);
}

TEST_CASE("perturb_actions") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto moved = perturb_actions(circle, {Rational(1, 4), Rational(-1, 4)}, Rational(1, 4));
  CHECK(moved.generator(0).action == Rational(1, 4));
  CHECK(moved.generator(1).action == Rational(3, 4));
  CHECK(perturb_actions(circle, {Rational(0), Rational(0)}, Rational(0)) == circle);

  auto interval = morse_interval(1, 0, 0, Ring::integers());
  CHECK_THROWS_AS(
      perturb_actions(interval, {Rational(-1), Rational(1), Rational(0)}, Rational(1)),
      filtration_error);
  CHECK_THROWS_AS(perturb_actions(circle, {Rational(1), Rational(0)}, Rational(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("novikov_lift and materialize_window") {
  auto circle = morse_circle(0, 1, Ring::prime_field(2));
  auto lift = novikov_lift(circle, 2, Rational(1), -1, 1);
  CHECK(lift.ring().is_novikov());
  CHECK(lift.window() == std::pair<int, int>{-1, 1});
  CHECK(validate(lift).ok());

  auto mono = materialize_window(lift, -1, 1);
  CHECK(mono.size() == 6);
  std::multiset<Rational> actions;
  for (int i = 0; i < mono.size(); ++i) actions.insert(mono.generator(i).action);
  CHECK(actions == std::multiset<Rational>{Rational(-1), Rational(0), Rational(0), Rational(1),
                                           Rational(1), Rational(2)});
  auto at = mono.find("max@-1");
  REQUIRE(at.has_value());
  CHECK(mono.generator(*at).degree == 1 + 2);
  CHECK(mono.generator(*at).action == Rational(2));

  // window 0..0 reproduces the base data
  auto base_again = materialize_window(lift, 0, 0);
  REQUIRE(base_again.size() == circle.size());
  for (int i = 0; i < circle.size(); ++i) {
    CHECK(base_again.generator(i).degree == circle.generator(i).degree);
    CHECK(base_again.generator(i).action == circle.generator(i).action);
  }
  CHECK_THROWS_AS(novikov_lift(circle, 2, Rational(1), 2, 1), window_error);
  CHECK_THROWS_AS(novikov_lift(circle, 1, Rational(1), 0, 0), std::invalid_argument);
}

TEST_CASE("novikov_lift validates for random bases and windows") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto base = gen::random_complex(rng, Ring::prime_field(3));
    auto lift = novikov_lift(base, 2, Rational(3, 2), -2, 2);
    CHECK(validate(lift).ok());
    CHECK(validate(materialize_window(lift, -3, 3)).ok());
  }
}

TEST_CASE("diagonal_repackage") {
  auto circle = periodic_orbit_model(morse_circle(0, 1, Ring::integers()));
  auto repackaged = diagonal_repackage(circle);
  CHECK(repackaged.has_tag(kLagrangianTag));
  CHECK(!repackaged.has_tag(kPeriodicOrbitTag));
  CHECK(validate(repackaged).ok());
  CHECK(degree_action_multiset(repackaged) == degree_action_multiset(circle));
}

TEST_CASE("chain classes enforce their invariants") {
  auto interval = morse_interval(1, 0, 0, Ring::integers());
  // d a != 0, so [a] is not a class
  CHECK_THROWS_AS(ChainClass(interval, 1, {{0, Coefficient::one(interval.ring())}}),
                  not_a_cycle_error);
  // mixed degrees are rejected
  auto circle = morse_circle(0, 1, Ring::integers());
  CHECK_THROWS_AS(ChainClass(circle, 0,
                             {{0, Coefficient::one(circle.ring())},
                              {1, Coefficient::one(circle.ring())}}),
                  std::invalid_argument);
  // b - b' is a boundary cycle: valid
  ChainClass z(interval, 0,
               {{1, Coefficient::one(interval.ring())},
                {2, neg(Coefficient::one(interval.ring()))}});
  CHECK(!z.is_zero());
}

TEST_CASE("filtered maps enforce their invariants") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto shifted = shift_actions(circle, Rational(2));
  CHECK_THROWS_AS(FilteredMap::identity(circle, shifted, Rational(1)), filtration_error);
  auto ok = FilteredMap::identity(circle, shifted, Rational(2));
  CHECK(ok.shift() == Rational(2));

  // a non-chain-map is rejected: a -> a, b -> b' drops the b' term of d a
  auto interval = morse_interval(1, 0, 0, Ring::integers());
  std::vector<MapEntry> bad{{0, 0, Coefficient::one(interval.ring())},
                            {1, 2, Coefficient::one(interval.ring())}};
  CHECK_THROWS_AS(FilteredMap(interval, interval, Rational(0), bad), std::invalid_argument);
}

TEST_CASE("min_filtration_slack") {
  auto interval = morse_interval(1, 0, 0, Ring::integers());
  CHECK(interval.min_filtration_slack() == Rational(1));
  auto circle = morse_circle(0, 1, Ring::integers());
  CHECK(!circle.min_filtration_slack().has_value());
}
