#include <doctest.h>

#include <random>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"
#include "filtspec/models.hpp"
#include "filtspec/random_complexes.hpp"

using namespace filtspec;

namespace {

// Independent F2 rank oracle: exhaustive row reduction on bit rows.
int f2_rank(std::vector<std::vector<int>> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] ^= rows[rank][j];
    ++rank;
  }
  return rank;
}

// deg-d boundary matrix over F2 as bit rows (rows: deg d-1, cols: deg d)
std::vector<std::vector<int>> f2_matrix(const FilteredComplex& c, int degree) {
  std::vector<int> rows, cols;
  for (int i = 0; i < c.size(); ++i) {
    if (c.generator(i).degree == degree - 1) rows.push_back(i);
    if (c.generator(i).degree == degree) cols.push_back(i);
  }
  std::vector<std::vector<int>> m(rows.size(), std::vector<int>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [dst, coeff] : c.column(cols[j]))
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] == dst) m[i][j] = static_cast<int>(numerator(coeff.rational_value()) % 2);
  return m;
}

int count_degree(const FilteredComplex& c, int degree) {
  int n = 0;
  for (int i = 0; i < c.size(); ++i) n += c.generator(i).degree == degree;
  return n;
}

}  // namespace

TEST_CASE("circle over Z: degree 0") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto h = homology(circle, 0);
  CHECK(h.rank() == 1);
  CHECK(h.torsion_part.empty());
  REQUIRE(h.free_part.size() == 1);
  CHECK(h.free_part[0].support().size() == 1);
}

TEST_CASE("RP2 over Z: torsion of order 2 in degree 1") {
  auto rp2 = morse_rp2(0, 1, 2, Ring::integers());
  auto h1 = homology(rp2, 1);
  CHECK(h1.rank() == 0);
  REQUIRE(h1.torsion_part.size() == 1);
  CHECK(h1.torsion_part[0].second == 2);
  CHECK(homology(rp2, 0).rank() == 1);
  CHECK(homology(rp2, 2).rank() == 0);
  CHECK(homology(rp2, 2).torsion_part.empty());
}

TEST_CASE("torus over F2: degree 1 has rank 2") {
  auto torus = morse_torus(0, 1, 1, 2, Ring::prime_field(2));
  CHECK(homology(torus, 1).rank() == 2);
}

TEST_CASE("is_boundary with witnesses") {
  auto rp2 = morse_rp2(0, 1, 2, Ring::integers());
  auto c1 = *rp2.find("c1");
  auto z = ChainClass(rp2, 1, {{c1, Coefficient::from_rational(rp2.ring(), Rational(2))}});
  auto witness = boundary_witness(rp2, z);
  REQUIRE(witness.has_value());
  auto image = rp2.boundary_of(*witness);
  CHECK(image[c1] == Coefficient::from_rational(rp2.ring(), Rational(2)));

  auto single = ChainClass(rp2, 1, {{c1, Coefficient::one(rp2.ring())}});
  CHECK(!is_boundary(rp2, single));

  auto zero = ChainClass::zero(rp2, 1);
  auto zero_witness = boundary_witness(rp2, zero);
  REQUIRE(zero_witness.has_value());
  for (const auto& coeff : *zero_witness) CHECK(coeff.is_zero());
}

TEST_CASE("in_image_of_sublevel on the circle") {
  auto circle = morse_circle(0, 1, Ring::integers());
  auto min_class = ChainClass(circle, 0, {{0, Coefficient::one(circle.ring())}});
  auto max_class = ChainClass(circle, 1, {{1, Coefficient::one(circle.ring())}});
  CHECK(in_image_of_sublevel(circle, Rational(1, 2), min_class));
  CHECK(!in_image_of_sublevel(circle, Rational(1, 2), max_class));
  CHECK(in_image_of_sublevel(circle, Rational(-10), ChainClass::zero(circle, 0)));
}

TEST_CASE("membership is monotone in the threshold") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    Ring ring = i % 2 ? Ring::integers() : Ring::prime_field(2);
    auto c = gen::random_complex(rng, ring);
    auto classes = gen::sample_classes(rng, c, 2);
    MembershipOracle oracle(c);
    for (const auto& cls : classes) {
      bool previous = false;
      for (int num = -2; num <= 14; ++num) {
        bool now = oracle.in_image(Rational(num, 2), cls);
        if (previous) CHECK(now);
        previous = now;
      }
    }
  }
}

TEST_CASE("F2 ranks agree with the exhaustive row-reduction oracle") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    auto c = gen::random_complex(rng, Ring::prime_field(2));
    for (int d = 0; d <= 4; ++d) {
      int cycles = count_degree(c, d) - f2_rank(f2_matrix(c, d));
      int boundaries = f2_rank(f2_matrix(c, d + 1));
      CHECK(homology(c, d).rank() == cycles - boundaries);
    }
  }
}

TEST_CASE("universal coefficients: rank over Q equals free rank over Z") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 25; ++i) {
    auto zc = gen::random_complex(rng, Ring::integers());
    // reinterpret the same data over Q
    FilteredComplex qc(Ring::rationals());
    for (int g = 0; g < zc.size(); ++g) {
      const auto& gen_info = zc.generator(g);
      qc.add_generator(gen_info.name, gen_info.degree, gen_info.action);
    }
    for (int g = 0; g < zc.size(); ++g)
      for (const auto& [dst, coeff] : zc.column(g))
        qc.add_boundary(g, dst, Coefficient::from_rational(qc.ring(), coeff.rational_value()));
    for (int d = 0; d <= 4; ++d) CHECK(homology(zc, d).rank() == homology(qc, d).rank());
  }
}

TEST_CASE("homology over a Novikov ring is routed to the spectral module") {
  auto lift = novikov_lift(morse_circle(0, 1, Ring::integers()), 2, Rational(1), 0, 0);
  CHECK_THROWS_AS(homology(lift, 0), unsupported_ring_error);
}

TEST_CASE("homology representatives are cycles and independent") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    auto c = gen::random_complex(rng, Ring::integers());
    for (int d = 0; d <= 4; ++d) {
      auto h = homology(c, d);
      for (const auto& cls : h.free_part) CHECK(!is_boundary(c, cls));
      for (const auto& [cls, order] : h.torsion_part) {
        CHECK(order > 1);
        CHECK(!is_boundary(c, cls));
        long o = order.convert_to<long>();
        CHECK(is_boundary(c, scale_class(Coefficient::from_rational(c.ring(), Rational(o)), cls)));
      }
    }
  }
}
