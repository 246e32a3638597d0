#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "filtspec/errors.hpp"
#include "filtspec/io.hpp"
#include "filtspec/models.hpp"
#include "filtspec/random_complexes.hpp"

using namespace filtspec;

namespace {
const std::filesystem::path corpus_dir = FILTSPEC_CORPUS_DIR;
}

TEST_CASE("parse a circle description") {
  std::string text =
      "# the circle Morse model\n"
      "ring Z\n"
      "gen min deg=0 action=0\n"
      "gen max deg=1 action=1\n";
  auto c = io::parse_complex_text(text, "circle");
  CHECK(c == morse_circle(0, 1, Ring::integers()));
}

TEST_CASE("emit then parse is the identity") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 20; ++i) {
    Ring ring = i % 3 == 0 ? Ring::integers()
                           : (i % 3 == 1 ? Ring::prime_field(5) : Ring::rationals());
    auto c = gen::random_complex(rng, ring);
    c.add_tag("sample");
    auto text = io::emit_complex(c);
    auto back = io::parse_complex_text(text, "roundtrip");
    CHECK(back == c);
    CHECK(io::emit_complex(back) == text);
  }
  // Novikov complexes round-trip with window and polynomial coefficients
  auto lift = floer_model(morse_interval(1, 0, 0, Ring::rationals()), 2, Rational(3, 2), -2, 2);
  auto text = io::emit_complex(lift);
  CHECK(io::parse_complex_text(text, "lift") == lift);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(io::parse_complex_text("gen x deg=0 action=0\n", "f"), parse_error);
  CHECK_THROWS_AS(io::parse_complex_text("ring Z\nfoo bar\n", "f"), parse_error);
  CHECK_THROWS_AS(io::parse_complex_text("ring Z\ngen x deg=0 action=zzz\n", "f"), parse_error);
  CHECK_THROWS_AS(
      io::parse_complex_text("ring Z\ngen x deg=0 action=0\ngen x deg=1 action=1\n", "f"),
      parse_error);
  CHECK_THROWS_AS(io::parse_complex_text("ring Z\ngen x deg=0 action=0\nwindow 0:1\n", "f"),
                  parse_error);
  try {
    io::parse_complex_text("ring Z\ngen a deg=1 action=1\ngen b deg=0 action=0\nbnd a b 1*t^1\n",
                           "f");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("ring mismatch") != std::string::npos);
  }
}

TEST_CASE("validation failures are forwarded") {
  std::string text =
      "ring Z\n"
      "gen max deg=1 action=0\n"
      "gen min deg=0 action=0\n"
      "bnd max min 1\n";
  CHECK_THROWS_AS(io::parse_complex_text(text, "f"), validation_error);
  auto unchecked = io::parse_complex_text(text, "f", /*run_validation=*/false);
  CHECK(!validate(unchecked).ok());
}

TEST_CASE("ring override reinterprets coefficients") {
  std::string text =
      "ring Z\n"
      "gen c2 deg=2 action=2\n"
      "gen c1 deg=1 action=1\n"
      "bnd c2 c1 2\n";
  auto f2 = io::parse_complex_text(text, "f", true, Ring::prime_field(2));
  CHECK(f2.ring() == Ring::prime_field(2));
  CHECK(f2.column(*f2.find("c2")).empty());  // 2 = 0 mod 2
}

TEST_CASE("class, map and product files") {
  auto torus = morse_torus(0, 1, 1, 2, Ring::integers());
  auto classes = io::parse_classes_text(
      "cls fund deg=2\nterm top 1\ncls diag deg=1\nterm s1 1\nterm s2 -1\n", "cls", torus);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].name == "fund");
  CHECK(classes[1].cls.support().size() == 2);

  CHECK_THROWS_AS(io::parse_classes_text("term top 1\n", "cls", torus), parse_error);
  CHECK_THROWS_AS(io::parse_classes_text("cls x deg=1\nterm top 1\n", "cls", torus), parse_error);
}

TEST_CASE("corpus files parse, validate and round-trip") {
  REQUIRE(std::filesystem::exists(corpus_dir));
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
    if (entry.path().extension() != ".fc") continue;
    ++count;
    auto c = io::parse_complex(entry.path());
    CHECK(validate(c).ok());
    auto text = io::emit_complex(c);
    CHECK(io::parse_complex_text(text, entry.path().string()) == c);
  }
  CHECK(count >= 10);
}

TEST_CASE("corpus manifest runs clean") {
  auto manifest = io::parse_manifest(corpus_dir / "corpus.mf");
  std::ostringstream out;
  int code = io::run_manifest(manifest, out, Exec::serial);
  INFO(out.str());
  CHECK(code == 0);
  CHECK(manifest.jobs.size() >= 15);
}

TEST_CASE("manifest expect mismatches exit nonzero") {
  auto dir = std::filesystem::temp_directory_path() / "filtspec_test_manifest";
  std::filesystem::create_directories(dir);
  {
    std::ofstream fc(dir / "circle.fc");
    fc << io::emit_complex(morse_circle(0, 1, Ring::integers()));
    std::ofstream cl(dir / "max.cl");
    cl << "cls max deg=1\nterm max 1\n";
    std::ofstream mf(dir / "bad.mf");
    mf << "spectral complex=circle.fc classes=max.cl expect=max=2\n";
  }
  std::ostringstream out;
  int code = io::run_manifest(io::parse_manifest(dir / "bad.mf"), out, Exec::serial);
  CHECK(code == 1);
  CHECK(out.str().find("expect-mismatch") != std::string::npos);

  {
    std::ofstream mf(dir / "good.mf");
    mf << "spectral complex=circle.fc classes=max.cl expect=max=1\n";
  }
  std::ostringstream out2;
  CHECK(io::run_manifest(io::parse_manifest(dir / "good.mf"), out2, Exec::serial) == 0);

  {
    std::ofstream mf(dir / "broken.mf");
    mf << "spectral complex=missing.fc classes=max.cl\n";
  }
  std::ostringstream out3;
  CHECK(io::run_manifest(io::parse_manifest(dir / "broken.mf"), out3, Exec::serial) == 2);
}
