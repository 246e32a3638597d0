#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "filtspec/io.hpp"
#include "filtspec/models.hpp"
#include "filtspec/props.hpp"
#include "filtspec/random_complexes.hpp"
#include "filtspec/spectral.hpp"

using namespace filtspec;

namespace {
const std::filesystem::path corpus_dir = FILTSPEC_CORPUS_DIR;
}

TEST_CASE("oracle: OpenMP reduction equals the serial reference") {
  std::mt19937_64 rng(111);
  gen::RandomComplexOptions opt;
  opt.max_gens = 8;
  for (int i = 0; i < 25; ++i) {
    auto c = gen::random_complex(rng, i % 2 ? Ring::prime_field(3) : Ring::prime_field(2), opt);
    for (const auto& cls : gen::sample_classes(rng, c, 2))
      CHECK(brute_force_invariant(c, cls) == brute_force_invariant_serial(c, cls));
  }
}

TEST_CASE("spectral batch: parallel equals serial") {
  std::mt19937_64 rng(112);
  std::vector<FilteredComplex> complexes;
  std::vector<std::vector<ChainClass>> classes;
  for (int i = 0; i < 20; ++i)
    complexes.push_back(gen::random_complex(rng, i % 2 ? Ring::integers() : Ring::rationals()));
  for (const auto& c : complexes) classes.push_back(gen::sample_classes(rng, c, 2));
  std::vector<SpectralJob> jobs;
  for (std::size_t i = 0; i < complexes.size(); ++i)
    for (const auto& cls : classes[i]) jobs.push_back({&complexes[i], &cls});
  auto serial = spectral_batch(jobs, Exec::serial);
  auto parallel = spectral_batch(jobs, Exec::parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("property checks: parallel equals serial") {
  std::mt19937_64 rng(113);
  for (int i = 0; i < 8; ++i) {
    auto c = gen::random_complex(rng, Ring::prime_field(3));
    auto classes = gen::sample_classes(rng, c, 3);
    CHECK(props::check_finiteness(c, classes, Exec::serial).to_string() ==
          props::check_finiteness(c, classes, Exec::parallel).to_string());
    CHECK(props::check_duality(c, Exec::serial).to_string() ==
          props::check_duality(c, Exec::parallel).to_string());
  }
}

TEST_CASE("manifest runner: parallel output is byte-identical to serial") {
  auto manifest = io::parse_manifest(corpus_dir / "corpus.mf");
  std::ostringstream serial, parallel;
  int code_serial = io::run_manifest(manifest, serial, Exec::serial);
  int code_parallel = io::run_manifest(manifest, parallel, Exec::parallel);
  CHECK(code_serial == code_parallel);
  CHECK(serial.str() == parallel.str());
}
