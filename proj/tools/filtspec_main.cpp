#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "filtspec/errors.hpp"
#include "filtspec/homology.hpp"
#include "filtspec/io.hpp"
#include "filtspec/models.hpp"
#include "filtspec/props.hpp"
#include "filtspec/random_complexes.hpp"
#include "filtspec/spectral.hpp"

using namespace filtspec;

namespace {

std::pair<int, int> parse_window_flag(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::runtime_error("malformed window '" + text + "'");
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

std::optional<Ring> parse_ring_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto ring = Ring::parse(text);
  if (!ring) throw std::runtime_error("unknown ring descriptor '" + text + "'");
  return ring;
}

FilteredComplex load_complex(const std::string& path, const std::string& ring_override,
                             const std::string& window, bool run_validation = true) {
  auto c = io::parse_complex(path, run_validation, parse_ring_flag(ring_override));
  if (!window.empty()) {
    auto [lo, hi] = parse_window_flag(window);
    c.set_window(lo, hi);
  }
  return c;
}

int run_selftest(unsigned long long seed, int count, Exec mode, std::ostream& out) {
  std::mt19937_64 rng(seed);
  bool all_ok = true;
  auto emit = [&](const props::PropertyReport& report) {
    out << report.to_string() << "\n";
    all_ok = all_ok && report.ok();
  };

  for (const Ring& ring : {Ring::prime_field(2), Ring::prime_field(3), Ring::rationals()}) {
    props::PropertyReport combined;
    combined.property = "duality over " + ring.to_string();
    for (int i = 0; i < count; ++i) {
      auto c = gen::random_complex(rng, ring);
      auto report = props::check_duality(c, mode);
      combined.instances += report.instances;
      for (auto& v : report.violations) combined.violations.push_back(std::move(v));
    }
    emit(combined);
  }

  {
    props::PropertyReport report;
    report.property = "oracle-equivalence";
    gen::RandomComplexOptions opt;
    opt.max_gens = 8;
    for (int i = 0; i < count; ++i) {
      auto c = gen::random_complex(rng, i % 2 ? Ring::prime_field(2) : Ring::prime_field(3), opt);
      for (const auto& cls : gen::sample_classes(rng, c, 2)) {
        ++report.instances;
        auto fast = spectral_invariant(c, cls);
        auto oracle = brute_force_invariant(c, cls);
        if (fast != oracle)
          report.violations.push_back({"random complex", fast.to_string(), oracle.to_string()});
      }
    }
    emit(report);
  }

  {
    props::PropertyReport report;
    report.property = "continuity";
    for (int i = 0; i < count; ++i) {
      auto c = gen::random_complex(rng, i % 2 ? Ring::rationals() : Ring::integers());
      auto sample = gen::random_perturbation(rng, c);
      for (const auto& cls : props::basis_classes(c)) {
        ++report.instances;
        auto a = spectral_invariant(c, cls);
        auto b = spectral_invariant(sample.perturbed, transport_by_name(cls, sample.perturbed));
        bool ok = a.is_finite() == b.is_finite();
        if (ok && a.is_finite()) {
          Rational d = a.value() - b.value();
          if (d < 0) d = -d;
          ok = d <= sample.eps;
        }
        if (!ok) report.violations.push_back({"perturbation", a.to_string(), b.to_string()});
      }
    }
    emit(report);
  }

  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral invariants of based filtered chain complexes"};
  app.require_subcommand(1);

  std::string complex_path, complex2_path, class_path, manifest_path;
  std::string ring_override, window;
  int degree = 0;
  unsigned long long seed = 1;
  int count = 100;
  bool serial = false;
  long long cap = 531441;

  auto add_complex_flags = [&](CLI::App* cmd) {
    cmd->add_option("--complex", complex_path, "complex description file")->required();
    cmd->add_option("--ring-override", ring_override, "reinterpret coefficients over this ring");
    cmd->add_option("--window", window, "Novikov monomial window k:k");
  };

  auto* validate_cmd = app.add_subcommand("validate", "report violated complex invariants");
  add_complex_flags(validate_cmd);

  auto* homology_cmd = app.add_subcommand("homology", "exact homology in one degree");
  add_complex_flags(homology_cmd);
  homology_cmd->add_option("--degree", degree, "homological degree")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "the action spectrum");
  add_complex_flags(spectrum_cmd);

  auto* spectral_cmd = app.add_subcommand("spectral", "spectral invariants of classes");
  add_complex_flags(spectral_cmd);
  spectral_cmd->add_option("--class", class_path, "class file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force spectral invariants");
  add_complex_flags(oracle_cmd);
  oracle_cmd->add_option("--class", class_path, "class file")->required();
  oracle_cmd->add_option("--cap", cap, "enumeration cap on p^dim");

  auto* dualize_cmd = app.add_subcommand("dualize", "emit the dual (opposite) complex");
  add_complex_flags(dualize_cmd);

  auto* tensor_cmd = app.add_subcommand("tensor", "emit the graded tensor product");
  add_complex_flags(tensor_cmd);
  tensor_cmd->add_option("--complex2", complex2_path, "second factor")->required();

  int lift_degree = 2;
  std::string lift_area = "1";
  auto* lift_cmd = app.add_subcommand("lift", "emit a Novikov lift of a base complex");
  add_complex_flags(lift_cmd);
  lift_cmd->add_option("--period-degree", lift_degree, "degree shift of t (N >= 2)");
  lift_cmd->add_option("--period-action", lift_area, "action shift of t (positive rational)");

  auto* verify_cmd = app.add_subcommand("verify", "run a manifest of property checks");
  verify_cmd->add_option("--manifest", manifest_path, "manifest file")->required();
  verify_cmd->add_flag("--serial", serial, "disable job parallelism");
  verify_cmd->add_option("--seed", seed, "seed (accepted for interface stability)");

  auto* selftest_cmd = app.add_subcommand("selftest", "randomized property batteries");
  selftest_cmd->add_option("--seed", seed, "random seed");
  selftest_cmd->add_option("--count", count, "instances per battery");
  selftest_cmd->add_flag("--serial", serial, "disable parallelism");

  CLI11_PARSE(app, argc, argv);
  Exec mode = serial ? Exec::serial : Exec::parallel;

  try {
    if (validate_cmd->parsed()) {
      auto c = load_complex(complex_path, ring_override, window, /*run_validation=*/false);
      auto report = validate(c);
      std::cout << report.to_string() << (report.ok() ? "\n" : "");
      return report.ok() ? 0 : 1;
    }
    if (homology_cmd->parsed()) {
      auto c = load_complex(complex_path, ring_override, window);
      auto basis = homology(c, degree);
      std::cout << "rank=" << basis.rank() << " torsion=";
      for (std::size_t i = 0; i < basis.torsion_part.size(); ++i)
        std::cout << (i ? "," : "") << basis.torsion_part[i].second.str();
      std::cout << "\n";
      return 0;
    }
    if (spectrum_cmd->parsed()) {
      auto c = load_complex(complex_path, ring_override, window);
      std::cout << action_spectrum(c).to_string() << "\n";
      return 0;
    }
    if (spectral_cmd->parsed() || oracle_cmd->parsed()) {
      auto c = load_complex(complex_path, ring_override, window);
      OracleLimits limits;
      limits.cap = cap;
      for (const auto& named : io::parse_classes(class_path, c)) {
        SpectralValue v = spectral_cmd->parsed() ? spectral_invariant(c, named.cls)
                                                 : brute_force_invariant(c, named.cls, limits);
        std::cout << v.to_string() << "\n";
      }
      return 0;
    }
    if (dualize_cmd->parsed()) {
      std::cout << io::emit_complex(dualize(load_complex(complex_path, ring_override, window)));
      return 0;
    }
    if (tensor_cmd->parsed()) {
      auto a = load_complex(complex_path, ring_override, window);
      auto b = load_complex(complex2_path, ring_override, window);
      std::cout << io::emit_complex(tensor(a, b));
      return 0;
    }
    if (lift_cmd->parsed()) {
      auto base = load_complex(complex_path, ring_override, "");
      auto area = parse_rational(lift_area);
      if (!area || *area <= 0) throw std::runtime_error("malformed --period-action");
      auto [lo, hi] = window.empty() ? std::pair<int, int>{0, 0} : parse_window_flag(window);
      std::cout << io::emit_complex(novikov_lift(base, lift_degree, *area, lo, hi));
      return 0;
    }
    if (verify_cmd->parsed()) {
      auto manifest = io::parse_manifest(manifest_path);
      return io::run_manifest(manifest, std::cout, mode);
    }
    if (selftest_cmd->parsed()) return run_selftest(seed, count, mode, std::cout);
  } catch (const validation_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
