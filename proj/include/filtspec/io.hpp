#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filtspec/complex.hpp"
#include "filtspec/models.hpp"
#include "filtspec/parallel.hpp"

namespace filtspec::io {

// Complex description files, one declaration per line, '#' comments:
//   ring <descriptor>
//   gen <name> deg=<int> action=<rational>
//   bnd <src> <dst> <coeff>
//   window <k>:<k>          (Novikov rings only)
//   tag <string>
// Coefficients: integer, "a/b", or a Novikov polynomial like "3*t^-1+1*t^0".

FilteredComplex parse_complex_text(const std::string& text, const std::string& filename,
                                   bool run_validation = true,
                                   const std::optional<Ring>& ring_override = std::nullopt);
FilteredComplex parse_complex(const std::filesystem::path& path, bool run_validation = true,
                              const std::optional<Ring>& ring_override = std::nullopt);
std::string emit_complex(const FilteredComplex& c);

struct NamedClass {
  std::string name;
  ChainClass cls;
};

// Class files: "cls <name> deg=<int>" header lines, then "term <gen> <coeff>".
std::vector<NamedClass> parse_classes_text(const std::string& text, const std::string& filename,
                                           const FilteredComplex& cx);
std::vector<NamedClass> parse_classes(const std::filesystem::path& path,
                                      const FilteredComplex& cx);

// Map files: "map", optional "shift <rational>", then "ent <src> <dst> <coeff>".
FilteredMap parse_map(const std::filesystem::path& path, const FilteredComplex& src,
                      const FilteredComplex& dst);
// Same grammar without the chain-map/shift invariants (homotopy witnesses).
SparseLinearMap parse_linear_map(const std::filesystem::path& path, const FilteredComplex& src,
                                 const FilteredComplex& dst);

// Product files: "slack <rational>", optional "unit <gen>" / "degshift <int>",
// then "prod <g1> <g2> <gout> <coeff>".
ProductData parse_product(const std::filesystem::path& path, const FilteredComplex& f1,
                          const FilteredComplex& f2, const FilteredComplex& target);

Coefficient parse_coefficient(const Ring& ring, const std::string& text);

// Manifests: one job per line, "<command> key=path ... [expect=<text>]".
// Property commands: finiteness spectrality continuation triangle module
// duality novikov tensor diagonal conjugation; compute commands: validate
// homology spectrum spectral oracle. expect= compares against the first
// output line of the job.
struct ManifestJob {
  std::string command;
  std::map<std::string, std::string> args;
  std::optional<std::string> expect;
  int line = 0;
};

struct Manifest {
  std::vector<ManifestJob> jobs;
  std::filesystem::path base_dir;
  std::string filename;
};

Manifest parse_manifest(const std::filesystem::path& path);

// Runs the jobs (in parallel unless mode is serial), emitting buffered output
// in manifest order. Exit code: 0 clean, 1 any violation or expect mismatch,
// 2 any input error.
int run_manifest(const Manifest& manifest, std::ostream& out, Exec mode);

}  // namespace filtspec::io
