#pragma once

#include <stdexcept>
#include <string>

namespace filtspec {

struct ring_mismatch_error : std::runtime_error {
  explicit ring_mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

struct non_unit_error : std::runtime_error {
  explicit non_unit_error(const std::string& what) : std::runtime_error(what) {}
};

struct undefined_weight_error : std::runtime_error {
  explicit undefined_weight_error(const std::string& what) : std::runtime_error(what) {}
};

struct filtration_error : std::runtime_error {
  explicit filtration_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_a_cycle_error : std::runtime_error {
  explicit not_a_cycle_error(const std::string& what) : std::runtime_error(what) {}
};

struct unsupported_ring_error : std::runtime_error {
  explicit unsupported_ring_error(const std::string& what) : std::runtime_error(what) {}
};

struct enumeration_cap_error : std::runtime_error {
  explicit enumeration_cap_error(const std::string& what) : std::runtime_error(what) {}
};

struct window_error : std::runtime_error {
  explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_witness_error : std::runtime_error {
  explicit invalid_witness_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
  parse_error(std::string file, int line, int column, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        file(std::move(file)),
        line(line),
        column(column) {}
  std::string file;
  int line;
  int column;
};

struct invalid_model_error : std::runtime_error {
  explicit invalid_model_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace filtspec
