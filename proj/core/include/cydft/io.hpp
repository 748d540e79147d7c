#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cydft/factorize.hpp"
#include "cydft/gf2m.hpp"
#include "cydft/linalg.hpp"

namespace cydft {

/// Comma-separated by default; the parser splits on commas and whitespace.
std::string format_vector(const FieldContext& field,
                          std::span<const FieldElement> v, ElementFormat fmt,
                          std::string_view sep = ",");
std::vector<FieldElement> parse_vector(const FieldContext& field,
                                       std::string_view text);

/// Matrix text: one row per line, entries separated by single spaces,
/// trailing newline. 0/1 entries for GF(2), element forms for field values.
std::string format_gf2_matrix(const Gf2Matrix& m);
Gf2Matrix parse_gf2_matrix(std::string_view text);
std::string format_field_matrix(const FieldContext& field, const FieldMatrix& m,
                                ElementFormat fmt);
FieldMatrix parse_field_matrix(const FieldContext& field,
                               std::string_view text);

struct CellMismatch {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string expected;
  std::string actual;
};

/// First cell whose token differs between the two matrix texts, or nullopt
/// when the token grids agree.
std::optional<CellMismatch> compare_matrix_text(std::string_view expected,
                                                std::string_view actual);

/// JSON document with the field, ordering, cosets, bases, and the four
/// matrices rendered in the matrix text format (plus Pi and the block
/// strategies when a schedule is given).
std::string plan_to_json(const TransformPlan& plan,
                         const EvalSchedule* schedule = nullptr);

/// Human-oriented plan dump: cosets, Z, bases, duals, all matrices.
std::string plan_to_text(const TransformPlan& plan);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace cydft
