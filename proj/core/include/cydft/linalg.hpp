#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cydft/gf2m.hpp"

namespace cydft {

/// Dense matrix over GF(2), each row packed into 64-bit words. Padding bits
/// past cols() stay zero, so whole-storage comparison is valid.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(rows * words_, 0) {}

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return bits_[r * words_ + c / 64] >> (c % 64) & 1;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    if (v)
      w |= bit;
    else
      w &= ~bit;
  }

  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_empty(std::size_t r) const;
  std::size_t row_ones(std::size_t r) const;
  std::size_t ones() const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Gauss-Jordan over GF(2). Throws Errc::singular_matrix.
Gf2Matrix invert_gf2_matrix(const Gf2Matrix& m);

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);

/// y = M v over the field: XOR of the v entries selected by each row.
std::vector<FieldElement> apply(const Gf2Matrix& m,
                                std::span<const FieldElement> v);

/// Dense field-valued matrix, row-major.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static FieldMatrix identity(std::size_t n) {
    FieldMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

FieldMatrix multiply(const FieldContext& field, const FieldMatrix& a,
                     const FieldMatrix& b);
std::vector<FieldElement> apply(const FieldContext& field, const FieldMatrix& m,
                                std::span<const FieldElement> v);
bool is_identity(const FieldMatrix& m);

/// Lift a 0/1 matrix into the field (masks 0 and 1).
FieldMatrix lift(const Gf2Matrix& m);

}  // namespace cydft
