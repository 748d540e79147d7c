#include "cydft/linalg.hpp"

#include <algorithm>
#include <bit>

namespace cydft {

void Gf2Matrix::xor_row(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < words_; ++w)
    bits_[dst * words_ + w] ^= bits_[src * words_ + w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t w = 0; w < words_; ++w)
    std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
}

bool Gf2Matrix::row_empty(std::size_t r) const {
  for (std::size_t w = 0; w < words_; ++w)
    if (bits_[r * words_ + w]) return false;
  return true;
}

std::size_t Gf2Matrix::row_ones(std::size_t r) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_; ++w)
    count += std::popcount(bits_[r * words_ + w]);
  return count;
}

std::size_t Gf2Matrix::ones() const {
  std::size_t count = 0;
  for (std::size_t r = 0; r < rows_; ++r) count += row_ones(r);
  return count;
}

Gf2Matrix invert_gf2_matrix(const Gf2Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::singular_matrix, "matrix is not square");
  }
  const std::size_t n = m.rows();
  Gf2Matrix work = m;
  Gf2Matrix inv = Gf2Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !work.get(pivot, col)) ++pivot;
    if (pivot == n) {
      throw Error(Errc::singular_matrix,
                  "no pivot in column " + std::to_string(col));
    }
    work.swap_rows(col, pivot);
    inv.swap_rows(col, pivot);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && work.get(r, col)) {
        work.xor_row(r, col);
        inv.xor_row(r, col);
      }
    }
  }
  return inv;
}

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.get(k, j)) out.set(i, j, !out.get(i, j));
      }
    }
  }
  return out;
}

std::vector<FieldElement> apply(const Gf2Matrix& m,
                                std::span<const FieldElement> v) {
  std::vector<FieldElement> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.get(r, c)) acc ^= v[c].mask();
    }
    out[r] = FieldElement(acc);
  }
  return out;
}

FieldMatrix multiply(const FieldContext& field, const FieldMatrix& a,
                     const FieldMatrix& b) {
  FieldMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement aik = a.at(i, k);
      if (aik == field.zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) = field.add(out.at(i, j), field.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

std::vector<FieldElement> apply(const FieldContext& field, const FieldMatrix& m,
                                std::span<const FieldElement> v) {
  std::vector<FieldElement> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    FieldElement acc = field.zero();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      acc = field.add(acc, field.mul(m.at(r, c), v[c]));
    }
    out[r] = acc;
  }
  return out;
}

bool is_identity(const FieldMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::uint32_t want = i == j ? 1 : 0;
      if (m.at(i, j).mask() != want) return false;
    }
  }
  return true;
}

FieldMatrix lift(const Gf2Matrix& m) {
  FieldMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) out.at(r, c) = FieldElement(1);
  return out;
}

}  // namespace cydft
