#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cydft {

enum class Errc {
  not_irreducible,
  not_primitive,
  degree_mismatch,
  zero_to_nonpositive_power,
  division_by_zero,
  not_in_subfield,
  length_mismatch,
  not_normal,
  no_basis_found,
  singular_gram,
  singular_matrix,
  index_out_of_range,
  verification_failed,
  parse_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// One element of GF(2^m). Bit i of mask() is the coefficient of x^i in the
/// polynomial-basis representation; the owning FieldContext fixes m.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t mask) : mask_(mask) {}
  constexpr std::uint32_t mask() const { return mask_; }

  friend constexpr bool operator==(FieldElement, FieldElement) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Arithmetic context for GF(2^m) = GF(2)[x]/(primitive_poly), 2 <= m <= 16.
/// alpha is the residue class of x and generates the multiplicative group, so
/// n = 2^m - 1 is both the group order and the transform length.
///
/// Immutable after make(); all operations are pure and safe to share across
/// threads. Multiplication runs on log/antilog tables; mul_shift_reduce is the
/// table-free path the tables are cross-checked against.
class FieldContext {
 public:
  static FieldContext make(unsigned m, std::uint32_t primitive_poly);

  unsigned degree() const { return m_; }
  std::uint32_t modulus() const { return poly_; }
  std::uint32_t length() const { return n_; }

  FieldElement zero() const { return FieldElement(0); }
  FieldElement one() const { return FieldElement(1); }
  FieldElement alpha() const { return alpha_; }

  bool contains(FieldElement a) const { return a.mask() <= n_; }

  FieldElement add(FieldElement a, FieldElement b) const {
    return FieldElement(a.mask() ^ b.mask());
  }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.mask() == 0 || b.mask() == 0) return zero();
    std::uint32_t s = log_[a.mask()] + log_[b.mask()];
    if (s >= n_) s -= n_;
    return FieldElement(antilog_[s]);
  }
  FieldElement mul_shift_reduce(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::int64_t k) const;
  FieldElement inverse(FieldElement a) const;
  /// Frobenius iterate a^(2^p).
  FieldElement frobenius(FieldElement a, unsigned p) const;
  /// Trace of a onto GF(2) taken over the degree-mk subfield containing a:
  /// sum of a^(2^p) for p in [0, mk). Requires mk | m and a in GF(2^mk).
  FieldElement subfield_trace(FieldElement a, unsigned mk) const;

  /// alpha^k with k taken mod n (negative k allowed).
  FieldElement alpha_pow(std::int64_t k) const;
  /// Discrete log base alpha of nonzero a, in [0, n).
  unsigned log(FieldElement a) const;

 private:
  FieldContext() = default;

  unsigned m_ = 0;
  std::uint32_t poly_ = 0;
  std::uint32_t n_ = 0;
  FieldElement alpha_;
  std::vector<std::uint16_t> log_;
  std::vector<std::uint16_t> antilog_;
};

/// Element text forms shared by every interface: power form "0", "1", "a^k"
/// with 1 <= k <= n-1; hex form "0x.." of the coefficient mask.
enum class ElementFormat { Power, Hex };

std::string format_element(const FieldContext& field, FieldElement e,
                           ElementFormat format);
/// Accepts both forms; power exponents are reduced mod n.
FieldElement parse_element(const FieldContext& field, std::string_view text);

}  // namespace cydft
