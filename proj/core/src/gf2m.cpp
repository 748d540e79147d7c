#include "cydft/gf2m.hpp"

#include <charconv>

namespace cydft {

namespace {

unsigned poly_degree(std::uint64_t p) {
  unsigned d = 0;
  while (p > 1) {
    p >>= 1;
    ++d;
  }
  return d;
}

// Remainder of a mod b over GF(2)[x], both as bitmasks, b != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned db = poly_degree(b);
  while (a >= (std::uint64_t{1} << db)) {
    a ^= b << (poly_degree(a) - db);
  }
  return a;
}

bool is_irreducible(std::uint32_t poly, unsigned m) {
  // Trial division by every polynomial of degree 1..m/2. Degree <= 8 at
  // m = 16, so the divisor space is tiny.
  for (unsigned d = 1; 2 * d <= m; ++d) {
    const std::uint64_t lo = std::uint64_t{1} << d;
    for (std::uint64_t q = lo; q < 2 * lo; ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
  }
  return true;
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_irreducible: return "not irreducible";
    case Errc::not_primitive: return "not primitive";
    case Errc::degree_mismatch: return "degree mismatch";
    case Errc::zero_to_nonpositive_power: return "zero to nonpositive power";
    case Errc::division_by_zero: return "division by zero";
    case Errc::not_in_subfield: return "not in subfield";
    case Errc::length_mismatch: return "length mismatch";
    case Errc::not_normal: return "not normal";
    case Errc::no_basis_found: return "no basis found";
    case Errc::singular_gram: return "singular gram matrix";
    case Errc::singular_matrix: return "singular matrix";
    case Errc::index_out_of_range: return "index out of range";
    case Errc::verification_failed: return "verification failed";
    case Errc::parse_error: return "parse error";
  }
  return "unknown";
}

FieldContext FieldContext::make(unsigned m, std::uint32_t primitive_poly) {
  if (m < 2 || m > 16) {
    throw Error(Errc::degree_mismatch,
                "extension degree m must be in [2, 16], got " +
                    std::to_string(m));
  }
  if (primitive_poly >> m != 1) {
    throw Error(Errc::degree_mismatch,
                "polynomial degree does not match m = " + std::to_string(m));
  }
  if (!is_irreducible(primitive_poly, m)) {
    throw Error(Errc::not_irreducible, "polynomial is not irreducible");
  }

  FieldContext f;
  f.m_ = m;
  f.poly_ = primitive_poly;
  f.n_ = (std::uint32_t{1} << m) - 1;
  f.alpha_ = FieldElement(2);
  f.log_.assign(std::size_t{1} << m, 0);
  f.antilog_.assign(f.n_, 0);

  // Walk the powers of x with shift-and-reduce; hitting 1 before step n
  // means ord(x) < n.
  std::uint32_t b = 1;
  for (std::uint32_t k = 0; k < f.n_; ++k) {
    if (b == 1 && k > 0) {
      throw Error(Errc::not_primitive,
                  "x has multiplicative order " + std::to_string(k) +
                      " < 2^m - 1");
    }
    f.antilog_[k] = static_cast<std::uint16_t>(b);
    f.log_[b] = static_cast<std::uint16_t>(k);
    b <<= 1;
    if (b >> m) b ^= primitive_poly;
  }
  if (b != 1) {
    throw Error(Errc::not_primitive, "x^n != 1");
  }
  return f;
}

FieldElement FieldContext::mul_shift_reduce(FieldElement a,
                                            FieldElement b) const {
  std::uint64_t acc = 0;
  std::uint64_t x = a.mask();
  for (std::uint32_t bits = b.mask(); bits; bits >>= 1, x <<= 1) {
    if (bits & 1) acc ^= x;
  }
  for (int d = 2 * static_cast<int>(m_) - 2; d >= static_cast<int>(m_); --d) {
    if (acc >> d & 1) acc ^= std::uint64_t{poly_} << (d - m_);
  }
  return FieldElement(static_cast<std::uint32_t>(acc));
}

FieldElement FieldContext::pow(FieldElement a, std::int64_t k) const {
  if (a.mask() == 0) {
    if (k <= 0) {
      throw Error(Errc::zero_to_nonpositive_power,
                  "0 raised to power " + std::to_string(k));
    }
    return zero();
  }
  std::int64_t e = (k % n_ + n_) % n_;
  return FieldElement(antilog_[std::uint64_t(log_[a.mask()]) * e % n_]);
}

FieldElement FieldContext::inverse(FieldElement a) const {
  if (a.mask() == 0) {
    throw Error(Errc::division_by_zero, "inverse of zero");
  }
  return FieldElement(antilog_[(n_ - log_[a.mask()]) % n_]);
}

FieldElement FieldContext::frobenius(FieldElement a, unsigned p) const {
  FieldElement r = a;
  for (unsigned i = 0; i < p % m_; ++i) r = mul(r, r);
  return r;
}

FieldElement FieldContext::subfield_trace(FieldElement a, unsigned mk) const {
  if (mk == 0 || m_ % mk != 0) {
    throw Error(Errc::not_in_subfield,
                "degree " + std::to_string(mk) + " does not divide m");
  }
  if (frobenius(a, mk) != a) {
    throw Error(Errc::not_in_subfield,
                "element is not fixed by the degree-" + std::to_string(mk) +
                    " Frobenius");
  }
  FieldElement acc = zero();
  FieldElement x = a;
  for (unsigned p = 0; p < mk; ++p) {
    acc = add(acc, x);
    x = mul(x, x);
  }
  return acc;
}

FieldElement FieldContext::alpha_pow(std::int64_t k) const {
  return FieldElement(antilog_[(k % n_ + n_) % n_]);
}

unsigned FieldContext::log(FieldElement a) const {
  if (a.mask() == 0) {
    throw Error(Errc::division_by_zero, "log of zero");
  }
  return log_[a.mask()];
}

std::string format_element(const FieldContext& field, FieldElement e,
                           ElementFormat format) {
  if (format == ElementFormat::Hex) {
    static const char digits[] = "0123456789ABCDEF";
    std::string out;
    std::uint32_t v = e.mask();
    do {
      out.insert(out.begin(), digits[v & 0xF]);
      v >>= 4;
    } while (v);
    return "0x" + out;
  }
  if (e.mask() == 0) return "0";
  unsigned k = field.log(e);
  if (k == 0) return "1";
  return "a^" + std::to_string(k);
}

FieldElement parse_element(const FieldContext& field, std::string_view text) {
  auto fail = [&] {
    return Error(Errc::parse_error,
                 "cannot parse field element '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  if (text == "0") return field.zero();
  if (text == "1") return field.one();
  if (text.size() > 2 && (text.substr(0, 2) == "0x" || text.substr(0, 2) == "0X")) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(text.data() + 2, text.data() + text.size(),
                                   v, 16);
    if (ec != std::errc{} || p != text.data() + text.size()) throw fail();
    if (v > field.length()) {
      throw Error(Errc::parse_error,
                  "mask " + std::string(text) + " out of range for GF(2^" +
                      std::to_string(field.degree()) + ")");
    }
    return FieldElement(v);
  }
  if ((text[0] == 'a' || text[0] == 'A') && text.size() > 2 && text[1] == '^') {
    std::int64_t k = 0;
    auto [p, ec] =
        std::from_chars(text.data() + 2, text.data() + text.size(), k, 10);
    if (ec != std::errc{} || p != text.data() + text.size()) throw fail();
    return field.alpha_pow(k);
  }
  throw fail();
}

}  // namespace cydft
