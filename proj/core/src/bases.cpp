#include "cydft/bases.hpp"

#include <algorithm>

#include "cydft/linalg.hpp"

namespace cydft {

namespace {

// Rank over GF(2) of the coefficient masks.
unsigned mask_rank(const std::vector<FieldElement>& v) {
  std::vector<std::uint32_t> pivots;
  unsigned rank = 0;
  for (FieldElement e : v) {
    std::uint32_t x = e.mask();
    for (std::uint32_t p : pivots) x = std::min(x, x ^ p);
    if (x) {
      pivots.push_back(x);
      std::sort(pivots.rbegin(), pivots.rend());
      ++rank;
    }
  }
  return rank;
}

std::vector<FieldElement> conjugates(const FieldContext& field, FieldElement g,
                                     unsigned mk) {
  std::vector<FieldElement> out(mk);
  out[0] = g;
  for (unsigned s = 1; s < mk; ++s) out[s] = field.mul(out[s - 1], out[s - 1]);
  return out;
}

// Smallest s >= 1 with a^(2^s) = a; the degree of a over GF(2).
unsigned frobenius_orbit(const FieldContext& field, FieldElement a) {
  FieldElement x = field.mul(a, a);
  unsigned s = 1;
  while (x != a) {
    x = field.mul(x, x);
    ++s;
  }
  return s;
}

}  // namespace

NormalBasis find_normal_basis(const FieldContext& field, unsigned mk,
                              std::optional<FieldElement> generator_hint) {
  if (mk == 0 || field.degree() % mk != 0) {
    throw Error(Errc::degree_mismatch,
                "subfield degree " + std::to_string(mk) + " does not divide " +
                    std::to_string(field.degree()));
  }

  auto try_generator = [&](FieldElement g) -> std::optional<NormalBasis> {
    std::vector<FieldElement> elems = conjugates(field, g, mk);
    if (field.frobenius(g, mk) != g) return std::nullopt;
    if (mask_rank(elems) != mk) return std::nullopt;
    return NormalBasis{g, std::move(elems), mk};
  };

  if (generator_hint) {
    if (auto b = try_generator(*generator_hint)) return *std::move(b);
    throw Error(Errc::not_normal,
                "hint " + format_element(field, *generator_hint,
                                         ElementFormat::Power) +
                    " does not generate a normal basis of GF(2^" +
                    std::to_string(mk) + ")");
  }

  const std::uint32_t sub_n = (std::uint32_t{1} << mk) - 1;
  const std::uint32_t d = field.length() / sub_n;
  for (std::uint32_t t = 0; t < sub_n; ++t) {
    if (auto b = try_generator(field.alpha_pow(std::int64_t(t) * d))) {
      return *std::move(b);
    }
  }
  throw Error(Errc::no_basis_found,
              "no normal basis of GF(2^" + std::to_string(mk) + ") found");
}

NormalBasis dual_basis(const FieldContext& field, const NormalBasis& b) {
  const unsigned mk = b.degree;
  Gf2Matrix gram(mk, mk);
  for (unsigned s = 0; s < mk; ++s) {
    for (unsigned t = 0; t < mk; ++t) {
      FieldElement tr =
          field.subfield_trace(field.mul(b.elements[s], b.elements[t]), mk);
      gram.set(s, t, tr == field.one());
    }
  }

  Gf2Matrix c;
  try {
    c = invert_gf2_matrix(gram);
  } catch (const Error&) {
    throw Error(Errc::singular_gram,
                "gram matrix is singular; input is not a basis");
  }

  NormalBasis dual;
  dual.degree = mk;
  dual.elements.resize(mk);
  for (unsigned t = 0; t < mk; ++t) {
    FieldElement acc = field.zero();
    for (unsigned s = 0; s < mk; ++s) {
      if (c.get(s, t)) acc = field.add(acc, b.elements[s]);
    }
    dual.elements[t] = acc;
  }
  dual.generator = dual.elements[0];
  for (unsigned t = 0; t < mk; ++t) {
    if (dual.elements[t] != field.frobenius(dual.generator, t)) {
      throw Error(Errc::not_normal, "dual is not closed under squaring");
    }
  }
  return dual;
}

std::vector<bool> coordinates(const FieldContext& field, FieldElement x,
                              const NormalBasis& b,
                              const NormalBasis& b_dual) {
  const unsigned mk = b.degree;
  if (field.frobenius(x, mk) != x) {
    throw Error(Errc::not_in_subfield,
                format_element(field, x, ElementFormat::Hex) +
                    " is not in GF(2^" + std::to_string(mk) + ")");
  }
  std::vector<bool> bits(mk);
  for (unsigned s = 0; s < mk; ++s) {
    bits[s] = field.subfield_trace(field.mul(x, b_dual.elements[s]), mk) ==
              field.one();
  }
  return bits;
}

BasisSet BasisSet::build(const FieldContext& field,
                         const std::vector<unsigned>& degrees,
                         const std::vector<FieldElement>& hints) {
  std::map<unsigned, FieldElement> hint_by_degree;
  for (FieldElement h : hints) {
    if (h == field.zero()) {
      throw Error(Errc::not_normal, "hint 0 cannot generate a basis");
    }
    unsigned d = frobenius_orbit(field, h);
    if (!hint_by_degree.emplace(d, h).second) {
      throw Error(Errc::degree_mismatch,
                  "two hints for subfield degree " + std::to_string(d));
    }
  }

  BasisSet set;
  for (unsigned d : degrees) {
    if (set.pairs_.count(d)) continue;
    std::optional<FieldElement> hint;
    if (auto it = hint_by_degree.find(d); it != hint_by_degree.end()) {
      hint = it->second;
      hint_by_degree.erase(it);
    }
    NormalBasis basis = find_normal_basis(field, d, hint);
    NormalBasis dual = dual_basis(field, basis);
    set.pairs_.emplace(d, BasisPair{std::move(basis), std::move(dual)});
  }

  if (!hint_by_degree.empty()) {
    auto [d, h] = *hint_by_degree.begin();
    throw Error(Errc::degree_mismatch,
                "hint " + format_element(field, h, ElementFormat::Power) +
                    " targets subfield degree " + std::to_string(d) +
                    ", which does not occur");
  }
  return set;
}

const BasisPair& BasisSet::pair(unsigned degree) const {
  auto it = pairs_.find(degree);
  if (it == pairs_.end()) {
    throw Error(Errc::index_out_of_range,
                "no basis pair for subfield degree " + std::to_string(degree));
  }
  return it->second;
}

}  // namespace cydft
