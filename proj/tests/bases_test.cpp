#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cydft/bases.hpp"
#include "cydft/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using cydft::BasisSet;
using cydft::Errc;
using cydft::FieldContext;
using cydft::FieldElement;
using cydft::NormalBasis;

namespace {

std::vector<FieldElement> subfield_elements(const FieldContext& f,
                                            unsigned mk) {
  std::vector<FieldElement> out{f.zero()};
  std::uint32_t sub_n = (1u << mk) - 1;
  std::uint32_t step = f.length() / sub_n;
  for (std::uint32_t t = 0; t < sub_n; ++t) {
    out.push_back(f.alpha_pow(std::int64_t(t) * step));
  }
  return out;
}

void check_normal(const FieldContext& f, const NormalBasis& b, unsigned mk) {
  REQUIRE(b.degree == mk);
  REQUIRE(b.elements.size() == mk);
  CHECK(b.elements[0] == b.generator);
  std::vector<std::uint32_t> masks;
  for (unsigned s = 0; s < mk; ++s) {
    CHECK(b.elements[s].mask() ==
          oracle::pow(f.degree(), f.modulus(), b.generator.mask(), 1u << s));
    masks.push_back(b.elements[s].mask());
  }
  CHECK(oracle::mask_rank(masks) == mk);
  CHECK(oracle::subfield_trace(f.degree(), f.modulus(), b.generator.mask(),
                               mk) == 1);
}

}  // namespace

TEST_CASE("hinted search returns the conjugate chain of the hint") {
  auto f8 = FieldContext::make(3, 0xB);
  auto b = cydft::find_normal_basis(f8, 3, f8.alpha_pow(3));
  check_normal(f8, b, 3);
  CHECK(b.elements == std::vector<FieldElement>{f8.alpha_pow(3),
                                                f8.alpha_pow(6),
                                                f8.alpha_pow(5)});

  auto f16 = FieldContext::make(4, 0x13);
  auto b4 = cydft::find_normal_basis(f16, 4, f16.alpha_pow(3));
  CHECK(b4.elements == std::vector<FieldElement>{f16.alpha_pow(3),
                                                 f16.alpha_pow(6),
                                                 f16.alpha_pow(12),
                                                 f16.alpha_pow(9)});
  auto b2 = cydft::find_normal_basis(f16, 2, f16.alpha_pow(5));
  CHECK(b2.elements ==
        std::vector<FieldElement>{f16.alpha_pow(5), f16.alpha_pow(10)});
}

TEST_CASE("unhinted search finds a normal basis for every subfield degree") {
  for (auto [m, poly] : support::sweep_fields()) {
    auto f = FieldContext::make(m, poly);
    for (unsigned mk = 1; mk <= m; ++mk) {
      if (m % mk != 0) continue;
      auto b = cydft::find_normal_basis(f, mk);
      check_normal(f, b, mk);
    }
  }
}

TEST_CASE("degree-1 basis is the identity element") {
  auto f = FieldContext::make(3, 0xB);
  auto b = cydft::find_normal_basis(f, 1);
  CHECK(b.elements == std::vector<FieldElement>{f.one()});
}

TEST_CASE("search rejects non-normal hints and bad degrees") {
  auto f = FieldContext::make(3, 0xB);
  // trace(alpha) = alpha + alpha^2 + alpha^4 = 0, so alpha is not normal.
  CHECK(support::errc_of([&] { cydft::find_normal_basis(f, 3, f.alpha()); }) ==
        Errc::not_normal);
  CHECK(support::errc_of([&] { cydft::find_normal_basis(f, 3, f.zero()); }) ==
        Errc::not_normal);
  CHECK(support::errc_of([&] { cydft::find_normal_basis(f, 2); }) ==
        Errc::degree_mismatch);
  CHECK(support::errc_of([&] { cydft::find_normal_basis(f, 0); }) ==
        Errc::degree_mismatch);
}

TEST_CASE("dual bases reproduce the published pairs") {
  auto f8 = FieldContext::make(3, 0xB);
  auto b = cydft::find_normal_basis(f8, 3, f8.alpha_pow(3));
  auto d = cydft::dual_basis(f8, b);
  CHECK(d.elements == b.elements);  // self-dual

  auto f16 = FieldContext::make(4, 0x13);
  auto b4 = cydft::find_normal_basis(f16, 4, f16.alpha_pow(3));
  auto d4 = cydft::dual_basis(f16, b4);
  CHECK(d4.elements == std::vector<FieldElement>{f16.alpha_pow(11),
                                                 f16.alpha_pow(7),
                                                 f16.alpha_pow(14),
                                                 f16.alpha_pow(13)});

  auto b2 = cydft::find_normal_basis(f16, 2, f16.alpha_pow(5));
  auto d2 = cydft::dual_basis(f16, b2);
  CHECK(d2.elements == b2.elements);
}

TEST_CASE("duality traces are delta(s,t) for every degree up to m=8") {
  for (unsigned m = 2; m <= 8; ++m) {
    std::uint32_t poly = 0;
    switch (m) {
      case 2: poly = 0x7; break;
      case 3: poly = 0xB; break;
      case 4: poly = 0x13; break;
      case 5: poly = 0x25; break;
      case 6: poly = 0x43; break;
      case 7: poly = 0x89; break;
      case 8: poly = 0x11D; break;
    }
    auto f = FieldContext::make(m, poly);
    for (unsigned mk = 1; mk <= m; ++mk) {
      if (m % mk != 0) continue;
      auto b = cydft::find_normal_basis(f, mk);
      auto d = cydft::dual_basis(f, b);
      check_normal(f, d, mk);
      for (unsigned s = 0; s < mk; ++s) {
        for (unsigned t = 0; t < mk; ++t) {
          std::uint32_t prod = oracle::mul(m, poly, b.elements[s].mask(),
                                           d.elements[t].mask());
          CHECK(oracle::subfield_trace(m, poly, prod, mk) ==
                (s == t ? 1u : 0u));
        }
      }
      // Duality is symmetric.
      auto dd = cydft::dual_basis(f, d);
      CHECK(dd.elements == b.elements);
    }
  }
}

TEST_CASE("coordinates reconstruct the element over the basis") {
  auto f16 = FieldContext::make(4, 0x13);
  for (unsigned mk : {1u, 2u, 4u}) {
    auto b = cydft::find_normal_basis(f16, mk);
    auto d = cydft::dual_basis(f16, b);
    for (FieldElement x : subfield_elements(f16, mk)) {
      auto bits = cydft::coordinates(f16, x, b, d);
      REQUIRE(bits.size() == mk);
      FieldElement acc = f16.zero();
      for (unsigned s = 0; s < mk; ++s) {
        if (bits[s]) acc = f16.add(acc, b.elements[s]);
      }
      CHECK(acc == x);
    }
  }
}

TEST_CASE("coordinates reject elements outside the subfield") {
  auto f16 = FieldContext::make(4, 0x13);
  auto b = cydft::find_normal_basis(f16, 2, f16.alpha_pow(5));
  auto d = cydft::dual_basis(f16, b);
  CHECK(support::errc_of([&] {
          cydft::coordinates(f16, f16.alpha(), b, d);
        }) == Errc::not_in_subfield);
}

TEST_CASE("basis set builds one pair per degree and matches hints") {
  auto f16 = FieldContext::make(4, 0x13);
  auto set = BasisSet::build(f16, {1, 2, 4},
                             {f16.alpha_pow(3), f16.alpha_pow(5)});
  CHECK(set.pairs().size() == 3);
  CHECK(set.pair(4).basis.generator == f16.alpha_pow(3));
  CHECK(set.pair(2).basis.generator == f16.alpha_pow(5));
  CHECK(set.pair(1).basis.generator == f16.one());
  CHECK(set.pair(4).dual.elements ==
        std::vector<FieldElement>{f16.alpha_pow(11), f16.alpha_pow(7),
                                  f16.alpha_pow(14), f16.alpha_pow(13)});
  CHECK(support::errc_of([&] { set.pair(3); }) == Errc::index_out_of_range);
}

TEST_CASE("basis set rejects misfit hints") {
  auto f16 = FieldContext::make(4, 0x13);
  // Two hints of the same degree.
  CHECK(support::errc_of([&] {
          BasisSet::build(f16, {1, 2, 4},
                          {f16.alpha_pow(3), f16.alpha_pow(6)});
        }) == Errc::degree_mismatch);
  // Hint whose degree is not wanted.
  CHECK(support::errc_of([&] {
          BasisSet::build(f16, {1, 2}, {f16.alpha_pow(3)});
        }) == Errc::degree_mismatch);
  // Zero hint has no degree at all.
  CHECK(support::errc_of([&] {
          BasisSet::build(f16, {1, 2, 4}, {f16.zero()});
        }) == Errc::not_normal);
}
