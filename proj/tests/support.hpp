#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cydft/gf2m.hpp"

namespace support {

// Code of the cydft::Error an expression throws; fails the enclosing test
// assertion by returning a sentinel when nothing was thrown.
template <typename Fn>
cydft::Errc errc_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const cydft::Error& e) {
    return e.code();
  }
  return static_cast<cydft::Errc>(0xFF);
}

inline std::vector<cydft::FieldElement> random_vector(
    const cydft::FieldContext& field, std::mt19937_64& rng) {
  std::vector<cydft::FieldElement> v(field.length());
  for (auto& e : v) e = cydft::FieldElement(std::uint32_t(rng()) & field.length());
  return v;
}

// (m, poly) pairs the property sweeps run over.
inline const std::vector<std::pair<unsigned, std::uint32_t>>& sweep_fields() {
  static const std::vector<std::pair<unsigned, std::uint32_t>> fields = {
      {2, 0x7}, {3, 0xB}, {4, 0x13}, {5, 0x25}, {6, 0x43}, {8, 0x11D}};
  return fields;
}

}  // namespace support
