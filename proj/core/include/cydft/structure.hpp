#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cydft/gf2m.hpp"
#include "cydft/linalg.hpp"

namespace cydft {

/// Order of the cyclotomic cosets inside the index vector Z. The zero coset
/// always comes first. SizeDescending then sorts by size, largest first, with
/// leader-ascending ties, which is the order the committed fixtures use;
/// LeaderAscending sorts by leader alone.
enum class CosetOrdering { SizeDescending, LeaderAscending };

/// One cyclotomic coset mod n: {c, 2c, 4c, ...} with elements in doubling
/// order starting from the minimal member.
struct Coset {
  std::uint32_t leader = 0;
  std::vector<std::uint32_t> elements;

  unsigned size() const { return static_cast<unsigned>(elements.size()); }
};

/// The coset partition of {0..n-1} under doubling mod n, the concatenated
/// index vector Z, and the permutations Pi (row i picks column Z_i) and E
/// (row 0 keeps 0, row i picks n-i).
class CosetStructure {
 public:
  static CosetStructure build(std::uint32_t n, CosetOrdering ordering);

  std::uint32_t length() const { return n_; }
  CosetOrdering ordering() const { return ordering_; }
  const std::vector<Coset>& cosets() const { return cosets_; }
  const std::vector<std::uint32_t>& z() const { return z_; }

  std::vector<FieldElement> apply_pi(std::span<const FieldElement> f) const;
  std::vector<FieldElement> apply_pi_inverse(
      std::span<const FieldElement> v) const;
  std::vector<FieldElement> apply_e(std::span<const FieldElement> v) const;

  /// Index form of Pi*E: entry i names the input slot that lands at output
  /// slot i, that is (n - Z_i) mod n.
  std::vector<std::uint32_t> compose_pi_e() const;

  Gf2Matrix pi_matrix() const;
  Gf2Matrix e_matrix() const;

 private:
  std::uint32_t n_ = 0;
  CosetOrdering ordering_ = CosetOrdering::SizeDescending;
  std::vector<Coset> cosets_;
  std::vector<std::uint32_t> z_;
};

}  // namespace cydft
