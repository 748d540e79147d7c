#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cydft/gf2m.hpp"

namespace cydft {

/// Normal basis (b, b^2, b^4, ...) of the subfield GF(2^mk) inside GF(2^m).
struct NormalBasis {
  FieldElement generator;
  std::vector<FieldElement> elements;
  unsigned degree = 0;
};

/// If no hint is given, candidates are the nonzero subfield elements
/// alpha^(t*d) with d = n/(2^mk - 1), tried in ascending t; the first one
/// whose conjugates are GF(2)-independent wins. A hint short-circuits the
/// search but is validated the same way.
NormalBasis find_normal_basis(const FieldContext& field, unsigned mk,
                              std::optional<FieldElement> generator_hint = {});

/// The unique basis b' with subfield_trace(b_s * b'_t, mk) = delta_st,
/// obtained by inverting the GF(2) Gram matrix trace(b_s * b_t).
NormalBasis dual_basis(const FieldContext& field, const NormalBasis& b);

/// Expansion bits (a_s) of x over b, via a_s = subfield_trace(x * b'_s, mk).
std::vector<bool> coordinates(const FieldContext& field, FieldElement x,
                              const NormalBasis& b, const NormalBasis& b_dual);

/// One basis/dual pair per distinct subfield degree.
struct BasisPair {
  NormalBasis basis;
  NormalBasis dual;
};

class BasisSet {
 public:
  /// Builds pairs for each degree in `degrees`. Hints are matched to degrees
  /// by the size of the hint element's Frobenius orbit.
  static BasisSet build(const FieldContext& field,
                        const std::vector<unsigned>& degrees,
                        const std::vector<FieldElement>& hints = {});

  const BasisPair& pair(unsigned degree) const;
  const std::map<unsigned, BasisPair>& pairs() const { return pairs_; }

 private:
  std::map<unsigned, BasisPair> pairs_;
};

}  // namespace cydft
