#pragma once

#include <span>
#include <vector>

#include "cydft/factorize.hpp"
#include "cydft/gf2m.hpp"
#include "cydft/linalg.hpp"

namespace cydft {

using Signal = std::vector<FieldElement>;
using Spectrum = std::vector<FieldElement>;

/// F_j = sum_i f_i alpha^(i j). The quadratic oracle every fast path is
/// checked against.
Spectrum naive_dft(const FieldContext& field, std::span<const FieldElement> f,
                   EvalCounters* counters = nullptr);

/// W^-1 = E W, so the inverse is one more naive pass followed by the index
/// reversal.
Signal naive_idft(const FieldContext& field, std::span<const FieldElement> F,
                  EvalCounters* counters = nullptr);

/// F = A (L (Pi f)) on the scheduled fast path.
Spectrum cyclotomic_dft(const TransformPlan& plan, const EvalSchedule& schedule,
                        std::span<const FieldElement> f,
                        EvalCounters* counters = nullptr);

/// f = Pi^-1 (L^-1 (A^-1 F)), the L^-1 blocks running on dual-basis
/// constants.
Signal cyclotomic_idft(const TransformPlan& plan, const EvalSchedule& schedule,
                       std::span<const FieldElement> F,
                       EvalCounters* counters = nullptr);

/// Forward transform computed from the inverse factors: g = L^-1 (A^-1 f)
/// equals (Pi E) F, so F = E (Pi^-1 g).
Spectrum forward_via_inverse_factors(const TransformPlan& plan,
                                     const EvalSchedule& schedule,
                                     std::span<const FieldElement> f,
                                     EvalCounters* counters = nullptr);

/// The full n-by-n Vandermonde matrix alpha^(i j).
FieldMatrix vandermonde_matrix(const FieldContext& field);

/// (Pi E) W == L^-1 A^-1, assembled entrywise from the plan's matrices.
bool theorem1_matrix_check(const TransformPlan& plan);

/// Same identity from caller-supplied parts, so tests can corrupt one factor
/// and watch the check fail.
bool theorem1_matrix_check(const FieldContext& field,
                           const CosetStructure& structure,
                           const Gf2Matrix& a_inv, const FieldMatrix& l_inv,
                           const FieldMatrix& w);

}  // namespace cydft
