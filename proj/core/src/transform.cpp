#include "cydft/transform.hpp"

namespace cydft {

namespace {

void require_length(std::size_t got, std::uint32_t n) {
  if (got != n) {
    throw Error(Errc::length_mismatch,
                "vector length " + std::to_string(got) + " != n = " +
                    std::to_string(n));
  }
}

// One Vandermonde pass: out_j = sum_i v_i alpha^(i j). Products where
// alpha^(i j) = 1 and the j = 0 row's pure-sum structure stay visible to the
// counters through EvalCounters::mul's constant filter.
std::vector<FieldElement> vandermonde_apply(const FieldContext& field,
                                            std::span<const FieldElement> v,
                                            EvalCounters* counters) {
  const std::uint32_t n = field.length();
  require_length(v.size(), n);
  std::vector<FieldElement> out(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    FieldElement acc;
    for (std::uint32_t i = 0; i < n; ++i) {
      const FieldElement w = field.alpha_pow(std::int64_t(i) * j);
      if (counters) counters->mul(w);
      const FieldElement term = field.mul(w, v[i]);
      if (i == 0) {
        acc = term;
      } else {
        if (counters) counters->add();
        acc = field.add(acc, term);
      }
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace

Spectrum naive_dft(const FieldContext& field, std::span<const FieldElement> f,
                   EvalCounters* counters) {
  return vandermonde_apply(field, f, counters);
}

Signal naive_idft(const FieldContext& field, std::span<const FieldElement> F,
                  EvalCounters* counters) {
  const std::uint32_t n = field.length();
  require_length(F.size(), n);
  std::vector<FieldElement> w = vandermonde_apply(field, F, counters);
  std::vector<FieldElement> out(n);
  out[0] = w[0];
  for (std::uint32_t i = 1; i < n; ++i) out[i] = w[n - i];
  return out;
}

Spectrum cyclotomic_dft(const TransformPlan& plan, const EvalSchedule& schedule,
                        std::span<const FieldElement> f,
                        EvalCounters* counters) {
  require_length(f.size(), plan.field().length());
  return scheduled_forward(plan, schedule, f, counters);
}

Signal cyclotomic_idft(const TransformPlan& plan, const EvalSchedule& schedule,
                       std::span<const FieldElement> F,
                       EvalCounters* counters) {
  require_length(F.size(), plan.field().length());
  std::vector<FieldElement> g =
      apply_addition_plan(schedule.a_inv_plan, F, counters);
  std::vector<FieldElement> h(g.size());
  for (const BlockPlan& block : schedule.inverse_blocks) {
    apply_block(plan.field(), block, g, h, counters);
  }
  return plan.structure().apply_pi_inverse(h);
}

Spectrum forward_via_inverse_factors(const TransformPlan& plan,
                                     const EvalSchedule& schedule,
                                     std::span<const FieldElement> f,
                                     EvalCounters* counters) {
  require_length(f.size(), plan.field().length());
  std::vector<FieldElement> g =
      apply_addition_plan(schedule.a_inv_plan, f, counters);
  std::vector<FieldElement> h(g.size());
  for (const BlockPlan& block : schedule.inverse_blocks) {
    apply_block(plan.field(), block, g, h, counters);
  }
  return plan.structure().apply_e(plan.structure().apply_pi_inverse(h));
}

FieldMatrix vandermonde_matrix(const FieldContext& field) {
  const std::uint32_t n = field.length();
  FieldMatrix w(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      w.at(i, j) = field.alpha_pow(std::int64_t(i) * j);
  return w;
}

bool theorem1_matrix_check(const FieldContext& field,
                           const CosetStructure& structure,
                           const Gf2Matrix& a_inv, const FieldMatrix& l_inv,
                           const FieldMatrix& w) {
  const std::uint32_t n = field.length();
  // (Pi E) W row i is W row (n - Z_i) mod n.
  const std::vector<std::uint32_t> perm = structure.compose_pi_e();
  const FieldMatrix rhs = multiply(field, l_inv, lift(a_inv));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (w.at(perm[i], j) != rhs.at(i, j)) return false;
    }
  }
  return true;
}

bool theorem1_matrix_check(const TransformPlan& plan) {
  return theorem1_matrix_check(plan.field(), plan.structure(), plan.a_inv(),
                               plan.l_matrix(true),
                               vandermonde_matrix(plan.field()));
}

}  // namespace cydft
