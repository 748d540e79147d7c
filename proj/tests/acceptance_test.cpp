// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cydft/io.hpp"
#include "cydft/transform.hpp"
#include "support.hpp"

using cydft::CosetOrdering;
using cydft::EvalSchedule;
using cydft::FieldContext;
using cydft::FieldElement;
using cydft::TransformPlan;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::uint32_t poly_for(unsigned m) {
  switch (m) {
    case 2: return 0x7;
    case 3: return 0xB;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11D;
  }
  return 0;
}

const std::vector<unsigned>& sweep() {
  static const std::vector<unsigned> ms = {2, 3, 4, 5, 6, 8};
  return ms;
}

const TransformPlan& plan_for(unsigned m) {
  static std::map<unsigned, TransformPlan> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache
             .emplace(m, TransformPlan::build(
                             FieldContext::make(m, poly_for(m)),
                             CosetOrdering::SizeDescending))
             .first;
  }
  return it->second;
}

const EvalSchedule& schedule_for(unsigned m) {
  static std::map<unsigned, EvalSchedule> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache.emplace(m, cydft::build_schedule(plan_for(m))).first;
  }
  return it->second;
}

std::string fixture(const std::string& name) {
  return cydft::read_file(std::string(CYDFT_FIXTURE_DIR) + "/" + name);
}

// Output permutation encoded by a committed Pi matrix: Pi E sends output i
// to input (n - z_i) mod n, with z_i read off row i of Pi.
std::vector<std::uint32_t> perm_from_pi_text(const std::string& text) {
  auto pi = cydft::parse_gf2_matrix(text);
  std::vector<std::uint32_t> perm(pi.rows());
  for (std::size_t i = 0; i < pi.rows(); ++i) {
    for (std::size_t j = 0; j < pi.cols(); ++j) {
      if (pi.get(i, j)) perm[i] = std::uint32_t((pi.rows() - j) % pi.rows());
    }
  }
  return perm;
}

Outcome check_golden(unsigned m, const std::string& prefix) {
  const auto& plan = plan_for(m);
  const std::pair<std::string, std::string> files[] = {
      {prefix + "_A.txt", cydft::format_gf2_matrix(plan.a())},
      {prefix + "_Ainv.txt", cydft::format_gf2_matrix(plan.a_inv())},
      {prefix + "_L.txt",
       cydft::format_field_matrix(plan.field(), plan.l_matrix(),
                                  cydft::ElementFormat::Power)},
      {prefix + "_Linv.txt",
       cydft::format_field_matrix(plan.field(), plan.l_matrix(true),
                                  cydft::ElementFormat::Power)},
      {prefix + "_Pi.txt",
       cydft::format_gf2_matrix(plan.structure().pi_matrix())},
  };
  for (const auto& [name, generated] : files) {
    auto expected = fixture(name);
    if (expected != generated) {
      auto cell = cydft::compare_matrix_text(expected, generated);
      std::string where = cell ? "cell (" + std::to_string(cell->row) + ", " +
                                     std::to_string(cell->col) + ")"
                               : "formatting";
      return {false, name + " differs at " + where};
    }
  }
  if (perm_from_pi_text(fixture(prefix + "_Pi.txt")) !=
      plan.structure().compose_pi_e()) {
    return {false, "output permutation differs from the committed Pi"};
  }
  return {true, "5 matrices exact"};
}

Outcome criterion1() {
  auto out = check_golden(3, "n7");
  if (!out.pass) return out;
  if (plan_for(3).structure().compose_pi_e() !=
      std::vector<std::uint32_t>{0, 6, 5, 3, 4, 1, 2}) {
    return {false, "output order is not (F0,F6,F5,F3,F4,F1,F2)"};
  }
  return {true, "5 matrices and the (F0,F6,F5,F3,F4,F1,F2) order exact"};
}

Outcome criterion2() {
  auto out = check_golden(4, "n15");
  if (!out.pass) return out;
  const auto& plan = plan_for(4);
  const auto& f = plan.field();
  const auto& pair = plan.bases().pair(4);
  std::vector<FieldElement> published = {f.alpha_pow(11), f.alpha_pow(7),
                                         f.alpha_pow(14), f.alpha_pow(13)};
  if (pair.dual.elements != published) {
    return {false, "degree-4 dual is not (a^11, a^7, a^14, a^13)"};
  }
  if (cydft::dual_basis(f, pair.basis).elements != pair.dual.elements) {
    return {false, "stored dual does not match a fresh dual_basis run"};
  }
  return {true, "5 matrices exact, dual (a^11, a^7, a^14, a^13) computed"};
}

Outcome criterion3() {
  for (unsigned m : {3u, 4u}) {
    if (!cydft::theorem1_matrix_check(plan_for(m))) {
      return {false, "entrywise identity fails for m=" + std::to_string(m)};
    }
  }
  std::mt19937_64 rng(101);
  for (unsigned m : sweep()) {
    const auto& plan = plan_for(m);
    const auto& f = plan.field();
    const auto& s = plan.structure();
    auto l_inv = plan.l_matrix(true);
    for (int trial = 0; trial < 100; ++trial) {
      auto v = support::random_vector(f, rng);
      auto lhs = s.apply_pi(s.apply_e(cydft::naive_dft(f, v)));
      auto rhs = cydft::apply(f, l_inv, cydft::apply(plan.a_inv(), v));
      if (lhs != rhs) {
        return {false, "pointwise identity fails for m=" + std::to_string(m)};
      }
    }
  }
  return {true, "entrywise n=7/n=15, pointwise 100 vectors x 6 fields"};
}

Outcome criterion4() {
  std::mt19937_64 rng(103);
  for (unsigned m : sweep()) {
    auto f = FieldContext::make(m, poly_for(m));
    for (int trial = 0; trial < 100; ++trial) {
      auto v = support::random_vector(f, rng);
      if (cydft::naive_idft(f, cydft::naive_dft(f, v)) != v) {
        return {false, "round trip fails for m=" + std::to_string(m)};
      }
    }
  }
  return {true, "100 vectors x 6 fields"};
}

Outcome criterion5() {
  std::mt19937_64 rng(107);
  for (unsigned m : sweep()) {
    const auto& plan = plan_for(m);
    const auto& schedule = schedule_for(m);
    const auto& f = plan.field();
    for (int trial = 0; trial < 100; ++trial) {
      auto v = support::random_vector(f, rng);
      auto F = cydft::cyclotomic_dft(plan, schedule, v);
      if (F != cydft::naive_dft(f, v)) {
        return {false, "naive mismatch for m=" + std::to_string(m)};
      }
      if (cydft::cyclotomic_idft(plan, schedule, F) != v) {
        return {false, "round trip fails for m=" + std::to_string(m)};
      }
    }
  }
  const auto& plan = plan_for(3);
  const auto& schedule = schedule_for(3);
  const auto& f = plan.field();
  const auto& coset = plan.structure().cosets()[1];
  for (std::uint32_t a = 0; a < 8; ++a) {
    for (std::uint32_t b = 0; b < 8; ++b) {
      for (std::uint32_t c = 0; c < 8; ++c) {
        std::vector<FieldElement> v(7, f.zero());
        v[coset.elements[0]] = FieldElement(a);
        v[coset.elements[1]] = FieldElement(b);
        v[coset.elements[2]] = FieldElement(c);
        if (cydft::cyclotomic_dft(plan, schedule, v) !=
            cydft::naive_dft(f, v)) {
          return {false, "single-coset signal mismatch"};
        }
      }
    }
  }
  return {true, "sweep plus 512 single-coset n=7 signals"};
}

Outcome criterion6() {
  for (unsigned m : sweep()) {
    const auto& plan = plan_for(m);
    const auto& f = plan.field();
    const auto& cosets = plan.structure().cosets();
    for (std::size_t k = 0; k < cosets.size(); ++k) {
      unsigned mk = cosets[k].size();
      const auto& dual = plan.bases().pair(mk).dual;
      for (unsigned s = 0; s < mk; ++s) {
        for (unsigned p = 0; p < mk; ++p) {
          FieldElement inv = plan.block_entry(k, s, p, true);
          if (inv != f.frobenius(dual.generator, (s + p) % mk)) {
            return {false, "circulant law fails for m=" + std::to_string(m)};
          }
          // L L^-1 = I blockwise.
          FieldElement cell = f.zero();
          for (unsigned t = 0; t < mk; ++t) {
            cell = f.add(cell, f.mul(plan.block_entry(k, s, t),
                                     plan.block_entry(k, t, p, true)));
          }
          if (cell != (s == p ? f.one() : f.zero())) {
            return {false, "block product is not I for m=" + std::to_string(m)};
          }
        }
      }
    }
  }
  return {true, "dual-built blocks, circulant law, block inverses, 6 fields"};
}

Outcome criterion7() {
  const auto& plan = plan_for(3);
  const auto& schedule = schedule_for(3);
  std::vector<FieldElement> probe(7, plan.field().one());
  auto report = cydft::report_cost(plan, schedule, probe);
  if (report.multiplications != 6) {
    return {false,
            "multiplications = " + std::to_string(report.multiplications)};
  }
  std::uint64_t block_adds = 0;
  for (const auto& b : schedule.forward_blocks) block_adds += b.additions;
  const std::uint64_t bound = 23 + block_adds;
  if (report.additions > bound) {
    return {false, "additions " + std::to_string(report.additions) +
                       " exceed bound " + std::to_string(bound)};
  }
  return {true, "6 multiplications; " + std::to_string(report.additions) +
                    " additions (bound " + std::to_string(bound) +
                    ", reference 24)"};
}

Outcome criterion8() {
  for (unsigned m = 2; m <= 8; ++m) {
    const auto& plan = plan_for(m);
    const auto& f = plan.field();
    for (const auto& [degree, pair] : plan.bases().pairs()) {
      for (unsigned s = 0; s < degree; ++s) {
        for (unsigned t = 0; t < degree; ++t) {
          auto tr = f.subfield_trace(
              f.mul(pair.basis.elements[s], pair.dual.elements[t]), degree);
          if (tr != (s == t ? f.one() : f.zero())) {
            return {false, "trace delta fails for m=" + std::to_string(m) +
                               ", degree " + std::to_string(degree)};
          }
        }
      }
    }
  }
  return {true, "exhaustive s,t for every basis pair, m = 2..8"};
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* label;
    double limit_s;
    Outcome (*fn)();
  };
  const Row rows[] = {
      {1, "golden n=7 factorization", 1.0, criterion1},
      {2, "golden n=15 factorization with computed dual", 1.0, criterion2},
      {3, "inversion identity (Pi E) W = L^-1 A^-1", 10.0, criterion3},
      {4, "naive round trip E W W = I", 10.0, criterion4},
      {5, "fast path equals naive oracle", 30.0, criterion5},
      {6, "inverse blocks are dual-basis circulants", 5.0, criterion6},
      {7, "n=7 forward costs 6 multiplications", 1.0, criterion7},
      {8, "basis/dual traces are delta(s,t)", 1.0, criterion8},
  };

  int failures = 0;
  for (const Row& row : rows) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = row.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    bool in_budget = ms / 1000.0 < row.limit_s;
    bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    std::printf("%s  criterion %d: %s [%s; %.0f ms, limit %.0f s]\n",
                pass ? "PASS" : "FAIL", row.id, row.label, o.detail.c_str(),
                ms, row.limit_s);
    if (o.pass && !in_budget) {
      std::printf("      criterion %d exceeded its time budget\n", row.id);
    }
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
