#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cydft/bases.hpp"
#include "cydft/gf2m.hpp"
#include "cydft/linalg.hpp"
#include "cydft/structure.hpp"

namespace cydft {

/// Instrumentation sink for one evaluation. Multiplications count only
/// general products: anything times a constant 0 or 1 is free. Counts are
/// properties of the straight-line program, not of the data.
struct EvalCounters {
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;

  void mul(FieldElement constant) {
    if (constant.mask() > 1) ++multiplications;
  }
  void add() { ++additions; }
};

/// Straight-line XOR program for y = M v over any GF(2)-linear value type.
/// Slots [0, num_inputs) hold v; each step appends slot(a) ^ slot(b).
struct AdditionPlan {
  struct Step {
    std::size_t a = 0;
    std::size_t b = 0;
  };

  std::size_t num_inputs = 0;
  std::vector<Step> steps;
  /// One slot index per output row; -1 marks an all-zero row.
  std::vector<std::ptrdiff_t> outputs;

  std::size_t additions() const { return steps.size(); }
};

/// Greedy common-pair extraction: repeatedly replace the column pair shared
/// by the most rows with one new slot, then chain what remains row by row.
/// Never longer than ones(M) minus the number of nonzero rows.
AdditionPlan cse_addition_plan(const Gf2Matrix& m);

std::vector<FieldElement> apply_addition_plan(const AdditionPlan& plan,
                                              std::span<const FieldElement> v,
                                              EvalCounters* counters = nullptr);

enum class BlockStrategy { Direct, FastM2, FastM3 };

const char* strategy_name(BlockStrategy s);

/// Evaluation recipe for one circulant block y_s = sum_p b_((s+p) mod mk) v_p
/// with b_t the Frobenius conjugates of one basis generator.
///
/// FastM2 (mk = 2, b0 + b1 = 1): t = v0+v1; p = b0*t; y = (p+v1, p+v0).
/// 1 multiplication, 3 additions.
///
/// FastM3 (mk = 3, b0+b1+b2 = 1): split the length-3 cyclic product along
/// x^3 - 1 = (x+1)(x^2+x+1). The (x+1) image of the constant side is the
/// trace = 1, so that component is just S = v0+v1+v2. The quadratic
/// component takes three products with precomputed constants
/// u0 = b0+b2, u1 = b1+b2, u0+u1 = b0+b1:
///   p = u0*(v0+v1), q = u1*(v1+v2), r = (u0+u1)*(v0+v2)
///   y0 = S+p+r, y1 = S+p+q, y2 = y0+p+q.
/// 3 multiplications, 9 additions.
///
/// Direct: row-by-row, counting every product whose constant is not 1.
struct BlockPlan {
  BlockStrategy strategy = BlockStrategy::Direct;
  std::size_t offset = 0;
  unsigned size = 0;
  FieldElement generator;
  std::vector<FieldElement> entries;    // b_t = generator^(2^t)
  std::vector<FieldElement> constants;  // strategy-specific products' constants
  unsigned multiplications = 0;
  unsigned additions = 0;
};

/// Applies one block to v[plan.offset .. plan.offset+size) into out.
void apply_block(const FieldContext& field, const BlockPlan& block,
                 std::span<const FieldElement> v, std::span<FieldElement> out,
                 EvalCounters* counters = nullptr);

struct EvalSchedule {
  std::vector<BlockPlan> forward_blocks;  // blocks of L
  std::vector<BlockPlan> inverse_blocks;  // blocks of L^-1 (dual constants)
  AdditionPlan a_plan;
  AdditionPlan a_inv_plan;

  std::uint64_t forward_multiplications() const;
  std::uint64_t forward_additions() const;
};

enum class SchedulePolicy { Fast, DirectOnly };

struct CostReport {
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;
  std::vector<std::string> block_labels;
};

/// The factorization W = A L Pi for one field: A and its inverse over GF(2),
/// the circulant blocks of L and of L^-1 (built from dual bases only), and
/// the coset/basis data they came from. Construction aborts unless the
/// factorization reproduces W.
class TransformPlan {
 public:
  static TransformPlan build(FieldContext field, CosetOrdering ordering,
                             const std::vector<FieldElement>& basis_hints = {});

  const FieldContext& field() const { return field_; }
  const CosetStructure& structure() const { return structure_; }
  const BasisSet& bases() const { return bases_; }
  const Gf2Matrix& a() const { return a_; }
  const Gf2Matrix& a_inv() const { return a_inv_; }

  /// Entry (s, p) of coset k's block of L, or of L^-1 with inverse set:
  /// the 2^((s+p) mod mk) conjugate of the (dual) generator.
  FieldElement block_entry(std::size_t k, unsigned s, unsigned p,
                           bool inverse = false) const;

  /// Start of coset k's segment inside the permuted vector.
  std::size_t block_offset(std::size_t k) const { return offsets_[k]; }

  /// Full n-by-n block-diagonal L or L^-1.
  FieldMatrix l_matrix(bool inverse = false) const;

  /// Vandermonde cell alpha^(i*j).
  FieldElement w_entry(std::uint32_t i, std::uint32_t j) const;

  /// True when the A L Pi = W check covered every cell (always for
  /// n <= 4095; larger fields get a deterministic row sample).
  bool fully_verified() const { return fully_verified_; }

  /// Ordering plus the generator of each basis, e.g.
  /// "ordering=size-desc bases=1,a^3".
  std::string tag() const;

 private:
  TransformPlan(FieldContext field) : field_(std::move(field)) {}

  FieldContext field_;
  CosetStructure structure_;
  BasisSet bases_;
  Gf2Matrix a_;
  Gf2Matrix a_inv_;
  std::vector<std::size_t> offsets_;
  bool fully_verified_ = false;
};

/// Picks FastM2/FastM3 where the block size and trace allow, Direct
/// otherwise, and proves each fast block equal to Direct by exhausting all
/// subfield input tuples before accepting it. DirectOnly skips the fast
/// paths; the A plans always go through cse_addition_plan.
EvalSchedule build_schedule(const TransformPlan& plan,
                            SchedulePolicy policy = SchedulePolicy::Fast);

/// The scheduled forward pipeline A (L (Pi f)).
std::vector<FieldElement> scheduled_forward(const TransformPlan& plan,
                                            const EvalSchedule& schedule,
                                            std::span<const FieldElement> f,
                                            EvalCounters* counters = nullptr);

/// Runs scheduled_forward over input with fresh counters and labels each
/// block with its strategy and static cost.
CostReport report_cost(const TransformPlan& plan, const EvalSchedule& schedule,
                       std::span<const FieldElement> input);

const char* ordering_name(CosetOrdering ordering);

}  // namespace cydft
