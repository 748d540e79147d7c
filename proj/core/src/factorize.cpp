#include "cydft/factorize.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace cydft {

namespace {

// Greedy pair extraction is worth it only while the pair bookkeeping stays
// small; past this many columns the plan falls back to plain row chaining,
// which still meets the ones-minus-rows bound.
constexpr std::size_t kGreedyColumnLimit = 1024;

std::uint64_t pair_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return std::uint64_t(a) << 32 | b;
}

}  // namespace

const char* strategy_name(BlockStrategy s) {
  switch (s) {
    case BlockStrategy::Direct: return "direct";
    case BlockStrategy::FastM2: return "fast-m2";
    case BlockStrategy::FastM3: return "fast-m3";
  }
  return "unknown";
}

const char* ordering_name(CosetOrdering ordering) {
  return ordering == CosetOrdering::SizeDescending ? "size-desc"
                                                   : "leader-asc";
}

AdditionPlan cse_addition_plan(const Gf2Matrix& m) {
  AdditionPlan plan;
  plan.num_inputs = m.cols();

  std::vector<std::set<std::size_t>> row_slots(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) row_slots[r].insert(c);

  if (m.cols() <= kGreedyColumnLimit) {
    std::unordered_map<std::uint64_t, std::size_t> count;
    std::vector<std::unordered_set<std::uint64_t>> buckets(m.rows() + 1);
    std::vector<std::unordered_set<std::size_t>> col_rows(m.cols());
    std::size_t cur_max = 0;

    auto add_pair = [&](std::size_t a, std::size_t b) {
      const std::uint64_t k = pair_key(a, b);
      const std::size_t c = ++count[k];
      if (c >= 2) {
        buckets[c].insert(k);
        if (c - 1 >= 2) buckets[c - 1].erase(k);
        if (c > cur_max) cur_max = c;
      }
    };
    auto del_pair = [&](std::size_t a, std::size_t b) {
      const std::uint64_t k = pair_key(a, b);
      auto it = count.find(k);
      const std::size_t c = it->second--;
      if (c >= 2) {
        buckets[c].erase(k);
        if (c - 1 >= 2) buckets[c - 1].insert(k);
      }
      if (it->second == 0) count.erase(it);
    };

    for (std::size_t r = 0; r < row_slots.size(); ++r) {
      for (auto i = row_slots[r].begin(); i != row_slots[r].end(); ++i) {
        col_rows[*i].insert(r);
        for (auto j = std::next(i); j != row_slots[r].end(); ++j)
          add_pair(*i, *j);
      }
    }

    while (true) {
      while (cur_max >= 2 && buckets[cur_max].empty()) --cur_max;
      if (cur_max < 2) break;
      const std::uint64_t best =
          *std::min_element(buckets[cur_max].begin(), buckets[cur_max].end());
      const std::size_t a = best >> 32;
      const std::size_t b = best & 0xFFFFFFFF;
      const std::size_t t = plan.num_inputs + plan.steps.size();
      plan.steps.push_back({a, b});
      col_rows.emplace_back();

      std::vector<std::size_t> affected;
      const auto& small = col_rows[a].size() <= col_rows[b].size()
                              ? col_rows[a]
                              : col_rows[b];
      const auto& other = col_rows[a].size() <= col_rows[b].size()
                              ? col_rows[b]
                              : col_rows[a];
      for (std::size_t r : small)
        if (other.count(r)) affected.push_back(r);

      for (std::size_t r : affected) {
        row_slots[r].erase(a);
        row_slots[r].erase(b);
        for (std::size_t x : row_slots[r]) {
          del_pair(a, x);
          del_pair(b, x);
        }
        del_pair(a, b);
        for (std::size_t x : row_slots[r]) add_pair(t, x);
        row_slots[r].insert(t);
        col_rows[a].erase(r);
        col_rows[b].erase(r);
        col_rows[t].insert(r);
      }
    }
  }

  plan.outputs.resize(row_slots.size());
  for (std::size_t r = 0; r < row_slots.size(); ++r) {
    if (row_slots[r].empty()) {
      plan.outputs[r] = -1;
      continue;
    }
    auto it = row_slots[r].begin();
    std::size_t cur = *it;
    for (++it; it != row_slots[r].end(); ++it) {
      const std::size_t t = plan.num_inputs + plan.steps.size();
      plan.steps.push_back({cur, *it});
      cur = t;
    }
    plan.outputs[r] = static_cast<std::ptrdiff_t>(cur);
  }
  return plan;
}

std::vector<FieldElement> apply_addition_plan(const AdditionPlan& plan,
                                              std::span<const FieldElement> v,
                                              EvalCounters* counters) {
  if (v.size() != plan.num_inputs) {
    throw Error(Errc::length_mismatch,
                "plan expects " + std::to_string(plan.num_inputs) +
                    " inputs, got " + std::to_string(v.size()));
  }
  std::vector<FieldElement> slots(v.begin(), v.end());
  slots.reserve(plan.num_inputs + plan.steps.size());
  for (const AdditionPlan::Step& s : plan.steps) {
    slots.push_back(FieldElement(slots[s.a].mask() ^ slots[s.b].mask()));
    if (counters) counters->add();
  }
  std::vector<FieldElement> out(plan.outputs.size());
  for (std::size_t r = 0; r < plan.outputs.size(); ++r) {
    if (plan.outputs[r] >= 0) out[r] = slots[plan.outputs[r]];
  }
  return out;
}

void apply_block(const FieldContext& field, const BlockPlan& block,
                 std::span<const FieldElement> v, std::span<FieldElement> out,
                 EvalCounters* counters) {
  const std::size_t off = block.offset;
  auto mul = [&](FieldElement c, FieldElement x) {
    if (counters) counters->mul(c);
    return field.mul(c, x);
  };
  auto add = [&](FieldElement x, FieldElement y) {
    if (counters) counters->add();
    return field.add(x, y);
  };

  switch (block.strategy) {
    case BlockStrategy::FastM2: {
      const FieldElement b0 = block.constants[0];
      const FieldElement t = add(v[off], v[off + 1]);
      const FieldElement p = mul(b0, t);
      out[off] = add(p, v[off + 1]);
      out[off + 1] = add(p, v[off]);
      return;
    }
    case BlockStrategy::FastM3: {
      const FieldElement u0 = block.constants[0];
      const FieldElement u1 = block.constants[1];
      const FieldElement u2 = block.constants[2];
      const FieldElement w0 = add(v[off], v[off + 1]);
      const FieldElement w1 = add(v[off + 1], v[off + 2]);
      const FieldElement s = add(w0, v[off + 2]);
      const FieldElement w2 = add(v[off], v[off + 2]);
      const FieldElement p = mul(u0, w0);
      const FieldElement q = mul(u1, w1);
      const FieldElement r = mul(u2, w2);
      const FieldElement z0 = add(p, q);
      const FieldElement z1 = add(p, r);
      out[off] = add(s, z1);
      out[off + 1] = add(s, z0);
      out[off + 2] = add(out[off], z0);
      return;
    }
    case BlockStrategy::Direct: {
      const unsigned mk = block.size;
      for (unsigned s = 0; s < mk; ++s) {
        FieldElement acc;
        for (unsigned p = 0; p < mk; ++p) {
          const FieldElement term = mul(block.entries[(s + p) % mk], v[off + p]);
          acc = p == 0 ? term : add(acc, term);
        }
        out[off + s] = acc;
      }
      return;
    }
  }
}

std::uint64_t EvalSchedule::forward_multiplications() const {
  std::uint64_t total = 0;
  for (const BlockPlan& b : forward_blocks) total += b.multiplications;
  return total;
}

std::uint64_t EvalSchedule::forward_additions() const {
  std::uint64_t total = a_plan.additions();
  for (const BlockPlan& b : forward_blocks) total += b.additions;
  return total;
}

TransformPlan TransformPlan::build(FieldContext field, CosetOrdering ordering,
                                   const std::vector<FieldElement>& basis_hints) {
  const std::uint32_t n = field.length();
  TransformPlan plan(std::move(field));
  const FieldContext& f = plan.field_;

  plan.structure_ = CosetStructure::build(n, ordering);
  const auto& cosets = plan.structure_.cosets();

  std::vector<unsigned> degrees;
  degrees.reserve(cosets.size());
  for (const Coset& c : cosets) degrees.push_back(c.size());
  plan.bases_ = BasisSet::build(f, degrees, basis_hints);

  plan.offsets_.resize(cosets.size());
  std::size_t off = 0;
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    plan.offsets_[k] = off;
    off += cosets[k].size();
  }

  plan.a_ = Gf2Matrix(n, n);
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    const unsigned mk = cosets[k].size();
    const std::uint32_t ck = cosets[k].leader;
    const BasisPair& pair = plan.bases_.pair(mk);
    for (std::uint32_t j = 0; j < n; ++j) {
      const FieldElement x = f.alpha_pow(std::int64_t(j) * ck);
      const std::vector<bool> bits = coordinates(f, x, pair.basis, pair.dual);
      for (unsigned s = 0; s < mk; ++s) {
        if (bits[s]) plan.a_.set(j, plan.offsets_[k] + s, true);
      }
    }
  }
  plan.a_inv_ = invert_gf2_matrix(plan.a_);

  // Every basis/dual block pair must multiply to the identity before the
  // plan is usable; one check per distinct degree covers all blocks.
  for (const auto& [mk, pair] : plan.bases_.pairs()) {
    for (unsigned s = 0; s < mk; ++s) {
      for (unsigned q = 0; q < mk; ++q) {
        FieldElement acc = f.zero();
        for (unsigned p = 0; p < mk; ++p) {
          acc = f.add(acc, f.mul(pair.basis.elements[(s + p) % mk],
                                 pair.dual.elements[(p + q) % mk]));
        }
        const FieldElement want = s == q ? f.one() : f.zero();
        if (acc != want) {
          throw Error(Errc::verification_failed,
                      "block times dual block is not identity at degree " +
                          std::to_string(mk));
        }
      }
    }
  }

  // A L Pi = W, checked cell by cell through the column structure: column
  // c_k 2^p of the product is sum_s A[j][off_k+s] b_k^(2^((s+p) mod mk)),
  // and must equal alpha^(j c_k 2^p). Full sweep up to n = 4095, sampled
  // rows beyond that.
  std::vector<std::uint32_t> rows_to_check;
  if (n <= 4095) {
    plan.fully_verified_ = true;
    rows_to_check.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) rows_to_check[j] = j;
  } else {
    plan.fully_verified_ = false;
    const std::uint32_t step = n / 256;
    for (std::uint32_t j = 0; j < n; j += step) rows_to_check.push_back(j);
    rows_to_check.push_back(n - 1);
  }
  for (std::uint32_t j : rows_to_check) {
    for (std::size_t k = 0; k < cosets.size(); ++k) {
      const unsigned mk = cosets[k].size();
      const std::uint32_t ck = cosets[k].leader;
      const BasisPair& pair = plan.bases_.pair(mk);
      for (unsigned p = 0; p < mk; ++p) {
        FieldElement acc = f.zero();
        for (unsigned s = 0; s < mk; ++s) {
          if (plan.a_.get(j, plan.offsets_[k] + s)) {
            acc = f.add(acc, pair.basis.elements[(s + p) % mk]);
          }
        }
        const std::uint32_t col = cosets[k].elements[p];
        if (acc != f.alpha_pow(std::int64_t(j) * col)) {
          throw Error(Errc::verification_failed,
                      "A L Pi differs from the Vandermonde matrix at row " +
                          std::to_string(j) + ", column " +
                          std::to_string(col));
        }
      }
    }
  }
  return plan;
}

FieldElement TransformPlan::block_entry(std::size_t k, unsigned s, unsigned p,
                                        bool inverse) const {
  const auto& cosets = structure_.cosets();
  if (k >= cosets.size()) {
    throw Error(Errc::index_out_of_range,
                "coset index " + std::to_string(k) + " out of range");
  }
  const unsigned mk = cosets[k].size();
  if (s >= mk || p >= mk) {
    throw Error(Errc::index_out_of_range,
                "block cell (" + std::to_string(s) + ", " + std::to_string(p) +
                    ") out of range for size " + std::to_string(mk));
  }
  const BasisPair& pair = bases_.pair(mk);
  const NormalBasis& b = inverse ? pair.dual : pair.basis;
  return b.elements[(s + p) % mk];
}

FieldMatrix TransformPlan::l_matrix(bool inverse) const {
  const std::uint32_t n = field_.length();
  FieldMatrix out(n, n);
  const auto& cosets = structure_.cosets();
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    const unsigned mk = cosets[k].size();
    for (unsigned s = 0; s < mk; ++s)
      for (unsigned p = 0; p < mk; ++p)
        out.at(offsets_[k] + s, offsets_[k] + p) = block_entry(k, s, p, inverse);
  }
  return out;
}

FieldElement TransformPlan::w_entry(std::uint32_t i, std::uint32_t j) const {
  return field_.alpha_pow(std::int64_t(i) * j);
}

std::string TransformPlan::tag() const {
  std::string out = "ordering=";
  out += ordering_name(structure_.ordering());
  out += " bases=";
  bool first = true;
  for (const auto& entry : bases_.pairs()) {
    if (!first) out += ",";
    first = false;
    out += format_element(field_, entry.second.basis.generator,
                          ElementFormat::Power);
  }
  return out;
}

namespace {

BlockPlan make_block(const FieldContext& field, std::size_t offset,
                     const Coset& coset, const NormalBasis& basis,
                     SchedulePolicy policy) {
  BlockPlan block;
  block.offset = offset;
  block.size = coset.size();
  block.generator = basis.generator;
  block.entries = basis.elements;

  FieldElement trace = field.zero();
  for (FieldElement e : block.entries) trace = field.add(trace, e);

  const unsigned mk = block.size;
  if (policy == SchedulePolicy::Fast && mk == 2 && trace == field.one()) {
    block.strategy = BlockStrategy::FastM2;
    block.constants = {block.entries[0]};
    block.multiplications = 1;
    block.additions = 3;
  } else if (policy == SchedulePolicy::Fast && mk == 3 &&
             trace == field.one()) {
    block.strategy = BlockStrategy::FastM3;
    const FieldElement b0 = block.entries[0];
    const FieldElement b1 = block.entries[1];
    const FieldElement b2 = block.entries[2];
    block.constants = {field.add(b0, b2), field.add(b1, b2),
                       field.add(b0, b1)};
    block.multiplications = 3;
    block.additions = 9;
  } else {
    block.strategy = BlockStrategy::Direct;
    unsigned general = 0;
    for (FieldElement e : block.entries)
      if (e.mask() > 1) ++general;
    block.multiplications = mk * general;
    block.additions = mk * (mk - 1);
  }
  return block;
}

// Every fast block must agree with Direct on every tuple of subfield
// elements before it is trusted; both sides are linear over the field, so
// this is overkill, and it is cheap (at most 8^3 tuples).
bool block_matches_direct(const FieldContext& field, const BlockPlan& block) {
  if (block.strategy == BlockStrategy::Direct) return true;
  BlockPlan direct = block;
  direct.strategy = BlockStrategy::Direct;
  direct.constants.clear();

  const unsigned mk = block.size;
  const std::uint32_t sub_n = (std::uint32_t{1} << mk) - 1;
  const std::uint32_t d = field.length() / sub_n;
  std::vector<FieldElement> subfield(1, field.zero());
  for (std::uint32_t t = 0; t < sub_n; ++t)
    subfield.push_back(field.alpha_pow(std::int64_t(t) * d));

  std::vector<FieldElement> v(block.offset + mk);
  std::vector<FieldElement> got(block.offset + mk);
  std::vector<FieldElement> want(block.offset + mk);
  std::vector<std::size_t> idx(mk, 0);
  while (true) {
    for (unsigned p = 0; p < mk; ++p) v[block.offset + p] = subfield[idx[p]];
    apply_block(field, block, v, got);
    apply_block(field, direct, v, want);
    for (unsigned s = 0; s < mk; ++s)
      if (got[block.offset + s] != want[block.offset + s]) return false;
    unsigned p = 0;
    while (p < mk && ++idx[p] == subfield.size()) idx[p++] = 0;
    if (p == mk) break;
  }
  return true;
}

}  // namespace

EvalSchedule build_schedule(const TransformPlan& plan, SchedulePolicy policy) {
  const FieldContext& f = plan.field();
  const auto& cosets = plan.structure().cosets();

  EvalSchedule schedule;
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    const BasisPair& pair = plan.bases().pair(cosets[k].size());
    for (bool inverse : {false, true}) {
      BlockPlan block = make_block(f, plan.block_offset(k), cosets[k],
                                   inverse ? pair.dual : pair.basis, policy);
      if (!block_matches_direct(f, block)) {
        block = make_block(f, plan.block_offset(k), cosets[k],
                           inverse ? pair.dual : pair.basis,
                           SchedulePolicy::DirectOnly);
      }
      (inverse ? schedule.inverse_blocks : schedule.forward_blocks)
          .push_back(std::move(block));
    }
  }
  schedule.a_plan = cse_addition_plan(plan.a());
  schedule.a_inv_plan = cse_addition_plan(plan.a_inv());
  return schedule;
}

std::vector<FieldElement> scheduled_forward(const TransformPlan& plan,
                                            const EvalSchedule& schedule,
                                            std::span<const FieldElement> f,
                                            EvalCounters* counters) {
  std::vector<FieldElement> permuted = plan.structure().apply_pi(f);
  std::vector<FieldElement> mixed(permuted.size());
  for (const BlockPlan& block : schedule.forward_blocks) {
    apply_block(plan.field(), block, permuted, mixed, counters);
  }
  return apply_addition_plan(schedule.a_plan, mixed, counters);
}

CostReport report_cost(const TransformPlan& plan, const EvalSchedule& schedule,
                       std::span<const FieldElement> input) {
  EvalCounters counters;
  scheduled_forward(plan, schedule, input, &counters);

  CostReport report;
  report.multiplications = counters.multiplications;
  report.additions = counters.additions;
  const auto& cosets = plan.structure().cosets();
  for (std::size_t k = 0; k < schedule.forward_blocks.size(); ++k) {
    const BlockPlan& b = schedule.forward_blocks[k];
    report.block_labels.push_back(
        "coset leader " + std::to_string(cosets[k].leader) + " (size " +
        std::to_string(b.size) + "): " + strategy_name(b.strategy) + ", " +
        std::to_string(b.multiplications) + " mult, " +
        std::to_string(b.additions) + " add");
  }
  const std::size_t naive =
      plan.a().ones() -
      [&] {
        std::size_t nonzero = 0;
        for (std::size_t r = 0; r < plan.a().rows(); ++r)
          if (!plan.a().row_empty(r)) ++nonzero;
        return nonzero;
      }();
  report.block_labels.push_back(
      "output mixing: " + std::to_string(schedule.a_plan.additions()) +
      " add (row-by-row bound " + std::to_string(naive) + ")");
  return report;
}

}  // namespace cydft
