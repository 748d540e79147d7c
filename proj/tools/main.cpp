#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cydft/bases.hpp"
#include "cydft/factorize.hpp"
#include "cydft/gf2m.hpp"
#include "cydft/io.hpp"
#include "cydft/structure.hpp"
#include "cydft/transform.hpp"

namespace {

using namespace cydft;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  unsigned m = 0;
  std::string poly;
  std::string ordering = "size-desc";
  std::vector<std::string> basis;
  std::string fmt = "pow";
  std::string in;
  std::string out;
  std::string method;
  std::string fixtures = "fixtures";
  unsigned trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool json = false;
};

std::uint32_t parse_poly(const std::string& text) {
  std::size_t pos = 0;
  unsigned long v = std::stoul(text, &pos, 16);
  if (pos != text.size() || v > 0x1FFFF) {
    throw Error(Errc::parse_error, "cannot parse polynomial '" + text + "'");
  }
  return static_cast<std::uint32_t>(v);
}

CosetOrdering parse_ordering(const std::string& text) {
  if (text == "size-desc") return CosetOrdering::SizeDescending;
  if (text == "leader-asc") return CosetOrdering::LeaderAscending;
  throw Error(Errc::parse_error,
              "unknown ordering '" + text + "' (size-desc or leader-asc)");
}

ElementFormat parse_fmt(const std::string& text) {
  if (text == "pow") return ElementFormat::Power;
  if (text == "hex") return ElementFormat::Hex;
  throw Error(Errc::parse_error, "unknown format '" + text + "' (pow or hex)");
}

FieldContext make_field(const Options& opt) {
  if (opt.m == 0 || opt.poly.empty()) {
    throw Error(Errc::parse_error, "--m and --poly are required");
  }
  return FieldContext::make(opt.m, parse_poly(opt.poly));
}

TransformPlan make_plan(const FieldContext& field, const Options& opt) {
  std::vector<FieldElement> hints;
  for (const std::string& h : opt.basis)
    hints.push_back(parse_element(field, h));
  return TransformPlan::build(field, parse_ordering(opt.ordering), hints);
}

std::vector<FieldElement> random_vector(const FieldContext& field,
                                        std::mt19937_64& rng) {
  std::vector<FieldElement> v(field.length());
  for (auto& e : v) e = FieldElement(static_cast<std::uint32_t>(rng()) &
                                     field.length());
  return v;
}

int cmd_plan(const Options& opt) {
  FieldContext field = make_field(opt);
  TransformPlan plan = make_plan(field, opt);
  std::string text;
  if (opt.json) {
    EvalSchedule schedule = build_schedule(plan);
    text = plan_to_json(plan, &schedule);
  } else {
    text = plan_to_text(plan);
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out, text);
  }
  return kExitOk;
}

int cmd_transform(const Options& opt, bool inverse) {
  FieldContext field = make_field(opt);
  const std::string method = opt.method.empty() ? "cyclotomic" : opt.method;
  if (method != "naive" && method != "cyclotomic" &&
      (inverse || method != "theorem1")) {
    throw Error(Errc::parse_error,
                "unknown method '" + method + "' for " +
                    (inverse ? std::string("ifft (naive or cyclotomic)")
                             : std::string("fft (naive, cyclotomic or "
                                           "theorem1)")));
  }

  std::optional<TransformPlan> plan;
  std::optional<EvalSchedule> schedule;
  if (method != "naive") {
    plan = make_plan(field, opt);
    schedule = build_schedule(*plan);
  }

  std::string input;
  if (opt.in.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    input = buf.str();
  } else {
    input = read_file(opt.in);
  }

  const ElementFormat fmt = parse_fmt(opt.fmt);
  std::string output;
  std::istringstream lines(input);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<FieldElement> v = parse_vector(field, line);
    std::vector<FieldElement> r;
    if (method == "naive") {
      r = inverse ? naive_idft(field, v) : naive_dft(field, v);
    } else if (method == "theorem1") {
      r = forward_via_inverse_factors(*plan, *schedule, v);
    } else {
      r = inverse ? cyclotomic_idft(*plan, *schedule, v)
                  : cyclotomic_dft(*plan, *schedule, v);
    }
    output += format_vector(field, r, fmt);
    output += '\n';
  }

  if (opt.out.empty()) {
    std::cout << output;
  } else {
    write_file(opt.out, output);
  }
  return kExitOk;
}

class CheckTable {
 public:
  void record(bool pass, const std::string& name, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!pass) failed_ = true;
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

void check_fixture(CheckTable& table, const std::string& dir,
                   const std::string& name, const std::string& generated) {
  const std::string path = dir + "/" + name;
  std::string expected;
  try {
    expected = read_file(path);
  } catch (const Error& e) {
    table.record(false, "fixture " + name, e.what());
    return;
  }
  if (expected == generated) {
    table.record(true, "fixture " + name);
    return;
  }
  if (auto cell = compare_matrix_text(expected, generated)) {
    table.record(false, "fixture " + name,
                 "cell (" + std::to_string(cell->row) + ", " +
                     std::to_string(cell->col) + "): expected " +
                     cell->expected + ", got " + cell->actual);
  } else {
    table.record(false, "fixture " + name, "formatting differs");
  }
}

void verify_golden(CheckTable& table, const Options& opt, unsigned m,
                   std::uint32_t poly, const std::string& prefix) {
  FieldContext field = FieldContext::make(m, poly);
  TransformPlan plan =
      TransformPlan::build(field, CosetOrdering::SizeDescending, {});

  check_fixture(table, opt.fixtures, prefix + "_A.txt",
                format_gf2_matrix(plan.a()));
  check_fixture(table, opt.fixtures, prefix + "_Ainv.txt",
                format_gf2_matrix(plan.a_inv()));
  check_fixture(table, opt.fixtures, prefix + "_L.txt",
                format_field_matrix(field, plan.l_matrix(false),
                                    ElementFormat::Power));
  check_fixture(table, opt.fixtures, prefix + "_Linv.txt",
                format_field_matrix(field, plan.l_matrix(true),
                                    ElementFormat::Power));
  check_fixture(table, opt.fixtures, prefix + "_Pi.txt",
                format_gf2_matrix(plan.structure().pi_matrix()));

  // The composed output permutation implied by the committed Pi must match
  // the plan's: row i of Pi selects Z_i, and Pi E sends output i to
  // spectrum slot (n - Z_i) mod n.
  try {
    const Gf2Matrix pi =
        parse_gf2_matrix(read_file(opt.fixtures + "/" + prefix + "_Pi.txt"));
    const std::uint32_t n = field.length();
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (pi.get(i, j)) perm[i] = (n - j) % n;
    table.record(perm == plan.structure().compose_pi_e(),
                 prefix + " output permutation (Pi E)");
  } catch (const Error& e) {
    table.record(false, prefix + " output permutation (Pi E)", e.what());
  }
}

void verify_properties(CheckTable& table, const FieldContext& field,
                       const Options& opt) {
  const std::uint32_t n = field.length();
  const std::string tag = "n=" + std::to_string(n);
  TransformPlan plan = TransformPlan::build(
      field, parse_ordering(opt.ordering), {});
  EvalSchedule schedule = build_schedule(plan);

  table.record(plan.fully_verified(), tag + " factorization reproduces W");
  table.record(theorem1_matrix_check(plan),
               tag + " (Pi E) W = L^-1 A^-1 as matrices");

  // Block structure: circulant law on both block families, dual Gram
  // deltas, blockwise products equal to identity.
  bool circulant = true;
  bool gram = true;
  bool block_inverse = true;
  const auto& cosets = plan.structure().cosets();
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    const unsigned mk = cosets[k].size();
    const BasisPair& pair = plan.bases().pair(mk);
    for (unsigned s = 0; s < mk; ++s) {
      for (unsigned p = 0; p < mk; ++p) {
        if (plan.block_entry(k, s, p, false) !=
            field.frobenius(pair.basis.generator, (s + p) % mk))
          circulant = false;
        if (plan.block_entry(k, s, p, true) !=
            field.frobenius(pair.dual.generator, (s + p) % mk))
          circulant = false;
        const FieldElement tr = field.subfield_trace(
            field.mul(pair.basis.elements[s], pair.dual.elements[p]), mk);
        if (tr != (s == p ? field.one() : field.zero())) gram = false;
      }
    }
    for (unsigned s = 0; s < mk; ++s) {
      for (unsigned q = 0; q < mk; ++q) {
        FieldElement acc = field.zero();
        for (unsigned p = 0; p < mk; ++p) {
          acc = field.add(acc, field.mul(plan.block_entry(k, s, p, false),
                                         plan.block_entry(k, p, q, true)));
        }
        if (acc != (s == q ? field.one() : field.zero()))
          block_inverse = false;
      }
    }
  }
  table.record(circulant, tag + " blocks follow the circulant law");
  table.record(gram, tag + " basis/dual traces are delta(s,t)");
  table.record(block_inverse, tag + " L block times L^-1 block = I");

  std::mt19937_64 rng(opt.seed);
  bool naive_round = true;
  bool cyc_equals_naive = true;
  bool cyc_round = true;
  bool theorem1_pointwise = true;
  for (unsigned t = 0; t < opt.trials; ++t) {
    const std::vector<FieldElement> f = random_vector(field, rng);
    const Spectrum F = naive_dft(field, f);
    if (naive_idft(field, F) != f) naive_round = false;
    if (cyclotomic_dft(plan, schedule, f) != F) cyc_equals_naive = false;
    if (cyclotomic_idft(plan, schedule, F) != f) cyc_round = false;
    if (forward_via_inverse_factors(plan, schedule, f) != F)
      theorem1_pointwise = false;
  }
  table.record(naive_round, tag + " naive_idft(naive_dft(f)) = f",
               std::to_string(opt.trials) + " random vectors");
  table.record(cyc_equals_naive, tag + " cyclotomic_dft = naive_dft",
               std::to_string(opt.trials) + " random vectors");
  table.record(cyc_round, tag + " cyclotomic_idft round trip",
               std::to_string(opt.trials) + " random vectors");
  table.record(theorem1_pointwise,
               tag + " inverse-factored forward = naive_dft",
               std::to_string(opt.trials) + " random vectors");

  if (n == 7) {
    std::vector<FieldElement> input(n, field.one());
    const CostReport cost = report_cost(plan, schedule, input);
    table.record(cost.multiplications == 6,
                 tag + " scheduled forward multiplications = 6",
                 "got " + std::to_string(cost.multiplications));
    std::size_t naive_a = plan.a().ones();
    std::size_t nonzero_rows = 0;
    for (std::size_t r = 0; r < plan.a().rows(); ++r)
      if (!plan.a().row_empty(r)) ++nonzero_rows;
    std::uint64_t block_adds = 0;
    for (const BlockPlan& b : schedule.forward_blocks) block_adds += b.additions;
    const std::uint64_t bound = naive_a - nonzero_rows + block_adds;
    table.record(cost.additions <= bound,
                 tag + " scheduled forward additions within bound",
                 std::to_string(cost.additions) + " <= " +
                     std::to_string(bound) + ", reference count 24");
  }
}

int cmd_verify(const Options& opt) {
  CheckTable table;
  if (opt.m == 0) {
    verify_golden(table, opt, 3, 0xB, "n7");
    verify_golden(table, opt, 4, 0x13, "n15");
    verify_properties(table, FieldContext::make(3, 0xB), opt);
    verify_properties(table, FieldContext::make(4, 0x13), opt);
  } else {
    FieldContext field = make_field(opt);
    if (field.degree() == 3 && field.modulus() == 0xB) {
      verify_golden(table, opt, 3, 0xB, "n7");
    } else if (field.degree() == 4 && field.modulus() == 0x13) {
      verify_golden(table, opt, 4, 0x13, "n15");
    }
    verify_properties(table, field, opt);
  }
  return table.failed() ? kExitVerifyFailed : kExitOk;
}

int cmd_bench(const Options& opt) {
  FieldContext field = make_field(opt);
  TransformPlan plan = make_plan(field, opt);
  EvalSchedule schedule = build_schedule(plan);
  const std::uint32_t n = field.length();
  const unsigned threads = std::max(1u, opt.threads);

  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<FieldElement>> inputs(opt.trials);
  for (auto& v : inputs) v = random_vector(field, rng);
  if (inputs.empty()) inputs.push_back(std::vector<FieldElement>(n));

  struct Method {
    std::string name;
    std::function<std::vector<FieldElement>(std::span<const FieldElement>,
                                            EvalCounters*)> run;
  };
  std::vector<Method> methods = {
      {"naive",
       [&](std::span<const FieldElement> v, EvalCounters* c) {
         return naive_dft(field, v, c);
       }},
      {"cyclotomic",
       [&](std::span<const FieldElement> v, EvalCounters* c) {
         return cyclotomic_dft(plan, schedule, v, c);
       }},
      {"theorem1",
       [&](std::span<const FieldElement> v, EvalCounters* c) {
         return forward_via_inverse_factors(plan, schedule, v, c);
       }},
  };
  if (!opt.method.empty()) {
    std::erase_if(methods, [&](const Method& m) { return m.name != opt.method; });
    if (methods.empty()) {
      throw Error(Errc::parse_error, "unknown method '" + opt.method + "'");
    }
  }

  std::cout << "n = " << n << ", trials = " << inputs.size()
            << ", threads = " << threads << "\n";
  std::cout << "method        total us      per op us   mult/op   add/op\n";
  for (const Method& method : methods) {
    // One instrumented pass for the counts; counts are data independent.
    EvalCounters counters;
    method.run(inputs[0], &counters);

    const auto start = std::chrono::steady_clock::now();
    if (threads == 1) {
      for (const auto& v : inputs) method.run(v, nullptr);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
          for (std::size_t i = next.fetch_add(1); i < inputs.size();
               i = next.fetch_add(1)) {
            method.run(inputs[i], nullptr);
          }
        });
      }
      for (auto& w : workers) w.join();
    }
    const auto stop = std::chrono::steady_clock::now();
    const double us =
        std::chrono::duration<double, std::micro>(stop - start).count();

    std::ostringstream row;
    row.setf(std::ios::fixed);
    row.precision(2);
    row << method.name;
    row << std::string(method.name.size() < 12 ? 12 - method.name.size() : 1,
                       ' ');
    row << us << "  " << us / double(inputs.size()) << "  "
        << counters.multiplications << "  " << counters.additions;
    if (n == 7 && method.name != "naive") {
      row << "  (reference for n=7: 6 mult, 24 add)";
    }
    std::cout << row.str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclotomic DFT over GF(2^m): plans, transforms, checks"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool need_field) {
    auto* m = cmd->add_option("--m", opt.m, "extension degree of GF(2^m)");
    auto* p = cmd->add_option("--poly", opt.poly,
                              "primitive polynomial, hex mask (e.g. 0xB)");
    if (need_field) {
      m->required();
      p->required();
    }
    cmd->add_option("--ordering", opt.ordering,
                    "coset ordering: size-desc (default) or leader-asc");
    cmd->add_option("--basis", opt.basis,
                    "normal basis generator hint in power form (repeatable)");
    cmd->add_option("--fmt", opt.fmt, "element format: pow (default) or hex");
    cmd->add_option("--seed", opt.seed, "seed for random trials");
    cmd->add_option("--trials", opt.trials, "number of random trials");
    return cmd;
  };

  auto* plan_cmd = add_common(app.add_subcommand("plan", "build and print the factorization"), true);
  plan_cmd->add_option("--out", opt.out, "write to file instead of stdout");
  plan_cmd->add_flag("--json", opt.json, "emit the JSON plan document");

  auto* fft_cmd = add_common(app.add_subcommand("fft", "forward transform of each input line"), true);
  fft_cmd->add_option("--in", opt.in, "input file (default stdin)");
  fft_cmd->add_option("--out", opt.out, "output file (default stdout)");
  fft_cmd->add_option("--method", opt.method,
                      "naive, cyclotomic (default) or theorem1");

  auto* ifft_cmd = add_common(app.add_subcommand("ifft", "inverse transform of each input line"), true);
  ifft_cmd->add_option("--in", opt.in, "input file (default stdin)");
  ifft_cmd->add_option("--out", opt.out, "output file (default stdout)");
  ifft_cmd->add_option("--method", opt.method, "naive or cyclotomic (default)");

  auto* verify_cmd = add_common(app.add_subcommand("verify", "golden fixtures and transform properties"), false);
  verify_cmd->add_option("--fixtures", opt.fixtures,
                         "fixture directory (default: fixtures)");

  auto* bench_cmd = add_common(app.add_subcommand("bench", "time the transform methods"), true);
  bench_cmd->add_option("--method", opt.method, "bench only this method");
  bench_cmd->add_option("--threads", opt.threads,
                        "fan trials across this many workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(plan_cmd)) return cmd_plan(opt);
    if (app.got_subcommand(fft_cmd)) return cmd_transform(opt, false);
    if (app.got_subcommand(ifft_cmd)) return cmd_transform(opt, true);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(opt);
    if (app.got_subcommand(bench_cmd)) return cmd_bench(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << " (" << errc_name(e.code()) << ")\n";
    return e.code() == Errc::verification_failed ? kExitVerifyFailed
                                                 : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
