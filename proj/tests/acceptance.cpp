// Acceptance suite: one line per criterion, exact scales and tolerances
// pinned in code. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "circuit.hpp"
#include "derand.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "helpers.hpp"
#include "majority.hpp"
#include "matrix.hpp"
#include "relation.hpp"

using namespace psc;
using namespace psc::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& what) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

int g_failures = 0;

void run_criterion(int index, const std::string& name,
                   const std::function<void(Outcome&)>& body) {
  Outcome outcome;
  auto start = std::chrono::steady_clock::now();
  try {
    body(outcome);
  } catch (const std::exception& e) {
    outcome.fail(std::string("exception: ") + e.what());
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!outcome.pass) ++g_failures;
  std::printf("%2d. %s %s (%.1f s)%s%s\n", index,
              outcome.pass ? "PASS" : "FAIL", name.c_str(), seconds,
              outcome.detail.empty() ? "" : " -- ",
              outcome.detail.c_str());
  std::fflush(stdout);
}

TropicalProblem random_problem(Rng& rng, int max_n, int max_members) {
  TropicalProblem p;
  p.n = 2 + static_cast<int>(rng.below(max_n - 1));
  std::set<std::vector<std::uint8_t>> members;
  int want = 1 + static_cast<int>(rng.below(
                     std::min<std::uint64_t>(max_members, 1ull << p.n)));
  while (static_cast<int>(members.size()) < want) {
    std::vector<std::uint8_t> a(p.n);
    for (auto& bit : a) bit = static_cast<std::uint8_t>(rng.below(2));
    members.insert(std::move(a));
  }
  p.support.assign(members.begin(), members.end());
  return p;
}

std::vector<std::size_t> random_nonempty_subset(Rng& rng, std::size_t count) {
  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < count; ++i)
    if (rng.below(2)) subset.push_back(i);
  if (subset.empty()) subset.push_back(rng.below(count));
  return subset;
}

// --- criterion 1: tropical derandomization size bound -----------------------

void criterion_tropical(Outcome& out) {
  auto start = std::chrono::steady_clock::now();
  Rng gen(101, 0);
  const Rational ps[3] = {Rational(1, 3), Rational(1, 2), Rational(1)};
  for (int i = 0; i < 50; ++i) {
    Rng tr = gen.fork(i);
    TropicalProblem problem = random_problem(tr, 10, 32);
    Rational p = ps[i % 3];

    std::vector<std::vector<std::size_t>> choices;
    std::vector<std::size_t> all(problem.support.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    choices.push_back(all);  // the full circuit keeps success >= p
    for (Integer extra = p.get_den() - 1; extra > 0; --extra)
      choices.push_back(random_nonempty_subset(tr, problem.support.size()));
    auto sampler = subset_choice_sampler(problem, std::move(choices));

    DerandReport report;
    try {
      report = derandomize_tropical_one_sided(sampler, problem, p, 1000 + i);
    } catch (const Error& e) {
      out.fail("problem " + std::to_string(i) + ": " + e.what());
      continue;
    }
    std::size_t m = static_cast<std::size_t>(
        ceil_rational(Rational(problem.n) / p).get_ui());
    out.expect(report.m_used == m, "m != ceil(n/p)");
    out.expect(report.verification.passed, "verification failed");
    out.expect(report.sizes.total <= (sampler.size_bound + 1) * m,
               "size exceeded (s+1)*ceil(n/p)");
    out.expect(report.verification.points_checked ==
                   (std::uint64_t(1) << problem.n) + 1000,
               "wrong verification domain");
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  out.expect(seconds < 60.0, "runtime exceeded 60 s");
}

// --- criterion 2: isolation lemma oracle -------------------------------------

void criterion_isolation(Outcome& out) {
  Rng gen(202, 0);
  int agreeing = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng tr = gen.fork(i);
    TropicalProblem a = random_problem(tr, 8, 12);
    TropicalProblem b;
    if (tr.below(2)) {
      b = random_problem(tr, 8, 12);
      b.n = a.n;
      for (auto& member : b.support) member.resize(a.n, 0);
    } else {
      // an equal-function variant: shuffled members plus a dominated one
      b = a;
      std::vector<std::uint8_t> dominated = a.support[tr.below(a.support.size())];
      for (auto& bit : dominated)
        if (bit && tr.below(2)) bit = 0;
      b.support.push_back(dominated);
      for (std::size_t j = b.support.size(); j-- > 1;)
        std::swap(b.support[j], b.support[tr.below(j + 1)]);
    }

    Circuit ca = a.to_circuit();  // implementation route
    bool agree = true;
    for (std::uint64_t idx = 0; agree && idx < (std::uint64_t(1) << a.n); ++idx) {
      std::vector<Rational> x(a.n);
      for (int j = 0; j < a.n; ++j) x[j] = (idx >> j) & 1 ? 1 : 0;
      agree = evaluate(ca, x) == b.value_at(x);  // oracle route
    }
    if (!agree) continue;
    ++agreeing;
    for (int pt = 0; pt < 100; ++pt) {
      Rng pr = tr.fork(7000 + pt);
      auto x = random_point(pr, a.n, Rational(0), Rational(12));
      if (evaluate(ca, x) != b.value_at(x)) ++violations;
    }
  }
  out.expect(violations == 0,
             std::to_string(violations) + " rational-point violations");
  out.expect(agreeing >= 100, "too few agreeing pairs exercised");

  // directed counterexamples from the two coverage properties
  TropicalProblem base;
  base.n = 4;
  base.support = {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // a member of the problem not covered by the circuit: disagreement at it
  Circuit missing = base.sub_circuit(std::vector<std::size_t>{0, 2});
  std::vector<Rational> at_a = {0, 1, 1, 0};
  out.expect(evaluate(missing, at_a) < base.value_at(at_a),
             "dropped member not exposed at its own support");
  out.expect(!verify_on_isolating_set(missing, base).passed,
             "missing-member circuit passed verification");
  // a circuit member not covered by the problem: disagreement at it
  TropicalProblem bigger = base;
  bigger.support.push_back({1, 0, 0, 1});
  Circuit extra = bigger.to_circuit();
  std::vector<Rational> at_b = {1, 0, 0, 1};
  out.expect(evaluate(extra, at_b) > base.value_at(at_b),
             "extra member not exposed at its own support");
  auto check = verify_on_isolating_set(extra, base);
  out.expect(!check.passed && check.overshoot,
             "extra-member circuit did not overshoot");
}

// --- criterion 3: Schwartz-Zippel counting -----------------------------------

void criterion_sz(Outcome& out) {
  Rng gen(303, 0);
  for (int i = 0; i < 200; ++i) {
    Rng tr = gen.fork(i);
    int n = 1 + static_cast<int>(tr.below(3));
    Polynomial p(n);
    while (p.is_zero()) {
      int terms = 1 + static_cast<int>(tr.below(5));
      for (int t = 0; t < terms; ++t) {
        Polynomial::Exponents e(n, 0);
        unsigned budget = 4;  // degree cap
        for (int v = 0; v < n; ++v) {
          unsigned exp = static_cast<unsigned>(tr.below(budget + 1));
          e[v] = exp;
          budget -= exp;
        }
        p.add_term(e, Rational(tr.int_in(-5, 5)));
      }
    }
    std::uint64_t d = p.degree();
    std::vector<Rational> S;
    for (std::uint64_t v = 0; v < 2 * std::max<std::uint64_t>(d, 1) + 2; ++v)
      S.push_back(Rational(static_cast<unsigned long>(v)) - Rational(2));
    auto result = sz_zero_count(p, S, n, 1 << 20);
    out.expect(result.within, "zero count exceeded d |S|^(n-1) at trial " +
                                  std::to_string(i));
  }

  // tightness: p = x1 over a grid containing 0 meets the bound exactly
  auto tight = sz_zero_count(Polynomial::variable(2, 1),
                             {Rational(0), Rational(1), Rational(2), Rational(3)}, 2);
  out.expect(tight.zero_count == 4 && tight.bound == 4 && tight.within,
             "tightness instance did not meet the bound with equality");
}

// --- criterion 4: finite majority rule ---------------------------------------

void criterion_finite_majority(Outcome& out) {
  Rng gen(404, 0);
  int successes = 0;
  for (int i = 0; i < 20; ++i) {
    Rng tr = gen.fork(i);
    std::size_t rows = 4 + tr.below(253);  // up to 256
    std::size_t cols = 6 + tr.below(27);
    FiniteMatrix m;
    for (std::size_t r = 0; r < rows; ++r)
      m.rows.push_back({Rational(static_cast<unsigned long>(r))});
    for (std::size_t c = 0; c < cols; ++c)
      m.cols.push_back({Rational(static_cast<unsigned long>(c))});
    m.col_dist.assign(cols, Rational(1, static_cast<unsigned long>(cols)));
    m.bits.assign(rows * cols, 0);
    std::size_t ones = (2 * cols + 2) / 3;  // per-row density >= 2/3
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::size_t> order(cols);
      for (std::size_t c = 0; c < cols; ++c) order[c] = c;
      for (std::size_t c = cols - 1; c > 0; --c)
        std::swap(order[c], order[tr.below(c + 1)]);
      for (std::size_t c = 0; c < ones; ++c) m.bits[r * cols + order[c]] = 1;
    }
    m.validate();

    Rng search(505, i);
    MajoritySearchOptions opts;
    opts.retry_limit = 10;
    try {
      auto result = find_majority_columns(m, search, opts);
      ++successes;
      auto expected_m = static_cast<std::size_t>(
          std::ceil(27.0 * std::log2(static_cast<double>(rows))));
      if (expected_m < 1) expected_m = 1;
      if (expected_m % 2 == 0) ++expected_m;
      out.expect(result.m_initial == expected_m, "unexpected initial m");
      out.expect(result.certificate.valid_for(m), "certificate recount failed");
      out.expect(result.shrunk.valid_for(m), "shrunk certificate recount failed");
      bool heavy = false;
      for (auto col : result.certificate.columns) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < rows; ++r) count += m.at(r, col);
        heavy = heavy || 2 * count > rows;
      }
      out.expect(heavy, "no column with more than |rows|/2 ones");
    } catch (const Error&) {
      // counted against the success rate below
    }
  }
  out.expect(successes >= 19, "success rate below 95% (" +
                                  std::to_string(successes) + "/20)");
}

// --- criterion 5: Warren sign-pattern bound ----------------------------------

void criterion_warren(Outcome& out) {
  Rng gen(606, 0);

  auto sample_points = [&](Rng& rng, int n, int count) {
    std::vector<std::vector<Rational>> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
      pts.push_back(random_point(rng, n, Rational(-8), Rational(8), 6));
    return pts;
  };

  // random families
  for (int fam = 0; fam < 8; ++fam) {
    Rng tr = gen.fork(fam);
    int n = 1 + static_cast<int>(tr.below(2));
    int m = n + static_cast<int>(tr.below(7 - n));
    std::vector<Polynomial> polys;
    unsigned d = 1;
    for (int j = 0; j < m; ++j) {
      Polynomial p(n);
      int terms = 1 + static_cast<int>(tr.below(4));
      for (int t = 0; t < terms; ++t) {
        Polynomial::Exponents e(n, 0);
        unsigned left = 3;
        for (int v = 0; v < n; ++v) {
          e[v] = static_cast<unsigned>(tr.below(left + 1));
          left -= e[v];
        }
        p.add_term(e, Rational(tr.int_in(-6, 6)));
      }
      d = std::max(d, p.degree());
      polys.push_back(std::move(p));
    }
    auto pts = sample_points(tr, n, 10000);
    auto count = count_sign_patterns(polys, pts);
    out.expect(Integer(count) <= warren_bound_ceiling(m, d, n),
               "random family " + std::to_string(fam) + " exceeded the bound");
  }

  // adversarial families: products of distinct linear forms in 2 variables
  for (int fam = 0; fam < 4; ++fam) {
    Rng tr = gen.fork(100 + fam);
    int m = 6;
    unsigned d = 3;
    std::vector<Polynomial> polys;
    for (int j = 0; j < m; ++j) {
      Polynomial prod = Polynomial::constant(2, 1);
      for (unsigned f = 0; f < d; ++f) {
        Polynomial lin(2);
        lin.add_term({1, 0}, Rational(tr.int_in(-3, 3)));
        lin.add_term({0, 1}, Rational(tr.int_in(1, 3)));
        lin.add_term({0, 0}, Rational(tr.int_in(-4, 4)));
        prod = prod * lin;
      }
      polys.push_back(std::move(prod));
    }
    auto pts = sample_points(tr, 2, 10000);
    auto count = count_sign_patterns(polys, pts);
    out.expect(Integer(count) <= warren_bound_ceiling(m, d, 2),
               "adversarial family exceeded the bound");
  }

  // a single degree-1 polynomial achieves exactly 3 sign patterns
  std::vector<Polynomial> single = {Polynomial::variable(1, 1)};
  std::vector<std::vector<Rational>> pts = {{Rational(-1)}, {Rational(0)}, {Rational(1)}};
  Rng pr(707, 0);
  for (int i = 0; i < 10000; ++i)
    pts.push_back(random_point(pr, 1, Rational(-9), Rational(9)));
  out.expect(count_sign_patterns(single, pts) == 3,
             "single linear polynomial did not reach exactly 3 patterns");
}

// --- criterion 6: zero-vote circuit ------------------------------------------

void criterion_zero_vote(Outcome& out) {
  for (int n = 1; n <= 6; ++n) {
    Circuit c = build_zero_vote_circuit(n);
    for (const auto& node : c.nodes) {
      if (node.kind == Node::Kind::Gate)
        out.expect(node.op == OpKind::Add || node.op == OpKind::Mul,
                   "non-monotone gate");
      if (node.kind == Node::Kind::Const)
        out.expect(node.value >= 0, "negative constant");
    }
    out.expect(c.size() <= static_cast<std::size_t>(kZeroVoteSizeConstant) * n * n,
               "gate count above the documented constant at n = " +
                   std::to_string(n));
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    std::vector<Rational> x(n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      int zeros = 0;
      for (int i = 0; i < n; ++i) {
        x[i] = Rational(static_cast<unsigned long>(rest % 3));
        if (x[i] == 0) ++zeros;
        rest /= 3;
      }
      bool vanishes = evaluate(c, x) == 0;
      if (vanishes != (2 * zeros > n)) {
        out.fail("truth table mismatch at n = " + std::to_string(n));
        return;
      }
    }
  }
}

// --- criterion 7: median network ---------------------------------------------

void criterion_median_network(Outcome& out) {
  Rng gen(808, 0);
  for (int m = 1; m <= 64; ++m) {
    auto net = build_median_network(m);
    double cap = kMedianNetworkSizeConstant * m *
                 std::pow(std::log2(static_cast<double>(m) + 1), 2);
    out.expect(static_cast<double>(net.circuit.size()) <= cap,
               "gate count above the documented constant at m = " +
                   std::to_string(m));
    Rng tr = gen.fork(m);
    for (int trial = 0; trial < 1000; ++trial) {
      auto x = random_point(tr, m, Rational(-50), Rational(50));
      auto sorted = reference_sorted(x);
      auto trace = evaluate_trace(net.circuit, x);
      for (int i = 0; i < m; ++i) {
        if (trace[net.sorted_outputs[i]] != sorted[i]) {
          out.fail("sorted output mismatch at m = " + std::to_string(m));
          return;
        }
      }
    }
  }

  for (int m : {7, 8}) {
    auto net = build_median_network(m);
    VoteFunction candidate = [&](std::span<const Rational> x) {
      return evaluate(net.circuit, x);
    };
    for (const auto& rel : {Relation::equality(), Relation::sign(),
                            Relation::approx_within(Rational(3, 2))}) {
      Rng tr = gen.fork(1000 + m * 10 + static_cast<int>(rel.kind()));
      auto check = is_majority_rho_vote(candidate, rel, m, 5000, tr);
      out.expect(check.ok, "rho-vote property failed for " + rel.name() +
                               " at m = " + std::to_string(m));
    }
  }
}

// --- criterion 8: circuit -> existential formula ------------------------------

void criterion_formula_compiler(Outcome& out) {
  Rng gen(909, 0);
  for (int i = 0; i < 100; ++i) {
    Rng tr = gen.fork(i);
    RandomCircuitSpec spec;
    spec.n_inputs = 2 + static_cast<int>(tr.below(3));
    spec.gates = 1 + static_cast<int>(tr.below(20));
    spec.ops = {OpKind::Add, OpKind::Sub, OpKind::Mul,
                OpKind::Min, OpKind::Max, OpKind::IteLt};
    if (tr.below(3) == 0) spec.ops.push_back(OpKind::Div);
    // redraw circuits whose divisions make most of the space a pole set;
    // the witness property is about points where the circuit is defined
    Circuit c;
    for (int redraw = 0;; ++redraw) {
      c = random_circuit(tr, spec);
      int defined = 0;
      for (int probe = 0; probe < 20; ++probe) {
        Rng pr = tr.fork(90000 + redraw * 100 + probe);
        auto x = random_point(pr, spec.n_inputs, Rational(-6), Rational(6));
        try {
          evaluate(c, x);
          ++defined;
        } catch (const Error&) {
        }
      }
      if (defined >= 15 || redraw >= 50) break;
    }
    auto e = circuit_to_existential(c);
    out.expect(e.quantified_vars == static_cast<int>(c.size()) - 1,
               "quantifier count != s - 1");
    unsigned b = static_cast<unsigned>(c.max_gate_complexity());
    auto polys = distinct_polynomials(e.matrix);
    out.expect(polys.size() <= b * c.size(), "more than b*s distinct polynomials");
    for (const auto& p : polys)
      if (p.degree() > b) out.fail("degree above b");

    int checked = 0;
    for (int attempt = 0; attempt < 500 && checked < 100; ++attempt) {
      Rng pr = tr.fork(10000 + attempt);
      auto x = random_point(pr, spec.n_inputs, Rational(-6), Rational(6));
      std::vector<Rational> trace;
      try {
        trace = evaluate_trace(c, x);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::DivisionByZero) continue;  // resample
        throw;
      }
      ++checked;
      std::vector<Rational> z;
      for (std::size_t node = 0; node < c.nodes.size(); ++node)
        if (c.nodes[node].kind == Node::Kind::Gate &&
            static_cast<int>(node) != c.output)
          z.push_back(trace[node]);
      Rational y = trace[c.output];
      if (!eval_with_witness(e, x, y, z)) {
        out.fail("forced witness rejected at circuit " + std::to_string(i));
        return;
      }
      if (eval_with_witness(e, x, y + 1, z)) {
        out.fail("perturbed output accepted at circuit " + std::to_string(i));
        return;
      }
      for (std::size_t zi = 0; zi < z.size(); ++zi) {
        auto zz = z;
        zz[zi] += 1;
        if (eval_with_witness(e, x, y, zz)) {
          out.fail("perturbed witness accepted at circuit " + std::to_string(i));
          return;
        }
      }
    }
    out.expect(checked == 100, "could not collect 100 pole-free points");
  }
}

// --- criterion 9: finite-witness wrappers at desk scale ------------------------

Circuit two_random_paths_circuit() {
  // min(x1+x2+x3, x4+x5+x6) + noise, noise uniform over {0, 0, 5}:
  // the shorter of two three-edge paths, exact with probability 2/3.
  Circuit c;
  c.n_det_inputs = 6;
  c.n_rand_inputs = 1;
  for (int i = 1; i <= 6; ++i) c.nodes.push_back(Node::det_input(i));
  c.nodes.push_back(Node::rand_input(1));                 // 6
  c.nodes.push_back(Node::gate(OpKind::Add, {0, 1}));     // 7
  c.nodes.push_back(Node::gate(OpKind::Add, {7, 2}));     // 8: path 1
  c.nodes.push_back(Node::gate(OpKind::Add, {3, 4}));     // 9
  c.nodes.push_back(Node::gate(OpKind::Add, {9, 5}));     // 10: path 2
  c.nodes.push_back(Node::gate(OpKind::Min, {8, 10}));    // 11
  c.nodes.push_back(Node::gate(OpKind::Add, {11, 6}));    // 12
  c.output = 12;
  RandomInputSpec spec;
  spec.inputs = {DiscreteUniform{{Rational(0), Rational(0), Rational(5)}}};
  c.rand_spec = spec;
  c.validate();
  return c;
}

void criterion_desk_scale(Outcome& out) {
  Circuit c = two_random_paths_circuit();
  OracleFn oracle = [](std::span<const Rational> x) {
    return std::min(Rational(x[0] + x[1] + x[2]), Rational(x[3] + x[4] + x[5]));
  };
  std::vector<std::vector<Rational>> witnesses;
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    std::vector<Rational> x(6);
    for (int j = 0; j < 6; ++j) x[j] = (idx >> j) & 1 ? 1 : 0;
    witnesses.push_back(std::move(x));
  }

  FiniteDerandOptions opts;
  opts.t_f = 2;  // two feasible paths
  for (const auto& rel : {Relation::equality(), Relation::approx_within(Rational(1))}) {
    auto report = derandomize_finite(c, oracle, witnesses, rel, 909, opts);
    out.expect(report.verification.passed,
               "wrapper failed verification for " + rel.name());
    out.expect(report.verification.points_checked == 64,
               "wrapper not verified on the full 64-point grid");
    bool has_exact = false, has_approx = false;
    for (const auto& [name, value] : report.m_theoretical) {
      if (name == "exact")
        has_exact = value == theoretical_m_exact(6, c.size(), 2, Rational(1));
      if (name == "approx")
        has_approx = value == theoretical_m_approx(6, c.size(), 2, 2,
                                                   rel.descr_complexity(),
                                                   Rational(1));
    }
    out.expect(has_exact && has_approx,
               "theoretical m values missing or wrong for " + rel.name());
    std::string json = report.to_json();
    out.expect(json.find("certify nothing beyond") != std::string::npos,
               "report does not state the witness-only scope");
  }
}

// --- criterion 10: concavity fixtures -----------------------------------------

void criterion_concavity(Outcome& out) {
  Rng gen(111, 0);
  for (int i = 0; i < 100; ++i) {
    Rng tr = gen.fork(i);
    Rational a = tr.rational_in(Rational(-20), Rational(20), 8);
    Rational b = a;
    while (!(b > a)) b = tr.rational_in(Rational(-20), Rational(20), 8);
    auto fix = concavity_counterexample(a, b);
    out.expect(fix.maj_midpoint.has_value() && *fix.maj_midpoint == a,
               "majority of the midpoint is not a");
    out.expect(fix.average_of_majorities == (a + b) / 2,
               "average of majorities mismatch");
    out.expect(*fix.maj_midpoint < fix.average_of_majorities,
               "concavity inequality not strict");
  }
}

// --- criterion 11: determinism across thread counts ----------------------------

void criterion_determinism(Outcome& out) {
  // tropical pipeline
  TropicalProblem problem;
  problem.n = 6;
  problem.support = {{1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 1, 0, 0}};
  auto sampler = subset_choice_sampler(problem, {{0}, {1}, {2}});
  TropicalDerandOptions t1, t4;
  t1.threads = 1;
  t4.threads = 4;
  auto trop1 = derandomize_tropical_one_sided(sampler, problem, Rational(1, 3), 77, t1);
  auto trop4 = derandomize_tropical_one_sided(sampler, problem, Rational(1, 3), 77, t4);
  out.expect(trop1.to_json() == trop4.to_json(), "tropical reports differ");

  // finite pipeline
  Circuit c = two_random_paths_circuit();
  OracleFn oracle = [](std::span<const Rational> x) {
    return std::min(Rational(x[0] + x[1] + x[2]), Rational(x[3] + x[4] + x[5]));
  };
  std::vector<std::vector<Rational>> witnesses;
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    std::vector<Rational> x(6);
    for (int j = 0; j < 6; ++j) x[j] = (idx >> j) & 1 ? 1 : 0;
    witnesses.push_back(std::move(x));
  }
  FiniteDerandOptions f1, f4;
  f1.threads = 1;
  f4.threads = 4;
  auto fin1 = derandomize_finite(c, oracle, witnesses, Relation::equality(), 88, f1);
  auto fin4 = derandomize_finite(c, oracle, witnesses, Relation::equality(), 88, f4);
  out.expect(fin1.to_json() == fin4.to_json(), "finite reports differ");
  auto fin1b = derandomize_finite(c, oracle, witnesses, Relation::equality(), 88, f1);
  out.expect(fin1.to_json() == fin1b.to_json(), "finite rerun differs");

  // arithmetic pipeline
  Circuit noisy;
  noisy.n_det_inputs = 1;
  noisy.n_rand_inputs = 1;
  noisy.nodes = {Node::det_input(1), Node::rand_input(1),
                 Node::gate(OpKind::Add, {0, 1})};
  noisy.output = 2;
  RandomInputSpec spec;
  spec.inputs = {DiscreteUniform{{Rational(0), Rational(0), Rational(1)}}};
  noisy.rand_spec = spec;
  ArithmeticDerandOptions a1, a4;
  a1.threads = 1;
  a4.threads = 4;
  auto ar1 = derandomize_arithmetic(noisy, Polynomial::variable(1, 1),
                                    Polynomial::constant(1, 1), 1, 99, a1);
  auto ar4 = derandomize_arithmetic(noisy, Polynomial::variable(1, 1),
                                    Polynomial::constant(1, 1), 1, 99, a4);
  out.expect(ar1.to_json() == ar4.to_json(), "arithmetic reports differ");

  // majority column search is deterministic in the master seed
  Rng ga(121, 0);
  FiniteMatrix m;
  std::size_t rows = 32, cols = 12;
  for (std::size_t r = 0; r < rows; ++r)
    m.rows.push_back({Rational(static_cast<unsigned long>(r))});
  for (std::size_t cidx = 0; cidx < cols; ++cidx)
    m.cols.push_back({Rational(static_cast<unsigned long>(cidx))});
  m.col_dist.assign(cols, Rational(1, static_cast<unsigned long>(cols)));
  m.bits.assign(rows * cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::size_t> order(cols);
    for (std::size_t cidx = 0; cidx < cols; ++cidx) order[cidx] = cidx;
    for (std::size_t cidx = cols - 1; cidx > 0; --cidx)
      std::swap(order[cidx], order[ga.below(cidx + 1)]);
    for (std::size_t cidx = 0; cidx < (2 * cols + 2) / 3; ++cidx)
      m.bits[r * cols + order[cidx]] = 1;
  }
  m.validate();
  Rng s1(131, 1), s2(131, 1);
  auto r1 = find_majority_columns(m, s1);
  auto r2 = find_majority_columns(m, s2);
  out.expect(r1.certificate.columns == r2.certificate.columns &&
                 r1.shrunk.columns == r2.shrunk.columns,
             "majority search not reproducible");
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");
  run_criterion(1, "tropical one-sided derandomization and its size bound",
                criterion_tropical);
  run_criterion(2, "isolating-set oracle for multilinear constant-free problems",
                criterion_isolation);
  run_criterion(3, "exhaustive zero counting against the degree bound",
                criterion_sz);
  run_criterion(4, "finite majority rule at m = ceil(27 log2 |rows|)",
                criterion_finite_majority);
  run_criterion(5, "sign-pattern counts against the Warren bound",
                criterion_warren);
  run_criterion(6, "zero-vote circuit truth table, monotonicity and size",
                criterion_zero_vote);
  run_criterion(7, "median network against reference sort and the vote property",
                criterion_median_network);
  run_criterion(8, "existential compilation: quantifiers, bounds and witnesses",
                criterion_formula_compiler);
  run_criterion(9, "finite-witness wrappers for the two-path circuit",
                criterion_desk_scale);
  run_criterion(10, "majority voting is not midpoint-concave",
                criterion_concavity);
  run_criterion(11, "byte-identical reports across seeds and thread counts",
                criterion_determinism);
  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
