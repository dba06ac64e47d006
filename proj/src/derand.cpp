#include "derand.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "majority.hpp"
#include "parallel.hpp"

namespace psc {

// --- tropical problems ------------------------------------------------------

void TropicalProblem::validate() const {
  if (n < 1) fail(ErrorCode::Invalid, "tropical problem: n must be >= 1");
  if (support.empty()) fail(ErrorCode::Invalid, "tropical problem: empty support");
  if (!constant_free)
    fail(ErrorCode::Invalid, "tropical problem: only constant-free problems supported");
  for (const auto& a : support) {
    if (static_cast<int>(a.size()) != n)
      fail(ErrorCode::Invalid, "tropical problem: support vector length != n");
    for (auto bit : a)
      if (bit > 1) fail(ErrorCode::Invalid, "tropical problem: support must be 0/1");
  }
}

Rational TropicalProblem::value_at(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n)
    fail(ErrorCode::Invalid, "tropical problem: |x| != n");
  bool first = true;
  Rational best;
  for (const auto& a : support) {
    Rational v = 0;
    for (int i = 0; i < n; ++i)
      if (a[i]) v += x[i];
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

Circuit TropicalProblem::sub_circuit(std::span<const std::size_t> members) const {
  if (members.empty()) fail(ErrorCode::Invalid, "sub_circuit: empty member list");
  Circuit c;
  c.n_det_inputs = n;
  for (int i = 1; i <= n; ++i) c.nodes.push_back(Node::det_input(i));
  int zero_node = -1;
  std::vector<int> terms;
  for (std::size_t member : members) {
    if (member >= support.size())
      fail(ErrorCode::Invalid, "sub_circuit: member index out of range");
    const auto& a = support[member];
    int acc = -1;
    for (int i = 0; i < n; ++i) {
      if (!a[i]) continue;
      if (acc < 0) {
        acc = i;
      } else {
        c.nodes.push_back(Node::gate(OpKind::Add, {acc, i}));
        acc = static_cast<int>(c.nodes.size()) - 1;
      }
    }
    if (acc < 0) {  // empty support member contributes the constant 0
      if (zero_node < 0) {
        c.nodes.push_back(Node::constant(Rational(0)));
        zero_node = static_cast<int>(c.nodes.size()) - 1;
      }
      acc = zero_node;
    }
    terms.push_back(acc);
  }
  int out = terms[0];
  for (std::size_t t = 1; t < terms.size(); ++t) {
    c.nodes.push_back(Node::gate(OpKind::Max, {out, terms[t]}));
    out = static_cast<int>(c.nodes.size()) - 1;
  }
  c.output = out;
  c.validate();
  return c;
}

Circuit TropicalProblem::to_circuit() const {
  std::vector<std::size_t> all(support.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return sub_circuit(all);
}

std::string TropicalProblem::str() const {
  std::ostringstream out;
  out << "tropical-problem\n";
  out << "n " << n << "\n";
  for (const auto& a : support) {
    out << "a ";
    for (int i = 0; i < n; ++i) {
      if (i) out << ",";
      out << static_cast<int>(a[i]);
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

TropicalProblem TropicalProblem::parse(const std::string& text) {
  TropicalProblem p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool started = false, ended = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head) || head[0] == '#') continue;
    if (ended)
      fail(ErrorCode::Parse, "problem line " + std::to_string(lineno) + ": content after 'end'");
    if (!started) {
      if (head != "tropical-problem")
        fail(ErrorCode::Parse, "problem line " + std::to_string(lineno) +
                                   ": expected 'tropical-problem' header");
      started = true;
      continue;
    }
    if (head == "n") {
      ss >> p.n;
    } else if (head == "a") {
      std::string csv;
      ss >> csv;
      std::vector<std::uint8_t> a;
      for (const auto& v : parse_rational_csv(csv)) {
        if (v != 0 && v != 1)
          fail(ErrorCode::Parse, "problem line " + std::to_string(lineno) +
                                     ": support entries must be 0/1");
        a.push_back(v == 1 ? 1 : 0);
      }
      p.support.push_back(std::move(a));
    } else if (head == "end") {
      ended = true;
    } else {
      fail(ErrorCode::Parse, "problem line " + std::to_string(lineno) +
                                 ": unknown directive '" + head + "'");
    }
  }
  if (!started || !ended) fail(ErrorCode::Parse, "problem: missing header or 'end'");
  p.validate();
  return p;
}

TropicalProblem TropicalProblem::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

// --- wrappers ---------------------------------------------------------------

const char* combiner_kind_name(CombinerKind kind) {
  switch (kind) {
    case CombinerKind::SingleCopy: return "single-copy";
    case CombinerKind::MajorityVoteGate: return "majority-vote";
    case CombinerKind::MedianNetwork: return "median-network";
    case CombinerKind::ZeroVoteCircuit: return "zero-vote";
    case CombinerKind::MaxTree: return "max-tree";
  }
  return "?";
}

Rational Wrapper::evaluate(std::span<const Rational> x) const {
  if (circuit) return psc::evaluate(*circuit, x);
  if (combiner == CombinerKind::SingleCopy) return psc::evaluate(copies.at(0), x);
  if (combiner == CombinerKind::MajorityVoteGate) {
    std::vector<Rational> outs;
    outs.reserve(copies.size());
    for (const auto& copy : copies) outs.push_back(psc::evaluate(copy, x));
    auto maj = majority_vote(outs);
    if (!maj)
      fail(ErrorCode::Invalid, "wrapper: majority vote undefined on this input");
    return *maj;
  }
  fail(ErrorCode::Internal, "wrapper without a spliced circuit");
}

SizeAccounting Wrapper::sizes() const {
  SizeAccounting acc;
  std::size_t copies_total = 0;
  for (const auto& copy : copies) {
    acc.copy_sizes.push_back(copy.size());
    copies_total += copy.size();
  }
  switch (combiner) {
    case CombinerKind::SingleCopy: acc.combiner_gates = 0; break;
    case CombinerKind::MajorityVoteGate: acc.combiner_gates = 1; break;  // the vote op
    default: acc.combiner_gates = circuit ? circuit->size() - copies_total : 0; break;
  }
  acc.total = copies_total + acc.combiner_gates;
  return acc;
}

namespace {

// n shared inputs feed every copy; copy outputs feed the combiner.
Circuit splice_with_combiner(const std::vector<Circuit>& copies,
                             const Circuit& combiner) {
  Circuit out;
  out.n_det_inputs = copies.at(0).n_det_inputs;
  std::vector<int> inputs;
  for (int i = 1; i <= out.n_det_inputs; ++i) {
    out.nodes.push_back(Node::det_input(i));
    inputs.push_back(static_cast<int>(out.nodes.size()) - 1);
  }
  std::vector<int> copy_outputs;
  for (const auto& copy : copies) {
    if (copy.n_det_inputs != out.n_det_inputs)
      fail(ErrorCode::Invalid, "splice: copies disagree on input count");
    copy_outputs.push_back(append_subcircuit(out, copy, inputs));
  }
  out.output = append_subcircuit(out, combiner, copy_outputs);
  out.validate();
  return out;
}

Circuit max_tree_combiner(int m) {
  Circuit c;
  c.n_det_inputs = m;
  std::vector<int> level;
  for (int i = 1; i <= m; ++i) {
    c.nodes.push_back(Node::det_input(i));
    level.push_back(static_cast<int>(c.nodes.size()) - 1);
  }
  while (level.size() > 1) {
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      c.nodes.push_back(Node::gate(OpKind::Max, {level[i], level[i + 1]}));
      next.push_back(static_cast<int>(c.nodes.size()) - 1);
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  c.output = level[0];
  c.validate();
  return c;
}

nlohmann::json verification_json(const VerificationRecord& v) {
  nlohmann::json j;
  j["domain"] = v.domain;
  j["passed"] = v.passed;
  j["points_checked"] = v.points_checked;
  if (v.counterexample_x) {
    nlohmann::json ce;
    ce["x"] = rational_csv(*v.counterexample_x);
    if (v.expected) ce["expected"] = rational_str(*v.expected);
    if (v.got) ce["got"] = rational_str(*v.got);
    j["counterexample"] = ce;
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

}  // namespace

std::string DerandReport::to_json() const {
  nlohmann::json j;
  j["pipeline"] = pipeline;
  j["master_seed"] = master_seed;
  if (!relation.empty()) j["relation"] = relation;
  j["m"]["used"] = m_used;
  j["m"]["initial"] = m_initial;
  j["m"]["empirical"] = m_empirical;
  for (const auto& [name, value] : m_theoretical)
    j["m"]["theoretical"][name] = value;
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& seed : copy_seeds) seeds.push_back(rational_csv(seed));
  j["copy_seeds"] = seeds;
  j["combiner"] = combiner_kind_name(wrapper.combiner);
  j["sizes"]["copy_sizes"] = sizes.copy_sizes;
  j["sizes"]["combiner_gates"] = sizes.combiner_gates;
  j["sizes"]["total"] = sizes.total;
  if (sizes.bound) j["sizes"]["bound"] = *sizes.bound;
  j["verification"] = verification_json(verification);
  j["retries_used"] = retries_used;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

// --- finite-witness derandomization ----------------------------------------

DerandReport derandomize_finite(const Circuit& c, const OracleFn& oracle,
                                const std::vector<std::vector<Rational>>& witness_inputs,
                                const Relation& rel, std::uint64_t master_seed,
                                const FiniteDerandOptions& opts) {
  c.validate();
  if (witness_inputs.empty())
    fail(ErrorCode::Invalid, "derandomize_finite: empty witness set");

  DerandReport report;
  report.pipeline = "derand-finite";
  report.master_seed = master_seed;
  report.relation = rel.name();

  auto clamp1 = [](std::uint64_t v) { return std::max<std::uint64_t>(v, 1); };
  std::uint64_t n = clamp1(c.n_det_inputs);
  std::uint64_t s = clamp1(c.size());
  std::uint64_t b = clamp1(c.max_gate_complexity());
  report.m_theoretical.emplace_back(
      "exact", theoretical_m_exact(n, s, b, opts.bound_constant));
  report.m_theoretical.emplace_back(
      "approx", theoretical_m_approx(n, s, b, clamp1(opts.t_f),
                                     clamp1(rel.descr_complexity()),
                                     opts.bound_constant));
  report.notes.push_back(
      "verification covers the listed witness inputs only; theoretical m "
      "values are bound-formula reports and certify nothing beyond them");

  auto verify = [&](const Wrapper& wrapper) {
    VerificationRecord v;
    v.domain = std::to_string(witness_inputs.size()) + " witness inputs";
    v.passed = true;
    for (const auto& x : witness_inputs) {
      ++v.points_checked;
      Rational want = oracle(x);
      Rational got;
      bool defined = true;
      try {
        got = wrapper.evaluate(x);
      } catch (const Error&) {
        defined = false;
      }
      if (!defined || !rel.holds(got, want)) {
        v.passed = false;
        v.counterexample_x = x;
        v.expected = want;
        if (defined) v.got = got;
        break;
      }
    }
    return v;
  };

  if (c.deterministic()) {
    report.m_used = report.m_initial = report.m_empirical = 1;
    report.wrapper.combiner = CombinerKind::SingleCopy;
    report.wrapper.copies = {c};
    report.sizes = report.wrapper.sizes();
    report.verification = verify(report.wrapper);
    if (!report.verification.passed)
      fail(ErrorCode::Precondition,
           "derandomize_finite: deterministic circuit disagrees with the oracle at x = " +
               rational_csv(*report.verification.counterexample_x));
    return report;
  }

  if (!c.rand_spec)
    fail(ErrorCode::Precondition,
         "derandomize_finite: probabilistic circuit has no random input spec");

  // Seed columns: exhaustive support with exact weights when small enough,
  // otherwise a uniform sample from the random-input distributions.
  std::vector<std::vector<Rational>> seeds;
  std::vector<Rational> col_dist;
  if (c.rand_spec->finite_support()) {
    bool enumerated = true;
    try {
      auto entries = c.rand_spec->enumerate_support(opts.seeds_budget);
      for (auto& [vec, weight] : entries) {
        seeds.push_back(std::move(vec));
        col_dist.push_back(std::move(weight));
      }
      report.notes.push_back("seed support enumerated exhaustively with exact weights");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      enumerated = false;
    }
    if (!enumerated) {
      seeds.clear();
      col_dist.clear();
    }
  }
  if (seeds.empty()) {
    for (std::uint64_t i = 0; i < opts.seeds_budget; ++i)
      seeds.push_back(sample_seed(*c.rand_spec, master_seed, i));
    report.notes.push_back("seed columns sampled; column distribution is the "
                           "empirical uniform one");
  }

  FiniteMatrix matrix = correctness_matrix(c, oracle, witness_inputs, seeds, rel,
                                           col_dist, opts.threads);
  auto density = is_probabilistically_dense(matrix, opts.density_threshold);
  if (!density.dense)
    fail(ErrorCode::Precondition,
         "derandomize_finite: measured density " +
             rational_str(density.worst_density) + " at witness row " +
             std::to_string(density.worst_row) + " is below the threshold " +
             rational_str(opts.density_threshold));

  Rng search_rng(master_seed, 1);
  MajoritySearchOptions search_opts;
  search_opts.retry_limit = opts.retry_limit;
  search_opts.density_threshold = opts.density_threshold;
  auto search = find_majority_columns(matrix, search_rng, search_opts);
  report.m_initial = search.certificate.m();
  report.m_empirical = search.m_empirical;
  report.retries_used = search.retries_used;

  const MajorityCertificate& cert = search.shrunk;
  report.m_used = cert.m();
  std::vector<Circuit> copies;
  for (auto col : cert.columns) {
    report.copy_seeds.push_back(seeds[col]);
    copies.push_back(fix_random_inputs(c, seeds[col]));
  }

  Wrapper& wrapper = report.wrapper;
  wrapper.copies = std::move(copies);
  int m = static_cast<int>(cert.m());
  if (rel.kind() == Relation::Kind::Equality) {
    wrapper.combiner = CombinerKind::MajorityVoteGate;
  } else if (rel.kind() == Relation::Kind::Nullity) {
    wrapper.combiner = CombinerKind::ZeroVoteCircuit;
    wrapper.circuit = splice_with_combiner(wrapper.copies, build_zero_vote_circuit(m));
  } else if (rel.contiguous()) {
    wrapper.combiner = CombinerKind::MedianNetwork;
    wrapper.circuit = splice_with_combiner(wrapper.copies, build_median_network(m).circuit);
  } else {
    fail(ErrorCode::Unsupported,
         "derandomize_finite: no combiner for non-contiguous relation '" +
             rel.name() + "'");
  }
  report.sizes = wrapper.sizes();
  report.verification = verify(wrapper);
  if (!report.verification.passed)
    fail(ErrorCode::Internal,
         "derandomize_finite: wrapper failed verification despite a valid "
         "certificate, at x = " + rational_csv(*report.verification.counterexample_x));
  return report;
}

// --- tropical isolating-set derandomization ---------------------------------

namespace {

std::vector<Rational> grid_point_01(std::uint64_t index, int n) {
  std::vector<Rational> x(n);
  for (int j = 0; j < n; ++j)
    x[j] = (index >> (n - 1 - j)) & 1 ? 1 : 0;  // x1 is the most significant
  return x;
}

struct SweepFailure {
  std::uint64_t index;
  Rational expected, got;
};

}  // namespace

IsolatingVerifyResult verify_on_isolating_set(const Circuit& c,
                                              const TropicalProblem& problem,
                                              const IsolatingVerifyOptions& opts) {
  problem.validate();
  c.validate();
  if (c.n_det_inputs != problem.n)
    fail(ErrorCode::Invalid, "verify_on_isolating_set: circuit arity != problem n");
  if (problem.n > opts.max_n)
    fail(ErrorCode::Budget, "verify_on_isolating_set: n exceeds the exhaustive cap");

  IsolatingVerifyResult result;
  result.grid_points = std::uint64_t(1) << problem.n;

  unsigned threads = resolve_threads(opts.threads);
  std::vector<std::optional<SweepFailure>> failures(threads);
  std::vector<std::uint8_t> overshoot(threads, 0);
  std::vector<std::string> errors(threads);
  std::size_t chunk = (result.grid_points + threads - 1) / threads;
  parallel_for(threads, threads, [&](std::size_t t) {
    std::uint64_t lo = t * chunk;
    std::uint64_t hi = std::min<std::uint64_t>(result.grid_points, lo + chunk);
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto x = grid_point_01(i, problem.n);
      try {
        Rational got = evaluate(c, x);
        Rational want = problem.value_at(x);
        if (got != want) {
          if (got > want) overshoot[t] = 1;
          if (!failures[t]) failures[t] = SweepFailure{i, want, got};
          // keep scanning so overshoot detection stays exhaustive
        }
      } catch (const std::exception& e) {
        if (errors[t].empty()) errors[t] = e.what();
        return;
      }
    }
  });
  for (const auto& err : errors)
    if (!err.empty()) fail(ErrorCode::Invalid, "verify_on_isolating_set: " + err);

  std::optional<SweepFailure> first;
  for (const auto& f : failures)
    if (f && (!first || f->index < first->index)) first = f;
  for (auto o : overshoot) result.overshoot = result.overshoot || o;

  if (first) {
    result.passed = false;
    result.counterexample_x = grid_point_01(first->index, problem.n);
    result.expected = first->expected;
    result.got = first->got;
    return result;
  }

  // Agreement on {0,1}^n forces agreement on all nonnegative inputs; the
  // spot checks assert that consequence.
  result.spot_points = opts.spot_checks;
  Rng spot_root(opts.spot_seed, 0x73706f74);
  for (std::uint64_t i = 0; i < opts.spot_checks; ++i) {
    Rng rng = spot_root.fork(i);
    std::vector<Rational> x(problem.n);
    for (auto& xi : x) xi = rng.rational_in(Rational(0), Rational(20), 8);
    Rational got = evaluate(c, x);
    Rational want = problem.value_at(x);
    if (got != want) {
      result.passed = false;
      result.overshoot = result.overshoot || got > want;
      result.counterexample_x = x;
      result.expected = want;
      result.got = got;
      return result;
    }
  }
  result.passed = true;
  return result;
}

TropicalSampler subset_choice_sampler(const TropicalProblem& problem,
                                      std::vector<std::vector<std::size_t>> choices) {
  problem.validate();
  if (choices.empty()) fail(ErrorCode::Invalid, "sampler: no choices");
  std::size_t bound = 0;
  std::vector<Circuit> candidates;
  for (const auto& members : choices) {
    candidates.push_back(problem.sub_circuit(members));
    bound = std::max(bound, candidates.back().size());
  }
  TropicalSampler sampler;
  sampler.size_bound = bound;
  sampler.description =
      "uniform choice among " + std::to_string(choices.size()) + " sub-circuits";
  sampler.draw = [candidates = std::move(candidates)](Rng& rng) {
    return candidates[rng.below(candidates.size())];
  };
  return sampler;
}

TropicalSampler parse_sampler(const std::string& text,
                              const TropicalProblem& problem) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool started = false, ended = false;
  std::vector<std::vector<std::size_t>> choices;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head) || head[0] == '#') continue;
    if (!started) {
      if (head != "tropical-sampler")
        fail(ErrorCode::Parse, "sampler line " + std::to_string(lineno) +
                                   ": expected 'tropical-sampler' header");
      started = true;
      continue;
    }
    if (head == "choice") {
      std::string csv;
      ss >> csv;
      std::vector<std::size_t> members;
      for (const auto& v : parse_rational_csv(csv)) {
        if (v < 0 || v.get_den() != 1)
          fail(ErrorCode::Parse, "sampler line " + std::to_string(lineno) +
                                     ": member indices must be nonnegative integers");
        members.push_back(v.get_num().get_ui());
      }
      choices.push_back(std::move(members));
    } else if (head == "end") {
      ended = true;
    } else {
      fail(ErrorCode::Parse, "sampler line " + std::to_string(lineno) +
                                 ": unknown directive '" + head + "'");
    }
  }
  if (!started || !ended) fail(ErrorCode::Parse, "sampler: missing header or 'end'");
  return subset_choice_sampler(problem, std::move(choices));
}

TropicalSampler load_sampler(const std::string& path, const TropicalProblem& problem) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open sampler file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_sampler(ss.str(), problem);
}

DerandReport derandomize_tropical_one_sided(const TropicalSampler& sampler,
                                            const TropicalProblem& problem,
                                            const Rational& p,
                                            std::uint64_t master_seed,
                                            const TropicalDerandOptions& opts) {
  problem.validate();
  if (!(p > 0 && p <= 1))
    fail(ErrorCode::Invalid, "derandomize_tropical: p must be in (0, 1]");

  DerandReport report;
  report.pipeline = "derand-tropical";
  report.master_seed = master_seed;
  report.relation = "one-sided, p = " + rational_str(p);

  Integer m_int = ceil_rational(Rational(problem.n) / p);
  if (!m_int.fits_ulong_p())
    fail(ErrorCode::Budget, "derandomize_tropical: m = ceil(n/p) too large");
  std::size_t m = m_int.get_ui();
  report.m_used = report.m_initial = report.m_empirical = m;

  Rng root(master_seed, 0x74726f70);

  // Precheck: the sampler contract is estimated, not assumed. One-sidedness
  // violations are hard errors; a low empirical success rate (beyond the
  // slack) is a precondition failure. The verification sweep below is the
  // actual guarantee.
  {
    std::uint64_t grid = std::uint64_t(1) << std::min(problem.n, 62);
    std::vector<std::vector<Rational>> points;
    if (grid <= opts.precheck_max_points) {
      for (std::uint64_t i = 0; i < grid; ++i)
        points.push_back(grid_point_01(i, problem.n));
    } else {
      Rng prng = root.fork(1);
      for (std::uint64_t i = 0; i < opts.precheck_max_points; ++i) {
        std::uint64_t index = prng.next_u64() & (grid - 1);
        points.push_back(grid_point_01(index, problem.n));
      }
    }
    std::vector<std::uint64_t> hits(points.size(), 0);
    Rng draw_rng = root.fork(2);
    for (std::uint64_t d = 0; d < opts.precheck_draws; ++d) {
      Circuit copy = sampler.draw(draw_rng);
      if (copy.size() > sampler.size_bound)
        fail(ErrorCode::Invalid,
             "derandomize_tropical: sampler drew a circuit of size " +
                 std::to_string(copy.size()) + " above its declared bound " +
                 std::to_string(sampler.size_bound));
      for (std::size_t i = 0; i < points.size(); ++i) {
        Rational got = evaluate(copy, points[i]);
        Rational want = problem.value_at(points[i]);
        if (got > want)
          fail(ErrorCode::Precondition,
               "derandomize_tropical: one-sidedness violated in precheck at x = " +
                   rational_csv(points[i]));
        if (got == want) ++hits[i];
      }
    }
    Rational worst = 2;
    for (auto h : hits)
      worst = std::min(worst, Rational(static_cast<unsigned long>(h),
                                       static_cast<unsigned long>(opts.precheck_draws)));
    if (worst < p - opts.precheck_slack)
      fail(ErrorCode::Precondition,
           "derandomize_tropical: empirical per-input success " +
               rational_str(worst) + " over " +
               std::to_string(opts.precheck_draws) +
               " draws is below p = " + rational_str(p) + " minus the slack " +
               rational_str(opts.precheck_slack));
    report.notes.push_back("sampler precheck: worst empirical per-input success " +
                           rational_str(worst) + " over " +
                           std::to_string(opts.precheck_draws) + " draws");
  }

  for (int attempt = 0; attempt < opts.retry_limit; ++attempt) {
    Rng attempt_rng = root.fork(1000 + attempt);
    std::vector<Circuit> copies;
    copies.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      copies.push_back(sampler.draw(attempt_rng));
      if (copies.back().size() > sampler.size_bound)
        fail(ErrorCode::Invalid,
             "derandomize_tropical: sampler drew a circuit above its size bound");
    }
    Circuit combined =
        splice_with_combiner(copies, max_tree_combiner(static_cast<int>(m)));

    IsolatingVerifyOptions vopts;
    vopts.spot_checks = opts.spot_checks;
    vopts.spot_seed = master_seed;
    vopts.threads = opts.threads;
    auto verify = verify_on_isolating_set(combined, problem, vopts);
    if (verify.overshoot)
      fail(ErrorCode::Precondition,
           "derandomize_tropical: one-sidedness violated, wrapper exceeded the "
           "optimum at x = " + rational_csv(*verify.counterexample_x));
    if (verify.passed) {
      report.retries_used = attempt;
      report.wrapper.combiner = CombinerKind::MaxTree;
      report.wrapper.copies = std::move(copies);
      report.wrapper.circuit = std::move(combined);
      report.sizes = report.wrapper.sizes();
      report.sizes.bound = (sampler.size_bound + 1) * m;
      if (report.sizes.total > *report.sizes.bound)
        fail(ErrorCode::Internal, "derandomize_tropical: size accounting exceeded "
                                  "(s+1)*ceil(n/p)");
      report.verification.domain =
          "all 2^n inputs of {0,1}^n plus " + std::to_string(verify.spot_points) +
          " random nonnegative rational spot checks";
      report.verification.passed = true;
      report.verification.points_checked = verify.grid_points + verify.spot_points;
      report.notes.push_back("wrapper is a max of one-sided under-estimators; "
                             "equality on the 0/1 grid forces equality on all "
                             "nonnegative inputs");
      return report;
    }
  }
  fail(ErrorCode::RetriesExhausted,
       "derandomize_tropical: no verified wrapper within " +
           std::to_string(opts.retry_limit) + " redraw attempts (m = " +
           std::to_string(m) + ")");
}

// --- Schwartz-Zippel counting and arithmetic derandomization ----------------

SzResult sz_zero_count(const Polynomial& p, const std::vector<Rational>& S,
                       int n, std::uint64_t budget) {
  if (p.is_zero()) fail(ErrorCode::Invalid, "sz_zero_count: zero polynomial");
  if (p.n_vars() != n) fail(ErrorCode::Invalid, "sz_zero_count: p.n_vars != n");
  if (n < 1) fail(ErrorCode::Invalid, "sz_zero_count: n must be >= 1");
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (S[i] == S[j]) fail(ErrorCode::Invalid, "sz_zero_count: S has duplicates");
  std::uint64_t d = p.degree();
  if (S.size() < d + 1)
    fail(ErrorCode::Precondition, "sz_zero_count: need |S| >= deg(p) + 1");

  std::uint64_t grid = 1;
  for (int i = 0; i < n; ++i) {
    if (grid > budget / S.size())
      fail(ErrorCode::Budget, "sz_zero_count: |S|^n exceeds the budget");
    grid *= S.size();
  }

  SzResult result;
  result.grid_points = grid;
  std::vector<Rational> x(n);
  for (std::uint64_t index = 0; index < grid; ++index) {
    std::uint64_t rest = index;
    for (int v = n - 1; v >= 0; --v) {
      x[v] = S[rest % S.size()];
      rest /= S.size();
    }
    if (p.eval(x) == 0) ++result.zero_count;
  }
  Integer pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), S.size(), n - 1);
  result.bound = Integer(static_cast<unsigned long>(d)) * pw;
  result.within = Integer(result.zero_count) <= result.bound;
  return result;
}

DerandReport derandomize_arithmetic(const Circuit& c, const Polynomial& oracle_num,
                                    const Polynomial& oracle_den,
                                    std::uint64_t max_deg_r,
                                    std::uint64_t master_seed,
                                    const ArithmeticDerandOptions& opts) {
  c.validate();
  if (oracle_den.is_zero())
    fail(ErrorCode::Invalid, "derandomize_arithmetic: oracle denominator is zero");
  int n = c.n_det_inputs;
  if (oracle_num.n_vars() != n || oracle_den.n_vars() != n)
    fail(ErrorCode::Invalid, "derandomize_arithmetic: oracle arity != circuit n");
  std::size_t s = c.size();
  if (s > static_cast<std::size_t>(opts.max_size))
    fail(ErrorCode::Budget, "derandomize_arithmetic: circuit size above the desk-scale cap");
  if (std::max(oracle_num.degree(), oracle_den.degree()) > max_deg_r)
    fail(ErrorCode::Invalid, "derandomize_arithmetic: max_deg_r below the oracle degree");
  for (const auto& node : c.nodes)
    if (node.kind == Node::Kind::Gate &&
        (node.op == OpKind::Min || node.op == OpKind::Max || node.op == OpKind::IteLt))
      fail(ErrorCode::Invalid, "derandomize_arithmetic: circuit must use only +,-,*,/");

  std::uint64_t d = max_deg_r + (std::uint64_t(1) << s);
  std::uint64_t set_size = 2 * d + 1;  // S = {0, 1, ..., 2d}
  std::uint64_t grid = 1;
  for (int i = 0; i < n; ++i) {
    if (grid > opts.grid_budget / set_size)
      fail(ErrorCode::Budget, "derandomize_arithmetic: grid |S|^n exceeds the budget");
    grid *= set_size;
  }

  DerandReport report;
  report.pipeline = "derand-arith";
  report.master_seed = master_seed;
  report.relation = "eq";
  report.notes.push_back("grid S^n with S = {0..2d}, d = max_deg_r + 2^s = " +
                         std::to_string(d));

  std::vector<std::vector<Rational>> seeds;
  if (c.deterministic()) {
    seeds.push_back({});
  } else if (c.rand_spec && c.rand_spec->finite_support()) {
    bool ok = true;
    try {
      for (auto& [vec, weight] : c.rand_spec->enumerate_support(opts.seeds_budget))
        seeds.push_back(std::move(vec));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      ok = false;
      seeds.clear();
    }
    if (!ok)
      for (std::uint64_t i = 0; i < opts.seeds_budget; ++i)
        seeds.push_back(sample_seed(*c.rand_spec, master_seed, i));
  } else if (c.rand_spec) {
    for (std::uint64_t i = 0; i < opts.seeds_budget; ++i)
      seeds.push_back(sample_seed(*c.rand_spec, master_seed, i));
  } else {
    fail(ErrorCode::Precondition,
         "derandomize_arithmetic: probabilistic circuit has no random input spec");
  }

  auto grid_point = [&](std::uint64_t index) {
    std::vector<Rational> x(n);
    std::uint64_t rest = index;
    for (int v = n - 1; v >= 0; --v) {
      x[v] = Rational(static_cast<unsigned long>(rest % set_size));
      rest /= set_size;
    }
    return x;
  };

  for (std::size_t seed_idx = 0; seed_idx < seeds.size(); ++seed_idx) {
    Circuit copy = fix_random_inputs(c, seeds[seed_idx]);

    unsigned threads = resolve_threads(opts.threads);
    std::vector<std::uint64_t> agree(threads, 0), poles(threads, 0);
    std::vector<std::string> errors(threads);
    std::size_t chunk = (grid + threads - 1) / threads;
    parallel_for(threads, threads, [&](std::size_t t) {
      std::uint64_t lo = t * chunk;
      std::uint64_t hi = std::min<std::uint64_t>(grid, lo + chunk);
      for (std::uint64_t i = lo; i < hi; ++i) {
        auto x = grid_point(i);
        Rational den = oracle_den.eval(x);
        if (den == 0) {
          ++poles[t];
          continue;
        }
        try {
          Rational got = evaluate(copy, x);
          if (got == oracle_num.eval(x) / den) ++agree[t];
        } catch (const Error& e) {
          if (e.code() == ErrorCode::DivisionByZero) {
            ++poles[t];
            continue;
          }
          errors[t] = e.what();
          return;
        }
      }
    });
    for (const auto& err : errors)
      if (!err.empty()) fail(ErrorCode::Invalid, "derandomize_arithmetic: " + err);
    std::uint64_t agreements = 0, pole_count = 0;
    for (unsigned t = 0; t < threads; ++t) {
      agreements += agree[t];
      pole_count += poles[t];
    }

    if (2 * agreements > grid) {
      // A strict-majority copy has more agreement points than a nonzero
      // degree-d cross-multiplied difference could allow, so it must agree
      // at every non-pole grid point.
      Integer slack;
      mpz_ui_pow_ui(slack.get_mpz_t(), set_size, n - 1);
      slack *= Integer(static_cast<unsigned long>(d));
      if (Integer(grid - pole_count) <= slack)
        fail(ErrorCode::Internal,
             "derandomize_arithmetic: pole set swallowed the counting slack");
      if (agreements != grid - pole_count)
        fail(ErrorCode::Internal,
             "derandomize_arithmetic: majority copy disagreed off the pole set");

      report.m_used = report.m_initial = report.m_empirical = 1;
      report.retries_used = static_cast<int>(seed_idx);
      if (!c.deterministic()) report.copy_seeds.push_back(seeds[seed_idx]);
      report.wrapper.combiner = CombinerKind::SingleCopy;
      report.wrapper.copies = {std::move(copy)};
      report.sizes = report.wrapper.sizes();
      report.sizes.bound = s;  // same size as the probabilistic circuit
      report.verification.domain =
          "grid S^n, |S| = " + std::to_string(set_size) + ", n = " + std::to_string(n);
      report.verification.passed = true;
      report.verification.points_checked = grid;
      report.notes.push_back("poles excluded from agreement counts: " +
                             std::to_string(pole_count));
      return report;
    }
  }
  fail(ErrorCode::RetriesExhausted,
       "derandomize_arithmetic: no copy reached majority agreement within " +
           std::to_string(seeds.size()) + " seeds");
}

}  // namespace psc
