#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "circuit.hpp"
#include "matrix.hpp"
#include "relation.hpp"

namespace psc {

// Maximization problem f(x) = max over a in A of <a, x>, A a set of 0/1
// exponent vectors (multilinear) with all constants zero (constant-free).
struct TropicalProblem {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> support;  // A, nonempty
  bool constant_free = true;

  void validate() const;
  Rational value_at(std::span<const Rational> x) const;
  Circuit to_circuit() const;                       // reference (max,+) circuit
  Circuit sub_circuit(std::span<const std::size_t> members) const;

  std::string str() const;
  static TropicalProblem parse(const std::string& text);
  static TropicalProblem load(const std::string& path);
};

struct SizeAccounting {
  std::vector<std::size_t> copy_sizes;
  std::size_t combiner_gates = 0;
  std::size_t total = 0;
  std::optional<std::size_t> bound;  // claimed upper bound, when one applies
};

struct VerificationRecord {
  std::string domain;
  bool passed = false;
  std::uint64_t points_checked = 0;
  std::optional<std::vector<Rational>> counterexample_x;
  std::optional<Rational> expected;
  std::optional<Rational> got;
};

enum class CombinerKind {
  SingleCopy,        // wrapper is one deterministic copy
  MajorityVoteGate,  // copies plus one majority-vote output operation
  MedianNetwork,     // copies feeding a (min,max) median network
  ZeroVoteCircuit,   // copies feeding the monotone (+,*) zero-vote circuit
  MaxTree,           // copies feeding a balanced max tree
};

const char* combiner_kind_name(CombinerKind kind);

// Derandomized circuit. When the combiner is itself a circuit, `circuit`
// holds the spliced whole; the majority-vote combiner is kept as copies plus
// one vote operation (it is not a basis gate).
struct Wrapper {
  CombinerKind combiner = CombinerKind::SingleCopy;
  std::vector<Circuit> copies;
  std::optional<Circuit> circuit;

  Rational evaluate(std::span<const Rational> x) const;
  SizeAccounting sizes() const;
};

struct DerandReport {
  std::string pipeline;
  std::uint64_t master_seed = 0;
  std::string relation;

  std::size_t m_used = 0;       // copies in the emitted wrapper
  std::size_t m_initial = 0;    // certificate size before the shrink pass
  std::size_t m_empirical = 0;  // certificate size after the shrink pass
  std::vector<std::pair<std::string, std::uint64_t>> m_theoretical;

  std::vector<std::vector<Rational>> copy_seeds;
  Wrapper wrapper;
  SizeAccounting sizes;
  VerificationRecord verification;
  int retries_used = 0;
  std::vector<std::string> notes;

  std::string to_json() const;  // deterministic: sorted keys, exact rationals
};

// --- finite-witness majority derandomization -------------------------------

struct FiniteDerandOptions {
  std::uint64_t seeds_budget = 1024;  // also the cap for exhaustive support
  Rational density_threshold = Rational(2, 3);
  int retry_limit = 64;
  // Description complexity of the oracle function, for the reported
  // approximate-mode bound; problem-specific (e.g. |A| for minimization).
  std::uint64_t t_f = 1;
  Rational bound_constant = Rational(1);  // the C in the m formulas
  unsigned threads = 1;
};

// Builds the correctness matrix of c against the oracle on the witness
// inputs, finds majority columns, and emits a combiner over the certified
// copies: a majority vote for equality, a median network for contiguous
// relations, the zero-vote circuit for nullity. The wrapper is verified on
// every witness input.
DerandReport derandomize_finite(const Circuit& c, const OracleFn& oracle,
                                const std::vector<std::vector<Rational>>& witness_inputs,
                                const Relation& rel, std::uint64_t master_seed,
                                const FiniteDerandOptions& opts = {});

// --- isolating-set tropical derandomization --------------------------------

struct IsolatingVerifyOptions {
  int max_n = 20;  // cap for the exhaustive 2^n sweep
  std::uint64_t spot_checks = 1000;
  std::uint64_t spot_seed = 0;
  unsigned threads = 1;
};

struct IsolatingVerifyResult {
  bool passed = false;
  bool overshoot = false;  // some point had circuit value > problem value
  std::uint64_t grid_points = 0;
  std::uint64_t spot_points = 0;
  std::optional<std::vector<Rational>> counterexample_x;
  std::optional<Rational> expected;
  std::optional<Rational> got;
};

// Checks evaluate(c, x) == max over A of <a, x> on all of {0,1}^n (the
// isolating set for multilinear constant-free problems), then spot-checks
// random nonnegative rational inputs, which must agree once the 0/1 sweep
// passes. Returns the lexicographically first failure.
IsolatingVerifyResult verify_on_isolating_set(const Circuit& c,
                                              const TropicalProblem& problem,
                                              const IsolatingVerifyOptions& opts = {});

// One-sided randomized generator of deterministic (max,+) circuits: draws
// never exceed the problem value anywhere and match it with per-input
// probability >= p.
struct TropicalSampler {
  std::function<Circuit(Rng&)> draw;
  std::size_t size_bound = 0;  // every drawn circuit has size <= size_bound
  std::string description;
};

// Uniform choice among fixed subsets of the problem's support; each draw is
// the sub-circuit over the chosen subset (one-sided by construction).
TropicalSampler subset_choice_sampler(const TropicalProblem& problem,
                                      std::vector<std::vector<std::size_t>> choices);

// Sampler file format:
//   tropical-sampler / choice 0,1,2 / choice 3 / end
TropicalSampler parse_sampler(const std::string& text,
                              const TropicalProblem& problem);
TropicalSampler load_sampler(const std::string& path,
                             const TropicalProblem& problem);

struct TropicalDerandOptions {
  int retry_limit = 64;
  std::uint64_t precheck_draws = 48;
  Rational precheck_slack = Rational(1, 4);  // empirical-estimate tolerance
  std::uint64_t precheck_max_points = 128;
  std::uint64_t spot_checks = 1000;
  unsigned threads = 1;
};

// Draws m = ceil(n/p) copies, combines them with a balanced max tree (m-1
// max gates), and verifies on the isolating set; redraws fresh copies on a
// miss. Total size is at most (size_bound + 1) * m. A copy exceeding the
// problem value anywhere is a hard error (one-sidedness violated).
DerandReport derandomize_tropical_one_sided(const TropicalSampler& sampler,
                                            const TropicalProblem& problem,
                                            const Rational& p,
                                            std::uint64_t master_seed,
                                            const TropicalDerandOptions& opts = {});

// --- polynomial identity counting and arithmetic derandomization -----------

struct SzResult {
  std::uint64_t zero_count = 0;
  std::uint64_t grid_points = 0;
  Integer bound;       // d * |S|^(n-1)
  bool within = true;  // zero_count <= bound
};

// Exhaustive zero count of a nonzero polynomial over the grid S^n; requires
// |S| >= deg + 1 and |S|^n within budget.
SzResult sz_zero_count(const Polynomial& p, const std::vector<Rational>& S,
                       int n, std::uint64_t budget = 4096);

struct ArithmeticDerandOptions {
  std::uint64_t seeds_budget = 1024;
  int max_size = 4;               // desk-scale cap on circuit size s
  std::uint64_t grid_budget = 1 << 20;
  unsigned threads = 1;
};

// Searches the seed stream for one deterministic copy agreeing with p/q on a
// strict majority of the grid S^n, S = {0..2d}, d = max_deg_r + 2^s; such a
// copy provably agrees on every non-pole grid point, which is re-checked
// exhaustively. The wrapper is that single copy, size unchanged.
DerandReport derandomize_arithmetic(const Circuit& c, const Polynomial& oracle_num,
                                    const Polynomial& oracle_den,
                                    std::uint64_t max_deg_r,
                                    std::uint64_t master_seed,
                                    const ArithmeticDerandOptions& opts = {});

}  // namespace psc
