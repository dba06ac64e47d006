#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "relation.hpp"

namespace psc {

// The value occurring more than m/2 times, if one exists.
std::optional<Rational> majority_vote(std::span<const Rational> values);

// Comparator network: each (i, j) pair with i < j orders positions i and j.
struct SortingNetwork {
  int width = 0;
  std::vector<std::pair<int, int>> comparators;
};

// Batcher odd-even mergesort for arbitrary width, O(m log^2 m) comparators.
SortingNetwork batcher_network(int m);

// Gate-count constant: build_median_network(m).circuit.size() is at most
// kMedianNetworkSizeConstant * m * log2(m+1)^2 (checked up to m = 1024).
inline constexpr int kMedianNetworkSizeConstant = 1;

// Fanin-2 (min, max) circuit with m inputs realizing the comparator network;
// sorted_outputs lists the node computing each sorted position, and the
// circuit output is position ceil(m/2), the median. 2 gates per comparator.
struct MedianNetwork {
  Circuit circuit;
  std::vector<int> sorted_outputs;  // ascending order, size m
  std::size_t comparators = 0;
};

MedianNetwork build_median_network(int m);

// Element at 1-based position ceil(m/2) of the sorted order.
Rational median(std::span<const Rational> values);

// Gate-count constant: build_zero_vote_circuit(n).size() is at most
// kZeroVoteSizeConstant * n^2 (checked exactly in tests).
inline constexpr int kZeroVoteSizeConstant = 2;

// Monotone fanin-2 (+, *) circuit computing a polynomial that vanishes
// exactly when more than n/2 inputs are zero.
Circuit build_zero_vote_circuit(int n);

struct RhoVoteCheck {
  bool ok = true;
  // Counterexample when !ok: candidate(x) fails to relate to a even though
  // more than m/2 positions of x relate to a.
  std::vector<Rational> x;
  Rational a;
  Rational candidate_value;
};

using VoteFunction = std::function<Rational(std::span<const Rational>)>;

// Randomized property check of the majority vote contract: on every trial,
// draws (a, x) with more than m/2 positions x_i related to a and tests
// whether candidate(x) relates to a.
RhoVoteCheck is_majority_rho_vote(const VoteFunction& candidate,
                                  const Relation& rel, int m, int trials,
                                  Rng& rng);

// Witness that majority voting is not midpoint-concave: for b > a,
// maj((x+y)/2) = a is strictly below (maj(x) + maj(y))/2 = (a+b)/2.
struct ConcavityFixture {
  std::vector<Rational> x;         // (a, a, 2a-b)
  std::vector<Rational> y;         // (a, b, b)
  std::vector<Rational> midpoint;  // (a, (a+b)/2, a)
  std::optional<Rational> maj_x, maj_y, maj_midpoint;
  Rational average_of_majorities;
};

ConcavityFixture concavity_counterexample();  // a = 0, b = 1
ConcavityFixture concavity_counterexample(const Rational& a, const Rational& b);

}  // namespace psc
