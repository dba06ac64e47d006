#include "majority.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace psc {

std::optional<Rational> majority_vote(std::span<const Rational> values) {
  if (values.empty()) fail(ErrorCode::Invalid, "majority_vote: empty list");
  std::map<Rational, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  for (const auto& [value, count] : counts)
    if (2 * count > values.size()) return value;
  return std::nullopt;
}

SortingNetwork batcher_network(int m) {
  if (m < 1) fail(ErrorCode::Invalid, "batcher_network: m must be >= 1");
  SortingNetwork net;
  net.width = m;
  // Knuth's merge-exchange formulation, valid for every width.
  for (int p = 1; p < m; p *= 2) {
    for (int k = p; k >= 1; k /= 2) {
      for (int j = k % p; j + k < m; j += 2 * k) {
        for (int i = 0; i < std::min(k, m - j - k); ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p))
            net.comparators.emplace_back(i + j, i + j + k);
        }
      }
    }
  }
  return net;
}

MedianNetwork build_median_network(int m) {
  SortingNetwork net = batcher_network(m);
  MedianNetwork out;
  out.comparators = net.comparators.size();
  Circuit& c = out.circuit;
  c.n_det_inputs = m;
  std::vector<int> wire(m);  // node currently carrying each lane
  for (int i = 0; i < m; ++i) {
    c.nodes.push_back(Node::det_input(i + 1));
    wire[i] = i;
  }
  for (auto [lo, hi] : net.comparators) {
    c.nodes.push_back(Node::gate(OpKind::Min, {wire[lo], wire[hi]}));
    int mn = static_cast<int>(c.nodes.size()) - 1;
    c.nodes.push_back(Node::gate(OpKind::Max, {wire[lo], wire[hi]}));
    int mx = static_cast<int>(c.nodes.size()) - 1;
    wire[lo] = mn;
    wire[hi] = mx;
  }
  out.sorted_outputs = wire;
  c.output = wire[(m + 1) / 2 - 1];  // 1-based position ceil(m/2)
  c.validate();
  return out;
}

Rational median(std::span<const Rational> values) {
  if (values.empty()) fail(ErrorCode::Invalid, "median: empty list");
  std::vector<Rational> sorted(values.begin(), values.end());
  std::size_t pos = (values.size() + 1) / 2 - 1;
  std::nth_element(sorted.begin(), sorted.begin() + pos, sorted.end());
  return sorted[pos];
}

Circuit build_zero_vote_circuit(int n) {
  if (n < 1) fail(ErrorCode::Invalid, "build_zero_vote_circuit: n must be >= 1");
  Circuit c;
  c.n_det_inputs = n;
  std::vector<int> square(n + 1, -1);  // node of x_i^2
  for (int i = 1; i <= n; ++i) {
    c.nodes.push_back(Node::det_input(i));
    int xi = static_cast<int>(c.nodes.size()) - 1;
    c.nodes.push_back(Node::gate(OpKind::Mul, {xi, xi}));
    square[i] = static_cast<int>(c.nodes.size()) - 1;
  }

  // T(m, k) vanishes exactly when at least k of x_1..x_m are zero:
  //   T(m, 1) = x_1^2 ... x_m^2
  //   T(m, m) = x_1^2 + ... + x_m^2
  //   T(m, k) = T(m-1, k) * (T(m-1, k-1) + x_m^2)
  std::map<std::pair<int, int>, int> memo;
  auto emit = [&](OpKind op, int a, int b) {
    c.nodes.push_back(Node::gate(op, {a, b}));
    return static_cast<int>(c.nodes.size()) - 1;
  };
  std::function<int(int, int)> build = [&](int m, int k) -> int {
    auto key = std::make_pair(m, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int node;
    if (m == 1) {
      node = square[1];
    } else if (k == 1) {
      node = emit(OpKind::Mul, build(m - 1, 1), square[m]);
    } else if (k == m) {
      node = emit(OpKind::Add, build(m - 1, m - 1), square[m]);
    } else {
      int left = build(m - 1, k);
      int sum = emit(OpKind::Add, build(m - 1, k - 1), square[m]);
      node = emit(OpKind::Mul, left, sum);
    }
    memo[key] = node;
    return node;
  };

  int k = n / 2 + 1;
  c.output = build(n, k);
  c.validate();
  return c;
}

RhoVoteCheck is_majority_rho_vote(const VoteFunction& candidate,
                                  const Relation& rel, int m, int trials,
                                  Rng& rng) {
  if (m < 1) fail(ErrorCode::Invalid, "is_majority_rho_vote: m must be >= 1");

  auto related_value = [&](const Rational& a, Rng& r) -> Rational {
    switch (rel.kind()) {
      case Relation::Kind::Equality:
        return a;
      case Relation::Kind::Sign: {
        if (a == 0) return Rational(0);
        Rational v = r.rational_in(Rational(1, 8), Rational(12), 8);
        return sign_of(a) > 0 ? v : Rational(-v);
      }
      case Relation::Kind::Nullity: {
        if (a == 0) return Rational(0);
        for (;;) {
          Rational v = r.rational_in(Rational(-12), Rational(12), 8);
          if (v != 0) return v;
        }
      }
      case Relation::Kind::ApproxWithin: {
        if (rel.approx_c() == 0) return a;
        return a + r.rational_in(-rel.approx_c(), rel.approx_c(), 16);
      }
      case Relation::Kind::Custom:
        fail(ErrorCode::Unsupported,
             "is_majority_rho_vote: cannot sample custom relations");
    }
    fail(ErrorCode::Internal, "unhandled relation kind");
  };

  for (int trial = 0; trial < trials; ++trial) {
    Rng tr = rng.fork(trial);
    Rational a = tr.rational_in(Rational(-10), Rational(10), 4);
    int good = static_cast<int>(tr.int_in(m / 2 + 1, m));
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = m - 1; i > 0; --i)
      std::swap(order[i], order[tr.below(i + 1)]);
    std::vector<Rational> x(m);
    for (int i = 0; i < m; ++i) {
      if (i < good) {
        x[order[i]] = related_value(a, tr);
      } else {
        x[order[i]] = tr.rational_in(Rational(-30), Rational(30), 8);
      }
    }
    Rational got = candidate(x);
    if (!rel.holds(got, a)) return RhoVoteCheck{false, std::move(x), a, got};
  }
  return RhoVoteCheck{};
}

ConcavityFixture concavity_counterexample() {
  return concavity_counterexample(Rational(0), Rational(1));
}

ConcavityFixture concavity_counterexample(const Rational& a, const Rational& b) {
  ConcavityFixture fix;
  fix.x = {a, a, 2 * a - b};
  fix.y = {a, b, b};
  fix.midpoint.resize(3);
  for (int i = 0; i < 3; ++i) fix.midpoint[i] = (fix.x[i] + fix.y[i]) / 2;
  fix.maj_x = majority_vote(fix.x);
  fix.maj_y = majority_vote(fix.y);
  fix.maj_midpoint = majority_vote(fix.midpoint);
  if (fix.maj_x && fix.maj_y)
    fix.average_of_majorities = (*fix.maj_x + *fix.maj_y) / 2;
  return fix;
}

}  // namespace psc
