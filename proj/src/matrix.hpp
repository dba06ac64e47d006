#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "relation.hpp"

namespace psc {

// 0/1 matrix over a finite row set (input vectors) and column set (random
// seeds), with an exact probability distribution on the columns.
struct FiniteMatrix {
  std::vector<std::vector<Rational>> rows;  // row labels
  std::vector<std::vector<Rational>> cols;  // column labels (seed vectors)
  std::vector<std::uint8_t> bits;           // row-major
  std::vector<Rational> col_dist;           // nonnegative, sums to exactly 1

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return cols.size(); }
  std::uint8_t at(std::size_t row, std::size_t col) const {
    return bits[row * cols.size() + col];
  }
  void validate() const;
};

using OracleFn = std::function<Rational(std::span<const Rational>)>;

// bits[x][r] = 1 iff rel(evaluate(c, x, r), oracle(x)). col_dist defaults to
// uniform over the given seeds. Cell evaluation parallelizes over rows;
// evaluation errors propagate with (row, col) indices, lowest row first.
FiniteMatrix correctness_matrix(const Circuit& c, const OracleFn& oracle,
                                const std::vector<std::vector<Rational>>& rows,
                                const std::vector<std::vector<Rational>>& seeds,
                                const Relation& rel,
                                std::vector<Rational> col_dist = {},
                                unsigned threads = 1);

struct DensityResult {
  bool dense = true;
  std::size_t worst_row = 0;
  Rational worst_density;
};

// Every row must carry column mass >= threshold (inclusive).
DensityResult is_probabilistically_dense(const FiniteMatrix& m,
                                         const Rational& threshold = Rational(2, 3));

struct GrowthOptions {
  bool exhaustive = true;
  std::uint64_t trials = 0;             // sampled mode
  std::uint64_t budget = 2'000'000;     // max column multisets, exhaustive mode
  std::uint64_t seed = 0;               // sampled mode
};

// Max number of distinct row patterns over m columns chosen with repetition.
// Sampled mode reports a lower bound.
std::uint64_t growth_function(const FiniteMatrix& m, unsigned select,
                              const GrowthOptions& opts = {});

struct MajorityCertificate {
  std::vector<std::size_t> columns;     // multiset, size m
  std::vector<std::size_t> row_counts;  // ones per row; all > m/2

  std::size_t m() const { return columns.size(); }
  bool valid_for(const FiniteMatrix& matrix) const;
};

struct MajoritySearchOptions {
  int retry_limit = 64;
  Rational density_threshold = Rational(2, 3);
};

struct MajoritySearchResult {
  MajorityCertificate certificate;      // at the initial m
  std::size_t m_initial = 0;            // ceil(27 log2 |rows|), odd, >= 1
  MajorityCertificate shrunk;           // after the greedy shrink pass
  std::size_t m_empirical = 0;
  int retries_used = 0;
};

// Samples m = ceil(27 * log2(|rows|)) columns (clamped to >= 1 and to odd)
// independently from col_dist until every row has more than m/2 ones, then
// greedily removes redundant columns. Fails with statistics if the retry
// limit is hit; requires density at the threshold first.
MajoritySearchResult find_majority_columns(const FiniteMatrix& m, Rng& rng,
                                           const MajoritySearchOptions& opts = {});

// Textual dump format (round-trips):
//   matrix / rows R / cols C / row <csv> ... / col <csv> ... /
//   bits <01 string per row> ... / dist <rational> ... / end
std::string matrix_str(const FiniteMatrix& m);
FiniteMatrix parse_matrix(const std::string& text);
FiniteMatrix load_matrix(const std::string& path);
void save_matrix(const FiniteMatrix& m, const std::string& path);

}  // namespace psc
