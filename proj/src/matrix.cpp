#include "matrix.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace psc {

void FiniteMatrix::validate() const {
  if (rows.empty() || cols.empty())
    fail(ErrorCode::Invalid, "matrix: empty row or column set");
  if (bits.size() != rows.size() * cols.size())
    fail(ErrorCode::Invalid, "matrix: bit count != rows * cols");
  for (auto b : bits)
    if (b > 1) fail(ErrorCode::Invalid, "matrix: entries must be 0/1");
  if (col_dist.size() != cols.size())
    fail(ErrorCode::Invalid, "matrix: col_dist length != cols");
  Rational total = 0;
  for (const auto& w : col_dist) {
    if (w < 0) fail(ErrorCode::Invalid, "matrix: negative column weight");
    total += w;
  }
  if (total != 1) fail(ErrorCode::Invalid, "matrix: column weights must sum to 1");
}

FiniteMatrix correctness_matrix(const Circuit& c, const OracleFn& oracle,
                                const std::vector<std::vector<Rational>>& rows,
                                const std::vector<std::vector<Rational>>& seeds,
                                const Relation& rel,
                                std::vector<Rational> col_dist,
                                unsigned threads) {
  if (rows.empty() || seeds.empty())
    fail(ErrorCode::Invalid, "correctness_matrix: empty rows or seeds");
  FiniteMatrix m;
  m.rows = rows;
  m.cols = seeds;
  if (col_dist.empty()) {
    m.col_dist.assign(seeds.size(),
                      Rational(1, static_cast<unsigned long>(seeds.size())));
  } else {
    m.col_dist = std::move(col_dist);
  }
  m.bits.assign(rows.size() * seeds.size(), 0);

  std::vector<std::string> row_error(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    std::size_t s = 0;
    try {
      Rational want = oracle(rows[r]);
      for (; s < seeds.size(); ++s) {
        Rational got = evaluate(c, rows[r], seeds[s]);
        m.bits[r * seeds.size() + s] = rel.holds(got, want) ? 1 : 0;
      }
    } catch (const std::exception& e) {
      row_error[r] = "(row " + std::to_string(r) + ", col " + std::to_string(s) +
                     "): " + e.what();
    }
  });
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!row_error[r].empty())
      fail(ErrorCode::Invalid, "correctness_matrix: " + row_error[r]);
  m.validate();
  return m;
}

DensityResult is_probabilistically_dense(const FiniteMatrix& m,
                                         const Rational& threshold) {
  m.validate();
  DensityResult out;
  out.worst_density = 2;
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    Rational density = 0;
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.at(r, c)) density += m.col_dist[c];
    if (density < out.worst_density) {
      out.worst_density = density;
      out.worst_row = r;
    }
  }
  out.dense = out.worst_density >= threshold;
  return out;
}

namespace {

std::uint64_t distinct_patterns(const FiniteMatrix& m,
                                std::span<const std::size_t> chosen) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::uint8_t> pattern(chosen.size());
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    for (std::size_t j = 0; j < chosen.size(); ++j)
      pattern[j] = m.at(r, chosen[j]);
    seen.insert(pattern);
  }
  return seen.size();
}

Integer multisets_count(std::uint64_t n_cols, unsigned select) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n_cols + select - 1, select);
  return out;
}

}  // namespace

std::uint64_t growth_function(const FiniteMatrix& m, unsigned select,
                              const GrowthOptions& opts) {
  m.validate();
  if (select == 0) fail(ErrorCode::Invalid, "growth_function: m must be >= 1");
  std::uint64_t best = 0;
  if (opts.exhaustive) {
    if (multisets_count(m.n_cols(), select) > Integer(opts.budget))
      fail(ErrorCode::Budget,
           "growth_function: exhaustive enumeration exceeds budget");
    // Nondecreasing index tuples = column multisets.
    std::vector<std::size_t> chosen(select, 0);
    for (;;) {
      best = std::max(best, distinct_patterns(m, chosen));
      std::size_t j = select;
      while (j-- > 0) {
        if (chosen[j] + 1 < m.n_cols()) {
          ++chosen[j];
          for (std::size_t t = j + 1; t < select; ++t) chosen[t] = chosen[j];
          break;
        }
        if (j == 0) return best;
      }
    }
  }
  Rng rng(opts.seed, 0x67726f77);  // sampled mode: reported as a lower bound
  std::vector<std::size_t> chosen(select);
  for (std::uint64_t trial = 0; trial < opts.trials; ++trial) {
    for (auto& c : chosen) c = rng.below(m.n_cols());
    best = std::max(best, distinct_patterns(m, chosen));
  }
  return best;
}

bool MajorityCertificate::valid_for(const FiniteMatrix& matrix) const {
  if (row_counts.size() != matrix.n_rows()) return false;
  for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
    std::size_t count = 0;
    for (auto c : columns) count += matrix.at(r, c);
    if (count != row_counts[r]) return false;
    if (2 * count <= columns.size()) return false;
  }
  return true;
}

namespace {

// Exact discrete sampler over the column distribution.
class ColumnSampler {
 public:
  explicit ColumnSampler(const std::vector<Rational>& dist) {
    Integer denom = 1;
    for (const auto& w : dist)
      mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), w.get_den().get_mpz_t());
    if (!denom.fits_ulong_p())
      fail(ErrorCode::Invalid, "column distribution denominator too large");
    total_ = denom.get_ui();
    std::uint64_t acc = 0;
    prefix_.reserve(dist.size());
    for (const auto& w : dist) {
      Integer scaled = w.get_num() * (denom / w.get_den());
      acc += scaled.get_ui();
      prefix_.push_back(acc);
    }
  }

  std::size_t draw(Rng& rng) const {
    std::uint64_t v = rng.below(total_);
    return std::upper_bound(prefix_.begin(), prefix_.end(), v) - prefix_.begin();
  }

 private:
  std::uint64_t total_ = 1;
  std::vector<std::uint64_t> prefix_;
};

std::size_t initial_m(std::size_t n_rows) {
  double logv = std::log2(static_cast<double>(n_rows));
  auto m = static_cast<std::size_t>(std::ceil(27.0 * logv));
  if (m < 1) m = 1;
  if (m % 2 == 0) ++m;  // odd m tightens the shrink pass; > m/2 stays strict
  return m;
}

}  // namespace

MajoritySearchResult find_majority_columns(const FiniteMatrix& m, Rng& rng,
                                           const MajoritySearchOptions& opts) {
  auto density = is_probabilistically_dense(m, opts.density_threshold);
  if (!density.dense)
    fail(ErrorCode::Precondition,
         "find_majority_columns: matrix not probabilistically dense (row " +
             std::to_string(density.worst_row) + " has density " +
             rational_str(density.worst_density) + ")");

  ColumnSampler sampler(m.col_dist);
  MajoritySearchResult result;
  result.m_initial = initial_m(m.n_rows());

  std::size_t worst_rows_seen = 0;
  for (int attempt = 0; attempt < opts.retry_limit; ++attempt) {
    Rng attempt_rng = rng.fork(attempt);
    MajorityCertificate cert;
    cert.columns.reserve(result.m_initial);
    for (std::size_t i = 0; i < result.m_initial; ++i)
      cert.columns.push_back(sampler.draw(attempt_rng));
    cert.row_counts.assign(m.n_rows(), 0);
    bool ok = true;
    std::size_t bad_rows = 0;
    for (std::size_t r = 0; r < m.n_rows(); ++r) {
      std::size_t count = 0;
      for (auto c : cert.columns) count += m.at(r, c);
      cert.row_counts[r] = count;
      if (2 * count <= result.m_initial) {
        ok = false;
        ++bad_rows;
      }
    }
    worst_rows_seen = std::max(worst_rows_seen, bad_rows);
    if (!ok) continue;

    result.retries_used = attempt;
    result.certificate = cert;

    // Greedy shrink: drop columns while every row keeps a strict majority.
    std::vector<std::size_t> kept = cert.columns;
    std::vector<std::size_t> counts = cert.row_counts;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < kept.size();) {
        bool removable = kept.size() > 1;
        for (std::size_t r = 0; removable && r < m.n_rows(); ++r)
          if (2 * (counts[r] - m.at(r, kept[i])) <= kept.size() - 1)
            removable = false;
        if (removable) {
          for (std::size_t r = 0; r < m.n_rows(); ++r)
            counts[r] -= m.at(r, kept[i]);
          kept.erase(kept.begin() + i);
          changed = true;
        } else {
          ++i;
        }
      }
    }
    result.shrunk.columns = kept;
    result.shrunk.row_counts = counts;
    result.m_empirical = kept.size();
    return result;
  }
  fail(ErrorCode::RetriesExhausted,
       "find_majority_columns: no certificate within " +
           std::to_string(opts.retry_limit) + " attempts at m = " +
           std::to_string(result.m_initial) + " (worst attempt had " +
           std::to_string(worst_rows_seen) + " deficient rows)");
}

// --- dump format ----------------------------------------------------------

std::string matrix_str(const FiniteMatrix& m) {
  std::ostringstream out;
  out << "matrix\n";
  out << "rows " << m.n_rows() << "\n";
  out << "cols " << m.n_cols() << "\n";
  for (const auto& row : m.rows) out << "row " << rational_csv(row) << "\n";
  for (const auto& col : m.cols) out << "col " << rational_csv(col) << "\n";
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    out << "bits ";
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      out << static_cast<int>(m.at(r, c));
    out << "\n";
  }
  out << "dist";
  for (const auto& w : m.col_dist) out << " " << rational_str(w);
  out << "\n";
  out << "end\n";
  return out.str();
}

FiniteMatrix parse_matrix(const std::string& text) {
  FiniteMatrix m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool started = false, ended = false;
  std::size_t declared_rows = 0, declared_cols = 0;
  auto matrix_fail = [&](const std::string& what) -> void {
    fail(ErrorCode::Parse, "matrix line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head) || head[0] == '#') continue;
    if (ended) matrix_fail("content after 'end'");
    if (!started) {
      if (head != "matrix") matrix_fail("expected 'matrix' header");
      started = true;
      continue;
    }
    std::string rest;
    std::getline(ss, rest);
    if (head == "rows") {
      declared_rows = std::stoul(rest);
    } else if (head == "cols") {
      declared_cols = std::stoul(rest);
    } else if (head == "row") {
      m.rows.push_back(parse_rational_csv(rest));
    } else if (head == "col") {
      m.cols.push_back(parse_rational_csv(rest));
    } else if (head == "bits") {
      std::stringstream bs(rest);
      std::string bitsstr;
      bs >> bitsstr;
      if (bitsstr.size() != declared_cols) matrix_fail("bit row length != cols");
      for (char ch : bitsstr) {
        if (ch != '0' && ch != '1') matrix_fail("bits must be 0/1");
        m.bits.push_back(ch == '1');
      }
    } else if (head == "dist") {
      std::stringstream ds(rest);
      std::string w;
      while (ds >> w) m.col_dist.push_back(parse_rational(w));
    } else if (head == "end") {
      ended = true;
    } else {
      matrix_fail("unknown directive '" + head + "'");
    }
  }
  if (!started || !ended) fail(ErrorCode::Parse, "matrix: missing header or 'end'");
  if (m.rows.size() != declared_rows) fail(ErrorCode::Parse, "matrix: row count mismatch");
  if (m.cols.size() != declared_cols) fail(ErrorCode::Parse, "matrix: col count mismatch");
  m.validate();
  return m;
}

FiniteMatrix load_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

void save_matrix(const FiniteMatrix& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open '" + path + "' for writing");
  f << matrix_str(m);
}

}  // namespace psc
