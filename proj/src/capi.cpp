#include "psc/psc.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "circuit.hpp"
#include "circuit_text.hpp"
#include "derand.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "majority.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "relation.hpp"

using namespace psc;

struct psc_circuit {
  Circuit value;
};
struct psc_matrix {
  FiniteMatrix value;
};

namespace {

thread_local std::string g_last_error;

psc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return PSC_ERR_PARSE;
    case ErrorCode::Invalid: return PSC_ERR_INVALID;
    case ErrorCode::DivisionByZero: return PSC_ERR_DIVISION_BY_ZERO;
    case ErrorCode::Precondition: return PSC_ERR_PRECONDITION;
    case ErrorCode::Budget: return PSC_ERR_BUDGET;
    case ErrorCode::RetriesExhausted: return PSC_ERR_RETRIES;
    case ErrorCode::Unsupported: return PSC_ERR_UNSUPPORTED;
    case ErrorCode::Internal: return PSC_ERR_INTERNAL;
  }
  return PSC_ERR_INTERNAL;
}

template <typename Fn>
psc_status guarded(Fn&& fn) {
  try {
    fn();
    return PSC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<Rational> csv_or_empty(const char* text) {
  if (!text) return {};
  return parse_rational_csv(text);
}

std::vector<std::vector<Rational>> parse_vector_lines(const char* text) {
  std::vector<std::vector<Rational>> out;
  if (!text) return out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = line;
    auto pos = trimmed.find('#');
    if (pos != std::string::npos) trimmed.erase(pos);
    bool blank = true;
    for (char ch : trimmed)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    out.push_back(parse_rational_csv(trimmed));
  }
  return out;
}

OracleFn circuit_oracle(const Circuit& oracle) {
  return [&oracle](std::span<const Rational> x) { return evaluate(oracle, x); };
}

std::string isolating_report_json(const IsolatingVerifyResult& r,
                                  uint64_t spot_seed) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["overshoot"] = r.overshoot;
  j["grid_points"] = r.grid_points;
  j["spot_points"] = r.spot_points;
  j["spot_seed"] = spot_seed;
  if (r.counterexample_x) {
    nlohmann::json ce;
    ce["x"] = rational_csv(*r.counterexample_x);
    ce["expected"] = rational_str(*r.expected);
    ce["got"] = rational_str(*r.got);
    j["counterexample"] = ce;
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string majority_report_json(const MajoritySearchResult& r) {
  nlohmann::json j;
  j["m_initial"] = r.m_initial;
  j["m_empirical"] = r.m_empirical;
  j["retries_used"] = r.retries_used;
  j["columns"] = r.certificate.columns;
  j["columns_shrunk"] = r.shrunk.columns;
  j["row_counts"] = r.certificate.row_counts;
  return j.dump(2) + "\n";
}

}  // namespace

extern "C" {

const char* psc_status_name(psc_status status) {
  switch (status) {
    case PSC_OK: return "ok";
    case PSC_ERR_PARSE: return "parse-error";
    case PSC_ERR_INVALID: return "invalid";
    case PSC_ERR_DIVISION_BY_ZERO: return "division-by-zero";
    case PSC_ERR_PRECONDITION: return "precondition-failed";
    case PSC_ERR_BUDGET: return "budget-exceeded";
    case PSC_ERR_RETRIES: return "retries-exhausted";
    case PSC_ERR_UNSUPPORTED: return "unsupported";
    case PSC_ERR_VERIFY: return "verification-failed";
    case PSC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* psc_last_error(void) { return g_last_error.c_str(); }

void psc_string_free(char* text) { std::free(text); }

psc_status psc_circuit_parse(const char* text, psc_circuit** out) {
  return guarded([&] { *out = new psc_circuit{parse_circuit(text ? text : "")}; });
}

psc_status psc_circuit_load(const char* path, psc_circuit** out) {
  return guarded([&] { *out = new psc_circuit{load_circuit(path ? path : "")}; });
}

void psc_circuit_free(psc_circuit* circuit) { delete circuit; }

psc_status psc_circuit_print(const psc_circuit* circuit, char** out_text) {
  return guarded([&] { *out_text = dup_string(circuit_str(circuit->value)); });
}

int psc_circuit_num_inputs(const psc_circuit* circuit) {
  return circuit->value.n_det_inputs;
}

int psc_circuit_num_random(const psc_circuit* circuit) {
  return circuit->value.n_rand_inputs;
}

int64_t psc_circuit_size(const psc_circuit* circuit) {
  return static_cast<int64_t>(circuit->value.size());
}

int psc_circuit_max_gate_complexity(const psc_circuit* circuit) {
  return circuit->value.max_gate_complexity();
}

psc_status psc_circuit_eval(const psc_circuit* circuit, const char* x_csv,
                            const char* r_csv, char** out_value) {
  return guarded([&] {
    auto x = csv_or_empty(x_csv);
    auto r = csv_or_empty(r_csv);
    *out_value = dup_string(rational_str(evaluate(circuit->value, x, r)));
  });
}

psc_status psc_circuit_eval_double(const psc_circuit* circuit, const char* x_csv,
                                   const char* r_csv, double* out_value) {
  return guarded([&] {
    std::vector<double> x, r;
    for (const auto& v : csv_or_empty(x_csv)) x.push_back(to_double(v));
    for (const auto& v : csv_or_empty(r_csv)) r.push_back(to_double(v));
    *out_value = evaluate_double(circuit->value, x, r);
  });
}

psc_status psc_circuit_fix_random(const psc_circuit* circuit, const char* r_csv,
                                  psc_circuit** out) {
  return guarded([&] {
    *out = new psc_circuit{fix_random_inputs(circuit->value, csv_or_empty(r_csv))};
  });
}

psc_status psc_circuit_sample_seed(const psc_circuit* circuit,
                                   uint64_t master_seed, uint64_t stream_index,
                                   char** out_r_csv) {
  return guarded([&] {
    if (!circuit->value.rand_spec)
      fail(ErrorCode::Precondition, "circuit carries no random input spec");
    auto seed = sample_seed(*circuit->value.rand_spec, master_seed, stream_index);
    *out_r_csv = dup_string(rational_csv(seed));
  });
}

psc_status psc_circuit_to_formula(const psc_circuit* circuit, char** out_sexpr) {
  return guarded([&] {
    *out_sexpr = dup_string(existential_str(circuit_to_existential(circuit->value)));
  });
}

psc_status psc_synth_median_network(int m, psc_circuit** out) {
  return guarded([&] {
    *out = new psc_circuit{build_median_network(m).circuit};
  });
}

psc_status psc_synth_zero_vote(int n, psc_circuit** out) {
  return guarded([&] { *out = new psc_circuit{build_zero_vote_circuit(n)}; });
}

psc_status psc_count_sign_patterns(const char* polys_text, const char* points_text,
                                   uint64_t* out_count) {
  return guarded([&] {
    std::vector<Polynomial> polys;
    int n_vars = 0;
    std::istringstream in(polys_text ? polys_text : "");
    std::string line;
    std::vector<std::string> poly_lines;
    while (std::getline(in, line)) {
      bool blank = true;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
      if (!blank && line[0] != '#') poly_lines.push_back(line);
    }
    auto points = parse_vector_lines(points_text);
    if (!points.empty()) n_vars = static_cast<int>(points[0].size());
    for (const auto& text : poly_lines)
      polys.push_back(Polynomial::parse(text, n_vars));
    *out_count = count_sign_patterns(polys, points);
  });
}

psc_status psc_warren_bound(uint64_t m, uint64_t d, uint64_t n, char** out_value,
                            char** out_ceiling) {
  return guarded([&] {
    Rational bound = warren_bound(m, d, n);
    *out_value = dup_string(rational_str(bound));
    *out_ceiling = dup_string(ceil_rational(bound).get_str());
  });
}

psc_status psc_warren_corollary_bound(uint64_t m, uint64_t t, uint64_t n,
                                      char** out_value, char** out_ceiling) {
  return guarded([&] {
    Rational bound = warren_corollary_bound(m, t, n);
    *out_value = dup_string(rational_str(bound));
    *out_ceiling = dup_string(ceil_rational(bound).get_str());
  });
}

psc_status psc_sz_zero_count(const char* poly, const char* set_csv, int n,
                             uint64_t budget, uint64_t* out_zeros,
                             char** out_bound) {
  return guarded([&] {
    Polynomial p = Polynomial::parse(poly ? poly : "", n);
    auto S = csv_or_empty(set_csv);
    auto result = sz_zero_count(p, S, n, budget ? budget : 4096);
    *out_zeros = result.zero_count;
    *out_bound = dup_string(result.bound.get_str());
  });
}

psc_status psc_bound_m_exact(uint64_t n, uint64_t s, uint64_t b, const char* C,
                             uint64_t* out_m) {
  return guarded([&] {
    *out_m = theoretical_m_exact(n, s, b, parse_rational(C ? C : "1"));
  });
}

psc_status psc_bound_m_approx(uint64_t n, uint64_t s, uint64_t b, uint64_t t_f,
                              uint64_t t_rho, const char* C, uint64_t* out_m) {
  return guarded([&] {
    *out_m = theoretical_m_approx(n, s, b, t_f, t_rho, parse_rational(C ? C : "1"));
  });
}

psc_status psc_bound_m_infinite(uint64_t n, uint64_t t, const char* C,
                                uint64_t* out_m) {
  return guarded([&] {
    *out_m = theoretical_m_infinite(n, t, parse_rational(C ? C : "1"));
  });
}

psc_status psc_bound_bpr(uint64_t n, uint64_t q, uint64_t kappa, double C,
                         double* out_value) {
  return guarded([&] { *out_value = bpr_bound(n, q, kappa, C); });
}

psc_status psc_bound_vc(uint64_t growth_at_2m, const char* eps, uint64_t m,
                        double* out_value) {
  return guarded([&] {
    *out_value = vc_bound(growth_at_2m, parse_rational(eps ? eps : "1"), m);
  });
}

psc_status psc_matrix_build(const psc_circuit* circuit, const psc_circuit* oracle,
                            const char* rows_text, const char* relation,
                            uint64_t seeds, uint64_t master_seed,
                            unsigned threads, psc_matrix** out) {
  return guarded([&] {
    const Circuit& c = circuit->value;
    auto rows = parse_vector_lines(rows_text);
    Relation rel = Relation::parse(relation ? relation : "eq");
    std::vector<std::vector<Rational>> seed_vectors;
    std::vector<Rational> col_dist;
    if (c.deterministic()) {
      seed_vectors.push_back({});
    } else {
      if (!c.rand_spec)
        fail(ErrorCode::Precondition, "circuit carries no random input spec");
      if (seeds == 0) {
        for (auto& [vec, weight] : c.rand_spec->enumerate_support(1 << 16)) {
          seed_vectors.push_back(std::move(vec));
          col_dist.push_back(std::move(weight));
        }
      } else {
        for (uint64_t i = 0; i < seeds; ++i)
          seed_vectors.push_back(sample_seed(*c.rand_spec, master_seed, i));
      }
    }
    *out = new psc_matrix{correctness_matrix(c, circuit_oracle(oracle->value),
                                             rows, seed_vectors, rel, col_dist,
                                             threads)};
  });
}

psc_status psc_matrix_parse(const char* text, psc_matrix** out) {
  return guarded([&] { *out = new psc_matrix{parse_matrix(text ? text : "")}; });
}

psc_status psc_matrix_load(const char* path, psc_matrix** out) {
  return guarded([&] { *out = new psc_matrix{load_matrix(path ? path : "")}; });
}

void psc_matrix_free(psc_matrix* matrix) { delete matrix; }

psc_status psc_matrix_print(const psc_matrix* matrix, char** out_text) {
  return guarded([&] { *out_text = dup_string(matrix_str(matrix->value)); });
}

psc_status psc_matrix_density(const psc_matrix* matrix, const char* threshold,
                              int* out_dense, uint64_t* out_worst_row,
                              char** out_worst_density) {
  return guarded([&] {
    auto result = is_probabilistically_dense(
        matrix->value, threshold ? parse_rational(threshold) : Rational(2, 3));
    *out_dense = result.dense ? 1 : 0;
    *out_worst_row = result.worst_row;
    *out_worst_density = dup_string(rational_str(result.worst_density));
  });
}

psc_status psc_matrix_growth(const psc_matrix* matrix, unsigned m,
                             uint64_t trials, uint64_t budget, uint64_t seed,
                             uint64_t* out_count) {
  return guarded([&] {
    GrowthOptions opts;
    opts.exhaustive = trials == 0;
    opts.trials = trials;
    if (budget) opts.budget = budget;
    opts.seed = seed;
    *out_count = growth_function(matrix->value, m, opts);
  });
}

psc_status psc_matrix_find_majority(const psc_matrix* matrix, uint64_t master_seed,
                                    int retry_limit, char** out_report_json) {
  return guarded([&] {
    Rng rng(master_seed, 1);
    MajoritySearchOptions opts;
    if (retry_limit > 0) opts.retry_limit = retry_limit;
    auto result = find_majority_columns(matrix->value, rng, opts);
    *out_report_json = dup_string(majority_report_json(result));
  });
}

psc_status psc_derand_finite(const psc_circuit* circuit, const psc_circuit* oracle,
                             const char* witness_rows_text, const char* relation,
                             uint64_t seeds_budget, uint64_t t_f,
                             uint64_t master_seed, unsigned threads,
                             char** out_report_json, psc_circuit** out_wrapper) {
  return guarded([&] {
    FiniteDerandOptions opts;
    if (seeds_budget) opts.seeds_budget = seeds_budget;
    if (t_f) opts.t_f = t_f;
    opts.threads = threads;
    auto report = derandomize_finite(circuit->value, circuit_oracle(oracle->value),
                                     parse_vector_lines(witness_rows_text),
                                     Relation::parse(relation ? relation : "eq"),
                                     master_seed, opts);
    *out_report_json = dup_string(report.to_json());
    if (out_wrapper) {
      if (report.wrapper.circuit) {
        *out_wrapper = new psc_circuit{*report.wrapper.circuit};
      } else if (report.wrapper.combiner == CombinerKind::SingleCopy) {
        *out_wrapper = new psc_circuit{report.wrapper.copies.at(0)};
      } else {
        *out_wrapper = nullptr;  // majority-vote wrappers are not pure circuits
      }
    }
  });
}

psc_status psc_derand_tropical(const char* problem_text, const char* sampler_text,
                               const char* p, uint64_t master_seed,
                               unsigned threads, char** out_report_json,
                               psc_circuit** out_wrapper) {
  return guarded([&] {
    TropicalProblem problem = TropicalProblem::parse(problem_text ? problem_text : "");
    TropicalSampler sampler = parse_sampler(sampler_text ? sampler_text : "", problem);
    TropicalDerandOptions opts;
    opts.threads = threads;
    auto report = derandomize_tropical_one_sided(sampler, problem,
                                                 parse_rational(p ? p : "1"),
                                                 master_seed, opts);
    *out_report_json = dup_string(report.to_json());
    if (out_wrapper) *out_wrapper = new psc_circuit{*report.wrapper.circuit};
  });
}

psc_status psc_derand_arithmetic(const psc_circuit* circuit,
                                 const char* oracle_numerator,
                                 const char* oracle_denominator,
                                 uint64_t max_deg_r, uint64_t seeds_budget,
                                 uint64_t grid_budget, uint64_t master_seed,
                                 unsigned threads, char** out_report_json,
                                 psc_circuit** out_wrapper) {
  return guarded([&] {
    int n = circuit->value.n_det_inputs;
    Polynomial num = Polynomial::parse(oracle_numerator ? oracle_numerator : "0", n);
    Polynomial den = Polynomial::parse(oracle_denominator ? oracle_denominator : "1", n);
    ArithmeticDerandOptions opts;
    if (seeds_budget) opts.seeds_budget = seeds_budget;
    if (grid_budget) opts.grid_budget = grid_budget;
    opts.threads = threads;
    auto report = derandomize_arithmetic(circuit->value, num, den, max_deg_r,
                                         master_seed, opts);
    *out_report_json = dup_string(report.to_json());
    if (out_wrapper) *out_wrapper = new psc_circuit{report.wrapper.copies.at(0)};
  });
}

psc_status psc_verify_isolating(const psc_circuit* circuit, const char* problem_text,
                                uint64_t spot_checks, uint64_t spot_seed,
                                unsigned threads, char** out_report_json) {
  return guarded([&] {
    TropicalProblem problem = TropicalProblem::parse(problem_text ? problem_text : "");
    IsolatingVerifyOptions opts;
    opts.spot_checks = spot_checks;
    opts.spot_seed = spot_seed;
    opts.threads = threads;
    auto result = verify_on_isolating_set(circuit->value, problem, opts);
    *out_report_json = dup_string(isolating_report_json(result, spot_seed));
  });
}

}  // extern "C"
