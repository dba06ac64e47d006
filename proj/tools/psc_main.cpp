// psc command-line tool. Batch-only front end over the shared library's C
// API (psc/psc.h); every randomized subcommand takes --seed and is
// bit-reproducible for a fixed seed regardless of --threads.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psc/psc.h"

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(psc_status status) {
  std::string message = psc_last_error();
  int code = (status == PSC_ERR_PARSE || status == PSC_ERR_INVALID) ? 2 : 1;
  throw CliError{code, message};
}

void check(psc_status status) {
  if (status != PSC_OK) die(status);
}

std::string take(char* owned) {
  std::string out = owned ? owned : "";
  psc_string_free(owned);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError{2, "cannot open file '" + path + "'"};
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CircuitHandle {
  psc_circuit* value = nullptr;
  ~CircuitHandle() { psc_circuit_free(value); }
  psc_circuit* get() const { return value; }
};

struct MatrixHandle {
  psc_matrix* value = nullptr;
  ~MatrixHandle() { psc_matrix_free(value); }
};

CircuitHandle load_circuit_arg(const std::string& path) {
  CircuitHandle h;
  check(psc_circuit_load(path.c_str(), &h.value));
  return h;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw CliError{2, "cannot open '" + out_path + "' for writing"};
    f << text;
  }
}

void write_wrapper(psc_circuit* wrapper, const std::string& path) {
  if (path.empty()) return;
  if (!wrapper)
    throw CliError{1, "this wrapper uses a majority-vote output operation and "
                      "has no pure-circuit form to write"};
  char* text = nullptr;
  check(psc_circuit_print(wrapper, &text));
  emit(take(text), path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic semialgebraic circuit toolkit"};
  app.require_subcommand(1);

  // common option storage
  std::string circuit_path, oracle_path, out_path, wrapper_out, x_csv, r_csv;
  std::string rel = "eq", rows_path, matrix_path, problem_path, sampler_path;
  std::string polys_path, points_path, C_str = "1", p_str = "1", num_poly,
              den_poly, threshold = "2/3";
  std::uint64_t seed = 0, budget = 0, n = 1, s = 1, b = 1, d = 1, m = 1, t = 1,
                q = 1, kappa = 1, t_f = 1, t_rho = 1, trials = 0, growth = 1;
  double C_float = 1.0;
  unsigned threads = 1;
  int width = 1;
  bool use_float = false;

  auto* eval = app.add_subcommand("eval", "evaluate a circuit at a point");
  eval->add_option("--circuit", circuit_path)->required();
  eval->add_option("--x", x_csv, "deterministic inputs, comma-separated");
  eval->add_option("--r", r_csv, "random-input values, comma-separated");
  eval->add_flag("--float", use_float, "evaluate in double precision");
  eval->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    if (use_float) {
      double v = 0;
      check(psc_circuit_eval_double(c.get(), x_csv.c_str(), r_csv.c_str(), &v));
      std::cout << v << "\n";
    } else {
      char* v = nullptr;
      check(psc_circuit_eval(c.get(), x_csv.c_str(), r_csv.c_str(), &v));
      std::cout << take(v) << "\n";
    }
  });

  auto* copy = app.add_subcommand("copy", "fix random inputs to constants");
  copy->add_option("--circuit", circuit_path)->required();
  copy->add_option("--r", r_csv, "values for the random inputs")->required();
  copy->add_option("--out", out_path);
  copy->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    psc_circuit* fixed = nullptr;
    check(psc_circuit_fix_random(c.get(), r_csv.c_str(), &fixed));
    CircuitHandle owner{fixed};
    char* text = nullptr;
    check(psc_circuit_print(fixed, &text));
    emit(take(text), out_path);
  });

  auto* tof = app.add_subcommand("to-formula",
                                 "existential description of a circuit's graph");
  tof->add_option("--circuit", circuit_path)->required();
  tof->add_option("--out", out_path);
  tof->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    char* sexpr = nullptr;
    check(psc_circuit_to_formula(c.get(), &sexpr));
    emit(take(sexpr), out_path);
  });

  auto* signs = app.add_subcommand("signs", "count distinct sign patterns");
  signs->add_option("--polys", polys_path, "file with one polynomial per line")
      ->required();
  signs->add_option("--points", points_path, "file with one point per line")
      ->required();
  signs->callback([&] {
    std::uint64_t count = 0;
    check(psc_count_sign_patterns(slurp(polys_path).c_str(),
                                  slurp(points_path).c_str(), &count));
    std::cout << count << "\n";
  });

  auto* warren = app.add_subcommand("warren", "sign-pattern count bound");
  warren->add_option("--m", m)->required();
  warren->add_option("--n", n)->required();
  warren->add_option("--d", d, "polynomial degree (plain form)");
  std::uint64_t warren_t = 0;
  warren->add_option("--t", warren_t,
                     "description complexity (formula corollary form)");
  warren->add_flag("--float", use_float);
  warren->callback([&] {
    char* value = nullptr;
    char* ceiling = nullptr;
    if (warren_t)
      check(psc_warren_corollary_bound(m, warren_t, n, &value, &ceiling));
    else
      check(psc_warren_bound(m, d, n, &value, &ceiling));
    std::string v = take(value);
    if (use_float) {
      std::size_t slash = v.find('/');
      double numd = std::stod(v.substr(0, slash));
      double dend = slash == std::string::npos ? 1.0 : std::stod(v.substr(slash + 1));
      std::cout << "value " << numd / dend << "\n";
    } else {
      std::cout << "value " << v << "\n";
    }
    std::cout << "ceiling " << take(ceiling) << "\n";
  });

  auto* matrix = app.add_subcommand("matrix", "correctness-matrix operations");
  matrix->require_subcommand(1);

  auto* mbuild = matrix->add_subcommand("build", "build a correctness matrix");
  mbuild->add_option("--circuit", circuit_path)->required();
  mbuild->add_option("--oracle", oracle_path, "deterministic reference circuit")
      ->required();
  mbuild->add_option("--rows", rows_path, "witness inputs, one per line")->required();
  mbuild->add_option("--rel", rel, "eq | sign | null | approx:<c>");
  mbuild->add_option("--seeds", budget, "sampled seed count (0 = exhaustive support)");
  mbuild->add_option("--seed", seed);
  mbuild->add_option("--threads", threads);
  mbuild->add_option("--out", out_path);
  mbuild->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    auto oracle = load_circuit_arg(oracle_path);
    MatrixHandle mh;
    check(psc_matrix_build(c.get(), oracle.get(), slurp(rows_path).c_str(),
                           rel.c_str(), budget, seed, threads, &mh.value));
    char* text = nullptr;
    check(psc_matrix_print(mh.value, &text));
    emit(take(text), out_path);
  });

  auto* mdensity = matrix->add_subcommand("density", "probabilistic density check");
  mdensity->add_option("--matrix", matrix_path)->required();
  mdensity->add_option("--threshold", threshold);
  mdensity->callback([&] {
    MatrixHandle mh;
    check(psc_matrix_load(matrix_path.c_str(), &mh.value));
    int dense = 0;
    std::uint64_t worst = 0;
    char* worst_density = nullptr;
    check(psc_matrix_density(mh.value, threshold.c_str(), &dense, &worst,
                             &worst_density));
    std::cout << (dense ? "dense" : "not-dense") << "\n";
    std::cout << "worst-row " << worst << " density " << take(worst_density) << "\n";
    if (!dense) throw CliError{1, "matrix is not probabilistically dense"};
  });

  auto* mgrowth = matrix->add_subcommand("growth", "growth function value");
  mgrowth->add_option("--matrix", matrix_path)->required();
  mgrowth->add_option("--m", m, "columns per tuple")->required();
  mgrowth->add_option("--sampled", trials, "sampled tuples (0 = exhaustive)");
  mgrowth->add_option("--budget", budget);
  mgrowth->add_option("--seed", seed);
  mgrowth->callback([&] {
    MatrixHandle mh;
    check(psc_matrix_load(matrix_path.c_str(), &mh.value));
    std::uint64_t count = 0;
    check(psc_matrix_growth(mh.value, static_cast<unsigned>(m), trials, budget,
                            seed, &count));
    std::cout << count << (trials ? " (sampled lower bound)\n" : "\n");
  });

  auto* mmaj = matrix->add_subcommand("majority", "find majority columns");
  mmaj->add_option("--matrix", matrix_path)->required();
  mmaj->add_option("--seed", seed);
  int retries = 0;
  mmaj->add_option("--retries", retries);
  mmaj->add_option("--out", out_path);
  mmaj->callback([&] {
    MatrixHandle mh;
    check(psc_matrix_load(matrix_path.c_str(), &mh.value));
    char* report = nullptr;
    check(psc_matrix_find_majority(mh.value, seed, retries, &report));
    emit(take(report), out_path);
  });

  auto* dfin = app.add_subcommand("derand-finite",
                                  "finite-witness majority derandomization");
  dfin->add_option("--circuit", circuit_path)->required();
  dfin->add_option("--oracle", oracle_path)->required();
  dfin->add_option("--witness", rows_path, "witness inputs, one per line")->required();
  dfin->add_option("--rel", rel);
  dfin->add_option("--budget", budget, "seed budget");
  dfin->add_option("--tf", t_f, "description complexity of the oracle function");
  dfin->add_option("--seed", seed);
  dfin->add_option("--threads", threads);
  dfin->add_option("--out", out_path);
  dfin->add_option("--wrapper-out", wrapper_out);
  dfin->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    auto oracle = load_circuit_arg(oracle_path);
    char* report = nullptr;
    psc_circuit* wrapper = nullptr;
    check(psc_derand_finite(c.get(), oracle.get(), slurp(rows_path).c_str(),
                            rel.c_str(), budget, t_f, seed, threads, &report,
                            wrapper_out.empty() ? nullptr : &wrapper));
    CircuitHandle owner{wrapper};
    emit(take(report), out_path);
    write_wrapper(wrapper, wrapper_out);
  });

  auto* dtrop = app.add_subcommand("derand-tropical",
                                   "one-sided tropical derandomization");
  dtrop->add_option("--problem", problem_path)->required();
  dtrop->add_option("--sampler", sampler_path)->required();
  dtrop->add_option("--p", p_str, "one-sided success probability")->required();
  dtrop->add_option("--seed", seed);
  dtrop->add_option("--threads", threads);
  dtrop->add_option("--out", out_path);
  dtrop->add_option("--wrapper-out", wrapper_out);
  dtrop->callback([&] {
    char* report = nullptr;
    psc_circuit* wrapper = nullptr;
    check(psc_derand_tropical(slurp(problem_path).c_str(),
                              slurp(sampler_path).c_str(), p_str.c_str(), seed,
                              threads, &report,
                              wrapper_out.empty() ? nullptr : &wrapper));
    CircuitHandle owner{wrapper};
    emit(take(report), out_path);
    write_wrapper(wrapper, wrapper_out);
  });

  auto* darith = app.add_subcommand("derand-arith",
                                    "arithmetic circuit derandomization");
  darith->add_option("--circuit", circuit_path)->required();
  darith->add_option("--num", num_poly, "oracle numerator polynomial")->required();
  darith->add_option("--den", den_poly, "oracle denominator polynomial")->required();
  darith->add_option("--max-deg-r", d, "degree bound of the oracle pair")->required();
  darith->add_option("--budget", budget, "seed budget");
  std::uint64_t grid_budget = 0;
  darith->add_option("--grid", grid_budget, "max grid points |S|^n");
  darith->add_option("--seed", seed);
  darith->add_option("--threads", threads);
  darith->add_option("--out", out_path);
  darith->add_option("--wrapper-out", wrapper_out);
  darith->callback([&] {
    auto c = load_circuit_arg(circuit_path);
    char* report = nullptr;
    psc_circuit* wrapper = nullptr;
    check(psc_derand_arithmetic(c.get(), num_poly.c_str(), den_poly.c_str(), d,
                                budget, grid_budget, seed, threads, &report,
                                wrapper_out.empty() ? nullptr : &wrapper));
    CircuitHandle owner{wrapper};
    emit(take(report), out_path);
    write_wrapper(wrapper, wrapper_out);
  });

  auto* smed = app.add_subcommand("synth-median", "median (min,max) network");
  smed->add_option("--m", width, "inputs")->required();
  smed->add_option("--out", out_path);
  smed->callback([&] {
    psc_circuit* net = nullptr;
    check(psc_synth_median_network(width, &net));
    CircuitHandle owner{net};
    char* text = nullptr;
    check(psc_circuit_print(net, &text));
    emit(take(text), out_path);
    std::cerr << "gates " << psc_circuit_size(net) << "\n";
  });

  auto* szv = app.add_subcommand("synth-zerovote", "monotone (+,*) zero-vote circuit");
  szv->add_option("--n", width, "inputs")->required();
  szv->add_option("--out", out_path);
  szv->callback([&] {
    psc_circuit* net = nullptr;
    check(psc_synth_zero_vote(width, &net));
    CircuitHandle owner{net};
    char* text = nullptr;
    check(psc_circuit_print(net, &text));
    emit(take(text), out_path);
    std::cerr << "gates " << psc_circuit_size(net) << "\n";
  });

  auto* bounds = app.add_subcommand("bounds", "bound calculators");
  bounds->require_subcommand(1);

  auto* bexact = bounds->add_subcommand("exact", "copies for exact computation");
  bexact->add_option("--n", n)->required();
  bexact->add_option("--s", s)->required();
  bexact->add_option("--b", b)->required();
  bexact->add_option("--C", C_str);
  bexact->callback([&] {
    std::uint64_t out = 0;
    check(psc_bound_m_exact(n, s, b, C_str.c_str(), &out));
    std::cout << out << "\n";
  });

  auto* bapprox = bounds->add_subcommand("approx", "copies for approximation");
  bapprox->add_option("--n", n)->required();
  bapprox->add_option("--s", s)->required();
  bapprox->add_option("--b", b)->required();
  bapprox->add_option("--tf", t_f)->required();
  bapprox->add_option("--trho", t_rho)->required();
  bapprox->add_option("--C", C_str);
  bapprox->callback([&] {
    std::uint64_t out = 0;
    check(psc_bound_m_approx(n, s, b, t_f, t_rho, C_str.c_str(), &out));
    std::cout << out << "\n";
  });

  auto* binf = bounds->add_subcommand("infmaj", "majority size over infinite rows");
  binf->add_option("--n", n)->required();
  binf->add_option("--t", t)->required();
  binf->add_option("--C", C_str);
  binf->callback([&] {
    std::uint64_t out = 0;
    check(psc_bound_m_infinite(n, t, C_str.c_str(), &out));
    std::cout << out << "\n";
  });

  auto* bbpr = bounds->add_subcommand("bpr", "quantifier-elimination exponent shape");
  bbpr->add_option("--n", n)->required();
  bbpr->add_option("--q", q)->required();
  bbpr->add_option("--kappa", kappa)->required();
  bbpr->add_option("--C", C_float);
  bbpr->callback([&] {
    double out = 0;
    check(psc_bound_bpr(n, q, kappa, C_float, &out));
    std::cout << out << "\n";
  });

  auto* bvc = bounds->add_subcommand("vc", "uniform convergence failure bound");
  bvc->add_option("--growth", growth, "growth function value at 2m")->required();
  std::string eps = "1/7";
  bvc->add_option("--eps", eps);
  bvc->add_option("--m", m)->required();
  bvc->callback([&] {
    double out = 0;
    check(psc_bound_vc(growth, eps.c_str(), m, &out));
    std::cout << out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return 0;
}
