#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "json_writer.hpp"
#include "rip/matrix_io.hpp"
#include "rip/mixed_charpoly.hpp"
#include "rip/selection.hpp"

namespace rip::cli {
namespace {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::rank: return "rank";
    case Mode::stable: return "stable";
    case Mode::normalized: return "normalized";
    case Mode::verify: return "verify";
    case Mode::bench: return "bench";
  }
  return "unknown";
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> out(indices);
  for (auto& i : out) ++i;
  return out;
}

void write_bounds(JsonWriter& json, const BoundReport& b) {
  json.key("bound_report").begin_object();
  json.field("rank_bound", b.rank_bound);
  json.field("stable_bound", b.stable_bound);
  json.field("srank2", b.srank2);
  json.field("srank4", b.srank4);
  json.field("r_used", b.r_used);
  json.field("epsilon_used", b.epsilon_used);
  json.end_object();
}

void write_selection(JsonWriter& json, const SelectionResult& result) {
  json.key("subset").array(one_based(result.subset));
  json.field("sigma_min", std::sqrt(result.sigma_min_sq));
  json.field("sigma_min_sq", result.sigma_min_sq);
  json.key("lambda_trace").array(result.lambda_trace);
  write_bounds(json, result.bounds);
}

void require(bool ok, const char* message) {
  if (!ok) throw io::InputError(message);
}

WeightVector load_weights(const RunConfig& config, const DenseMatrix& a) {
  if (!config.weights_path) return WeightVector::ones(static_cast<std::size_t>(a.cols()));
  auto raw = io::read_weights(*config.weights_path);
  if (static_cast<Eigen::Index>(raw.size()) != a.cols()) {
    throw io::InputError(fmt::format("weights file has {} entries but the matrix has {} columns",
                                     raw.size(), a.cols()));
  }
  try {
    return WeightVector(std::move(raw));
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
}

SelectOptions select_options(const RunConfig& config) {
  SelectOptions options;
  options.rank_tol = config.rank_tol;
  options.imag_tol = config.imag_tol;
  options.r = config.r;
  return options;
}

int run_selection(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require(config.matrix_path.has_value(), "--matrix is required");
  const DenseMatrix a = io::read_matrix_csv(*config.matrix_path);
  SelectOptions options = select_options(config);

  WeightVector w = WeightVector::ones(1);
  std::size_t k = 0;
  std::optional<double> sigma_bound;
  switch (config.mode) {
    case Mode::rank:
    case Mode::verify:
      require(config.k.has_value(), "this mode requires --k");
      w = load_weights(config, a);
      k = *config.k;
      break;
    case Mode::stable: {
      require(config.epsilon.has_value(), "stable mode requires --epsilon");
      w = load_weights(config, a);
      const StableBound sb = bound_stable(a, w, *config.epsilon);
      k = sb.k;
      sigma_bound = sb.sigma_bound;
      options.epsilon = config.epsilon;
      break;
    }
    case Mode::normalized: {
      require(config.epsilon.has_value(), "normalized mode requires --epsilon");
      if (config.weights_path) err << "note: --weights ignored in normalized mode\n";
      w = column_normalizing_weights(a);
      const StableBound sb = normalized_bound(a, *config.epsilon);
      k = sb.k;
      sigma_bound = sb.sigma_bound;
      options.epsilon = config.epsilon;
      break;
    }
    case Mode::bench:
      throw std::logic_error("bench mode handled elsewhere");
  }

  const std::size_t rank = numerical_rank(a, config.rank_tol);
  if (k > rank) {
    throw io::InputError(fmt::format("k = {} exceeds the numerical rank {}; no guarantee applies",
                                     k, rank));
  }
  const SelectionResult result = greedy_select(a, w, k, options);
  bool certified = is_certified(result);
  if (sigma_bound) {
    certified = certified && std::sqrt(result.sigma_min_sq) >= *sigma_bound - 1e-7;
  }

  JsonWriter json;
  json.begin_object();
  json.field("mode", mode_name(config.mode));
  json.field("rows", static_cast<std::size_t>(a.rows()));
  json.field("cols", static_cast<std::size_t>(a.cols()));
  json.field("k", k);
  json.field("rank", rank);
  write_selection(json, result);
  if (sigma_bound) json.field("sigma_bound", *sigma_bound);
  json.field("certified", certified);

  bool oracle_ok = true;
  if (config.mode == Mode::verify) {
    oracle::Budgets budgets;
    if (config.budget) {
      budgets = {*config.budget, *config.budget, *config.budget};
    }
    const oracle::OracleReport report = oracle::run_oracles(a, w, k, budgets, config.rank_tol);
    const double greedy_sigma = std::sqrt(result.sigma_min_sq);
    const bool within_optimum = greedy_sigma <= report.best_value + 1e-9;
    oracle_ok = report.expected_poly_match && report.interlacing_ok && within_optimum;

    json.key("oracle").begin_object();
    json.key("best_subset").array(one_based(report.best_subset));
    json.field("best_value", report.best_value);
    json.field("expected_poly_match", report.expected_poly_match);
    json.field("expected_poly_deviation", report.expected_poly_deviation);
    json.field("interlacing_ok", report.interlacing_ok);
    json.field("greedy_within_optimum", within_optimum);
    json.end_object();
  }
  json.end_object();
  out << json.str() << '\n';

  if (!certified) err << "certification failed: achieved value is below a reported bound\n";
  if (!oracle_ok) err << "oracle verification failed\n";
  return certified && oracle_ok ? kExitOk : kExitNotCertified;
}

// Haar-ish orthogonal matrix from the QR factorization of a Gaussian matrix.
Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::vector<double> bench_spectrum(const std::string& name, std::size_t p) {
  std::vector<double> s(p);
  for (std::size_t i = 0; i < p; ++i) {
    const double index = static_cast<double>(i + 1);
    if (name == "flat") {
      s[i] = 1.0;
    } else if (name == "decay-1/sqrt(i)") {
      s[i] = 1.0 / std::sqrt(index);
    } else {  // spiked
      s[i] = i == 0 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(p));
    }
  }
  return s;
}

int run_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::vector<std::string>> kSpectra{
      {"all", {"flat", "decay-1/sqrt(i)", "spiked"}},
      {"flat", {"flat"}},
      {"decay", {"decay-1/sqrt(i)"}},
      {"decay-1/sqrt(i)", {"decay-1/sqrt(i)"}},
      {"spiked", {"spiked"}}};
  const auto found = kSpectra.find(config.spectrum);
  if (found == kSpectra.end()) {
    throw io::InputError("unknown spectrum '" + config.spectrum +
                         "' (expected flat, decay, spiked or all)");
  }
  require(config.bench_rows >= 1 && config.bench_cols >= 1, "bench dimensions must be positive");

  const auto n = static_cast<Eigen::Index>(config.bench_rows);
  const auto m = static_cast<Eigen::Index>(config.bench_cols);
  const std::size_t p = std::min(config.bench_rows, config.bench_cols);

  std::mt19937_64 rng(config.seed);
  JsonWriter json;
  json.begin_object();
  json.field("mode", "bench");
  json.field("seed", static_cast<std::int64_t>(config.seed));
  json.field("rows", config.bench_rows);
  json.field("cols", config.bench_cols);
  json.key("table").begin_array();

  err << fmt::format("{:<16} {:>3} {:>14} {:>14} {:>14} {:>14} {:>14}  {}\n", "spectrum", "k",
                     "sigma_min^2", "lambda_k(f0)", "rank_bound", "best_r_bound", "stable_bound",
                     "certified");
  bool all_certified = true;
  for (const std::string& name : found->second) {
    const auto sigma = bench_spectrum(name, p);
    Eigen::MatrixXd core = Eigen::MatrixXd::Zero(n, m);
    for (std::size_t i = 0; i < p; ++i) {
      core(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = sigma[i];
    }
    const DenseMatrix a(random_orthogonal(rng, n) * core * random_orthogonal(rng, m).transpose());
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    std::bernoulli_distribution flip(0.5);
    std::vector<double> raw(static_cast<std::size_t>(m));
    for (double& v : raw) v = flip(rng) ? -mag(rng) : mag(rng);
    const WeightVector w(std::move(raw));

    const std::size_t rank = numerical_rank(a, config.rank_tol);
    for (std::size_t k = 1; k <= rank; ++k) {
      SelectOptions options = select_options(config);
      options.r.reset();
      const SelectionResult result = greedy_select(a, w, k, options);
      double best_r_bound = 0.0;
      for (std::size_t r = k; r <= rank; ++r) {
        best_r_bound = std::max(best_r_bound, bound_rank(a, w, k, r, config.rank_tol));
      }
      const bool certified = is_certified(result) &&
                             result.sigma_min_sq >= best_r_bound - certificate_slack(best_r_bound);
      all_certified = all_certified && certified;

      json.begin_object();
      json.field("spectrum", name);
      json.field("k", k);
      json.field("sigma_min_sq", result.sigma_min_sq);
      json.field("lambda_k_expected", result.lambda_trace.front());
      json.field("rank_bound", result.bounds.rank_bound);
      json.field("best_threshold_bound", best_r_bound);
      json.field("stable_bound", result.bounds.stable_bound);
      json.field("srank4", result.bounds.srank4);
      json.field("certified", certified);
      json.end_object();

      err << fmt::format("{:<16} {:>3} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g}  {}\n",
                         name, k, result.sigma_min_sq, result.lambda_trace.front(),
                         result.bounds.rank_bound, best_r_bound, result.bounds.stable_bound,
                         certified);
    }
  }
  json.end_array();
  json.field("all_certified", all_certified);
  json.end_object();
  out << json.str() << '\n';
  return all_certified ? kExitOk : kExitNotCertified;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.mode == Mode::bench) return run_bench(config, out, err);
    return run_selection(config, out, err);
  } catch (const std::invalid_argument& e) {
    // Covers io::InputError, oracle::BudgetExceeded and precondition failures.
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNotCertified;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic column subset selection with restricted-invertibility certificates",
               "rip-select"};
  RunConfig config;
  std::string matrix;
  std::string weights;
  std::string mode = "rank";
  std::size_t k = 0;
  std::size_t r = 0;
  double epsilon = 0.0;
  std::uint64_t budget = 0;

  app.add_option("--matrix", matrix, "CSV file, one matrix row per line");
  app.add_option("--weights", weights, "One weight per line; defaults to all ones");
  app.add_option("--mode", mode, "rank | stable | normalized | verify | bench")
      ->check(CLI::IsMember({"rank", "stable", "normalized", "verify", "bench"}));
  auto* k_opt = app.add_option("--k", k, "Number of columns to select")->check(CLI::PositiveNumber);
  auto* r_opt = app.add_option("--r", r, "Threshold rank for the rank bound")->check(CLI::PositiveNumber);
  auto* eps_opt = app.add_option("--epsilon", epsilon, "Stable-rank parameter in (0, 1)");
  app.add_option("--seed", config.seed, "Seed for bench-mode matrices");
  app.add_option("--spectrum", config.spectrum, "bench spectrum: flat | decay | spiked | all");
  app.add_option("--rows", config.bench_rows, "bench matrix rows");
  app.add_option("--cols", config.bench_cols, "bench matrix columns");
  app.add_option("--imag-tol", config.imag_tol, "Imaginary-residual tolerance for root extraction");
  app.add_option("--rank-tol", config.rank_tol, "Relative tolerance for numerical rank");
  auto* budget_opt = app.add_option("--budget", budget, "Cap on exhaustive enumerations (verify)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  static const std::map<std::string, Mode> kModes{{"rank", Mode::rank},
                                                  {"stable", Mode::stable},
                                                  {"normalized", Mode::normalized},
                                                  {"verify", Mode::verify},
                                                  {"bench", Mode::bench}};
  config.mode = kModes.at(mode);
  if (!matrix.empty()) config.matrix_path = matrix;
  if (!weights.empty()) config.weights_path = weights;
  if (*k_opt) config.k = k;
  if (*r_opt) config.r = r;
  if (*eps_opt) config.epsilon = epsilon;
  if (*budget_opt) config.budget = budget;
  return run(config, out, err);
}

}  // namespace rip::cli
