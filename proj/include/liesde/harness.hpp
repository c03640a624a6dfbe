#pragma once

#include "liesde/csv.hpp"
#include "liesde/integrators.hpp"
#include "liesde/noise.hpp"
#include "liesde/problem.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace liesde {

struct RunConfig {
  std::string problem = "rigidbody";
  bool normalize = false;
  std::vector<Method> methods;
  MethodOptions options;
  /// Step size (coarsest tested step for convergence experiments).
  double h = 0.01;
  double T = 1.0;
  int paths = 1;
  std::uint64_t seed = 0;
  /// Number of tested dyadic levels h, h/2, ..., h/2^(levels-1).
  int levels = 1;
  /// The reference grid is 2^reference_refinement times finer than the
  /// finest tested level.
  int reference_refinement = 6;
  /// Worker threads; 0 means hardware concurrency.
  int threads = 0;
  /// Measure the error as the maximum over the coarse grid instead of at T.
  bool max_over_time = false;
  bool deterministic = false;
  std::string out;

  /// Number of steps of size h in [0, T]; throws unless T/h is integral.
  int steps() const;
  void validate() const;
  /// "key=value" echo of every field, for result-file metadata.
  std::vector<std::string> describe() const;
};

/// Parses "2^-k", "2^k" or a decimal literal.
double parse_step(const std::string& text);

/// Runs body(path) for path in [0, count) on `threads` workers. Exceptions
/// are rethrown on the calling thread.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

/// Pairwise summation, independent of how the terms were produced.
double pairwise_sum(std::span<const double> x);

struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};
MeanEstimate estimate_mean(std::span<const double> samples);

/// Root-mean-square of per-path errors with delta-method standard error.
struct RmsEstimate {
  double rms = 0.0;
  double std_error = 0.0;
};
RmsEstimate estimate_rms(std::span<const double> squared_errors);

/// Least-squares slope of log2(y) against log2(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

// --- manifold drift -------------------------------------------------------

struct DriftRow {
  int path = 0;
  Method method = Method::st_1;
  double t = 0.0;
  std::vector<double> defects;
};

struct DriftTrace {
  std::vector<std::string> defect_names;
  std::vector<DriftRow> rows;

  /// Largest defect (over time and defect kinds) for one path and method.
  double max_defect(int path, Method method) const;
};

DriftTrace run_drift(const RunConfig& cfg, const Problem& problem);

// --- strong convergence ---------------------------------------------------

struct ErrorRecord {
  Method method = Method::st_1;
  double h = 0.0;
  double rmse = 0.0;
  double std_error = 0.0;
  int paths = 0;
};

struct ConvergeResult {
  std::vector<ErrorRecord> records;
  std::vector<std::pair<Method, double>> slopes;
  Method reference = Method::st_1;
  double reference_h = 0.0;
  /// RMS distance between the reference at two resolutions.
  double reference_mutual_rmse = 0.0;

  double slope(Method m) const;
};

/// The reference scheme used for a problem: ST_32 for one channel, ST_1
/// otherwise.
Method reference_method(const Problem& problem);

ConvergeResult run_converge(const RunConfig& cfg, const Problem& problem);

// --- uniform accuracy -----------------------------------------------------

enum class UniformVariant { half, one, three_halves };

std::string_view variant_name(UniformVariant v);
UniformVariant parse_variant(std::string_view name);
/// The Lie-series and Taylor schemes compared for a variant, and the
/// channel count the variant needs.
struct UniformPairing {
  Method lie_series;
  Method taylor;
  MethodOptions taylor_options;
  int channels;
};
UniformPairing uniform_pairing(UniformVariant v, const MethodOptions& base);

struct UniformRecord {
  UniformVariant variant = UniformVariant::half;
  double h = 0.0;
  double rmse_ls = 0.0;
  double rmse_st = 0.0;
  double paired_diff = 0.0;
  double paired_stderr = 0.0;
  bool violation = false;
};

std::vector<UniformRecord> run_uniform(const RunConfig& cfg, const Problem& problem,
                                       UniformVariant variant);

// --- local remainder moments ----------------------------------------------

/// The displayed weight matrix b for m = 1/2 (2x2), 1 (3x3) or 3/2 (4x4).
Eigen::MatrixXd remainder_weights(UniformVariant v);
double min_eigenvalue(const Eigen::MatrixXd& symmetric);

struct LocalErrRecord {
  UniformVariant m = UniformVariant::half;
  double h = 0.0;
  double mc_diff = 0.0;
  double mc_stderr = 0.0;
  double predicted = 0.0;
};

/// Monte-Carlo estimate of E|R_st y0|^2 - E|R_ls y0|^2 from the leading-order
/// local remainders, at h, h/2, ... (cfg.levels values), cfg.paths samples
/// each. m = 1/2 needs a two-channel problem; m = 1 uses fields 0 and 1.
std::vector<LocalErrRecord> run_localerr(const RunConfig& cfg, const Problem& problem,
                                         std::span<const UniformVariant> orders);

// --- CSV ------------------------------------------------------------------

enum class CsvSchema { drift, converge, uniform, localerr };

std::vector<std::string> schema_columns(CsvSchema schema, int defect_count = 1);

/// Metadata shared by every result file: config echo and problem constants,
/// plus a timestamp unless cfg.deterministic.
std::vector<std::string> run_metadata(const RunConfig& cfg, const Problem& problem,
                                      const std::string& experiment);

CsvTable drift_table(const DriftTrace& trace);
CsvTable converge_table(const ConvergeResult& result);
CsvTable uniform_table(const std::vector<UniformRecord>& records);
CsvTable localerr_table(const std::vector<LocalErrRecord>& records);

}  // namespace liesde
