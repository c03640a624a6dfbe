#include "liesde/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace liesde {

// --- configuration ----------------------------------------------------------

int RunConfig::steps() const {
  if (!(h > 0.0) || !(T > 0.0)) throw std::invalid_argument("h and T must be positive");
  const double ratio = T / h;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio) || n < 1.0) {
    throw std::invalid_argument("T/h = " + format_double(ratio) + " is not a positive integer");
  }
  return static_cast<int>(n);
}

void RunConfig::validate() const {
  (void)steps();
  if (paths < 1) throw std::invalid_argument("paths must be >= 1");
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (reference_refinement < 1) throw std::invalid_argument("reference refinement must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (options.dexpinv_order < 0) throw std::invalid_argument("dexpinv order must be >= 0");
  if (options.ode_substeps < 0) throw std::invalid_argument("ODE substeps must be >= 0");
}

std::vector<std::string> RunConfig::describe() const {
  std::string names;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    names += (k ? "," : "") + std::string(method_name(methods[k]));
  }
  return {
      "problem=" + problem,
      "normalize=" + std::to_string(normalize ? 1 : 0),
      "methods=" + names,
      "include_diagonal_half=" + std::to_string(options.include_diagonal_half ? 1 : 0),
      "dexpinv_order=" + std::to_string(options.dexpinv_order),
      "ode_substeps=" + std::to_string(options.ode_substeps),
      "h=" + format_double(h),
      "T=" + format_double(T),
      "paths=" + std::to_string(paths),
      "seed=" + std::to_string(seed),
      "levels=" + std::to_string(levels),
      "reference_refinement=" + std::to_string(reference_refinement),
      "max_over_time=" + std::to_string(max_over_time ? 1 : 0),
  };
}

double parse_step(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) {
    const double h = parse_double(text);
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive: '" + text + "'");
    return h;
  }
  const double base = parse_double(text.substr(0, caret));
  const std::string exponent = text.substr(caret + 1);
  int e = 0;
  try {
    std::size_t used = 0;
    e = std::stoi(exponent, &used);
    if (used != exponent.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad exponent in step '" + text + "'");
  }
  if (base != 2.0) throw std::invalid_argument("only powers of 2 are accepted: '" + text + "'");
  return std::ldexp(1.0, e);
}

// --- utilities --------------------------------------------------------------

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);
  if (workers == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= count) return;
      try {
        body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t mid = x.size() / 2;
  return pairwise_sum(x.first(mid)) + pairwise_sum(x.subspan(mid));
}

MeanEstimate estimate_mean(std::span<const double> samples) {
  MeanEstimate est;
  const auto n = static_cast<double>(samples.size());
  if (samples.empty()) return est;
  est.mean = pairwise_sum(samples) / n;
  if (samples.size() < 2) return est;
  std::vector<double> dev(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double d = samples[k] - est.mean;
    dev[k] = d * d;
  }
  const double var = pairwise_sum(dev) / (n - 1.0);
  est.stderr_of_mean = std::sqrt(var / n);
  return est;
}

RmsEstimate estimate_rms(std::span<const double> squared_errors) {
  const MeanEstimate m = estimate_mean(squared_errors);
  RmsEstimate out;
  out.rms = std::sqrt(std::max(m.mean, 0.0));
  out.std_error = out.rms > 0.0 ? m.stderr_of_mean / (2.0 * out.rms) : 0.0;
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more matching points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log2(x[k]);
    const double ly = std::log2(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::span<const StepNoise> level_span(const PathHierarchy& ph, int level) {
  const auto& v = ph.levels[static_cast<std::size_t>(level)];
  return {v.data(), v.size()};
}

void require_finite(const State& y, std::string_view what) {
  if (!y.allFinite()) {
    throw std::runtime_error(std::string(what) + " produced a non-finite state");
  }
}

// Final state, or the states on the coarsest grid when `coarse_stride` > 0.
struct Trajectory {
  State final_state;
  std::vector<State> coarse;
};

Trajectory run_level(Method m, const Problem& P, const PathHierarchy& ph, int level,
                     const MethodOptions& opt, bool keep_coarse) {
  Trajectory tr;
  const std::size_t stride = std::size_t{1} << level;
  std::function<void(std::size_t, const State&)> observer;
  if (keep_coarse) {
    observer = [&](std::size_t k, const State& y) {
      if (k % stride == 0) tr.coarse.push_back(y);
    };
  }
  tr.final_state = integrate(m, P, P.initial_state(), level_span(ph, level), opt, observer);
  return tr;
}

double squared_error(const Trajectory& a, const Trajectory& b, bool max_over_time) {
  if (!max_over_time) return (a.final_state - b.final_state).squaredNorm();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.coarse.size(); ++k) {
    worst = std::max(worst, (a.coarse[k] - b.coarse[k]).squaredNorm());
  }
  return worst;
}

}  // namespace

// --- drift ------------------------------------------------------------------

double DriftTrace::max_defect(int path, Method method) const {
  double worst = 0.0;
  for (const auto& row : rows) {
    if (row.path != path || row.method != method) continue;
    for (double d : row.defects) {
      if (std::isnan(d) || d > worst) worst = std::isnan(d) ? INFINITY : d;
    }
  }
  return worst;
}

DriftTrace run_drift(const RunConfig& cfg, const Problem& problem) {
  cfg.validate();
  if (cfg.methods.empty()) throw std::invalid_argument("drift needs at least one method");
  for (Method m : cfg.methods) validate(m, problem, cfg.options);
  const int steps = cfg.steps();
  const int d = problem.channels();

  std::vector<std::vector<DriftRow>> per_path(static_cast<std::size_t>(cfg.paths));
  parallel_for(cfg.paths, cfg.threads, [&](int path) {
    const PathHierarchy ph = build_hierarchy(cfg.seed, static_cast<std::uint32_t>(path), cfg.T,
                                             steps, 1, d);
    auto& rows = per_path[static_cast<std::size_t>(path)];
    for (Method m : cfg.methods) {
      const State y0 = problem.initial_state();
      rows.push_back(DriftRow{path, m, 0.0, problem.manifold_defects(y0)});
      bool diverged = false;
      State y = y0;
      for (int k = 0; k < steps; ++k) {
        if (!diverged) {
          y = step(m, problem, y, ph.levels[0][static_cast<std::size_t>(k)], cfg.options);
          diverged = !y.allFinite();
        }
        const double t = cfg.T * (k + 1) / steps;
        rows.push_back(DriftRow{path, m, t, problem.manifold_defects(y)});
      }
    }
  });

  DriftTrace trace;
  trace.defect_names = problem.defect_names();
  for (auto& rows : per_path) {
    trace.rows.insert(trace.rows.end(), std::make_move_iterator(rows.begin()),
                      std::make_move_iterator(rows.end()));
  }
  return trace;
}

// --- convergence -------------------------------------------------------------

double ConvergeResult::slope(Method m) const {
  for (const auto& [method, s] : slopes) {
    if (method == m) return s;
  }
  throw std::invalid_argument("no slope for method " + std::string(method_name(m)));
}

Method reference_method(const Problem& problem) {
  return problem.channels() == 1 ? Method::st_32 : Method::st_1;
}

ConvergeResult run_converge(const RunConfig& cfg, const Problem& problem) {
  cfg.validate();
  if (cfg.methods.empty()) throw std::invalid_argument("converge needs at least one method");
  for (Method m : cfg.methods) validate(m, problem, cfg.options);
  const int N = cfg.steps();
  const int depth = cfg.levels + cfg.reference_refinement;
  const int finest = depth - 1;
  const Method ref = reference_method(problem);
  const MethodOptions ref_opt{};
  const std::size_t nm = cfg.methods.size();
  const auto nl = static_cast<std::size_t>(cfg.levels);
  const auto np = static_cast<std::size_t>(cfg.paths);

  // errors[(method * levels + level) * paths + path]
  std::vector<double> errors(nm * nl * np);
  std::vector<double> ref_errors(np);
  parallel_for(cfg.paths, cfg.threads, [&](int path) {
    const auto p = static_cast<std::size_t>(path);
    const PathHierarchy ph = build_hierarchy(cfg.seed, static_cast<std::uint32_t>(path), cfg.T, N,
                                             depth, problem.channels());
    const Trajectory reference = run_level(ref, problem, ph, finest, ref_opt, cfg.max_over_time);
    const Trajectory reference2 =
        run_level(ref, problem, ph, finest - 1, ref_opt, cfg.max_over_time);
    require_finite(reference.final_state, "reference solution");
    ref_errors[p] = squared_error(reference2, reference, cfg.max_over_time);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      for (std::size_t l = 0; l < nl; ++l) {
        const Trajectory tr = run_level(cfg.methods[mi], problem, ph, static_cast<int>(l),
                                        cfg.options, cfg.max_over_time);
        errors[(mi * nl + l) * np + p] = squared_error(tr, reference, cfg.max_over_time);
      }
    }
  });

  ConvergeResult result;
  result.reference = ref;
  result.reference_h = cfg.h / static_cast<double>(std::size_t{1} << finest);
  result.reference_mutual_rmse = estimate_rms(ref_errors).rms;
  double smallest = INFINITY;
  for (std::size_t mi = 0; mi < nm; ++mi) {
    std::vector<double> hs, rms;
    for (std::size_t l = 0; l < nl; ++l) {
      const RmsEstimate est = estimate_rms(std::span<const double>(errors).subspan((mi * nl + l) * np, np));
      const double h = cfg.h / static_cast<double>(std::size_t{1} << l);
      result.records.push_back(ErrorRecord{cfg.methods[mi], h, est.rms, est.std_error, cfg.paths});
      hs.push_back(h);
      rms.push_back(est.rms);
      smallest = std::min(smallest, est.rms);
    }
    result.slopes.emplace_back(cfg.methods[mi], nl >= 2 ? loglog_slope(hs, rms) : NAN);
  }
  if (!(result.reference_mutual_rmse < 0.1 * smallest)) {
    throw std::runtime_error("reference does not dominate: mutual reference RMSE " +
                             format_double(result.reference_mutual_rmse) +
                             " is not below 10% of the smallest scheme RMSE " +
                             format_double(smallest) + "; increase the reference refinement");
  }
  return result;
}

// --- uniform accuracy --------------------------------------------------------

std::string_view variant_name(UniformVariant v) {
  switch (v) {
    case UniformVariant::half: return "1/2";
    case UniformVariant::one: return "1";
    case UniformVariant::three_halves: return "3/2";
  }
  return "?";
}

UniformVariant parse_variant(std::string_view name) {
  if (name == "1/2" || name == "half" || name == "0.5") return UniformVariant::half;
  if (name == "1" || name == "one") return UniformVariant::one;
  if (name == "3/2" || name == "1.5" || name == "threehalves") return UniformVariant::three_halves;
  throw std::invalid_argument("unknown uniform-accuracy variant '" + std::string(name) + "'");
}

UniformPairing uniform_pairing(UniformVariant v, const MethodOptions& base) {
  switch (v) {
    case UniformVariant::half: {
      MethodOptions st = base;
      st.include_diagonal_half = true;
      return {Method::cg_half, Method::st_half, st, 2};
    }
    case UniformVariant::one: return {Method::uls_1, Method::st_1, base, 1};
    case UniformVariant::three_halves: return {Method::uls_32, Method::st_32, base, 1};
  }
  throw std::invalid_argument("unknown variant");
}

std::vector<UniformRecord> run_uniform(const RunConfig& cfg, const Problem& problem,
                                       UniformVariant variant) {
  cfg.validate();
  const UniformPairing pair = uniform_pairing(variant, cfg.options);
  if (problem.channels() != pair.channels) {
    throw std::invalid_argument("variant " + std::string(variant_name(variant)) + " needs d=" +
                                std::to_string(pair.channels) + ", problem has d=" +
                                std::to_string(problem.channels()));
  }
  validate(pair.lie_series, problem, cfg.options);
  validate(pair.taylor, problem, pair.taylor_options);
  const int N = cfg.steps();
  const int depth = cfg.levels + cfg.reference_refinement;
  const Method ref = reference_method(problem);
  const auto nl = static_cast<std::size_t>(cfg.levels);
  const auto np = static_cast<std::size_t>(cfg.paths);

  std::vector<double> err_ls(nl * np), err_st(nl * np);
  parallel_for(cfg.paths, cfg.threads, [&](int path) {
    const auto p = static_cast<std::size_t>(path);
    const PathHierarchy ph = build_hierarchy(cfg.seed, static_cast<std::uint32_t>(path), cfg.T, N,
                                             depth, problem.channels());
    const State reference =
        integrate(ref, problem, problem.initial_state(), level_span(ph, depth - 1));
    for (std::size_t l = 0; l < nl; ++l) {
      const auto noise = level_span(ph, static_cast<int>(l));
      const auto noise_st = level_span(ph, static_cast<int>(l));
      if (noise.data() != noise_st.data()) throw std::logic_error("pairing must share noise");
      const State ls = integrate(pair.lie_series, problem, problem.initial_state(), noise, cfg.options);
      const State st = integrate(pair.taylor, problem, problem.initial_state(), noise_st,
                                 pair.taylor_options);
      err_ls[l * np + p] = (ls - reference).squaredNorm();
      err_st[l * np + p] = (st - reference).squaredNorm();
    }
  });

  std::vector<UniformRecord> out;
  const double n = static_cast<double>(np);
  for (std::size_t l = 0; l < nl; ++l) {
    const std::span<const double> a(err_ls.data() + l * np, np);
    const std::span<const double> b(err_st.data() + l * np, np);
    const MeanEstimate ma = estimate_mean(a);
    const MeanEstimate mb = estimate_mean(b);
    std::vector<double> cross(np);
    for (std::size_t p = 0; p < np; ++p) cross[p] = (a[p] - ma.mean) * (b[p] - mb.mean);
    const double cov = np > 1 ? pairwise_sum(cross) / (n - 1.0) : 0.0;
    const double var_a = ma.stderr_of_mean * ma.stderr_of_mean * n;
    const double var_b = mb.stderr_of_mean * mb.stderr_of_mean * n;

    UniformRecord rec;
    rec.variant = variant;
    rec.h = cfg.h / static_cast<double>(std::size_t{1} << l);
    rec.rmse_ls = std::sqrt(ma.mean);
    rec.rmse_st = std::sqrt(mb.mean);
    rec.paired_diff = rec.rmse_ls - rec.rmse_st;
    // Delta method for sqrt(mean a) - sqrt(mean b) with paired samples.
    const double ga = rec.rmse_ls > 0 ? 0.5 / rec.rmse_ls : 0.0;
    const double gb = rec.rmse_st > 0 ? 0.5 / rec.rmse_st : 0.0;
    const double var = (ga * ga * var_a + gb * gb * var_b - 2.0 * ga * gb * cov) / n;
    rec.paired_stderr = std::sqrt(std::max(var, 0.0));
    rec.violation = rec.paired_diff > 2.0 * rec.paired_stderr;
    out.push_back(rec);
  }
  return out;
}

// --- local remainders --------------------------------------------------------

Eigen::MatrixXd remainder_weights(UniformVariant v) {
  Eigen::MatrixXd b;
  switch (v) {
    case UniformVariant::half:
      b.resize(2, 2);
      b << 1, 1, 1, 1;
      return b / 4.0;
    case UniformVariant::one:
      b.resize(3, 3);
      b << 3, 3, 3, 3, 3, 3, 3, 3, 5;
      return b / 12.0;
    case UniformVariant::three_halves:
      b.resize(4, 4);
      b << 11, 8, 5, 12, 8, 8, 8, 12, 5, 8, 11, 12, 12, 12, 12, 24;
      return b / 144.0;
  }
  throw std::invalid_argument("unknown variant");
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::vector<LocalErrRecord> run_localerr(const RunConfig& cfg, const Problem& problem,
                                         std::span<const UniformVariant> orders) {
  if (cfg.paths < 2) throw std::invalid_argument("localerr needs at least two samples");
  if (cfg.levels < 1 || !(cfg.h > 0.0)) throw std::invalid_argument("localerr needs h > 0, levels >= 1");
  const State y0 = problem.initial_state();
  std::vector<LocalErrRecord> out;
  for (UniformVariant m : orders) {
    if (m == UniformVariant::three_halves) {
      throw std::invalid_argument("localerr Monte Carlo supports m = 1/2 and m = 1");
    }
    if (m == UniformVariant::half && problem.channels() < 2) {
      throw std::invalid_argument("m = 1/2 local remainders need two Wiener channels");
    }
    const Eigen::MatrixXd b = remainder_weights(m);
    // Columns of U: the compositions weighted by b.
    std::vector<State> U;
    State W = State::Zero(y0.size());
    if (m == UniformVariant::half) {
      U = {problem.compose(1, 2, y0), problem.compose(2, 1, y0)};
    } else {
      U = {problem.compose(0, 1, y0), problem.compose(1, 0, y0), problem.compose3(1, 1, 1, y0)};
      W = problem.compose3(0, 1, 1, y0) + problem.compose3(1, 1, 0, y0);
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) {
      for (std::size_t j = 0; j < U.size(); ++j) {
        quad += b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * U[i].dot(U[j]);
      }
    }
    const int d = m == UniformVariant::half ? 2 : 1;
    const auto tag = static_cast<std::uint32_t>(m == UniformVariant::half ? 0 : 1);

    for (int l = 0; l < cfg.levels; ++l) {
      const double h = cfg.h / static_cast<double>(std::size_t{1} << l);
      std::vector<double> diff(static_cast<std::size_t>(cfg.paths));
      for (int s = 0; s < cfg.paths; ++s) {
        NormalStream normals(StreamId{cfg.seed, static_cast<std::uint32_t>(s),
                                      static_cast<std::uint32_t>(l), tag});
        const StepNoise n = sample_step(normals, h, d);
        State r_st, r_ls;
        if (m == UniformVariant::half) {
          r_st = n.J(1, 2) * U[0] + n.J(2, 1) * U[1];
          r_ls = 0.5 * n.L12 * (U[0] - U[1]);
        } else {
          const double w = n.dW[0];
          r_st = n.J(0, 1) * U[0] + n.J(1, 0) * U[1] + (w * w * w / 6.0) * U[2] + (h * h / 4.0) * W;
          r_ls = 0.5 * (n.J(0, 1) - n.J(1, 0)) * (U[0] - U[1]);
        }
        diff[static_cast<std::size_t>(s)] = r_st.squaredNorm() - r_ls.squaredNorm();
      }
      const MeanEstimate est = estimate_mean(diff);
      LocalErrRecord rec;
      rec.m = m;
      rec.h = h;
      rec.mc_diff = est.mean;
      rec.mc_stderr = est.stderr_of_mean;
      rec.predicted = m == UniformVariant::half
                          ? h * h * quad
                          : h * h * h * quad + h * h * h * h / 16.0 * W.squaredNorm();
      out.push_back(rec);
    }
  }
  return out;
}

// --- CSV ----------------------------------------------------------------------

std::vector<std::string> schema_columns(CsvSchema schema, int defect_count) {
  switch (schema) {
    case CsvSchema::drift: {
      std::vector<std::string> cols{"path_id", "method", "t"};
      for (int k = 1; k <= defect_count; ++k) cols.push_back("defect" + std::to_string(k));
      return cols;
    }
    case CsvSchema::converge: return {"method", "h", "rmse", "stderr", "paths"};
    case CsvSchema::uniform:
      return {"variant", "h", "rmse_ls", "rmse_st", "paired_diff", "paired_stderr"};
    case CsvSchema::localerr: return {"m", "h", "mc_diff", "mc_stderr", "predicted"};
  }
  throw std::invalid_argument("unknown CSV schema");
}

std::vector<std::string> run_metadata(const RunConfig& cfg, const Problem& problem,
                                      const std::string& experiment) {
  std::vector<std::string> meta{"experiment=" + experiment};
  for (auto& line : cfg.describe()) meta.push_back(std::move(line));
  for (auto& line : problem.describe()) meta.push_back("constant " + line);
  if (!cfg.deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta.push_back(std::string("generated=") + buf);
  }
  return meta;
}

CsvTable drift_table(const DriftTrace& trace) {
  CsvTable table;
  table.header = schema_columns(CsvSchema::drift, static_cast<int>(trace.defect_names.size()));
  table.metadata.push_back("defects=" + [&] {
    std::string s;
    for (std::size_t k = 0; k < trace.defect_names.size(); ++k) {
      s += (k ? "," : "") + trace.defect_names[k];
    }
    return s;
  }());
  table.rows.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    std::vector<std::string> cells{std::to_string(row.path), std::string(method_name(row.method)),
                                   format_double(row.t)};
    for (double d : row.defects) cells.push_back(format_double(d));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable converge_table(const ConvergeResult& result) {
  CsvTable table;
  table.header = schema_columns(CsvSchema::converge);
  table.metadata.push_back("reference=" + std::string(method_name(result.reference)) +
                           " h=" + format_double(result.reference_h) +
                           " mutual_rmse=" + format_double(result.reference_mutual_rmse));
  for (const auto& [m, s] : result.slopes) {
    table.metadata.push_back("slope " + std::string(method_name(m)) + "=" + format_double(s));
  }
  for (const auto& r : result.records) {
    table.rows.push_back({std::string(method_name(r.method)), format_double(r.h),
                          format_double(r.rmse), format_double(r.std_error),
                          std::to_string(r.paths)});
  }
  return table;
}

CsvTable uniform_table(const std::vector<UniformRecord>& records) {
  CsvTable table;
  table.header = schema_columns(CsvSchema::uniform);
  for (const auto& r : records) {
    table.rows.push_back({std::string(variant_name(r.variant)), format_double(r.h),
                          format_double(r.rmse_ls), format_double(r.rmse_st),
                          format_double(r.paired_diff), format_double(r.paired_stderr)});
  }
  return table;
}

CsvTable localerr_table(const std::vector<LocalErrRecord>& records) {
  CsvTable table;
  table.header = schema_columns(CsvSchema::localerr);
  table.metadata.push_back("predicted = h^(2m+1) U^T b U (+ h^4/16 |mean term|^2 for m=1); "
                           "the alternative exponent h^(2m) is not used");
  for (const auto& r : records) {
    table.rows.push_back({std::string(variant_name(r.m)), format_double(r.h),
                          format_double(r.mc_diff), format_double(r.mc_stderr),
                          format_double(r.predicted)});
  }
  return table;
}

}  // namespace liesde
