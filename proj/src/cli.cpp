#include "liesde/cli.hpp"

#include "liesde/harness.hpp"
#include "liesde/problems.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace liesde {

namespace {

struct Flags {
  std::string problem = "rigidbody";
  std::vector<std::string> methods;
  std::vector<std::string> variants;
  std::string h;
  double T = 1.0;
  int paths = 1;
  int levels = 1;
  std::uint64_t seed = 0;
  int threads = 0;
  bool normalize = false;
  bool include_diagonal_half = false;
  int ode_substeps = 0;
  int dexpinv_order = 1;
  int reference_refinement = 6;
  bool max_over_time = false;
  std::uint32_t path = 0;
  std::string out;
  bool deterministic = false;
};

struct Options {
  CLI::Option* problem;
  CLI::Option* methods;
  CLI::Option* variants;
  CLI::Option* h;
  CLI::Option* T;
  CLI::Option* paths;
  CLI::Option* levels;
};

// Where CSV and binary output goes: a file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open output '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write to '" + (path_.empty() ? "-" : path_) + "' failed");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

RunConfig make_config(const Flags& f) {
  RunConfig cfg;
  cfg.problem = f.problem;
  cfg.normalize = f.normalize;
  for (const auto& name : f.methods) cfg.methods.push_back(parse_method(name));
  cfg.options.include_diagonal_half = f.include_diagonal_half;
  cfg.options.ode_substeps = f.ode_substeps;
  cfg.options.dexpinv_order = f.dexpinv_order;
  cfg.h = parse_step(f.h);
  cfg.T = f.T;
  cfg.paths = f.paths;
  cfg.seed = f.seed;
  cfg.levels = f.levels;
  cfg.reference_refinement = f.reference_refinement;
  cfg.threads = f.threads;
  cfg.max_over_time = f.max_over_time;
  cfg.deterministic = f.deterministic;
  cfg.out = f.out;
  return cfg;
}

void default_if_unset(CLI::Option* opt, auto& target, auto value) {
  if (opt->count() == 0) target = value;
}

void write_table(CsvTable table, const RunConfig& cfg, const Problem& problem,
                 const std::string& experiment, Sink& sink) {
  auto meta = run_metadata(cfg, problem, experiment);
  meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
  table.metadata = std::move(meta);
  write_csv(sink.stream(), table);
  sink.finish();
}

int run_drift_cmd(Flags& f, const Options& o, bool casimir, std::ostream& out) {
  if (casimir) {
    if (o.problem->count() && f.problem != "auv") {
      throw std::invalid_argument("casimir runs on the auv problem only");
    }
    f.problem = "auv";
    default_if_unset(o.methods, f.methods, std::vector<std::string>{"mk1", "st1"});
    default_if_unset(o.h, f.h, std::string("0.05"));
    default_if_unset(o.T, f.T, 20.0);
  } else {
    default_if_unset(o.methods, f.methods, std::vector<std::string>{"mk1"});
    default_if_unset(o.h, f.h, std::string("0.01"));
    default_if_unset(o.T, f.T, 10.0);
  }
  default_if_unset(o.paths, f.paths, 16);
  const RunConfig cfg = make_config(f);
  const auto problem = make_problem(cfg.problem, cfg.normalize);
  Sink sink(cfg.out, out);
  write_table(drift_table(run_drift(cfg, *problem)), cfg, *problem, casimir ? "casimir" : "drift",
              sink);
  return 0;
}

int run_converge_cmd(Flags& f, const Options& o, std::ostream& out, std::ostream& err) {
  const auto probe = make_problem(f.problem, f.normalize);
  if (probe->channels() == 1) {
    default_if_unset(o.methods, f.methods, std::vector<std::string>{"st32", "uls32"});
  } else {
    default_if_unset(o.methods, f.methods, std::vector<std::string>{"sthalf", "st1", "mk1", "cg1"});
  }
  default_if_unset(o.h, f.h, std::string("2^-4"));
  default_if_unset(o.levels, f.levels, 5);
  default_if_unset(o.paths, f.paths, 1000);
  const RunConfig cfg = make_config(f);
  const auto problem = make_problem(cfg.problem, cfg.normalize);
  Sink sink(cfg.out, out);
  const ConvergeResult result = run_converge(cfg, *problem);
  write_table(converge_table(result), cfg, *problem, "converge", sink);
  std::ostringstream line;
  line << "slopes:";
  for (const auto& [m, s] : result.slopes) line << ' ' << method_name(m) << '=' << format_double(s);
  line << " reference=" << method_name(result.reference)
       << " reference_mutual_rmse=" << format_double(result.reference_mutual_rmse) << '\n';
  (sink.is_file() ? out : err) << line.str();
  return 0;
}

int run_uniform_cmd(Flags& f, const Options& o, std::ostream& out) {
  const auto probe = make_problem(f.problem, f.normalize);
  default_if_unset(o.variants, f.variants,
                   std::vector<std::string>{probe->channels() == 2 ? "1/2" : "1"});
  default_if_unset(o.h, f.h, std::string("2^-4"));
  default_if_unset(o.levels, f.levels, 5);
  default_if_unset(o.paths, f.paths, 2000);
  const RunConfig cfg = make_config(f);
  const auto problem = make_problem(cfg.problem, cfg.normalize);
  Sink sink(cfg.out, out);
  std::vector<UniformRecord> records;
  for (const auto& v : f.variants) {
    auto part = run_uniform(cfg, *problem, parse_variant(v));
    records.insert(records.end(), part.begin(), part.end());
  }
  write_table(uniform_table(records), cfg, *problem, "uniform", sink);
  return 0;
}

int run_localerr_cmd(Flags& f, const Options& o, std::ostream& out) {
  const auto probe = make_problem(f.problem, f.normalize);
  if (probe->channels() == 2) {
    default_if_unset(o.variants, f.variants, std::vector<std::string>{"1/2", "1"});
  } else {
    default_if_unset(o.variants, f.variants, std::vector<std::string>{"1"});
  }
  default_if_unset(o.h, f.h, std::string("2^-6"));
  default_if_unset(o.paths, f.paths, 100000);
  const RunConfig cfg = make_config(f);
  const auto problem = make_problem(cfg.problem, cfg.normalize);
  Sink sink(cfg.out, out);
  std::vector<UniformVariant> orders;
  for (const auto& v : f.variants) orders.push_back(parse_variant(v));
  CsvTable table = localerr_table(run_localerr(cfg, *problem, orders));
  for (UniformVariant v : {UniformVariant::half, UniformVariant::one, UniformVariant::three_halves}) {
    table.metadata.push_back("min_eigenvalue b(" + std::string(variant_name(v)) +
                             ")=" + format_double(min_eigenvalue(remainder_weights(v))));
  }
  write_table(std::move(table), cfg, *problem, "localerr", sink);
  return 0;
}

int run_dump_cmd(Flags& f, const Options& o, std::ostream& out) {
  default_if_unset(o.h, f.h, std::string("0.01"));
  const RunConfig cfg = make_config(f);
  const auto problem = make_problem(cfg.problem, cfg.normalize);
  const int steps = cfg.steps();
  Sink sink(cfg.out, out);
  write_hierarchy(sink.stream(),
                  build_hierarchy(cfg.seed, f.path, cfg.T, steps, cfg.levels, problem->channels()));
  sink.finish();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic Lie-group integrators: experiments on homogeneous manifolds", "liesde"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  Flags f;
  Options o{};
  o.problem = app.add_option("--problem", f.problem, "rigidbody, rigidbody1 or auv")
                  ->check(CLI::IsMember({"rigidbody", "rigidbody1", "auv"}));
  o.methods = app.add_option("--method,--methods", f.methods,
                             "Comma-separated: sthalf st1 st32 mkhalf mk1 cghalf cg1 uls1 uls32")
                  ->delimiter(',');
  o.variants = app.add_option("--variant,--variants", f.variants, "Uniform-accuracy order: 1/2, 1, 3/2")
                   ->delimiter(',');
  o.h = app.add_option("--h", f.h, "Step size (decimal or 2^-k)");
  o.T = app.add_option("--T", f.T, "Final time");
  o.paths = app.add_option("--paths", f.paths, "Sample paths (samples for localerr)");
  o.levels = app.add_option("--levels", f.levels, "Dyadic levels h, h/2, ...");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  app.add_flag("--normalize", f.normalize, "Scale the rigid-body initial state to unit norm");
  app.add_flag("--include-diagonal-half", f.include_diagonal_half,
               "Add the J_ii V_i V_i terms to sthalf");
  app.add_option("--ode-substeps", f.ode_substeps, "RK4 substeps for Lie-series flows (0 = auto)");
  app.add_option("--dexpinv-order", f.dexpinv_order, "0 drops the bracket correction in mk1");
  app.add_option("--reference-refinement", f.reference_refinement,
                 "Reference grid is 2^k finer than the finest level");
  app.add_flag("--max-over-time", f.max_over_time, "Error as maximum over the coarse grid");
  app.add_option("--path", f.path, "Path index for dump-noise");
  app.add_option("--out", f.out, "Output file (default stdout)");
  app.add_flag("--deterministic", f.deterministic, "Omit the timestamp from metadata");

  auto* drift = app.add_subcommand("drift", "Manifold defect along sample paths")->fallthrough();
  auto* casimir = app.add_subcommand("casimir", "Drift on the auv problem")->fallthrough();
  auto* converge = app.add_subcommand("converge", "Strong RMS error against a fine reference")->fallthrough();
  auto* uniform = app.add_subcommand("uniform", "Lie series versus Taylor on shared noise")->fallthrough();
  auto* localerr = app.add_subcommand("localerr", "Local remainder moments")->fallthrough();
  auto* dump = app.add_subcommand("dump-noise", "Write one path's noise hierarchy")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*drift) return run_drift_cmd(f, o, false, out);
    if (*casimir) return run_drift_cmd(f, o, true, out);
    if (*converge) return run_converge_cmd(f, o, out, err);
    if (*uniform) return run_uniform_cmd(f, o, out);
    if (*localerr) return run_localerr_cmd(f, o, out);
    if (*dump) return run_dump_cmd(f, o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace liesde
