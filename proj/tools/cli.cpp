#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hermcap/capfile.hpp"
#include "hermcap/capstate.hpp"
#include "hermcap/errors.hpp"
#include "hermcap/harness.hpp"
#include "hermcap/hermitian.hpp"
#include "hermcap/search.hpp"
#include "hermcap/verify.hpp"

namespace hermcap::cli {

namespace {

SurfaceModel load_model(unsigned q) { return enumerate_surface(build_field(FieldSpec::from_q(q))); }

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

unsigned default_jobs() {
  if (const char* env = std::getenv("HERMCAP_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("HERMCAP_JOBS must be a positive integer");
  }
  return 1;
}

struct SearchFlags {
  std::string strategy = "random";
  std::string tie_mode = "max-count";
  unsigned depth = 0;
  std::size_t candidate_cap = 0;

  void attach(CLI::App* app) {
    app->add_option("--strategy", strategy, "random | min-relevance | forward | backtrack")->required();
    app->add_option("--tie-mode", tie_mode, "forward search ranking: max-count | min-count")
        ->capture_default_str();
    app->add_option("--depth", depth, "backtracking removal depth (0 = q)")->capture_default_str();
    app->add_option("--candidate-cap", candidate_cap, "forward search candidate limit (0 = unlimited)");
  }

  SearchConfig config() const {
    SearchConfig c;
    c.strategy = parse_strategy(strategy);
    c.forward_tie_mode = parse_tie_mode(tie_mode);
    c.backtrack_max_depth = depth;
    if (candidate_cap > 0) c.candidate_cap = candidate_cap;
    return c;
  }
};

int cmd_surface_info(unsigned q, bool verbose, std::ostream& out) {
  const auto model = load_model(q);
  const auto& gens = model.generators();
  out << "points=" << model.size() << " gx=" << model.tangent_size() << " generators=" << gens.size()
      << " per_point=" << model.generators_through(0).size() << " ovoid=" << model.classical_ovoid().size() << "\n";
  if (verbose) {
    const auto& f = model.field();
    out << "field=GF(" << f.order() << ") p=" << f.spec().p << " k=" << f.spec().k
        << " modulus=" << f.modulus_string() << " form=diagonal\n";
  }
  return kExitOk;
}

int cmd_verify(unsigned q, bool deep, const std::string& input, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
  const auto model = load_model(q);
  for (const auto& r : run_invariant_suite(model, deep, seed)) {
    if (!r.passed) {
      err << "FAIL " << r.name << ": " << r.detail << "\n";
      return kExitFailure;
    }
    out << "PASS " << r.name << "\n";
  }
  if (!input.empty()) {
    try {
      const auto file = read_cap_file(input);
      const auto ids = resolve_points(model, file);
      resolve_removed(model, file);
      out << "PASS capfile (" << ids.size() << " points)\n";
    } catch (const Error& e) {
      err << "FAIL capfile: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_complete(unsigned q, const SearchFlags& flags, const std::string& input, std::uint64_t seed,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  const auto model = load_model(q);
  SearchConfig config = flags.config();
  config.rng_seed = seed;
  std::vector<PointId> start;
  if (!input.empty()) start = resolve_points(model, read_cap_file(input));
  const auto outcome = complete(model, start, config);
  emit(out, output, serialize(make_cap_file(model, outcome.final_cap)));
  (output.empty() || output == "-" ? err : out)
      << "size=" << outcome.final_cap.size() << " is_ovoid=" << (outcome.is_ovoid ? "true" : "false")
      << " added=" << outcome.iterations << "\n";
  return kExitOk;
}

struct SpectrumFlags {
  SearchFlags search;
  std::size_t runs = 0;
  std::optional<std::size_t> seed_size;
  bool empty = false;
  std::string input;
  std::uint64_t master = 0;
  unsigned jobs = 0;
  std::string format = "csv";
  std::string out_path;
  std::string log_path;
  bool timing = false;
};

int cmd_spectrum(unsigned q, const SpectrumFlags& f, std::ostream& out, std::ostream& err) {
  const auto format = parse_histogram_format(f.format);
  const auto model = load_model(q);
  SeedSpec seed;
  if (f.seed_size)
    seed = SeedSpec::sub_ovoid(*f.seed_size);
  else if (!f.input.empty())
    seed = SeedSpec::from_points(f.input, resolve_points(model, read_cap_file(f.input)));
  if (seed.kind == SeedSpec::Kind::SubOvoid && seed.sub_ovoid_size > model.counts().ovoid_size)
    throw UsageError("--seed-size exceeds the ovoid size q^3+1");

  SpectrumOptions options;
  options.n_runs = f.runs;
  options.master_seed = f.master;
  options.jobs = f.jobs > 0 ? f.jobs : default_jobs();
  const auto result = run_spectrum(model, seed, f.search.config(), options);

  emit(out, f.out_path, emit_histogram(result.histogram, format));
  std::string log_path = f.log_path;
  if (log_path.empty() && !f.out_path.empty() && f.out_path != "-") log_path = f.out_path + ".runs.jsonl";
  if (!log_path.empty()) write_text_file(log_path, run_log_jsonl(result.records, f.timing));

  const auto gap = gap_check(q, result.records);
  err << "runs=" << result.histogram.total_runs << " mean=" << result.histogram.mean()
      << " mode=" << result.histogram.mode() << " ovoid_rate=" << result.histogram.percent(model.counts().ovoid_size)
      << "%\n";
  if (gap.consistent()) {
    err << "gap_check: no complete caps between q^3-q+1 and q^3+1\n";
  } else {
    for (const auto& [size, count] : gap.flagged) err << "gap_check: size " << size << " seen " << count << " times\n";
  }
  return kExitOk;
}

int cmd_ovoid(unsigned q, const std::string& output, std::ostream& out) {
  const auto model = load_model(q);
  emit(out, output, serialize(make_cap_file(model, model.classical_ovoid())));
  return kExitOk;
}

int cmd_thin(unsigned q, const std::string& input, std::uint64_t seed, const std::string& output,
             std::ostream& out, std::ostream& err) {
  const auto model = load_model(q);
  const auto ovoid = input.empty() ? model.classical_ovoid() : resolve_points(model, read_cap_file(input));
  Rng rng(seed);
  const auto thin = thin_ovoid(model, ovoid, rng);
  emit(out, output, serialize(make_cap_file(model, thin.kept, std::span<const PointId>(thin.removed))));
  (output.empty() || output == "-" ? err : out)
      << "kept=" << thin.kept.size() << " removed=" << thin.removed.size() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitian caps and ovoids of H(3,q^2)", "hermcap"};
  app.require_subcommand(1);

  unsigned q = 0;
  auto add_q = [&q](CLI::App* sub) { sub->add_option("--q", q, "prime power q (field GF(q^2))")->required(); };

  bool verbose = false;
  auto* info = app.add_subcommand("surface-info", "print counts of the surface configuration");
  add_q(info);
  info->add_flag("--verbose", verbose, "also print field metadata");

  bool deep = false;
  std::string input, output;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_q(verify);
  verify->add_flag("--deep", deep, "include generator enumeration and brute-force oracles");
  verify->add_option("--input", input, "also validate a cap file");
  verify->add_option("--seed", seed, "seed for sampled checks");

  SearchFlags search;
  auto* comp = app.add_subcommand("complete", "complete a cap");
  add_q(comp);
  search.attach(comp);
  comp->add_option("--input", input, "starting cap file (default: empty cap)");
  comp->add_option("--seed", seed, "RNG seed");
  comp->add_option("--output", output, "output cap file (default: stdout)");

  SpectrumFlags spec;
  auto* spectrum = app.add_subcommand("spectrum", "histogram of complete cap sizes over seeded runs");
  add_q(spectrum);
  spec.search.attach(spectrum);
  spectrum->add_option("--runs", spec.runs, "number of runs")->required()->check(CLI::PositiveNumber);
  auto* size_opt = spectrum->add_option("--seed-size", spec.seed_size, "random sub-ovoid of this size per run");
  auto* empty_opt = spectrum->add_flag("--empty", spec.empty, "start every run from the empty cap");
  auto* input_opt = spectrum->add_option("--input", spec.input, "fixed starting cap file for every run");
  size_opt->excludes(empty_opt)->excludes(input_opt);
  empty_opt->excludes(input_opt);
  spectrum->add_option("--master", spec.master, "master seed")->required();
  spectrum->add_option("--jobs", spec.jobs, "worker threads (default: $HERMCAP_JOBS or 1)");
  spectrum->add_option("--format", spec.format, "csv | json")->capture_default_str();
  spectrum->add_option("--out", spec.out_path, "histogram output path (default: stdout)");
  spectrum->add_option("--log", spec.log_path, "JSON-lines run log (default: <out>.runs.jsonl)");
  spectrum->add_flag("--timing", spec.timing, "include wall_time_ms in the run log");

  auto* ovoid = app.add_subcommand("ovoid", "write the classical ovoid");
  add_q(ovoid);
  ovoid->add_option("--output", output, "output cap file (default: stdout)");

  auto* thin = app.add_subcommand("thin", "remove q(q+1)/2 points from an ovoid keeping it the unique completion");
  add_q(thin);
  thin->add_option("--input", input, "ovoid cap file (default: classical ovoid)");
  thin->add_option("--seed", seed, "RNG seed");
  thin->add_option("--output", output, "output cap file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*spectrum && !spec.seed_size && !spec.empty && spec.input.empty())
      throw UsageError("spectrum needs one of --seed-size, --empty or --input");
    if (*info) return cmd_surface_info(q, verbose, out);
    if (*verify) return cmd_verify(q, deep, input, seed, out, err);
    if (*comp) return cmd_complete(q, search, input, seed, output, out, err);
    if (*spectrum) return cmd_spectrum(q, spec, out, err);
    if (*ovoid) return cmd_ovoid(q, output, out);
    if (*thin) return cmd_thin(q, input, seed, output, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hermcap::cli
