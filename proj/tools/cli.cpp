#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "w1fl/w1fl.hpp"

namespace w1fl::cli {

namespace {

/// Failed verification, reported with exit code 2.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { Auto, F64, Rational };

struct Sink {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << text;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool use_rational(Backend b, bool rational_default) {
  return b == Backend::Auto ? rational_default : b == Backend::Rational;
}

template <Scalar T>
T parse_nonnegative(const std::string& text, const char* what) {
  T v = ScalarTraits<T>::parse(text);
  if (v < T(0)) throw InvalidInput(std::string(what) + " must be non-negative");
  return v;
}

std::string summary_line(const EventCounts& c, std::size_t segments) {
  return "fuse=" + std::to_string(c.fuse) + " unfuse=" + std::to_string(c.unfuse) +
         " events=" + std::to_string(c.total()) + " segments=" + std::to_string(segments) + "\n";
}

std::string fmt(double v) { return ScalarTraits<double>::to_string(v); }

// ---- solve ----

struct SolveArgs {
  std::string instance, gamma, oracle = "dp";
};

template <Scalar T>
void solve_cmd(const RawInstance& raw, const SolveArgs& a, const Sink& sink) {
  const auto inst = to_instance<T>(raw);
  const T gamma = parse_nonnegative<T>(a.gamma, "gamma");
  std::vector<T> x;
  if (a.oracle == "dp") {
    x = solve_fixed_gamma_dp(inst, gamma);
  } else if (a.oracle == "qp") {
    x = x_from_w(solve_fixed_gamma_qp(to_dual(inst), gamma));
  } else {
    x = eval_x(solve_path(to_dual(inst)), gamma);
  }
  sink.write(json_array(x) + "\n");
}

// ---- path ----

template <Scalar T>
void path_cmd(const RawInstance& raw, const std::string& format, const Sink& sink, std::ostream& err) {
  const auto path = solve_path(to_dual(to_instance<T>(raw)));
  sink.write(format == "json" ? path_json(path) : events_csv(path));
  err << summary_line(event_counts(path), segment_count(path, true));
}

// ---- gen ----

std::string gen_cmd(const std::string& kind, std::size_t n, std::uint64_t seed) {
  if (kind == "worst-case") return instance_json(from_dual(gen_worst_case<Rational>(n)));
  if (kind == "random") return instance_json(gen_random<double>(n, seed));
  if (n == 0) throw InvalidInput("n must be at least 1");
  return instance_json(gen_1fl(draw_normals(n, seed)));
}

// ---- verify ----

template <Scalar T>
void verify_cmd(const RawInstance& raw, const std::string& path_file, std::size_t samples, std::ostream& out) {
  const auto inst = to_instance<T>(raw);
  const auto dual = to_dual(inst);
  const auto path = path_file.empty() ? solve_path(dual) : to_path<T>(parse_path_json(read_text(path_file)), dual);
  std::vector<PrimalOracle<T>> oracles{
      [&](const T& g) { return solve_fixed_gamma_dp(inst, g); },
      [&](const T& g) { return x_from_w(solve_fixed_gamma_qp(dual, g)); },
  };
  const auto rep = verify_path(dual, path, samples, oracles);
  const std::size_t n = inst.size();
  const bool ceiling = path.events.size() <= event_ceiling_tight(n);
  out << "backend=" << ScalarTraits<T>::name << " n=" << n << " events=" << path.events.size()
      << " samples=" << rep.samples_checked << "\n";
  out << "continuity=" << fmt(rep.continuity) << "\n";
  out << "feasibility=" << fmt(rep.feasibility) << "\n";
  out << "alignment=" << fmt(rep.alignment) << "\n";
  out << "optimality=" << fmt(rep.optimality) << "\n";
  out << "oracle=" << fmt(rep.oracle) << "\n";
  out << "ceiling=" << (ceiling ? "ok" : "exceeded") << "\n";
  out << "violation=" << fmt(rep.worst()) << "\n";
  const bool pass = rep.pass && ceiling;
  out << (pass ? "PASS" : "FAIL") << "\n";
  if (!pass) throw VerificationFailure("path failed verification");
}

// ---- convert ----

template <Scalar T>
void convert_cmd(const RawInstance& raw, const std::string& to, const std::string& value, const Sink& sink) {
  const auto path = solve_path(to_dual(to_instance<T>(raw)));
  const T v = parse_nonnegative<T>(value, "value");
  const T r = to == "penalized" ? constrained_to_penalized(path, v) : penalized_to_constrained(path, v);
  sink.write(to_string(r) + "\n");
}

// ---- events ----

struct EventsArgs {
  std::string family;
  std::vector<std::size_t> n;
  std::vector<std::size_t> n_range;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t samples = 1;
};

struct EventsRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  EventCounts counts;
  std::size_t segments = 0;
  std::string failure;
};

template <Scalar T>
EventsRow events_run(const std::string& family, std::size_t n, std::uint64_t seed, std::size_t samples) {
  EventsRow row;
  row.n = n;
  row.seed = seed;
  DualInstance<T> dual;
  if (family == "worst-case") {
    dual = gen_worst_case<T>(n);
  } else if (family == "random") {
    dual = to_dual(gen_random<T>(n, seed));
  } else {
    std::vector<T> y;
    for (double v : draw_normals(n, seed)) y.push_back(ScalarTraits<T>::from_double(v));
    dual = to_dual(gen_1fl(std::move(y)));
  }
  const auto path = solve_path(dual);
  row.counts = event_counts(path);
  row.segments = segment_count(path, true);
  if (path.events.size() > event_ceiling_tight(n)) row.failure = "event count above the quadratic ceiling";
  if (family == "1fl" && row.counts.unfuse != 0) row.failure = "unfuse event on a unit-weight instance";
  if (samples > 0 && row.failure.empty()) {
    const auto rep = verify_path(dual, path, samples);
    if (!rep.pass) row.failure = "verification violation " + fmt(rep.worst());
  }
  return row;
}

std::string events_cmd(const EventsArgs& a, Backend backend, std::ostream& err) {
  std::vector<std::size_t> ns = a.n;
  if (!a.n_range.empty()) {
    if (a.n_range.size() < 2 || a.n_range.size() > 3) throw InvalidInput("--n-range takes LO HI [STEP]");
    const std::size_t step = a.n_range.size() == 3 ? a.n_range[2] : 1;
    if (step == 0 || a.n_range[1] < a.n_range[0]) throw InvalidInput("invalid --n-range");
    for (std::size_t n = a.n_range[0]; n <= a.n_range[1]; n += step) ns.push_back(n);
  }
  if (ns.empty()) throw InvalidInput("events needs --n or --n-range");
  const std::size_t min_n = a.family == "worst-case" ? 3 : 1;
  for (std::size_t n : ns) {
    if (n < min_n) throw InvalidInput("n must be at least " + std::to_string(min_n) + " for family " + a.family);
  }
  if (a.seeds == 0) throw InvalidInput("--seeds must be positive");
  const bool rational = use_rational(backend, a.family == "worst-case");

  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n : ns) {
    for (std::size_t s = 0; s < a.seeds; ++s) jobs.emplace_back(n, a.seed + s);
  }
  std::vector<EventsRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const auto [n, seed] = jobs[j];
      try {
        rows[j] = rational ? events_run<Rational>(a.family, n, seed, a.samples)
                           : events_run<double>(a.family, n, seed, a.samples);
      } catch (const NumericalFailure& e) {
        rows[j].n = n;
        rows[j].seed = seed;
        rows[j].failure = e.what();
      }
    }
  };
  std::size_t threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "n,seed,fuse,unfuse,total,segments\n";
  bool failed = false;
  for (const auto& r : rows) {
    if (!r.failure.empty()) {
      failed = true;
      err << "n=" << r.n << " seed=" << r.seed << ": " << r.failure << "\n";
      continue;
    }
    csv += std::to_string(r.n) + "," + std::to_string(r.seed) + "," + std::to_string(r.counts.fuse) + "," +
           std::to_string(r.counts.unfuse) + "," + std::to_string(r.counts.total()) + "," +
           std::to_string(r.segments) + "\n";
  }
  if (failed) throw VerificationFailure(csv);
  return csv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solution paths of the weighted 1-D fused lasso", "w1fl"};
  app.require_subcommand(1);

  Backend backend = Backend::Auto;
  const std::map<std::string, Backend> backends{{"f64", Backend::F64}, {"rational", Backend::Rational}};
  std::string output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--backend", backend, "Scalar backend: f64 or rational")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
    sub->add_option("-o,--output", output, "Write the result to this file instead of standard output");
  };

  SolveArgs solve;
  auto* solve_app = app.add_subcommand("solve", "Solve at one gamma");
  solve_app->add_option("instance", solve.instance, "Instance JSON file")->required();
  solve_app->add_option("--gamma", solve.gamma, "Regularization level")->required();
  solve_app->add_option("--oracle", solve.oracle, "dp, qp or path")->check(CLI::IsMember({"dp", "qp", "path"}));
  add_common(solve_app);

  std::string path_instance, format = "csv";
  auto* path_app = app.add_subcommand("path", "Trace the full solution path");
  path_app->add_option("instance", path_instance, "Instance JSON file")->required();
  path_app->add_option("--format", format, "csv (event log) or json (full path)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(path_app);

  std::string gen_kind;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  auto* gen_app = app.add_subcommand("gen", "Generate an instance");
  gen_app->add_option("kind", gen_kind, "worst-case, random or 1fl")
      ->required()
      ->check(CLI::IsMember({"worst-case", "random", "1fl"}));
  gen_app->add_option("--n", gen_n, "Number of observations")->required();
  gen_app->add_option("--seed", gen_seed, "Random seed");
  gen_app->add_option("-o,--output", output, "Write the instance to this file");

  EventsArgs ev;
  auto* events_app = app.add_subcommand("events", "Count events over an ensemble of instances");
  events_app->add_option("--family", ev.family, "worst-case, random or 1fl")
      ->required()
      ->check(CLI::IsMember({"worst-case", "random", "1fl"}));
  events_app->add_option("--n", ev.n, "Sizes (comma separated)")->delimiter(',');
  events_app->add_option("--n-range", ev.n_range, "LO HI [STEP]")->expected(2, 3);
  events_app->add_option("--seeds", ev.seeds, "Number of seeds per size");
  events_app->add_option("--seed", ev.seed, "First seed");
  events_app->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");
  events_app->add_option("--samples", ev.samples, "Verification samples per interval (0 = off)");
  add_common(events_app);

  std::string verify_instance, verify_path_file;
  std::size_t verify_samples = 4;
  auto* verify_app = app.add_subcommand("verify", "Check a path against the optimality conditions and both oracles");
  verify_app->add_option("instance", verify_instance, "Instance JSON file")->required();
  verify_app->add_option("--path", verify_path_file, "Check this path JSON instead of solving");
  verify_app->add_option("--samples", verify_samples, "Samples per interval and oracle sample count");
  verify_app->add_option("--backend", backend, "Scalar backend: f64 or rational")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));

  std::string convert_instance, convert_to, convert_value;
  auto* convert_app = app.add_subcommand("convert", "Map between penalized and constrained parameters");
  convert_app->add_option("instance", convert_instance, "Instance JSON file")->required();
  convert_app->add_option("--to", convert_to, "penalized (value is gamma~) or constrained (value is gamma)")
      ->required()
      ->check(CLI::IsMember({"penalized", "constrained"}));
  auto* value_opt = convert_app->add_option("--value", convert_value, "Parameter to convert");
  convert_app->add_option("--gamma", convert_value, "Alias of --value")->excludes(value_opt);
  add_common(convert_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    const Sink sink{out, output};
    if (solve_app->parsed()) {
      const auto raw = read_instance_file(solve.instance);
      if (use_rational(backend, raw.has_rational_strings)) {
        solve_cmd<Rational>(raw, solve, sink);
      } else {
        solve_cmd<double>(raw, solve, sink);
      }
    } else if (path_app->parsed()) {
      const auto raw = read_instance_file(path_instance);
      if (use_rational(backend, raw.has_rational_strings)) {
        path_cmd<Rational>(raw, format, sink, err);
      } else {
        path_cmd<double>(raw, format, sink, err);
      }
    } else if (gen_app->parsed()) {
      sink.write(gen_cmd(gen_kind, gen_n, gen_seed));
    } else if (events_app->parsed()) {
      try {
        sink.write(events_cmd(ev, backend, err));
      } catch (const VerificationFailure& e) {
        sink.write(e.what());
        throw VerificationFailure("one or more runs failed");
      }
    } else if (verify_app->parsed()) {
      const auto raw = read_instance_file(verify_instance);
      if (use_rational(backend, raw.has_rational_strings)) {
        verify_cmd<Rational>(raw, verify_path_file, verify_samples, out);
      } else {
        verify_cmd<double>(raw, verify_path_file, verify_samples, out);
      }
    } else if (convert_app->parsed()) {
      if (convert_value.empty()) throw InvalidInput("convert needs --value");
      const auto raw = read_instance_file(convert_instance);
      if (use_rational(backend, raw.has_rational_strings)) {
        convert_cmd<Rational>(raw, convert_to, convert_value, sink);
      } else {
        convert_cmd<double>(raw, convert_to, convert_value, sink);
      }
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace w1fl::cli
