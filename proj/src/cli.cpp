#include "ietlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "ietlab/serialize.hpp"

namespace ietlab {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string arith = "rational";
  long long budget = 1000000;

  std::string lengths;  // comma-separated scalars; empty -> random IET
  std::string perm;     // comma-separated images
  int random_n = 4;

  std::string backend = "su2";
  int torus_dim = 2;
  std::string tuple;  // elements ';'-separated, coordinates ','-separated; "identity" allowed

  std::string rep;  // label like "char:1" or "spin:1/2"; empty -> backend default

  long depth = 10;
  long N = 10000;
  long M = 1000;
  long A = 2048;
  int samples = 50;
  int seeds = 10;
  int jobs = 0;
  std::string epsilon;
  std::string tolerance;
  bool inject_fault = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

Permutation parse_perm(const std::string& csv) {
  std::vector<int> images;
  for (const auto& item : split(csv, ',')) {
    try {
      images.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("perm: cannot parse '" + item + "'");
    }
  }
  return Permutation(std::move(images));
}

template <class S>
std::vector<S> parse_lengths(const std::string& csv) {
  std::vector<S> out;
  for (const auto& item : split(csv, ',')) {
    auto v = scalar_parse<S>(item);
    if (!v) throw ValidationError("lengths: cannot parse '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

Permutation random_irreducible_perm(int n, RngStream& rng) {
  if (n < 2) throw ValidationError("random IET needs n >= 2");
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i)
      std::swap(img[static_cast<std::size_t>(i)],
                img[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
    Permutation perm(img);
    if (validate_irreducible(perm)) return perm;
  }
  throw ValidationError("could not sample an irreducible permutation");
}

// Random rational point of the simplex: 64-bit numerators over their sum,
// so |lambda| = 1 exactly in rational mode.
template <class S>
Iet<S> random_iet(int n, RngStream& rng) {
  Permutation perm = random_irreducible_perm(n, rng);
  std::vector<Rational> numerators;
  Rational sum(0);
  for (int i = 0; i < n; ++i) {
    Rational v = Rational::from_u64(rng.u64() | 1);
    sum += v;
    numerators.push_back(std::move(v));
  }
  std::vector<S> lengths;
  lengths.reserve(static_cast<std::size_t>(n));
  for (const Rational& v : numerators) {
    Rational frac = v / sum;
    if constexpr (ArithTraits<S>::exact)
      lengths.push_back(frac);
    else
      lengths.push_back(frac.to_double());
  }
  return Iet<S>(std::move(lengths), std::move(perm));
}

template <class S>
Iet<S> make_iet(const Options& opt, RngStream& rng) {
  if (!opt.lengths.empty() || !opt.perm.empty()) {
    if (opt.lengths.empty() || opt.perm.empty())
      throw ValidationError("provide both --lengths and --perm, or neither");
    return Iet<S>(parse_lengths<S>(opt.lengths), parse_perm(opt.perm));
  }
  return random_iet<S>(opt.random_n, rng);
}

GroupElement parse_element(Backend b, const std::string& spec, int torus_dim) {
  const auto coords = split(spec, ',');
  switch (b) {
    case Backend::U1:
    case Backend::Torus: {
      const std::size_t want = b == Backend::U1 ? 1 : static_cast<std::size_t>(torus_dim);
      if (coords.size() != want)
        throw ValidationError("tuple element '" + spec + "': expected " + std::to_string(want) + " angle(s)");
      std::vector<Rational> angles;
      for (const auto& c : coords) {
        auto r = Rational::parse(c);
        if (!r) throw ValidationError("tuple: cannot parse angle '" + c + "'");
        angles.push_back(*r);
      }
      return b == Backend::U1 ? GroupElement::u1(angles[0]) : GroupElement::torus(std::move(angles));
    }
    case Backend::SU2:
    case Backend::SO3: {
      if (coords.size() != 4)
        throw ValidationError("tuple element '" + spec + "': expected 4 quaternion coordinates");
      std::array<double, 4> q{};
      for (int i = 0; i < 4; ++i) {
        auto v = scalar_parse<double>(coords[static_cast<std::size_t>(i)]);
        if (!v) throw ValidationError("tuple: cannot parse coordinate '" + coords[static_cast<std::size_t>(i)] + "'");
        q[static_cast<std::size_t>(i)] = *v;
      }
      return b == Backend::SU2 ? GroupElement::su2(q[0], q[1], q[2], q[3])
                               : GroupElement::so3(q[0], q[1], q[2], q[3]);
    }
  }
  throw ValidationError("bad backend");
}

GTuple make_tuple(const Options& opt, int n, RngStream& rng) {
  const Backend b = backend_from_string(opt.backend);
  if (opt.tuple == "identity") return identity_tuple(b, n, opt.torus_dim);
  if (!opt.tuple.empty()) {
    std::vector<GroupElement> elems;
    for (const auto& part : split(opt.tuple, ';')) elems.push_back(parse_element(b, part, opt.torus_dim));
    if (static_cast<int>(elems.size()) != n)
      throw ValidationError("tuple has " + std::to_string(elems.size()) + " elements, IET has n=" + std::to_string(n));
    return GTuple(std::move(elems));
  }
  return haar_tuple(b, n, rng, opt.torus_dim);
}

Representation make_rep(const Options& opt) {
  const Backend b = backend_from_string(opt.backend);
  if (!opt.rep.empty()) {
    auto rep = Representation::parse(b, opt.rep);
    if (!rep) throw ValidationError("cannot parse representation label '" + opt.rep + "' for backend " + opt.backend);
    return *rep;
  }
  switch (b) {
    case Backend::U1: return Representation::u1_char(1);
    case Backend::Torus: {
      std::vector<long> p(static_cast<std::size_t>(opt.torus_dim), 0);
      p[0] = 1;
      return Representation::torus_char(std::move(p));
    }
    case Backend::SU2: return Representation::spin(Backend::SU2, 1);
    case Backend::SO3: return Representation::spin(Backend::SO3, 2);
  }
  throw ValidationError("bad backend");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file " + path.string());
  f << content;
}

json manifest_base(const Options& opt, const std::string& command) {
  json m;
  m["command"] = command;
  m["seed"] = opt.seed;
  m["arithmetic"] = opt.arith;
  m["budget"] = opt.budget;
  return m;
}

double parse_tolerance_or(const std::string& text, double fallback) {
  if (text.empty()) return fallback;
  auto v = scalar_parse<double>(text);
  if (!v) throw ValidationError("cannot parse tolerance '" + text + "'");
  return *v;
}

// ---- commands ----------------------------------------------------------

template <class S>
int run_induct(const Options& opt) {
  RngStream iet_rng(opt.seed, "iet");
  Iet<S> iet = make_iet<S>(opt, iet_rng);

  std::optional<S> eps;
  if (!opt.epsilon.empty()) {
    auto v = scalar_parse<S>(opt.epsilon);
    if (!v) throw ValidationError("cannot parse epsilon '" + opt.epsilon + "'");
    eps = *v;
  }

  InductionTrace<S> trace;
  try {
    trace = induction_orbit(iet, opt.depth, eps, opt.budget);
  } catch (const BudgetError& e) {
    std::cerr << "induct: " << e.what() << "\n";
    return 2;
  }

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  write_file(out / "trace.csv", trace_csv(trace));
  write_file(out / "trace.jsonl", trace_jsonl(trace));

  json manifest = manifest_base(opt, "induct");
  manifest["iet"] = iet_to_json(iet);
  manifest["parameters"] = {{"depth", opt.depth}, {"epsilon", opt.epsilon}};
  manifest["outputs"] = {"trace.csv", "trace.jsonl"};
  manifest["steps"] = trace.depth();
  manifest["complete"] = !trace.degenerate_at.has_value();
  if (trace.degenerate_at) manifest["degenerate_at"] = *trace.degenerate_at;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  if (trace.degenerate_at && trace.depth() < opt.depth) {
    std::cout << "induct: degeneracy at step " << *trace.degenerate_at << ", trace is partial\n";
    return 3;
  }
  std::cout << "induct: wrote " << trace.depth() << " steps to " << (out / "trace.csv").string() << "\n";
  return 0;
}

template <class S>
int run_verify(const Options& opt) {
  RngStream iet_rng(opt.seed, "iet");
  Iet<S> iet = make_iet<S>(opt, iet_rng);
  RngStream tuple_rng(opt.seed, "tuple");
  GTuple tuple = make_tuple(opt, iet.n(), tuple_rng);
  SkewTriple<S> triple(iet, tuple);

  const Backend b = tuple.backend();
  const bool exact_fiber = ArithTraits<S>::exact && (b == Backend::U1 || b == Backend::Torus);
  const double tol = parse_tolerance_or(opt.tolerance, exact_fiber ? 0.0 : 1e-9);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);

  json manifest = manifest_base(opt, "verify");
  manifest["iet"] = iet_to_json(iet);
  manifest["tuple"] = tuple_to_json(tuple);
  manifest["parameters"] = {{"samples", opt.samples}, {"depth", opt.depth},
                            {"M", opt.M},             {"tolerance", tol},
                            {"inject_fault", opt.inject_fault}};

  RngStream sample_rng(opt.seed, "verify-samples");
  ConsistencyReport report;
  try {
    report = first_return_consistency(triple, opt.samples, opt.depth, sample_rng, opt.budget, opt.inject_fault);
  } catch (const DegeneracyError& e) {
    manifest["complete"] = false;
    manifest["error"] = e.what();
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
    std::cerr << "verify: " << e.what() << "\n";
    return 3;
  }

  RngStream haar_rng(opt.seed, "verify-haar");
  Representation rep = make_rep(opt);
  HaarInvarianceReport haar = haar_invariance_stat(b, iet.perm(), rep, opt.M, haar_rng, opt.torus_dim);

  const bool consistency_ok = report.max_fiber_dist <= tol && report.max_base_err <= tol &&
                              report.return_time_mismatches == 0;

  json rj = consistency_to_json(report);
  rj["tolerance"] = tol;
  rj["consistency_ok"] = consistency_ok;
  rj["haar_max_deviation_a"] = haar.max_deviation_a;
  rj["haar_max_deviation_b"] = haar.max_deviation_b;
  rj["haar_bound"] = haar.bound;
  rj["haar_ok"] = haar.pass();
  rj["rep"] = rep.label();
  write_file(out / "report.json", rj.dump(2) + "\n");

  manifest["outputs"] = {"report.json"};
  manifest["complete"] = true;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  if (!consistency_ok || !haar.pass()) {
    std::cout << "verify: FAIL (max_base_err=" << report.max_base_err
              << ", max_fiber_dist=" << report.max_fiber_dist
              << ", haar_dev=" << std::max(haar.max_deviation_a, haar.max_deviation_b) << ")\n";
    return 2;
  }
  std::cout << "verify: OK (max_fiber_dist=" << report.max_fiber_dist << ")\n";
  return 0;
}

template <class S>
int run_diagnose(const Options& opt) {
  RngStream iet_rng(opt.seed, "iet");
  Iet<S> iet = make_iet<S>(opt, iet_rng);
  RngStream tuple_rng(opt.seed, "tuple");
  GTuple tuple = make_tuple(opt, iet.n(), tuple_rng);
  SkewTriple<S> triple(iet, tuple);
  Representation rep = make_rep(opt);

  DefectTrajectory traj = defect_trajectory(triple, rep, opt.depth);

  RngStream cesaro_rng(opt.seed, "diagnose-cesaro");
  const double cesaro = cesaro_correlation(triple, rep, opt.N, opt.M, cesaro_rng);

  RngStream avg_rng(opt.seed, "diagnose-avg");
  MatrixAverage avg = matrix_coefficient_average(triple, rep, opt.N, opt.M, avg_rng);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  write_file(out / "trajectory.csv", trajectory_csv(traj));

  json rj;
  rj["rep"] = rep.label();
  rj["depth_requested"] = opt.depth;
  rj["depth_reached"] = static_cast<long>(traj.defect.size()) - 1;
  rj["min_defect"] = traj.min_defect();
  rj["final_defect"] = traj.defect.back();
  rj["cesaro_correlation"] = cesaro;
  rj["matrix_average_norm"] = avg.cesaro_norm;
  if (traj.degenerate_at) rj["degenerate_at"] = *traj.degenerate_at;
  write_file(out / "report.json", rj.dump(2) + "\n");

  json manifest = manifest_base(opt, "diagnose");
  manifest["iet"] = iet_to_json(iet);
  manifest["tuple"] = tuple_to_json(tuple);
  manifest["rep"] = rep_to_json(rep);
  manifest["parameters"] = {{"depth", opt.depth}, {"N", opt.N}, {"M", opt.M}};
  manifest["outputs"] = {"trajectory.csv", "report.json"};
  manifest["complete"] = !traj.degenerate_at.has_value();
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  if (traj.degenerate_at) {
    std::cout << "diagnose: degenerate at m=" << *traj.degenerate_at << ", partial trajectory written\n";
    return 3;
  }
  std::cout << "diagnose: min defect " << traj.min_defect() << ", cesaro " << cesaro << "\n";
  return 0;
}

template <class S>
int run_scan(const Options& opt) {
  RngStream iet_rng(opt.seed, "iet");
  Iet<S> iet = make_iet<S>(opt, iet_rng);
  RngStream tuple_rng(opt.seed, "tuple");
  GTuple tuple = make_tuple(opt, iet.n(), tuple_rng);
  SkewTriple<S> triple(iet, tuple);
  Representation rep = make_rep(opt);
  if (rep.dim() != 1) throw ValidationError("scan needs a one-dimensional character (e.g. --rep char:1)");

  RngStream mc_rng(opt.seed, "scan-mc");
  SpectralScan scan = eigenvalue_scan(triple, rep, opt.N, opt.A, opt.M, mc_rng);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  write_file(out / "scan.csv", scan_csv(scan));

  json rj;
  rj["rep"] = rep.label();
  rj["N"] = scan.N;
  rj["grid"] = scan.grid;
  rj["peak_index"] = scan.peak_index;
  rj["peak_value"] = scan.peak_value;
  rj["peak_turns"] = static_cast<double>(scan.peak_index) / static_cast<double>(scan.grid);
  write_file(out / "report.json", rj.dump(2) + "\n");

  json manifest = manifest_base(opt, "scan");
  manifest["iet"] = iet_to_json(iet);
  manifest["tuple"] = tuple_to_json(tuple);
  manifest["rep"] = rep_to_json(rep);
  manifest["parameters"] = {{"N", opt.N}, {"A", opt.A}, {"M", opt.M}};
  manifest["outputs"] = {"scan.csv", "report.json"};
  manifest["complete"] = true;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "scan: peak |D_N| = " << scan.peak_value << " at grid index " << scan.peak_index << "\n";
  return 0;
}

struct SweepTrial {
  bool ok = false;
  int attempts = 0;
  double min_defect = 0.0;
  double cesaro = 0.0;
  std::string error;
};

template <class S>
int run_sweep(const Options& opt) {
  const Backend b = backend_from_string(opt.backend);
  Representation rep = make_rep(opt);
  const int trials = opt.seeds;

  std::vector<SweepTrial> results(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};

  auto run_trial = [&](int trial) {
    SweepTrial r;
    for (int attempt = 0; attempt < 64; ++attempt) {
      r.attempts = attempt + 1;
      const std::uint64_t idx = static_cast<std::uint64_t>(trial) * 64 + static_cast<std::uint64_t>(attempt);
      try {
        RngStream iet_rng(opt.seed, "sweep-iet", idx);
        Iet<S> iet = random_iet<S>(opt.random_n, iet_rng);
        RngStream tuple_rng(opt.seed, "sweep-tuple", idx);
        GTuple tuple = haar_tuple(b, iet.n(), tuple_rng, opt.torus_dim);
        SkewTriple<S> triple(std::move(iet), std::move(tuple));

        DefectTrajectory traj = defect_trajectory(triple, rep, opt.depth);
        if (traj.degenerate_at) continue;  // tie: regenerate lambda

        RngStream cesaro_rng(opt.seed, "sweep-cesaro", static_cast<std::uint64_t>(trial));
        r.min_defect = traj.min_defect();
        r.cesaro = cesaro_correlation(triple, rep, opt.N, opt.M, cesaro_rng);
        r.ok = true;
        return r;
      } catch (const std::exception& e) {
        r.error = e.what();
        return r;
      }
    }
    r.error = "all regeneration attempts hit degeneracies";
    return r;
  };

  int jobs = opt.jobs > 0 ? opt.jobs
                          : static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  jobs = std::min(jobs, trials);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(std::max(jobs, 1)));
  for (int w = 0; w < std::max(jobs, 1); ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
        results[static_cast<std::size_t>(i)] = run_trial(i);
    });
  }
  for (auto& th : pool) th.join();

  std::vector<double> defects, cesaros;
  json per_trial = json::array();
  int failed = 0;
  for (int i = 0; i < trials; ++i) {
    const SweepTrial& r = results[static_cast<std::size_t>(i)];
    json row{{"trial", i}, {"attempts", r.attempts}, {"ok", r.ok}};
    if (r.ok) {
      row["min_defect"] = r.min_defect;
      row["cesaro"] = r.cesaro;
      defects.push_back(r.min_defect);
      cesaros.push_back(r.cesaro);
    } else {
      row["error"] = r.error;
      ++failed;
    }
    per_trial.push_back(std::move(row));
  }

  auto quantiles = [](std::vector<double> v) {
    json q;
    if (v.empty()) return q;
    std::sort(v.begin(), v.end());
    const double ps[] = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    const char* names[] = {"q00", "q10", "q25", "q50", "q75", "q90", "q100"};
    for (int i = 0; i < 7; ++i) {
      const std::size_t idx = static_cast<std::size_t>(ps[i] * static_cast<double>(v.size() - 1));
      q[names[i]] = v[idx];
    }
    return q;
  };

  auto fraction = [](const std::vector<double>& v, auto pred) {
    if (v.empty()) return 0.0;
    long c = std::count_if(v.begin(), v.end(), pred);
    return static_cast<double>(c) / static_cast<double>(v.size());
  };

  json sweep;
  sweep["trials"] = trials;
  sweep["failed"] = failed;
  sweep["rep"] = rep.label();
  sweep["min_defect_quantiles"] = quantiles(defects);
  sweep["cesaro_quantiles"] = quantiles(cesaros);
  // Report thresholds (not theorem claims): raw values are in per_trial.
  sweep["fraction_min_defect_above_1e-3"] = fraction(defects, [](double d) { return d > 1e-3; });
  sweep["fraction_cesaro_below_0.05"] = fraction(cesaros, [](double c) { return c < 0.05; });
  sweep["per_trial"] = std::move(per_trial);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  write_file(out / "sweep.json", sweep.dump(2) + "\n");

  json manifest = manifest_base(opt, "sweep");
  manifest["rep"] = rep_to_json(rep);
  manifest["parameters"] = {{"seeds", trials}, {"n", opt.random_n},     {"backend", opt.backend},
                            {"depth", opt.depth}, {"N", opt.N}, {"M", opt.M}};
  manifest["outputs"] = {"sweep.json"};
  manifest["complete"] = failed == 0;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "sweep: " << (trials - failed) << "/" << trials << " trials completed\n";
  return failed == 0 ? 0 : 3;
}

template <class S>
int dispatch(const std::string& command, const Options& opt) {
  if (command == "induct") return run_induct<S>(opt);
  if (command == "verify") return run_verify<S>(opt);
  if (command == "diagnose") return run_diagnose<S>(opt);
  if (command == "scan") return run_scan<S>(opt);
  if (command == "sweep") return run_sweep<S>(opt);
  throw ValidationError("unknown command " + command);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"ietlab: interval exchanges, extended Rauzy-Veech induction over compact groups, and weak-mixing diagnostics"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  app.set_config("--config", "", "INI/TOML config file; keys match option names");
  app.add_option("--seed", opt.seed, "top-level seed; every random quantity derives from it")->capture_default_str();
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  app.add_option("--arith", opt.arith, "arithmetic mode: rational | float")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_option("--budget", opt.budget, "iteration budget for return-time searches")->capture_default_str();
  app.add_option("--lengths", opt.lengths, "IET lengths, comma-separated (exact like 3/5 or decimal)");
  app.add_option("--perm", opt.perm, "IET permutation images, comma-separated");
  app.add_option("--random-n", opt.random_n, "number of intervals for a random IET")->capture_default_str();
  app.add_option("--backend", opt.backend, "group backend: u1 | torus | su2 | so3")
      ->check(CLI::IsMember({"u1", "torus", "su2", "so3"}))
      ->capture_default_str();
  app.add_option("--torus-dim", opt.torus_dim, "dimension k of the torus backend")->capture_default_str();
  app.add_option("--tuple", opt.tuple, "explicit tuple ('identity', or elements ';'-separated)");
  app.add_option("--rep", opt.rep, "representation label: char:p / char:p1,p2 / spin:j");

  auto* induct = app.add_subcommand("induct", "run Rauzy-Veech induction, write the trace");
  auto* induct_depth = induct->add_option("--depth", opt.depth, "number of induction steps (default 10)");
  induct->add_option("--epsilon", opt.epsilon, "epsilon for the P1/P2 columns (e.g. 1/100)");

  auto* verify = app.add_subcommand("verify", "first-return consistency oracle + Haar invariance statistic");
  verify->add_option("--samples", opt.samples, "sample points for the consistency oracle")->capture_default_str();
  auto* verify_depth = verify->add_option("--depth", opt.depth, "extended induction depth to verify against (default 1)");
  verify->add_option("--M", opt.M, "Monte Carlo samples for the Haar statistic")->capture_default_str();
  verify->add_option("--tolerance", opt.tolerance, "override the discrepancy tolerance");
  verify->add_flag("--inject-fault", opt.inject_fault, "test hook: corrupt the induced cocycle");

  auto* diagnose = app.add_subcommand("diagnose", "defect trajectory + correlation statistics");
  auto* diagnose_depth = diagnose->add_option("--depth", opt.depth, "extended induction depth (default 100)");
  diagnose->add_option("--N", opt.N, "time horizon")->capture_default_str();
  diagnose->add_option("--M", opt.M, "Monte Carlo samples")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "one-dimensional eigenvalue scan over the unit circle");
  scan->add_option("--N", opt.N, "time horizon")->capture_default_str();
  scan->add_option("--A", opt.A, "grid points on the circle")->capture_default_str();
  scan->add_option("--M", opt.M, "Monte Carlo samples")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "repeat diagnose over many seeds, aggregate quantiles");
  sweep->add_option("--seeds", opt.seeds, "number of trials")->capture_default_str();
  auto* sweep_depth = sweep->add_option("--depth", opt.depth, "extended induction depth per trial (default 100)");
  sweep->add_option("--N", opt.N, "time horizon")->capture_default_str();
  auto* sweep_m = sweep->add_option("--M", opt.M, "Monte Carlo samples (default 400)");
  sweep->add_option("--jobs", opt.jobs, "worker threads (0 = auto)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  // Per-command defaults for the shared knobs (one Options struct backs
  // every subcommand, so declaration-time defaults would clobber each
  // other).
  if (command == "induct" && induct_depth->count() == 0) opt.depth = 10;
  if (command == "verify" && verify_depth->count() == 0) opt.depth = 1;
  if (command == "diagnose" && diagnose_depth->count() == 0) opt.depth = 100;
  if (command == "sweep" && sweep_depth->count() == 0) opt.depth = 100;
  if (command == "sweep" && sweep_m->count() == 0) opt.M = 400;
  try {
    if (opt.arith == "rational") return dispatch<Rational>(command, opt);
    return dispatch<double>(command, opt);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const BackendMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ietlab
