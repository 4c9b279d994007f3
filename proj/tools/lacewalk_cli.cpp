// lacewalk command line front end: scalar sequence runs, CLT verification,
// lace combinatorics and self-avoiding walk Monte Carlo, with reproducible
// CSV/JSON emission (identical config -> byte-identical files).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lacewalk/bfamily.hpp"
#include "lacewalk/common.hpp"
#include "lacewalk/csv.hpp"
#include "lacewalk/lace.hpp"
#include "lacewalk/parallel.hpp"
#include "lacewalk/saw.hpp"
#include "lacewalk/sequence.hpp"
#include "lacewalk/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace lacewalk;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitStatistical = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;
  std::string format = "csv";
  bool dry_run = false;
};

ordered_json load_config(const CommonOpts& opts, const std::set<std::string>& allowed) {
  ordered_json cfg = ordered_json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw ValidationError("cannot open config file " + opts.config_path);
    in >> cfg;
    if (!cfg.is_object()) throw ValidationError("config root must be a JSON object");
    for (const auto& [key, _] : cfg.items())
      if (!allowed.contains(key)) throw ValidationError("unknown config key: " + key);
  }
  return cfg;
}

template <class T>
T get_or(const ordered_json& cfg, const std::string& key, T fallback) {
  if (cfg.contains(key)) return cfg.at(key).get<T>();
  return fallback;
}

BFamilySpec parse_family(const ordered_json& cfg, int dim, int n_max) {
  ordered_json fam = cfg.contains("family") ? cfg.at("family")
                                            : ordered_json{{"kind", "power_law"}, {"a", 2.5}};
  const std::string kind = fam.at("kind").get<std::string>();
  static const std::set<std::string> keys = {"kind", "a", "K", "beta", "t", "b", "bbar"};
  for (const auto& [key, _] : fam.items())
    if (!keys.contains(key)) throw ValidationError("unknown family key: " + key);
  if (kind == "power_law") return power_law_family(fam.value("a", 2.5), dim, n_max);
  if (kind == "saw_majorant") return saw_majorant_family(fam.value("K", 1.0), dim, n_max);
  if (kind == "single_mode")
    return single_mode_family(fam.value("beta", 0.5), fam.value("t", 1.0), dim, n_max);
  if (kind == "scalar") {
    auto b = fam.at("b").get<std::vector<double>>();
    auto bbar = fam.at("bbar").get<std::vector<double>>();
    if (static_cast<int>(b.size()) < n_max)
      throw ValidationError("scalar family shorter than n_max");
    return scalar_family(std::move(b), std::move(bbar), dim);
  }
  throw ValidationError("unknown family kind: " + kind);
}

std::vector<std::pair<std::string, std::string>> manifest_rows(const ordered_json& params) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [key, value] : params.items())
    rows.emplace_back(key, value.dump());
  return rows;
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file " + path.string());
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- seq ----

int cmd_seq(const CommonOpts& opts, const ordered_json& cfg) {
  const int dim = get_or(cfg, "dim", 5);
  const double lambda = get_or(cfg, "lambda", 0.0);
  const int n_max = get_or(cfg, "n_max", 64);
  const BFamilySpec family = parse_family(cfg, dim, n_max);
  const BScalars scalars = family.scalars(lambda);
  scalars.validate();
  if (opts.dry_run) return 0;

  const SequenceSolution sol = solve_sequence(scalars);

  ordered_json params{{"command", "seq"},       {"dim", dim},     {"lambda", lambda},
                      {"n_max", n_max},         {"family", family.name},
                      {"seed", opts.seed},      {"format", opts.format}};
  fs::create_directories(opts.out_dir);

  if (opts.format == "csv") {
    CsvWriter csv((fs::path(opts.out_dir) / "seq.csv").string(), manifest_rows(params),
                  {"n", "c_n", "a_n"});
    for (std::size_t n = 0; n < sol.c.size(); ++n)
      csv.row({CsvWriter::cell(static_cast<int>(n)), CsvWriter::cell(sol.c[n]),
               CsvWriter::cell(sol.a[n])});
  } else {
    ordered_json rows = ordered_json::array();
    for (std::size_t n = 0; n < sol.c.size(); ++n)
      rows.push_back({{"n", n}, {"c_n", sol.c[n]}, {"a_n", sol.a[n]}});
    write_json(fs::path(opts.out_dir) / "seq.json", {{"params", params}, {"rows", rows}});
  }

  ordered_json summary{{"params", params},
                       {"mu", sol.mu},
                       {"alpha", sol.alpha},
                       {"delta", sol.delta},
                       {"residual_mu", sol.residual_mu},
                       {"mu_tail_estimate", sol.mu_tail.estimate},
                       {"mu_tail_last_term", sol.mu_tail.last_term},
                       {"delta_num_tail_last_term", sol.delta_num_tail.last_term},
                       {"delta_den_tail_last_term", sol.delta_den_tail.last_term},
                       {"smallness_ok", sol.smallness_ok},
                       {"mu_iterations", sol.mu_iterations}};
  write_json(fs::path(opts.out_dir) / "seq_summary.json", summary);
  return 0;
}

// --------------------------------------------------------- verify-clt ----

int cmd_verify_clt(const CommonOpts& opts, const ordered_json& cfg) {
  SolverConfig sc;
  sc.dim = get_or(cfg, "dim", 5);
  sc.lambda = get_or(cfg, "lambda", 0.0);
  sc.epsilon = get_or(cfg, "epsilon", 0.01);
  sc.n_max = get_or(cfg, "n_max", 32);
  sc.validate();

  double k_max = 12.0;
  int nodes = 2048;
  if (cfg.contains("grid")) {
    k_max = cfg.at("grid").value("k_max", 12.0);
    nodes = cfg.at("grid").value("nodes", 2048);
  }
  sc.grid = RadialGrid::uniform(k_max, nodes);
  if (cfg.contains("radii")) {
    const auto& r = cfg.at("radii");
    sc.radii = geometric_grid(r.value("lo", 1e-2), r.at("hi").get<double>(),
                              r.value("points", 64));
  }
  std::vector<int> profile_n = get_or(cfg, "profile_n", std::vector<int>{sc.n_max});
  for (int n : profile_n)
    if (n < 1 || n > sc.n_max) throw ValidationError("profile_n entry out of range");

  const BFamilySpec family = parse_family(cfg, sc.dim, sc.n_max);
  if (!family.majorant)
    throw ValidationError("verify-clt requires a family with a declared envelope");
  if (opts.dry_run) return 0;

  const SolverRun run = run_recursion(sc, family);
  const RatioReport ratios = ratio_report(run, profile_n);

  ordered_json params{{"command", "verify-clt"}, {"dim", sc.dim},
                      {"lambda", sc.lambda},     {"epsilon", sc.epsilon},
                      {"n_max", sc.n_max},       {"family", family.name},
                      {"k_max", k_max},          {"nodes", nodes},
                      {"seed", opts.seed},       {"format", opts.format}};
  fs::create_directories(opts.out_dir);

  ordered_json json_rows = ordered_json::array();
  std::optional<CsvWriter> csv;
  if (opts.format == "csv")
    csv.emplace((fs::path(opts.out_dir) / "clt_profiles.csv").string(), manifest_rows(params),
                std::vector<std::string>{"n", "radius", "c_density", "gauss_ref", "error",
                                         "bound", "ratio"});
  const auto& seq = run.sequence();
  for (int n : profile_n) {
    const auto err = clt_error_profile(run, n);
    const auto bnd = bound_profile(run, n);
    for (std::size_t i = 0; i < run.config().radii.size(); ++i) {
      const double r = run.config().radii[i];
      const double dens = run.density(n, r) / seq.c[n];
      const double ref = gaussian_radial(sc.dim, n * seq.delta, r);
      const double ratio = bnd[i] > 0.0 ? err[i] / bnd[i] : 0.0;
      if (csv)
        csv->row({CsvWriter::cell(n), CsvWriter::cell(r), CsvWriter::cell(dens),
                  CsvWriter::cell(ref), CsvWriter::cell(err[i]), CsvWriter::cell(bnd[i]),
                  CsvWriter::cell(ratio)});
      else
        json_rows.push_back({{"n", n},
                             {"radius", r},
                             {"c_density", dens},
                             {"gauss_ref", ref},
                             {"error", err[i]},
                             {"bound", bnd[i]},
                             {"ratio", ratio}});
    }
  }
  if (!csv)
    write_json(fs::path(opts.out_dir) / "clt_profiles.json",
               {{"params", params}, {"rows", json_rows}});

  ordered_json ratio_json = ordered_json::array();
  for (std::size_t i = 0; i < ratios.n.size(); ++i)
    ratio_json.push_back({{"n", ratios.n[i]},
                          {"sup_ratio", ratios.sup_ratio[i]},
                          {"l1_error", ratios.l1_error[i]}});
  write_json(fs::path(opts.out_dir) / "clt_summary.json",
             ordered_json{{"params", params},
                          {"mu", seq.mu},
                          {"alpha", seq.alpha},
                          {"delta", seq.delta},
                          {"smallness_ok", seq.smallness_ok},
                          {"envelope_scale_ok", run.envelope_scale_ok()},
                          {"ratios", ratio_json},
                          {"condition_report",
                           ordered_json::parse(to_json_string(
                               condition_report(*family.majorant, std::max(4, sc.n_max))))}});
  return 0;
}

// --------------------------------------------------------------- lace ----

lace::Path random_gaussian_path(int dim, int steps, std::uint64_t seed, std::uint64_t index) {
  saw::PathSampler sampler(dim, steps, seed, 40);
  lace::Path p;
  sampler.generate(static_cast<std::int64_t>(index), p);
  return p;
}

int cmd_lace_enumerate(const CommonOpts& opts, const ordered_json& cfg) {
  const int N = get_or(cfg, "N", 2);
  const int n = get_or(cfg, "n", 5);
  if (opts.dry_run) return 0;
  const auto laces = lace::enumerate_laces(N, n);

  ordered_json params{{"command", "lace enumerate"}, {"N", N}, {"n", n},
                      {"seed", opts.seed},           {"format", opts.format}};
  fs::create_directories(opts.out_dir);
  if (opts.format == "csv") {
    CsvWriter csv((fs::path(opts.out_dir) / "lace_enumerate.csv").string(),
                  manifest_rows(params), {"index", "N", "n", "m_vector"});
    for (std::size_t i = 0; i < laces.size(); ++i) {
      std::string m;
      for (int v : laces[i].m_vector()) m += (m.empty() ? "" : " ") + std::to_string(v);
      csv.row({CsvWriter::cell(static_cast<int>(i)), CsvWriter::cell(N), CsvWriter::cell(n), m});
    }
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& l : laces) rows.push_back(l.m_vector());
    write_json(fs::path(opts.out_dir) / "lace_enumerate.json",
               {{"params", params}, {"count", laces.size()}, {"m_vectors", rows}});
  }
  return 0;
}

int cmd_lace_check(const CommonOpts& opts, const ordered_json& cfg) {
  const int dim = get_or(cfg, "dim", 3);
  const int n = get_or(cfg, "n", 5);
  const int paths = get_or(cfg, "paths", 100);
  const double rho = get_or(cfg, "rho", 1.0);
  std::vector<double> lambdas = get_or(cfg, "lambdas", std::vector<double>{0.3, 1.0});
  if (cfg.contains("lambda") && !cfg.contains("lambdas"))
    lambdas = {cfg.at("lambda").get<double>()};
  if (opts.dry_run) return 0;

  ordered_json params{{"command", "lace check"}, {"dim", dim},   {"n", n},
                      {"paths", paths},          {"rho", rho},   {"seed", opts.seed},
                      {"format", opts.format}};
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "lace_check.csv").string(), manifest_rows(params),
                {"n", "lambda", "rho", "seed", "max_residual"});
  for (double lambda : lambdas) {
    double worst = 0.0;
    for (int i = 0; i < paths; ++i) {
      const auto p = random_gaussian_path(dim, n, opts.seed, i);
      worst = std::max(worst, lace::recursion_residual(p, n, lambda, rho));
    }
    csv.row({CsvWriter::cell(n), CsvWriter::cell(lambda), CsvWriter::cell(rho),
             CsvWriter::cell(static_cast<long long>(opts.seed)), CsvWriter::cell(worst)});
  }
  return 0;
}

int cmd_lace_oracle(const CommonOpts& opts, const ordered_json& cfg) {
  const int dim = get_or(cfg, "dim", 3);
  const int n = get_or(cfg, "n", 5);
  const int paths = get_or(cfg, "paths", 100);
  const double rho = get_or(cfg, "rho", 1.0);
  const double lambda = get_or(cfg, "lambda", 0.3);
  if (opts.dry_run) return 0;

  ordered_json params{{"command", "lace oracle"}, {"dim", dim},       {"n", n},
                      {"paths", paths},           {"lambda", lambda}, {"rho", rho},
                      {"seed", opts.seed},        {"format", opts.format}};
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "lace_oracle.csv").string(), manifest_rows(params),
                {"path", "j_bruteforce", "j_lace", "abs_diff"});
  for (int i = 0; i < paths; ++i) {
    const auto p = random_gaussian_path(dim, n, opts.seed, i);
    const double jb = lace::j_weight_bruteforce(p, n, lambda, rho);
    const double jl = lace::j_weight_lace(p, n, lambda, rho);
    csv.row({CsvWriter::cell(i), CsvWriter::cell(jb), CsvWriter::cell(jl),
             CsvWriter::cell(std::abs(jb - jl))});
  }
  return 0;
}

// ---------------------------------------------------------------- saw ----

saw::SawParams saw_params_from(const ordered_json& cfg, const CommonOpts& opts) {
  saw::SawParams p;
  p.dim = get_or(cfg, "dim", 5);
  p.lambda = get_or(cfg, "lambda", 0.1);
  p.rho = get_or(cfg, "rho", 1.0);
  p.n = get_or(cfg, "n", 5);
  p.n_samples = get_or(cfg, "n_samples", static_cast<std::int64_t>(100000));
  p.seed = opts.seed;
  p.validate();
  return p;
}

// threads are an execution knob, not an experiment parameter: they are
// deliberately left out so reruns stay byte-identical across worker counts
ordered_json saw_manifest(const char* command, const saw::SawParams& p, const CommonOpts& opts) {
  return ordered_json{{"command", command}, {"dim", p.dim},
                      {"lambda", p.lambda}, {"rho", p.rho},
                      {"n", p.n},           {"n_samples", p.n_samples},
                      {"seed", p.seed},     {"format", opts.format}};
}

void saw_csv_rows(CsvWriter& csv, const std::string& observable, int n, double x,
                  const McEstimate& e, std::uint64_t seed) {
  csv.row({observable, CsvWriter::cell(n), CsvWriter::cell(x), CsvWriter::cell(e.mean),
           CsvWriter::cell(e.std_err), CsvWriter::cell(static_cast<long long>(e.n_samples)),
           CsvWriter::cell(static_cast<long long>(seed))});
}

const std::vector<std::string> kSawColumns = {"observable", "n_or_m", "k_or_radius",
                                              "mean",       "stderr", "n_samples", "seed"};

int cmd_saw_cn(const CommonOpts& opts, const ordered_json& cfg) {
  const saw::SawParams p = saw_params_from(cfg, opts);
  if (opts.dry_run) return 0;
  const auto estimates = saw::estimate_cn_prefixes(p);
  const ordered_json params = saw_manifest("saw cn", p, opts);
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "saw_cn.csv").string(), manifest_rows(params),
                kSawColumns);
  for (int m = 1; m <= p.n; ++m) saw_csv_rows(csv, "cn_saw", m, 0.0, estimates[m - 1], p.seed);
  write_json(fs::path(opts.out_dir) / "saw_manifest.json", params);
  return 0;
}

int cmd_saw_pi(const CommonOpts& opts, const ordered_json& cfg) {
  const saw::SawParams p = saw_params_from(cfg, opts);
  const int m_max = std::min(get_or(cfg, "m_max", std::min(p.n, 5)), 6);
  if (opts.dry_run) return 0;
  const ordered_json params = saw_manifest("saw pi", p, opts);
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "saw_pi.csv").string(), manifest_rows(params),
                kSawColumns);
  for (int m = 1; m <= m_max; ++m) {
    saw::SawParams pm = p;
    pm.n = m;
    const auto mom = saw::estimate_pi_moments(pm, m);
    saw_csv_rows(csv, "pi", m, 0.0, mom.pi, p.seed);
    saw_csv_rows(csv, "pi_bar", m, 0.0, mom.pi_bar, p.seed);
  }
  write_json(fs::path(opts.out_dir) / "saw_manifest.json", params);
  return 0;
}

int cmd_saw_density(const CommonOpts& opts, const ordered_json& cfg) {
  const saw::SawParams p = saw_params_from(cfg, opts);
  std::vector<double> radii;
  if (cfg.contains("radii")) {
    const auto& r = cfg.at("radii");
    radii = geometric_grid(r.value("lo", 1.0), r.at("hi").get<double>(), r.value("points", 8));
  } else {
    radii = geometric_grid(1.0, 3.0 * std::sqrt(static_cast<double>(p.n)), 8);
  }
  if (opts.dry_run) return 0;
  const auto est = saw::estimate_endpoint_density(p, radii);
  ordered_json params = saw_manifest("saw density", p, opts);
  params["bandwidth"] = est.bandwidth;
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "saw_density.csv").string(), manifest_rows(params),
                kSawColumns);
  for (std::size_t i = 0; i < est.radii.size(); ++i)
    saw_csv_rows(csv, "density", p.n, est.radii[i], est.value[i], p.seed);
  write_json(fs::path(opts.out_dir) / "saw_manifest.json", params);
  return 0;
}

int cmd_saw_crosscheck(const CommonOpts& opts, const ordered_json& cfg) {
  saw::SawParams p = saw_params_from(cfg, opts);
  const int m_max = std::min(get_or(cfg, "m_max", 5), 6);
  p.n = m_max;
  int nodes = 256;
  double k_max = 12.0;
  if (cfg.contains("grid")) {
    nodes = cfg.at("grid").value("nodes", 256);
    k_max = cfg.at("grid").value("k_max", 12.0);
  }
  if (opts.dry_run) return 0;

  const auto cc =
      saw::cross_check_recursion(p, m_max, RadialGrid::uniform(k_max, nodes), {});
  ordered_json params = saw_manifest("saw crosscheck", p, opts);
  params["m_max"] = m_max;
  params["nodes"] = nodes;
  params["k_max"] = k_max;
  fs::create_directories(opts.out_dir);
  CsvWriter csv((fs::path(opts.out_dir) / "saw_crosscheck.csv").string(), manifest_rows(params),
                {"observable", "n", "solver", "mc_mean", "mc_stderr", "z"});
  for (int n = 1; n <= m_max; ++n) {
    csv.row({"cn", CsvWriter::cell(n), CsvWriter::cell(cc.solver_c[n]),
             CsvWriter::cell(cc.cn_target[n - 1].mean),
             CsvWriter::cell(cc.cn_target[n - 1].std_err), CsvWriter::cell(cc.z_cn[n])});
  }
  for (std::size_t q = 0; q < cc.density_mc.radii.size(); ++q) {
    csv.row({"density_r=" + format_full(cc.density_mc.radii[q]), CsvWriter::cell(m_max),
             CsvWriter::cell(cc.density_solver[q]), CsvWriter::cell(cc.density_mc.value[q].mean),
             CsvWriter::cell(cc.density_mc.value[q].std_err), CsvWriter::cell(cc.z_density[q])});
  }

  ordered_json summary{{"params", params},
                       {"mu_hat", cc.mu_hat},
                       {"delta_hat", cc.delta_hat},
                       {"b", cc.b},
                       {"bbar", cc.bbar},
                       {"z_cn", std::vector<double>(cc.z_cn.begin() + 1, cc.z_cn.end())},
                       {"max_abs_z_cn", cc.max_abs_z}};
  write_json(fs::path(opts.out_dir) / "saw_manifest.json", summary);

  if (cc.max_abs_z > 5.0) {
    std::cerr << "statistical failure: max |z| = " << cc.max_abs_z << "\n";
    return kExitStatistical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacewalk: convolution-equation CLT laboratory"};
  app.require_subcommand(1);

  CommonOpts opts;
  ordered_json flag_overrides = ordered_json::object();
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON config file");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--threads", opts.threads, "worker thread cap (0 = hardware)");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--dry-run", opts.dry_run, "validate config and write nothing");
    // numeric flag overrides; flags win over the config file
    for (const char* key : {"lambda", "rho", "epsilon"})
      cmd->add_option_function<double>(
          std::string("--") + key, [&flag_overrides, key](double v) { flag_overrides[key] = v; });
    for (const char* key : {"dim", "n", "n_max", "m_max", "N", "paths"})
      cmd->add_option_function<int>(
          std::string("--") + key, [&flag_overrides, key](int v) { flag_overrides[key] = v; });
    cmd->add_option_function<std::int64_t>("--n-samples", [&flag_overrides](std::int64_t v) {
      flag_overrides["n_samples"] = v;
    });
  };

  CLI::App* seq = app.add_subcommand("seq", "scalar sequence run");
  CLI::App* clt = app.add_subcommand("verify-clt", "frequency recursion vs Gaussian reference");
  CLI::App* lace_cmd = app.add_subcommand("lace", "lace combinatorics");
  CLI::App* lace_enum = lace_cmd->add_subcommand("enumerate", "list laces as m-vectors");
  CLI::App* lace_check = lace_cmd->add_subcommand("check", "recursion identity residuals");
  CLI::App* lace_oracle = lace_cmd->add_subcommand("oracle", "brute force vs lace resummation");
  CLI::App* saw_cmd = app.add_subcommand("saw", "self-avoiding walk Monte Carlo");
  CLI::App* saw_cn = saw_cmd->add_subcommand("cn", "walk normalization estimates");
  CLI::App* saw_pi = saw_cmd->add_subcommand("pi", "interaction kernel moments");
  CLI::App* saw_density = saw_cmd->add_subcommand("density", "endpoint density estimates");
  CLI::App* saw_cross = saw_cmd->add_subcommand("crosscheck", "solver vs Monte Carlo");
  lace_cmd->require_subcommand(1);
  saw_cmd->require_subcommand(1);
  for (CLI::App* c : {seq, clt, lace_enum, lace_check, lace_oracle, saw_cn, saw_pi, saw_density,
                      saw_cross})
    add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  set_max_threads(opts.threads);

  try {
    auto with_overrides = [&](const std::set<std::string>& allowed) {
      ordered_json cfg = load_config(opts, allowed);
      for (const auto& [k, v] : flag_overrides.items())
        if (allowed.contains(k)) cfg[k] = v;
      return cfg;
    };
    static const std::set<std::string> lace_keys = {"dim", "n", "N", "paths", "lambda",
                                                    "lambdas", "rho"};
    static const std::set<std::string> saw_keys = {"dim",   "lambda",    "rho",  "n",
                                                   "m_max", "n_samples", "grid", "radii"};
    static const std::set<std::string> seq_keys = {"dim", "lambda", "n_max", "family"};
    static const std::set<std::string> clt_keys = {"dim",    "lambda", "epsilon",
                                                   "n_max",  "family", "grid",
                                                   "radii",  "profile_n"};
    if (seq->parsed()) return cmd_seq(opts, with_overrides(seq_keys));
    if (clt->parsed()) return cmd_verify_clt(opts, with_overrides(clt_keys));
    if (lace_enum->parsed()) return cmd_lace_enumerate(opts, with_overrides(lace_keys));
    if (lace_check->parsed()) return cmd_lace_check(opts, with_overrides(lace_keys));
    if (lace_oracle->parsed()) return cmd_lace_oracle(opts, with_overrides(lace_keys));
    if (saw_cn->parsed()) return cmd_saw_cn(opts, with_overrides(saw_keys));
    if (saw_pi->parsed()) return cmd_saw_pi(opts, with_overrides(saw_keys));
    if (saw_density->parsed()) return cmd_saw_density(opts, with_overrides(saw_keys));
    if (saw_cross->parsed()) return cmd_saw_crosscheck(opts, with_overrides(saw_keys));
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}
