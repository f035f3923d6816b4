#include "biharm/cli.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace biharm::cli {

namespace fs = std::filesystem;
using io::json;

int requested_threads() {
  if (const char* env = std::getenv("BIHARM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

namespace {

[[noreturn]] void bad_key(const std::string& where, const std::string& key) {
  throw schema_error("unknown key '" + key + "' in " + where);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw schema_error(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok) bad_key(where, it.key());
  }
}

double num_or(const json& obj, const char* key, double dflt) {
  if (!obj.contains(key)) return dflt;
  return obj.at(key).get<double>();
}
int int_or(const json& obj, const char* key, int dflt) {
  if (!obj.contains(key)) return dflt;
  return obj.at(key).get<int>();
}
vecd vec_or(const json& obj, const char* key, const vecd& dflt) {
  if (!obj.contains(key)) return dflt;
  return obj.at(key).get<vecd>();
}

GridSpec parse_grid(const json& j) {
  check_keys(j, "grid", {"dim", "N", "L"});
  return GridSpec(j.at("dim").get<int>(), j.at("N").get<int>(), j.at("L").get<double>());
}

ModelParams parse_model(const json& j, int dim) {
  check_keys(j, "model", {"mu"});
  return ModelParams(j.at("mu").get<double>(), dim);
}

TimeQuadrature parse_quad(const json& j) {
  check_keys(j, "quad", {"t_max", "intervals", "tail_exponent"});
  return TimeQuadrature::simpson(j.at("t_max").get<double>(),
                                 j.at("intervals").get<int>(),
                                 num_or(j, "tail_exponent", 0.0));
}

DictionaryOptions parse_dictionary(const json& j) {
  check_keys(j, "dictionary",
             {"annulus_min_log2", "annulus_max_log2", "max_radius_splits",
              "cap_diameter_constant"});
  DictionaryOptions opt;
  opt.annulus_min_log2 = int_or(j, "annulus_min_log2", 0);
  opt.annulus_max_log2 = int_or(j, "annulus_max_log2", 2);
  opt.max_radius_splits = int_or(j, "max_radius_splits", 6);
  opt.cap_diameter_constant = num_or(j, "cap_diameter_constant", 1.0 / 16.0);
  return opt;
}

SymmetryParams schedule_entry(const json& j, int n, int dim, double mu) {
  check_keys(j, "schedule",
             {"count", "h_base", "h_factor", "xi_base", "xi_factor", "x0_base",
              "x0_factor", "t0_base", "t0_factor"});
  const double h = num_or(j, "h_base", 1.0) * std::pow(num_or(j, "h_factor", 1.0), n);
  vecd xi = vec_or(j, "xi_base", vecd(dim, 0.0));
  const double xf = std::pow(num_or(j, "xi_factor", 1.0), n);
  for (double& c : xi) c *= xf;
  vecd x0 = vec_or(j, "x0_base", vecd(dim, 0.0));
  const double pf = std::pow(num_or(j, "x0_factor", 1.0), n);
  for (double& c : x0) c *= pf;
  const double t0 = num_or(j, "t0_base", 0.0) * std::pow(num_or(j, "t0_factor", 1.0), n);
  return SymmetryParams(h, xi, x0, t0, mu);
}

DecaySchedule parse_schedule(const json& j, const std::string& name, int dim, double mu) {
  const int count = int_or(j, "count", 6);
  return DecaySchedule::build(name, name, count,
                              [&](int n) { return schedule_entry(j, n, dim, mu); });
}

}  // namespace

Field build_input(const GridSpec& g, std::uint64_t seed, const json& spec) {
  check_keys(spec, "input",
             {"kind", "sigma", "radius", "center", "modulation", "path", "max_freq",
              "normalize", "amplitude"});
  const std::string kind = spec.at("kind").get<std::string>();
  const bool normalize = !spec.contains("normalize") || spec.at("normalize").get<bool>();
  Field f;
  if (kind == "gaussian") {
    f = gaussian_field(g, num_or(spec, "sigma", 1.0), vec_or(spec, "center", {}),
                       normalize);
  } else if (kind == "bump") {
    f = bump_field(g, num_or(spec, "radius", 1.0), vec_or(spec, "center", {}), normalize);
  } else if (kind == "random") {
    f = random_field(g, seed, num_or(spec, "max_freq", g.nyquist() / 4.0), normalize);
  } else if (kind == "file") {
    f = io::read_field(spec.at("path").get<fs::path>());
    if (!(f.grid() == g)) throw schema_error("field file grid mismatch");
  } else {
    throw schema_error("unknown input kind " + kind);
  }
  if (spec.contains("modulation")) f = modulate(f, spec.at("modulation").get<vecd>());
  const double amp = num_or(spec, "amplitude", 1.0);
  if (amp != 1.0) f = f * cd(amp, 0.0);
  return f;
}

Field build_synthetic_sum(const GridSpec& g, double mu, const json& bubbles) {
  if (!bubbles.is_array() || bubbles.empty())
    throw schema_error("synthetic spec must be a non-empty array");
  Field acc = Field::zero(g);
  for (const auto& b : bubbles) {
    check_keys(b, "synthetic entry",
               {"energy", "h", "xi", "x0", "t0", "shape", "sigma", "radius"});
    const std::string shape =
        b.contains("shape") ? b.at("shape").get<std::string>() : "bump";
    Field phi = shape == "gaussian"
                    ? gaussian_field(g, num_or(b, "sigma", 1.0), {}, true)
                    : bump_field(g, num_or(b, "radius", 1.0), {}, true);
    const double energy = num_or(b, "energy", 1.0);
    phi = phi * cd(std::sqrt(energy), 0.0);
    SymmetryParams s(num_or(b, "h", 1.0), vec_or(b, "xi", vecd(g.dim, 0.0)),
                     vec_or(b, "x0", vecd(g.dim, 0.0)), num_or(b, "t0", 0.0), mu);
    acc = acc + apply_symmetry(phi, s);
  }
  return acc;
}

json canonical_config(const json& config) {
  // nlohmann::json already stores object keys sorted; round-trip through the
  // dump normalizes number formatting
  return json::parse(config.dump());
}

std::string config_cache_key(const json& config) {
  const std::string payload = canonical_config(config).dump() + "|" + kVersion;
  // FNV-1a 64-bit
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Artifacts {
  std::vector<fs::path> files;
  fs::path dir;
  fs::path file(const std::string& name) {
    files.push_back(dir / name);
    return files.back();
  }
};

void write_csv_with_plots(Artifacts& art, const io::CsvTable& table,
                          const std::string& stem) {
  table.write(art.file(stem + ".csv"));
  for (const auto& p : io::emit_plots(table, art.dir, stem))
    art.files.push_back(p);
}

void run_strichartz_norm(const json& params, const GridSpec& g, const ModelParams& mp,
                         const TimeQuadrature& quad, std::uint64_t seed, bool strict,
                         Artifacts& art) {
  check_keys(params, "params",
             {"input", "deriv", "p", "propagator", "mixed", "decoupling"});
  Field f = build_input(g, seed, params.at("input"));
  const double deriv =
      num_or(params, "deriv", static_cast<double>(g.dim) / (g.dim + 2));
  const double p = num_or(params, "p", 2.0 * (g.dim + 2.0) / g.dim);
  PropagatorSpec prop = PropagatorSpec::fourth_order();
  if (params.contains("propagator")) {
    const std::string tag = params.at("propagator").get<std::string>();
    if (tag == "fourth_order") prop = PropagatorSpec::fourth_order();
    else if (tag == "schrodinger+") prop = PropagatorSpec::schrodinger(+1);
    else if (tag == "schrodinger-") prop = PropagatorSpec::schrodinger(-1);
    else throw schema_error("unknown propagator " + tag);
  }
  NormReport rep = spacetime_norm(f, mp, deriv, p, quad, prop);
  rep.enforce(strict);
  json out{{"norm", io::to_json(rep)}, {"input_l2", f.l2_norm()}};
  if (params.contains("mixed")) {
    check_keys(params.at("mixed"), "mixed", {"q", "r"});
    const double q = params.at("mixed").at("q").get<double>();
    const double r = params.at("mixed").at("r").get<double>();
    NormReport mrep = mixed_norm(f, mp, q, r, quad);
    mrep.enforce(strict);
    out["mixed"] = io::to_json(mrep);
  }
  if (params.contains("decoupling") && params.at("decoupling").get<bool>()) {
    auto [sup_shell, full] = decoupling_functional(f, mp, quad);
    out["decoupling"] = json{{"sup_shell_value", sup_shell}, {"full_value", full}};
  }
  io::write_json(art.file("report.json"), out);
}

void run_refined_cap(const json& params, const GridSpec& g, const ModelParams& mp,
                     const TimeQuadrature& quad, std::uint64_t seed, Artifacts& art) {
  check_keys(params, "params", {"input", "dictionary"});
  Field f = build_input(g, seed, params.at("input"));
  CapDictionary dict = CapDictionary::generate(
      g, mp, params.contains("dictionary") ? parse_dictionary(params.at("dictionary"))
                                           : DictionaryOptions{});
  std::vector<std::pair<Cap, double>> table;
  RefinedReport rep = refined_supremum(f, dict, mp, quad, &table);
  io::write_json(art.file("report.json"), io::to_json(rep));
  io::CsvTable csv;
  csv.columns = {"cap_radius", "functional"};
  for (int a = 0; a < g.dim; ++a)
    csv.columns.insert(csv.columns.begin() + a, "cap_center_" + std::to_string(a));
  csv.units.assign(csv.columns.size(), "1");
  csv.x_column = "cap_radius";
  for (const auto& [cap, val] : table) {
    std::vector<double> row;
    for (double c : cap.center) row.push_back(c);
    row.push_back(cap.radius);
    row.push_back(val);
    csv.rows.push_back(std::move(row));
  }
  write_csv_with_plots(art, csv, "caps");
}

void run_decompose(const json& params, const GridSpec& g, const ModelParams& mp,
                   const TimeQuadrature& quad, std::uint64_t seed, Artifacts& art) {
  check_keys(params, "params",
             {"input", "synthetic", "dictionary", "max_profiles", "stop_eps",
              "stop_eps_rel", "window_radius", "dichotomy_threshold"});
  Field u = params.contains("synthetic")
                ? build_synthetic_sum(g, mp.mu, params.at("synthetic"))
                : build_input(g, seed, params.at("input"));
  CapDictionary dict = CapDictionary::generate(
      g, mp, params.contains("dictionary") ? parse_dictionary(params.at("dictionary"))
                                           : DictionaryOptions{});
  DecomposeOptions opt;
  opt.max_profiles = int_or(params, "max_profiles", 6);
  opt.window_radius = num_or(params, "window_radius", 0.0);
  opt.dichotomy_threshold = num_or(params, "dichotomy_threshold", 8.0);
  if (params.contains("stop_eps")) {
    opt.stop_eps = params.at("stop_eps").get<double>();
  } else {
    const ExponentSet ex = ExponentSet::for_dim(g.dim);
    const double eps0 =
        spacetime_norm(u, mp, ex.deriv_order.value(), ex.p_strichartz.value(), quad).value;
    opt.stop_eps = num_or(params, "stop_eps_rel", 0.05) * eps0;
  }
  DecompositionResult res = decompose(u, mp, dict, quad, opt);
  if (res.stagnated) throw degeneracy_error("decomposition stagnated");
  json manifest = io::decomposition_manifest(res);
  manifest["reconstruction_defect"] = res.reconstruction_defect(u);
  io::write_json(art.file("manifest.json"), manifest);
  for (std::size_t j = 0; j < res.profiles.size(); ++j)
    io::write_field(art.file("profile_" + std::to_string(j) + ".field"),
                    res.profiles[j].phi);
  io::write_field(art.file("residual.field"), res.residual);
  io::CsvTable steps;
  steps.columns = {"step", "residual_norm", "strichartz_norm", "cap_radius",
                   "functional",  "t_star",        "amplitude",
                   "profile_energy", "cross_term", "pythagorean_defect",
                   "fitted_c", "next_residual_norm"};
  steps.units.assign(steps.columns.size(), "1");
  steps.x_column = "step";
  for (const auto& s : res.steps)
    steps.add_row({static_cast<double>(s.index), s.residual_norm, s.strichartz_norm,
                   s.cap.radius, s.functional_value, s.t_star, s.amplitude,
                   s.profile_energy, s.cross_term, s.pythagorean_defect, s.fitted_c,
                   s.next_residual_norm});
  write_csv_with_plots(art, steps, "steps");
}

void run_extremize(const json& params, const GridSpec& g, const ModelParams& mp,
                   const TimeQuadrature& quad, std::uint64_t seed, Artifacts& art) {
  check_keys(params, "params", {"init", "propagator", "iters", "tol"});
  Field init = build_input(g, seed, params.at("init"));
  PropagatorSpec prop = PropagatorSpec::fourth_order();
  if (params.contains("propagator") &&
      params.at("propagator").get<std::string>() == "schrodinger")
    prop = PropagatorSpec::schrodinger(+1);
  ExtremizerReport rep = ascend(init, mp, quad, int_or(params, "iters", 40),
                                num_or(params, "tol", 1e-6), prop);
  io::write_json(art.file("report.json"), io::extremizer_report_json(rep));
  io::write_field(art.file("f_star.field"), rep.f_star);
  io::CsvTable iters;
  iters.columns = {"iteration", "ratio"};
  iters.units = {"1", "1"};
  iters.x_column = "iteration";
  for (std::size_t i = 0; i < rep.iterates.size(); ++i)
    iters.add_row({static_cast<double>(i), rep.iterates[i]});
  write_csv_with_plots(art, iters, "iterates");
}

void run_verify_limits(const json& params, const GridSpec& g, const ModelParams& mp,
                       const TimeQuadrature& quad, std::uint64_t seed, Artifacts& art) {
  check_keys(params, "params", {"kind", "phi", "schedule"});
  const std::string kind_s = params.at("kind").get<std::string>();
  LimitKind kind;
  if (kind_s == "L43_46") kind = LimitKind::L43_46;
  else if (kind_s == "L44_47") kind = LimitKind::L44_47;
  else if (kind_s == "L44_48") kind = LimitKind::L44_48;
  else if (kind_s == "L44_49") kind = LimitKind::L44_49;
  else if (kind_s == "L44_50") kind = LimitKind::L44_50;
  else throw schema_error("unknown limit kind " + kind_s);
  Field phi = build_input(g, seed, params.at("phi"));
  const double mu = kind == LimitKind::L43_46 ? 0.0 : 1.0;
  DecaySchedule sched = parse_schedule(params.at("schedule"), kind_s, g.dim, mu);
  auto rows = limit_deficit(kind, phi, sched, ModelParams(mu, g.dim), quad);
  io::CsvTable csv;
  csv.columns = {"n", "parameter", "deficit", "comparison_norm", "reduced_value",
                 "normalization_deficit", "equivalence_gap"};
  csv.units.assign(csv.columns.size(), "1");
  csv.x_column = "parameter";
  for (const auto& r : rows)
    if (r.valid)
      csv.add_row({static_cast<double>(r.n), r.parameter, r.direct_deficit,
                   r.comparison_norm, r.reduced_value, r.normalization_deficit,
                   r.equivalence_gap});
  write_csv_with_plots(art, csv, "limits");
  json summary{{"kind", kind_s}, {"rows", csv.rows.size()},
               {"truncated", rows.size() != csv.rows.size()}};
  io::write_json(art.file("report.json"), summary);
}

void run_verify_orthogonality(const json& params, const GridSpec& g,
                              const ModelParams& mp, const TimeQuadrature& quad,
                              std::uint64_t seed, Artifacts& art) {
  check_keys(params, "params", {"phiJ", "phiK", "schedule_j", "schedule_k", "p"});
  Field phiJ = build_input(g, seed, params.at("phiJ"));
  Field phiK = build_input(g, seed + 1, params.at("phiK"));
  DecaySchedule sj = parse_schedule(params.at("schedule_j"), "j", g.dim, mp.mu);
  DecaySchedule sk = parse_schedule(params.at("schedule_k"), "k", g.dim, mp.mu);
  const double p = num_or(params, "p", (g.dim + 2.0) / g.dim);
  auto rows = orthogonality_decay(phiJ, phiK, sj, sk, mp, p, quad);
  io::CsvTable csv;
  csv.columns = {"n", "divergence_total", "product_norm"};
  csv.units.assign(csv.columns.size(), "1");
  csv.x_column = "n";
  for (const auto& r : rows)
    if (r.valid)
      csv.add_row({static_cast<double>(r.n), r.divergence_total, r.value});
  write_csv_with_plots(art, csv, "orthogonality");
  io::write_json(art.file("report.json"),
                 json{{"rows", csv.rows.size()},
                      {"truncated", rows.size() != csv.rows.size()}});
}

void run_bilinear_scaling(const json& params, const GridSpec& g, const ModelParams& mp,
                          const TimeQuadrature& quad, Artifacts& art) {
  check_keys(params, "params",
             {"center_abs", "radii", "p", "separation_factor", "direction"});
  const double center_abs = num_or(params, "center_abs", 1.0);
  const double p = num_or(params, "p", 2.0);
  const double sep = num_or(params, "separation_factor", 4.0);
  vecd dir = vec_or(params, "direction", [&] {
    vecd d0(g.dim, 0.0);
    d0[0] = 1.0;
    return d0;
  }());
  std::vector<double> radii;
  if (params.contains("radii")) radii = params.at("radii").get<std::vector<double>>();
  else radii = {0.25, 0.125, 0.0625, 0.03125};
  io::CsvTable csv;
  csv.columns = {"radius", "norm", "tail_bound", "refinement_delta"};
  csv.units = {"1", "1", "1", "1"};
  csv.x_column = "radius";
  for (double r : radii) {
    vecd c1(g.dim, 0.0), c2(g.dim, 0.0);
    for (int a = 0; a < g.dim; ++a) {
      c1[a] = dir[a] * center_abs - 0.5 * sep * r * dir[a];
      c2[a] = dir[a] * center_abs + 0.5 * sep * r * dir[a];
    }
    // two unit-mass pieces strictly inside their caps
    BumpProfile bump;
    GridTables tab(g);
    std::vector<cd> spec(g.npoints(), cd(0, 0));
    int m[3] = {0, 0, 0};
    for (std::size_t i = 0; i < spec.size(); ++i) {
      g.axis_indices(i, m);
      double d1 = 0.0, d2 = 0.0;
      for (int a = 0; a < g.dim; ++a) {
        const double f1 = tab.freq[m[a]] - c1[a];
        const double f2 = tab.freq[m[a]] - c2[a];
        d1 += f1 * f1;
        d2 += f2 * f2;
      }
      spec[i] = cd(bump.radial(std::sqrt(d1) / (r / 4.0)) +
                       bump.radial(std::sqrt(d2) / (r / 4.0)),
                   0.0);
    }
    Field f = Field::from_spectrum(g, std::move(spec));
    Cap k1(c1, r), k2(c2, r);
    BumpProfile bp;
    const double n1 = std::sqrt(cap_energy(f, k1, bp));
    const double n2 = std::sqrt(cap_energy(f, k2, bp));
    BilinearReport rep = bilinear_cap_norm(f, k1, k2, p, quad);
    csv.add_row({r, rep.norm.value / (n1 * n2), rep.norm.tail_bound,
                 rep.norm.refinement_delta});
  }
  // log-log slope against the radius
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : csv.rows) {
    if (row[1] <= 0.0) continue;
    const double x = std::log(row[0]), y = std::log(row[1]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  json rep{{"rows", csv.rows.size()}};
  if (n >= 2) {
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep["slope"] = slope;
    rep["target_slope"] = g.dim - (g.dim + 2.0) / p;
  }
  write_csv_with_plots(art, csv, "bilinear");
  io::write_json(art.file("report.json"), rep);
  (void)mp;
  (void)quad;
}

}  // namespace

std::vector<fs::path> run_config(const json& config, const fs::path& out_dir,
                                 bool strict) {
  check_keys(config, "config",
             {"command", "grid", "model", "quad", "seed", "output_dir", "cache_dir",
              "params"});
  const std::string command = config.at("command").get<std::string>();
  GridSpec g = parse_grid(config.at("grid"));
  ModelParams mp = parse_model(config.at("model"), g.dim);
  TimeQuadrature quad = parse_quad(config.at("quad"));
  const auto seed = config.contains("seed")
                        ? config.at("seed").get<std::uint64_t>()
                        : std::uint64_t{1};
  const json params = config.contains("params") ? config.at("params") : json::object();

  fs::create_directories(out_dir);
  Artifacts art;
  art.dir = out_dir;
  if (command == "strichartz-norm")
    run_strichartz_norm(params, g, mp, quad, seed, strict, art);
  else if (command == "refined-cap")
    run_refined_cap(params, g, mp, quad, seed, art);
  else if (command == "decompose")
    run_decompose(params, g, mp, quad, seed, art);
  else if (command == "extremize")
    run_extremize(params, g, mp, quad, seed, art);
  else if (command == "verify-limits")
    run_verify_limits(params, g, mp, quad, seed, art);
  else if (command == "verify-orthogonality")
    run_verify_orthogonality(params, g, mp, quad, seed, art);
  else if (command == "bilinear-scaling")
    run_bilinear_scaling(params, g, mp, quad, art);
  else
    throw schema_error("unknown command " + command);
  return art.files;
}

namespace {

struct DirLock {
  fs::path lock_path;
  bool held = false;
  explicit DirLock(const fs::path& p) : lock_path(p) {
    for (int attempt = 0; attempt < 600; ++attempt) {
      const int fd = ::open(lock_path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) { ::close(fd); held = true; return; }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    throw degeneracy_error("could not acquire cache lock " + lock_path.string());
  }
  ~DirLock() {
    if (held) ::unlink(lock_path.c_str());
  }
};

}  // namespace

int run(const RunOptions& opt) {
  try {
    std::ifstream in(opt.config_path);
    if (!in) throw schema_error("cannot open config " + opt.config_path.string());
    json config;
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw schema_error(std::string("config parse error: ") + e.what());
    }
    fs::path out_dir;
    if (opt.out_override) out_dir = *opt.out_override;
    else if (const char* env = std::getenv("BIHARM_OUT")) out_dir = env;
    else if (config.contains("output_dir"))
      out_dir = config.at("output_dir").get<std::string>();
    else out_dir = "out";

    if (opt.no_cache) {
      run_config(config, out_dir, opt.strict);
      return 0;
    }
    const fs::path cache_dir = config.contains("cache_dir")
                                   ? fs::path(config.at("cache_dir").get<std::string>())
                                   : out_dir / ".cache";
    fs::create_directories(cache_dir);
    const std::string key = config_cache_key(config);
    const fs::path slot = cache_dir / key;
    DirLock lock(cache_dir / (key + ".lock"));
    if (fs::exists(slot / "manifest.txt")) {
      // cache hit: byte-identical replay
      fs::create_directories(out_dir);
      std::ifstream man(slot / "manifest.txt");
      std::string name;
      while (std::getline(man, name))
        fs::copy_file(slot / name, out_dir / name, fs::copy_options::overwrite_existing);
      return 0;
    }
    auto files = run_config(config, out_dir, opt.strict);
    fs::create_directories(slot);
    std::ofstream man(slot / "manifest.txt");
    for (const auto& f : files) {
      fs::copy_file(f, slot / f.filename(), fs::copy_options::overwrite_existing);
      man << f.filename().string() << "\n";
    }
    return 0;
  } catch (const schema_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const resolution_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const degeneracy_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace biharm::cli
