// Command-line driver for the self-similar wave toolkit.
//
// Subcommands: spectrum, evolve, dissipativity, resolvent, fit, verify.
// Every workflow accepts --config <file.json> whose keys mirror the long
// flag names; flags given on the command line win over config values. All
// outputs land in --out (default "out"): CSV tables, JSON reports, and a
// manifest.json recording the effective config, its hash, the code version,
// and the wall time. Given the same config and seed the CSV bytes are
// identical run to run.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 acceptance failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sswave/energy.hpp"
#include "sswave/evolve.hpp"
#include "sswave/family.hpp"
#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"
#include "sswave/hypergeom.hpp"
#include "sswave/io.hpp"
#include "sswave/modulation.hpp"
#include "sswave/parallel.hpp"
#include "sswave/sampling.hpp"
#include "sswave/spectral.hpp"
#include "sswave/verify.hpp"

namespace {

using nlohmann::json;
using namespace sswave;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAcceptance = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Fills CLI option targets from a JSON config for options the user did not
// pass explicitly. Keys are the long option names without dashes.
class ConfigMerge {
 public:
  ConfigMerge(CLI::App* cmd, const json& cfg) : cmd_(cmd), cfg_(cfg) {}

  template <typename T>
  void apply(const std::string& key, T& value) const {
    if (cmd_->count("--" + key) > 0) return;
    if (const auto it = cfg_.find(key); it != cfg_.end()) {
      try {
        value = it->get<T>();
      } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
      }
    }
  }

 private:
  CLI::App* cmd_;
  const json& cfg_;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");
  return cfg;
}

// "0..3", "0,2,3", or "2".
std::vector<int> parse_ell_spec(const std::string& spec) {
  std::vector<int> out;
  const auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(spec.substr(0, dots));
      const int hi = std::stoi(spec.substr(dots + 2));
      for (int l = lo; l <= hi; ++l) out.push_back(l);
    } else {
      std::size_t pos = 0;
      while (pos < spec.size()) {
        const auto comma = spec.find(',', pos);
        const auto piece = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(std::stoi(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw ConfigError("cannot parse --ell spec '" + spec + "'");
  }
  if (out.empty()) throw ConfigError("--ell spec selects no degrees");
  for (const int l : out)
    if (l < 0) throw ConfigError("--ell degrees must be nonnegative");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void validate_p(double p) { require(p > 3.0, "p must exceed 3"); }

void validate_grid(int N, int L) {
  require(N >= 8 && N % 2 == 0, "N must be even and at least 8");
  require(L >= 2, "L must be at least 2");
}

void validate_dtau(double dtau, int N, int L) {
  if (dtau > 0.0)
    require(dtau <= kCflLimit / (N * N + L * L) * (1.0 + 1e-12),
            "dtau violates the explicit step bound kCflLimit/(N^2+L^2)");
}

// ------------------------------------------------------------------ spectrum

int cmd_spectrum(const json& cfg_in, CLI::App* cmd, double p, std::string ell_spec, int N,
                 double a3, std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("p", p);
  merge.apply("ell", ell_spec);
  merge.apply("N", N);
  merge.apply("a3", a3);
  merge.apply("out", outdir);
  validate_p(p);
  require(N >= 16 && N % 2 == 0, "N must be even and at least 16");
  require(std::abs(a3) <= 0.3, "|a3| must not exceed 0.3");
  const std::vector<int> ells = parse_ell_spec(ell_spec);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<double>> rows;
  const int fine = N + N / 2;
  if (a3 == 0.0) {
    for (const int ell : ells) {
      const auto lc = eigenvalues_of(eigenpairs(assemble_mode_operator(p, ell, N)));
      const auto lf = eigenvalues_of(eigenpairs(assemble_mode_operator(p, ell, fine)));
      const SpectrumReport rep = filter_spurious(lc, lf, p);
      for (const Complex lam : rep.stable)
        rows.push_back({p, a3, static_cast<double>(ell), lam.real(), lam.imag()});
    }
  } else {
    const int lmax = *std::max_element(ells.begin(), ells.end());
    const auto lc = eigenvalues_of(eigenpairs(assemble_axisym_operator(p, a3, N, lmax)));
    const auto lf = eigenvalues_of(eigenpairs(assemble_axisym_operator(p, a3, fine, lmax)));
    const SpectrumReport rep = filter_spurious(lc, lf, p);
    for (const Complex lam : rep.stable)
      rows.push_back({p, a3, -1.0, lam.real(), lam.imag()});
  }

  write_csv_atomic(outdir + "/spectrum.csv", {"p", "a3", "ell", "re_lambda", "im_lambda"}, rows);
  json cfg{{"workflow", "spectrum"}, {"p", p},   {"ell", ell_spec},
           {"N", N},                 {"a3", a3}, {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));
  std::cout << "wrote " << rows.size() << " stable eigenvalues to " << outdir
            << "/spectrum.csv\n";
  return 0;
}

// -------------------------------------------------------------------- evolve

int cmd_evolve(const json& cfg_in, CLI::App* cmd, double p, std::string mode_name,
               std::vector<double> avec, int N, int L, double tau_max, double dtau, int cadence,
               bool dealias, bool axisym, std::string data, double delta, std::uint64_t seed,
               int snapshots, bool text, bool fit_modulation, std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("p", p);
  merge.apply("mode", mode_name);
  merge.apply("a", avec);
  merge.apply("N", N);
  merge.apply("L", L);
  merge.apply("tau-max", tau_max);
  merge.apply("dtau", dtau);
  merge.apply("cadence", cadence);
  merge.apply("dealias", dealias);
  merge.apply("axisym", axisym);
  merge.apply("data", data);
  merge.apply("delta", delta);
  merge.apply("seed", seed);
  merge.apply("snapshots", snapshots);
  merge.apply("text", text);
  merge.apply("fit", fit_modulation);
  merge.apply("out", outdir);

  validate_p(p);
  validate_grid(N, L);
  validate_dtau(dtau, N, L);
  require(avec.size() == 3, "--a needs three components");
  const Vec3 a(avec[0], avec[1], avec[2]);
  require(a.norm() <= kMaxRapidity, "|a| must not exceed 0.5");
  require(tau_max > 0.0, "tau-max must be positive");
  require(delta >= 0.0, "delta must be nonnegative");
  require(snapshots >= 0, "snapshots must be nonnegative");

  EvolutionConfig ec;
  ec.p = p;
  ec.a = a;
  ec.dtau = dtau;
  ec.tau_max = tau_max;
  ec.cadence = cadence;
  ec.dealias = dealias;
  ec.axisymmetric = axisym;
  ec.keep_states = snapshots > 0 || fit_modulation;
  if (mode_name == "free")
    ec.mode = EvolveMode::linear_free;
  else if (mode_name == "potential")
    ec.mode = EvolveMode::linear_a;
  else if (mode_name == "nonlinear")
    ec.mode = EvolveMode::nonlinear;
  else
    throw ConfigError("mode must be one of free|potential|nonlinear");
  if (axisym) {
    require(a.head<2>().norm() == 0.0, "the axisymmetric path needs a boost along the third axis");
    require(data == "static", "the axisymmetric path supports --data static only");
  }
  if (fit_modulation)
    require(ec.mode == EvolveMode::nonlinear, "--fit needs the nonlinear mode");

  const auto t0 = std::chrono::steady_clock::now();
  const BallGrid grid = ball_grid(N, L);
  StatePair initial;
  if (data == "static") {
    initial = profile_psi_a(grid, p, a);
  } else if (data == "random") {
    Rng rng(seed);
    initial = random_bandlimited_state(grid, rng, std::min(L, 4), 4);
  } else if (data == "perturbed") {
    Rng rng(seed);
    initial = profile_psi_a(grid, p, a) + delta * random_bandlimited_state(grid, rng, std::min(L, 4), 4);
  } else {
    throw ConfigError("data must be one of static|random|perturbed");
  }

  const Trajectory traj = integrate(grid, initial, ec);

  std::optional<ModulationFit> mf;
  if (fit_modulation) mf = fit_trajectory(grid, traj, p);

  std::vector<std::string> header = {"tau", "norm_total", "norm_sobolev", "a1", "a2", "a3"};
  for (int l = 0; l <= L; ++l) header.push_back("amp_" + std::to_string(l));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row = {traj.times[i], traj.norm_total[i], traj.norm_sobolev[i]};
    const Vec3 arow = mf ? mf->a_hat[i] : a;
    row.insert(row.end(), {arow[0], arow[1], arow[2]});
    for (int l = 0; l <= L; ++l) row.push_back(traj.mode_amplitude(i, l));
    rows.push_back(std::move(row));
  }
  write_csv_atomic(outdir + "/trajectory.csv", header, rows);

  if (snapshots > 0 && !traj.states.empty()) {
    const SphereBasis basis = sphere_basis(grid.sphere, L);
    const int count = std::min<int>(snapshots, static_cast<int>(traj.states.size()));
    for (int i = 0; i < count; ++i) {
      const std::size_t idx =
          count == 1 ? traj.states.size() - 1
                     : static_cast<std::size_t>(std::llround(
                           static_cast<double>(i) * (traj.states.size() - 1) / (count - 1)));
      SnapshotMeta meta;
      meta.tau = traj.times[idx];
      meta.p = p;
      meta.a = a;
      meta.N = N;
      meta.L = L;
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%03d", i);
      save_snapshot(outdir, name, meta, synthesize_pair(grid, basis, traj.states[idx]), text);
    }
  }

  json cfg{{"workflow", "evolve"},
           {"p", p},
           {"mode", mode_name},
           {"a", avec},
           {"N", N},
           {"L", L},
           {"tau-max", tau_max},
           {"dtau", dtau},
           {"cadence", cadence},
           {"dealias", dealias},
           {"axisym", axisym},
           {"data", data},
           {"delta", delta},
           {"seed", seed},
           {"snapshots", snapshots},
           {"text", text},
           {"fit", fit_modulation},
           {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));

  const char* reason = traj.reason == StopReason::horizon
                           ? "horizon"
                           : (traj.reason == StopReason::overflow ? "overflow" : "tail_blowup");
  std::cout << "evolve: " << traj.times.size() << " records, stop=" << reason
            << ", final tau=" << traj.final_time << "\n";
  return 0;
}

// ------------------------------------------------------------- dissipativity

int cmd_dissipativity(const json& cfg_in, CLI::App* cmd, double p, int samples,
                      std::uint64_t seed, int N, int L, std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("p", p);
  merge.apply("samples", samples);
  merge.apply("seed", seed);
  merge.apply("N", N);
  merge.apply("L", L);
  merge.apply("out", outdir);
  validate_p(p);
  validate_grid(N, L);
  require(samples > 0, "samples must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  const BallGrid grid = ball_grid(N, L);
  std::vector<std::vector<double>> rows(samples);
  // Each sample draws from its own seeded stream, so the table is identical
  // under any worker count.
  parallel_for(samples, [&](int i) {
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    const StatePair u = random_bandlimited_state(grid, rng, std::min(L, 4), 4);
    const DissipativityReport rep = dissipativity_report(grid, u, p);
    rows[i] = {static_cast<double>(i), rep.margin[0], rep.margin[1], rep.margin[2],
               rep.rel[0],             rep.rel[1],    rep.rel[2]};
  });
  int violations = 0;
  for (const auto& row : rows)
    for (int j = 4; j <= 6; ++j)
      if (row[j] > 1e-8) ++violations;

  write_csv_atomic(outdir + "/dissipativity.csv",
                   {"sample", "margin1", "margin2", "margin3", "rel1", "rel2", "rel3"}, rows);
  json cfg{{"workflow", "dissipativity"}, {"p", p}, {"samples", samples},
           {"seed", seed},                {"N", N}, {"L", L},
           {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));
  std::cout << violations << " violations\n";
  return violations == 0 ? 0 : kExitNumerical;
}

// ----------------------------------------------------------------- resolvent

int cmd_resolvent(const json& cfg_in, CLI::App* cmd, int ell, int shape, int points,
                  std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("ell", ell);
  merge.apply("shape", shape);
  merge.apply("points", points);
  merge.apply("out", outdir);
  require(ell >= 0 && ell <= 8, "ell must lie in 0..8");
  require(shape >= 0 && shape <= 2, "shape must lie in 0..2");
  require(points >= 16 && points % 2 == 0, "points must be even and at least 16");

  const auto t0 = std::chrono::steady_clock::now();
  // Manufactured radial profiles u = rho^ell q(rho^2) and the image of the
  // radial operator, g = rho^ell [4z(z-1) q'' + ((4l+12)z - (4l+6)) q'
  // + (l^2+4l+15/4) q].
  const std::vector<std::vector<double>> shapes = {{1.0}, {1.0, 1.0}, {2.0, -3.0, 1.0}};
  const std::vector<double>& q = shapes[shape];
  const auto eval = [](const std::vector<double>& c, double z) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  };
  const auto deriv = [](const std::vector<double>& c) {
    std::vector<double> d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
  };
  const std::vector<double> dq = deriv(q), ddq = deriv(dq);
  const double c0 = ell * ell + 4.0 * ell + 3.75;
  const auto g = [&](double rho) {
    const double z = rho * rho;
    const double img = 4.0 * z * (z - 1.0) * eval(ddq, z) +
                       ((4.0 * ell + 12.0) * z - (4.0 * ell + 6.0)) * eval(dq, z) +
                       c0 * eval(q, z);
    return std::pow(rho, ell) * img;
  };

  const Eigen::VectorXd rho_out = chebyshev_lobatto_grid(points).rho;
  const Eigen::VectorXd u = resolvent_mode_solve(ell, g, rho_out);
  double worst = 0.0;
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < rho_out.size(); ++k) {
    const double exact = std::pow(rho_out[k], ell) * eval(q, rho_out[k] * rho_out[k]);
    worst = std::max(worst, std::abs(u[k] - exact));
    rows.push_back({rho_out[k], u[k], exact, std::abs(u[k] - exact)});
  }

  write_csv_atomic(outdir + "/resolvent.csv", {"rho", "u", "u_exact", "abs_error"}, rows);
  json cfg{{"workflow", "resolvent"}, {"ell", ell}, {"shape", shape},
           {"points", points},        {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));
  std::cout << "max recovery error " << worst << "\n";
  return 0;
}

// ----------------------------------------------------------------------- fit

int cmd_fit(const json& cfg_in, CLI::App* cmd, double p, std::vector<double> avec, double delta,
            std::uint64_t seed, int N, int L, std::string input, std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("p", p);
  merge.apply("a", avec);
  merge.apply("delta", delta);
  merge.apply("seed", seed);
  merge.apply("N", N);
  merge.apply("L", L);
  merge.apply("input", input);
  merge.apply("out", outdir);
  validate_p(p);
  validate_grid(N, L);
  require(avec.size() == 3, "--a needs three components");
  const Vec3 a(avec[0], avec[1], avec[2]);
  require(a.norm() <= kMaxRapidity, "|a| must not exceed 0.5");

  const auto t0 = std::chrono::steady_clock::now();
  StatePair state;
  BallGrid grid = ball_grid(N, L);
  json source;
  if (!input.empty()) {
    const auto slash = input.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "." : input.substr(0, slash);
    const std::string name = slash == std::string::npos ? input : input.substr(slash + 1);
    SnapshotMeta meta;
    state = load_snapshot(dir, name, &meta);
    grid = ball_grid(meta.N, meta.L);
    p = meta.p;
    source = {{"input", input}, {"tau", meta.tau}};
  } else {
    Rng rng(seed);
    state = profile_psi_a(grid, p, a) +
            delta * random_bandlimited_state(grid, rng, std::min(L, 2), 2);
    source = {{"planted_a", avec}, {"delta", delta}, {"seed", seed}};
  }

  const RapidityFit fit = fit_rapidity(grid, state, p);
  json report{{"a_hat", {fit.a_hat[0], fit.a_hat[1], fit.a_hat[2]}},
              {"residual_norm", fit.residual_norm},
              {"orthogonality", {fit.orthogonality[0], fit.orthogonality[1], fit.orthogonality[2]}},
              {"iterations", fit.iterations},
              {"converged", fit.converged},
              {"source", source}};
  write_file_atomic(outdir + "/fit.json", report.dump(2) + "\n");

  json cfg{{"workflow", "fit"}, {"p", p},           {"a", avec}, {"delta", delta},
           {"seed", seed},      {"N", N},           {"L", L},    {"input", input},
           {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));
  std::cout << "a_hat = (" << fit.a_hat[0] << ", " << fit.a_hat[1] << ", " << fit.a_hat[2]
            << "), residual " << fit.residual_norm << ", "
            << (fit.converged ? "converged" : "NOT converged") << "\n";
  return fit.converged ? 0 : kExitNumerical;
}

// -------------------------------------------------------------------- verify

int cmd_verify(const json& cfg_in, CLI::App* cmd, std::vector<int> only, std::string outdir) {
  const ConfigMerge merge(cmd, cfg_in);
  merge.apply("only", only);
  merge.apply("out", outdir);
  for (const int id : only)
    require(id >= 1 && id <= 13, "--only entries must lie in 1..13");

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CriterionResult> results = run_acceptance(only, &std::cout);
  json items = json::array();
  for (const CriterionResult& r : results)
    items.push_back({{"id", r.id},
                     {"name", r.name},
                     {"pass", r.pass},
                     {"seconds", r.seconds},
                     {"detail", r.detail}});
  write_file_atomic(outdir + "/verify.json", items.dump(2) + "\n");
  json cfg{{"workflow", "verify"}, {"only", only}, {"out", outdir}};
  write_manifest(outdir, cfg, elapsed_since(t0));
  const bool ok = all_passed(results);
  std::cout << (ok ? "all criteria passed" : "ACCEPTANCE FAILURE") << "\n";
  return ok ? 0 : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-similar wave blowup toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags win")
      ->expected(1);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "filtered stable spectrum of the linearization");
  double sp_p = 5.0, sp_a3 = 0.0;
  std::string sp_ell = "0..3", sp_out = "out";
  int sp_N = 32;
  sp->add_option("--p", sp_p, "nonlinearity power (> 3)");
  sp->add_option("--ell", sp_ell, "degree spec: 2, 0,1,3, or 0..3");
  sp->add_option("--N", sp_N, "radial order (coarse; fine run uses 3N/2)");
  sp->add_option("--a3", sp_a3, "boost along the third axis (axisymmetric operator)");
  sp->add_option("--out", sp_out, "output directory");

  // evolve
  auto* ev = app.add_subcommand("evolve", "integrate the similarity flow");
  double ev_p = 5.0, ev_tau = 10.0, ev_dtau = 0.0, ev_delta = 1e-3;
  std::vector<double> ev_a = {0.0, 0.0, 0.0};
  int ev_N = 24, ev_L = 8, ev_cadence = 0, ev_snapshots = 0;
  bool ev_dealias = false, ev_axisym = false, ev_text = false, ev_fit = false;
  std::string ev_mode = "nonlinear", ev_data = "static", ev_out = "out";
  std::uint64_t ev_seed = 1;
  ev->add_option("--p", ev_p, "nonlinearity power (> 3)");
  ev->add_option("--mode", ev_mode, "free|potential|nonlinear");
  ev->add_option("--a", ev_a, "rapidity vector")->expected(3);
  ev->add_option("--N", ev_N, "radial order");
  ev->add_option("--L", ev_L, "angular band limit");
  ev->add_option("--tau-max", ev_tau, "integration horizon");
  ev->add_option("--dtau", ev_dtau, "step (0 = automatic)");
  ev->add_option("--cadence", ev_cadence, "record every this many steps (0 = auto)");
  ev->add_flag("--dealias", ev_dealias, "zero degrees above 2L/3 after products");
  ev->add_flag("--axisym", ev_axisym, "axisymmetric fast path");
  ev->add_option("--data", ev_data, "static|random|perturbed");
  ev->add_option("--delta", ev_delta, "perturbation size for --data perturbed");
  ev->add_option("--seed", ev_seed, "random data seed");
  ev->add_option("--snapshots", ev_snapshots, "save this many state snapshots");
  ev->add_flag("--text", ev_text, "snapshots as CSV instead of binary");
  ev->add_flag("--fit", ev_fit, "modulation-fit the rapidity per record");
  ev->add_option("--out", ev_out, "output directory");

  // dissipativity
  auto* di = app.add_subcommand("dissipativity", "margin sweep over random states");
  double di_p = 5.0;
  int di_samples = 100, di_N = 32, di_L = 8;
  std::uint64_t di_seed = 1;
  std::string di_out = "out";
  di->add_option("--p", di_p, "nonlinearity power (> 3)");
  di->add_option("--samples", di_samples, "number of random states");
  di->add_option("--seed", di_seed, "base seed");
  di->add_option("--N", di_N, "radial order");
  di->add_option("--L", di_L, "angular band limit");
  di->add_option("--out", di_out, "output directory");

  // resolvent
  auto* re = app.add_subcommand("resolvent", "manufactured-solution recovery table");
  int re_ell = 0, re_shape = 0, re_points = 48;
  std::string re_out = "out";
  re->add_option("--ell", re_ell, "spherical degree");
  re->add_option("--shape", re_shape, "manufactured profile preset 0..2");
  re->add_option("--points", re_points, "output radii (Chebyshev order)");
  re->add_option("--out", re_out, "output directory");

  // fit
  auto* fi = app.add_subcommand("fit", "rapidity fit of a snapshot or planted profile");
  double fi_p = 5.0, fi_delta = 1e-3;
  std::vector<double> fi_a = {0.0, 0.0, 0.1};
  int fi_N = 24, fi_L = 8;
  std::uint64_t fi_seed = 1;
  std::string fi_input, fi_out = "out";
  fi->add_option("--p", fi_p, "nonlinearity power (> 3)");
  fi->add_option("--a", fi_a, "planted rapidity")->expected(3);
  fi->add_option("--delta", fi_delta, "planted perturbation size");
  fi->add_option("--seed", fi_seed, "perturbation seed");
  fi->add_option("--N", fi_N, "radial order");
  fi->add_option("--L", fi_L, "angular band limit");
  fi->add_option("--input", fi_input, "snapshot base path (overrides planting)");
  fi->add_option("--out", fi_out, "output directory");

  // verify
  auto* ve = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<int> ve_only;
  std::string ve_out = "out";
  ve->add_option("--only", ve_only, "criterion ids to run (default: all)");
  ve->add_option("--out", ve_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(config_path);
    if (sp->parsed()) return cmd_spectrum(cfg, sp, sp_p, sp_ell, sp_N, sp_a3, sp_out);
    if (ev->parsed())
      return cmd_evolve(cfg, ev, ev_p, ev_mode, ev_a, ev_N, ev_L, ev_tau, ev_dtau, ev_cadence,
                        ev_dealias, ev_axisym, ev_data, ev_delta, ev_seed, ev_snapshots, ev_text,
                        ev_fit, ev_out);
    if (di->parsed()) return cmd_dissipativity(cfg, di, di_p, di_samples, di_seed, di_N, di_L, di_out);
    if (re->parsed()) return cmd_resolvent(cfg, re, re_ell, re_shape, re_points, re_out);
    if (fi->parsed())
      return cmd_fit(cfg, fi, fi_p, fi_a, fi_delta, fi_seed, fi_N, fi_L, fi_input, fi_out);
    if (ve->parsed()) return cmd_verify(cfg, ve, ve_only, ve_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
