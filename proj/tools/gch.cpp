// Command-line front end: construct peakons, certify candidates against the
// strong/weak residual suites, tabulate the convolution identities, run
// evolution experiments, and sweep the existence map. Every command writes
// a manifest that the `rerun` command replays bit-for-bit (per platform).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gch/evolve.hpp"
#include "gch/green.hpp"
#include "gch/io.hpp"
#include "gch/model.hpp"
#include "gch/residual.hpp"

namespace fs = std::filesystem;
using namespace gch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoAmplitude = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitBlowUp = 4;

std::string default_out_dir() {
  const char* env = std::getenv("GCH_OUT_DIR");
  return env && *env ? env : ".";
}

Domain parse_domain(const std::string& s) {
  if (s == "line") return Domain::Line;
  if (s == "circle") return Domain::Circle;
  throw CLI::ValidationError("--domain", "must be 'line' or 'circle'");
}

Branch parse_branch(const std::string& s) {
  if (s == "plus") return Branch::Plus;
  if (s == "minus") return Branch::Minus;
  throw CLI::ValidationError("--branch", "must be 'plus' or 'minus'");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void finish_manifest(io::RunManifest& m, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const std::string path = join_path(out_dir, "manifest.json");
  io::write_text(path, io::manifest_json(m));
  std::cout << "manifest: " << path << "\n";
}

std::vector<std::string> strip_out_dir(const std::vector<std::string>& argv) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out-dir") {
      ++i;  // skip the value too
      continue;
    }
    out.push_back(argv[i]);
  }
  return out;
}

struct PeakonArgs {
  double k1 = 1.0, k2 = 0.0, c = 1.0;
  std::string domain = "line";
  std::string branch = "plus";
  int samples = 512;
  std::string out_dir = default_out_dir();
};

int run_peakon(const PeakonArgs& a, const std::vector<std::string>& argv) {
  const ModelParams p{a.k1, a.k2, a.c};
  const Domain domain = parse_domain(a.domain);
  const AmplitudeSolution sol =
      domain == Domain::Line ? solve_line_amplitudes(p) : solve_periodic_amplitudes(p);

  fs::create_directories(a.out_dir);
  const std::string report_path = join_path(a.out_dir, "amplitude_report.json");
  io::write_text(report_path, io::amplitude_report_json(domain, p, sol));

  io::RunManifest manifest;
  manifest.command = "peakon";
  manifest.argv = argv;
  manifest.params = p;
  manifest.outputs = {report_path};
  manifest.input_hash = io::git_blob_sha1(io::amplitude_report_json(domain, p, sol));

  if (!sol.exists) {
    finish_manifest(manifest, a.out_dir);
    std::cout << "{\"error\":\"NoRealAmplitude\",\"discriminant\":"
              << io::format_full(sol.discriminant) << "}\n";
    return kExitNoAmplitude;
  }

  const TravelingProfile prof = make_peakon(p, domain, parse_branch(a.branch));
  std::vector<std::vector<double>> rows;
  rows.reserve(a.samples);
  for (int i = 0; i < a.samples; ++i) {
    const double x = domain == Domain::Line
                         ? -10.0 + 20.0 * static_cast<double>(i) / (a.samples - 1)
                         : static_cast<double>(i) / a.samples;
    rows.push_back({x, prof.eval_u(0.0, x)});
  }
  const std::string profile_path = join_path(a.out_dir, "profile.csv");
  const std::vector<std::string> header = {"x", "u"};
  io::write_csv(profile_path, header, rows);
  manifest.outputs.push_back(profile_path);
  finish_manifest(manifest, a.out_dir);

  std::cout << "roots:";
  for (double r : sol.roots) std::cout << ' ' << io::format_full(r);
  std::cout << "\namplitude (" << a.branch << "): " << io::format_full(prof.amplitude())
            << "\n";
  return kExitOk;
}

struct CertifyArgs {
  double k1 = 1.0, k2 = 1.0, c = 2.0;
  std::string domain = "circle";
  std::string branch = "plus";
  double perturb = 0.0;
  double tolerance = 1e-6;
  int phis = 8;
  std::string out_dir = default_out_dir();
};

int run_certify(const CertifyArgs& a, const std::vector<std::string>& argv) {
  const ModelParams p{a.k1, a.k2, a.c};
  const Domain domain = parse_domain(a.domain);

  TravelingProfile prof = make_peakon(p, domain, parse_branch(a.branch));
  if (a.perturb != 0.0) prof = prof.with_amplitude(prof.amplitude() * (1.0 + a.perturb));

  CertifyOptions opts;
  opts.tolerance = a.tolerance;
  opts.spatial_translates = a.phis;
  const ResidualReport report = certify(prof, p, opts);

  fs::create_directories(a.out_dir);
  const std::string report_path = join_path(a.out_dir, "residual_report.json");
  io::write_text(report_path, io::residual_report_json(report));

  io::RunManifest manifest;
  manifest.command = "certify";
  manifest.argv = argv;
  manifest.params = p;
  manifest.outputs = {report_path};
  manifest.input_hash = io::git_blob_sha1(io::residual_report_json(report));
  finish_manifest(manifest, a.out_dir);

  std::cout << (report.certified ? "Certified" : "Rejected")
            << "  max_strong_residual=" << io::format_full(report.max_strong_residual)
            << "  defect=" << io::format_full(report.defect_value) << "\n";

  const bool expect_certified = a.perturb == 0.0;
  const bool expect_rejected = std::abs(a.perturb) >= 0.01;
  if (expect_certified && !report.certified) return 1;
  if (expect_rejected && report.certified) return 1;
  return kExitOk;
}

struct ConvolveArgs {
  std::string identity = "circle_sh2";
  int samples = 101;
  double A = 1.0;  // line amplitude
  double a = 1.0;  // circle amplitude
  double k1 = 1.0, k2 = 1.0;
  double tol = 1e-10;
  std::string out_dir = default_out_dir();
};

int run_convolve(const ConvolveArgs& ca, const std::vector<std::string>& argv) {
  const ConvolutionIdentity which = parse_convolution_identity(ca.identity);
  const bool on_line = ca.identity.rfind("line", 0) == 0;
  const bool cubic = which == ConvolutionIdentity::LineCubic ||
                     which == ConvolutionIdentity::CircleCubic;
  const double amplitude = on_line ? ca.A : ca.a;
  const double coeff = cubic ? ca.k1 : ca.k2;

  // sample grid with an irrational-ish offset so no point lands on a kink
  std::vector<double> ss(ca.samples);
  for (int i = 0; i < ca.samples; ++i)
    ss[i] = on_line ? -6.0 + 12.0 * (i + 0.37) / ca.samples : (i + 0.37) / ca.samples;

  std::vector<std::vector<double>> rows(ss.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ss.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto sample = eval_convolution_identity(which, amplitude, coeff, ss[i], ca.tol);
    rows[i] = {ss[i], sample.closed, sample.quadrature,
               std::abs(sample.closed - sample.quadrature)};
  }

  double worst = 0.0, worst_s = ss.front();
  for (const auto& row : rows) {
    if (row[3] > worst) {
      worst = row[3];
      worst_s = row[0];
    }
  }

  fs::create_directories(ca.out_dir);
  const std::string csv_path = join_path(ca.out_dir, "convolve_" + ca.identity + ".csv");
  const std::vector<std::string> header = {"s", "closed_form", "quadrature", "abs_diff"};
  io::write_csv(csv_path, header, rows);

  io::RunManifest manifest;
  manifest.command = "convolve";
  manifest.argv = argv;
  manifest.params = ModelParams{ca.k1, ca.k2, 0.0};
  manifest.outputs = {csv_path};
  manifest.input_hash = io::git_blob_sha1(ca.identity + "/" + std::to_string(ca.samples));
  finish_manifest(manifest, ca.out_dir);

  std::cout << ca.identity << ": max |closed - quadrature| = " << io::format_full(worst)
            << " at s = " << io::format_full(worst_s) << "\n";
  if (worst > 1e-8) {
    std::cout << "identity check FAILED (threshold 1e-8)\n";
    return kExitTolerance;
  }
  return kExitOk;
}

struct EvolveArgs {
  double k1 = 1.0, k2 = 1.0, c = 2.0;
  int n = 1024;
  double dt = 1e-4;
  double t_end = 0.5;
  int record_every = 50;
  double cfl_safety = 0.3;
  int filter_strength = 36;
  bool no_dealias = false;
  std::string branch = "plus";
  std::string out_dir = default_out_dir();
};

int run_evolve(const EvolveArgs& a, const std::vector<std::string>& argv) {
  const ModelParams p{a.k1, a.k2, a.c};
  SolverConfig cfg;
  cfg.n = a.n;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.record_every = a.record_every;
  cfg.cfl_safety = a.cfl_safety;
  cfg.filter_strength = a.filter_strength;
  cfg.dealias = !a.no_dealias;

  const Grid grid(cfg.n);
  const TravelingProfile reference = make_peakon(p, Domain::Circle, parse_branch(a.branch));
  const GridState initial = mollified_peakon_initial(p, grid, parse_branch(a.branch),
                                                     cfg.filter_strength);

  io::RunManifest manifest;
  manifest.command = "evolve";
  manifest.argv = argv;
  manifest.params = p;
  manifest.config = cfg;
  {
    std::string blob = io::manifest_json(manifest);
    blob.append(reinterpret_cast<const char*>(initial.u.data()),
                initial.u.size() * sizeof(double));
    manifest.input_hash = io::git_blob_sha1(blob);
  }

  fs::create_directories(a.out_dir);
  RunResult result;
  try {
    result = run(cfg, p, initial, &reference);
  } catch (const NonFiniteState& e) {
    std::cout << "blow-up: " << e.what() << "\n";
    finish_manifest(manifest, a.out_dir);
    return kExitBlowUp;
  }

  std::vector<std::vector<double>> snap_rows;
  for (const auto& snap : result.snapshots)
    for (int j = 0; j < cfg.n; ++j)
      snap_rows.push_back({snap.time, grid.x(j), snap.u[j]});
  const std::string snap_path = join_path(a.out_dir, "snapshots.csv");
  const std::vector<std::string> snap_header = {"t", "x", "u"};
  io::write_csv(snap_path, snap_header, snap_rows);

  std::vector<std::vector<double>> diag_rows;
  for (const auto& d : result.diagnostics)
    diag_rows.push_back({d.time, d.h1_energy, d.max_u, d.peak_position, d.shape_error,
                         d.mass_m});
  const std::string diag_path = join_path(a.out_dir, "diagnostics.csv");
  const std::vector<std::string> diag_header = {"t",             "h1_energy",   "max_u",
                                                "peak_position", "shape_error", "mass_m"};
  io::write_csv(diag_path, diag_header, diag_rows);

  manifest.outputs = {snap_path, diag_path};
  finish_manifest(manifest, a.out_dir);

  const double e0 = result.diagnostics.front().h1_energy;
  const double ef = result.diagnostics.back().h1_energy;
  const double drift = e0 != 0.0 ? std::abs(ef - e0) / std::abs(e0) : std::abs(ef);
  std::cout << "final shape_error = "
            << io::format_full(result.diagnostics.back().shape_error)
            << "\nH1 relative drift = " << io::format_full(drift) << "\n";
  return kExitOk;
}

struct SweepArgs {
  double k1_min = -1.0, k1_max = 1.0;
  int k1_steps = 3;
  double k2_min = -1.0, k2_max = 1.0;
  int k2_steps = 3;
  double c_min = -2.0, c_max = 2.0;
  int c_steps = 5;
  int random = 0;
  std::uint64_t seed = 0;
  std::string out_dir = default_out_dir();
};

int run_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
  std::vector<std::array<double, 3>> grid_pts;
  if (a.random > 0) {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> uk1(a.k1_min, a.k1_max), uk2(a.k2_min, a.k2_max),
        uc(a.c_min, a.c_max);
    for (int i = 0; i < a.random; ++i) grid_pts.push_back({uk1(rng), uk2(rng), uc(rng)});
  } else {
    auto linspace = [](double lo, double hi, int n) {
      std::vector<double> v;
      for (int i = 0; i < n; ++i)
        v.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
      return v;
    };
    for (double k1 : linspace(a.k1_min, a.k1_max, a.k1_steps))
      for (double k2 : linspace(a.k2_min, a.k2_max, a.k2_steps))
        for (double c : linspace(a.c_min, a.c_max, a.c_steps))
          grid_pts.push_back({k1, k2, c});
  }

  std::vector<std::vector<double>> rows(grid_pts.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid_pts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto [k1, k2, c] = std::tuple(grid_pts[i][0], grid_pts[i][1], grid_pts[i][2]);
    const ModelParams p{k1, k2, c};
    double disc_line = std::nan(""), disc_circle = std::nan("");
    double n_line = 0.0, n_circle = 0.0;
    if (!(k1 == 0.0 && k2 == 0.0)) {
      const auto line = solve_line_amplitudes(p);
      const auto circ = solve_periodic_amplitudes(p);
      disc_line = line.discriminant;
      disc_circle = circ.discriminant;
      n_line = static_cast<double>(line.roots.size());
      n_circle = static_cast<double>(circ.roots.size());
    }
    rows[i] = {k1, k2, c, disc_line, disc_circle, n_line, n_circle};
  }

  fs::create_directories(a.out_dir);
  const std::string csv_path = join_path(a.out_dir, "existence_map.csv");
  const std::vector<std::string> header = {"k1",          "k2",          "c",
                                           "disc_line",   "disc_circle", "n_roots_line",
                                           "n_roots_circle"};
  io::write_csv(csv_path, header, rows);

  io::RunManifest manifest;
  manifest.command = "sweep";
  manifest.argv = argv;
  manifest.seed = a.seed;
  manifest.outputs = {csv_path};
  manifest.input_hash = io::git_blob_sha1(std::to_string(grid_pts.size()));
  finish_manifest(manifest, a.out_dir);
  std::cout << "rows: " << grid_pts.size() << "\n";
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args);

int run_rerun(const std::string& manifest_path, const std::string& out_dir) {
  const io::RunManifest m = io::parse_manifest(io::read_text(manifest_path));
  std::vector<std::string> args = strip_out_dir(m.argv);
  if (!out_dir.empty()) {
    args.push_back("--out-dir");
    args.push_back(out_dir);
  }
  return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{
      "gch - peakon laboratory for the generalized Camassa-Holm equation\n"
      "m_t + k1 (3 u u_x m + u^2 m_x) + k2 (2 m u_x + m_x u) = 0, m = u - u_xx.\n"
      "Defaults: N=1024, dt=1e-4, oracle threshold 1e-8, certification\n"
      "tolerance 1e-6, CFL safety 0.3, output dir '.' (override with\n"
      "--out-dir or GCH_OUT_DIR)."};
  app.require_subcommand(1);

  PeakonArgs pa;
  auto* peakon = app.add_subcommand("peakon", "solve amplitudes and sample a peakon profile");
  peakon->add_option("--k1", pa.k1, "cubic coefficient")->capture_default_str();
  peakon->add_option("--k2", pa.k2, "quadratic coefficient")->capture_default_str();
  peakon->add_option("--c", pa.c, "wave speed")->capture_default_str();
  peakon->add_option("--domain", pa.domain, "line | circle")->capture_default_str();
  peakon->add_option("--branch", pa.branch, "plus | minus")->capture_default_str();
  peakon->add_option("--samples", pa.samples, "profile sample count")->capture_default_str();
  peakon->add_option("--out-dir", pa.out_dir, "output directory")->capture_default_str();

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "strong + weak residual certification");
  certify->add_option("--k1", ca.k1)->capture_default_str();
  certify->add_option("--k2", ca.k2)->capture_default_str();
  certify->add_option("--c", ca.c)->capture_default_str();
  certify->add_option("--domain", ca.domain, "line | circle")->capture_default_str();
  certify->add_option("--branch", ca.branch, "plus | minus")->capture_default_str();
  certify->add_option("--perturb", ca.perturb, "relative amplitude perturbation")
      ->capture_default_str();
  certify->add_option("--tolerance", ca.tolerance)->capture_default_str();
  certify->add_option("--phis", ca.phis, "spatial test-function translates")
      ->capture_default_str();
  certify->add_option("--out-dir", ca.out_dir)->capture_default_str();

  ConvolveArgs va;
  auto* convolve = app.add_subcommand(
      "convolve", "closed-form convolution identities vs the quadrature oracle");
  convolve
      ->add_option("--identity", va.identity,
                   "line_cubic | line_quadratic | circle_cubic | circle_sh2 | circle_quadratic")
      ->capture_default_str();
  convolve->add_option("--samples", va.samples)->capture_default_str();
  convolve->add_option("--A", va.A, "line amplitude")->capture_default_str();
  convolve->add_option("--a", va.a, "circle amplitude")->capture_default_str();
  convolve->add_option("--k1", va.k1)->capture_default_str();
  convolve->add_option("--k2", va.k2)->capture_default_str();
  convolve->add_option("--tol", va.tol, "oracle tolerance")->capture_default_str();
  convolve->add_option("--out-dir", va.out_dir)->capture_default_str();

  EvolveArgs ea;
  auto* evolve = app.add_subcommand("evolve", "pseudospectral run from a mollified peakon");
  evolve->add_option("--k1", ea.k1)->capture_default_str();
  evolve->add_option("--k2", ea.k2)->capture_default_str();
  evolve->add_option("--c", ea.c)->capture_default_str();
  evolve->add_option("--N", ea.n, "grid points (power of two)")->capture_default_str();
  evolve->add_option("--dt", ea.dt)->capture_default_str();
  evolve->add_option("--t-end", ea.t_end)->capture_default_str();
  evolve->add_option("--record-every", ea.record_every)->capture_default_str();
  evolve->add_option("--cfl-safety", ea.cfl_safety)->capture_default_str();
  evolve->add_option("--filter-p", ea.filter_strength)->capture_default_str();
  evolve->add_flag("--no-dealias", ea.no_dealias, "disable the 2/3 rule");
  evolve->add_option("--branch", ea.branch)->capture_default_str();
  evolve->add_option("--out-dir", ea.out_dir)->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "existence map over (k1, k2, c)");
  sweep->add_option("--k1-min", sa.k1_min)->capture_default_str();
  sweep->add_option("--k1-max", sa.k1_max)->capture_default_str();
  sweep->add_option("--k1-steps", sa.k1_steps)->capture_default_str();
  sweep->add_option("--k2-min", sa.k2_min)->capture_default_str();
  sweep->add_option("--k2-max", sa.k2_max)->capture_default_str();
  sweep->add_option("--k2-steps", sa.k2_steps)->capture_default_str();
  sweep->add_option("--c-min", sa.c_min)->capture_default_str();
  sweep->add_option("--c-max", sa.c_max)->capture_default_str();
  sweep->add_option("--c-steps", sa.c_steps)->capture_default_str();
  sweep->add_option("--random", sa.random, "sample this many random triples instead")
      ->capture_default_str();
  sweep->add_option("--seed", sa.seed, "rng seed for --random")->capture_default_str();
  sweep->add_option("--out-dir", sa.out_dir)->capture_default_str();

  std::string manifest_path, rerun_out;
  auto* rerun = app.add_subcommand("rerun", "replay a command from its manifest");
  rerun->add_option("--manifest", manifest_path, "path to manifest.json")->required();
  rerun->add_option("--out-dir", rerun_out, "override output directory");

  // CLI11 consumes argv back-to-front
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (peakon->parsed()) return run_peakon(pa, args);
    if (certify->parsed()) return run_certify(ca, args);
    if (convolve->parsed()) return run_convolve(va, args);
    if (evolve->parsed()) return run_evolve(ea, args);
    if (sweep->parsed()) return run_sweep(sa, args);
    if (rerun->parsed()) return run_rerun(manifest_path, rerun_out);
  } catch (const NoRealAmplitude& e) {
    std::cout << "{\"error\":\"NoRealAmplitude\",\"discriminant\":"
              << io::format_full(e.discriminant) << "}\n";
    return kExitNoAmplitude;
  } catch (const OracleToleranceNotMet& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const ToleranceNotMet& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const NonFiniteState& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
