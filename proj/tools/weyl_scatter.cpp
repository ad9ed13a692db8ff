// Command-line front end: run-spec parsing, sweep orchestration, CSV/JSON
// emission. Floating-point output is fixed at %.17g with '\n' line endings so
// identical runs produce byte-identical files.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "weylscat/krein.hpp"
#include "weylscat/models.hpp"
#include "weylscat/scattering.hpp"
#include "weylscat/schatten.hpp"
#include "weylscat/stationary.hpp"
#include "weylscat/weyl.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace weylscat;

namespace {

constexpr const char* kVersion = "weyl-scatter 1.0.0";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {std::stod(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw ModelDomainError("grid spec must be min:max:count");
  const double lo = std::stod(spec.substr(0, c1));
  const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const long n = std::stol(spec.substr(c2 + 1));
  if (n < 1) throw ModelDomainError("grid count must be >= 1");
  std::vector<double> grid;
  if (n == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (long i = 0; i < n; ++i)
    grid.push_back(lo + double(i) * (hi - lo) / double(n - 1));
  return grid;
}

// complex scalars as a+bi with no spaces; plain reals allowed
std::complex<double> parse_complex(const std::string& s) {
  if (s.empty()) throw ModelDomainError("empty complex literal");
  if (s.back() != 'i') return {std::stod(s), 0.0};
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {  // pure imaginary "bi"
    const std::string im = s.substr(0, s.size() - 1);
    return {0.0, im.empty() || im == "+" ? 1.0 : (im == "-" ? -1.0 : std::stod(im))};
  }
  const double re = std::stod(s.substr(0, split));
  std::string im = s.substr(split, s.size() - 1 - split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re, std::stod(im)};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

struct CommonConfig {
  std::string model;  // required, via flag or run spec
  double radius = 1.0;
  double alpha = 1.0;
  std::string alpha_per_mode;
  std::string alpha_fourier_cos;
  std::string alpha_fourier_sin;
  double v0 = 0.0;
  std::string rigging = "laplace-beltrami";
  double rigging_lambda0 = -1.0;
  std::string lambda = "0.1:10:100";
  int modes = 33;
  std::string strategy = "direct";
  std::string route = "auto";
  double rank_tol_factor = 1e-8;
  double unitarity_tol = 1e-8;
  double cond_cap = 1e12;
  std::string out_dir = ".";
};

RadialParams to_params(const CommonConfig& c) {
  RadialParams p;
  p.R = c.radius;
  p.V0 = c.v0;
  if (!c.alpha_per_mode.empty()) {
    p.alpha.kind = AlphaCoefficient::Kind::per_mode;
    p.alpha.per_mode = parse_list(c.alpha_per_mode);
  } else if (!c.alpha_fourier_cos.empty()) {
    p.alpha.kind = AlphaCoefficient::Kind::fourier;
    p.alpha.fourier_cos = parse_list(c.alpha_fourier_cos);
    if (!c.alpha_fourier_sin.empty()) p.alpha.fourier_sin = parse_list(c.alpha_fourier_sin);
  } else {
    p.alpha = AlphaCoefficient::constant(c.alpha);
  }
  if (c.rigging == "identity") {
    p.rigging.kind = RiggingWeights::Kind::identity;
  } else if (c.rigging == "sqrt-dtn") {
    p.rigging.kind = RiggingWeights::Kind::sqrt_dtn;
    p.rigging.lambda0 = c.rigging_lambda0;
  } else if (c.rigging == "laplace-beltrami") {
    p.rigging.kind = RiggingWeights::Kind::laplace_beltrami_quarter;
  } else {
    throw ModelDomainError("unknown rigging: " + c.rigging);
  }
  return p;
}

SweepOptions to_sweep_options(const CommonConfig& c) {
  SweepOptions opt;
  opt.boundary.strategy = c.strategy == "extrapolate" ? BoundaryStrategy::extrapolate
                                                      : BoundaryStrategy::direct;
  opt.boundary.rank_tol_factor = c.rank_tol_factor;
  opt.engine.unitarity_tol = c.unitarity_tol;
  opt.engine.cond_cap = c.cond_cap;
  if (c.route == "robin")
    opt.route = SweepRoute::robin_form;
  else if (c.route == "weyl" || c.route == "generic")
    opt.route = SweepRoute::weyl_form;
  else
    opt.route = SweepRoute::automatic;
  return opt;
}

json tolerances_json(const CommonConfig& c) {
  json t;
  t["rank_tol_factor"] = c.rank_tol_factor;
  t["unitarity_tol"] = c.unitarity_tol;
  t["cond_cap"] = c.cond_cap;
  t["psd_clip"] = "1e-10 * (1 + |H|_F)";
  t["epsilon_schedule"] = {{"eps0", 1e-2}, {"halvings", 6}};
  t["exclusion_guard_relative"] = 1e-6;
  return t;
}

json model_json(const CommonConfig& c) {
  json m;
  m["kind"] = c.model;
  m["radius"] = c.radius;
  if (!c.alpha_per_mode.empty())
    m["alpha_per_mode"] = c.alpha_per_mode;
  else if (!c.alpha_fourier_cos.empty()) {
    m["alpha_fourier_cos"] = c.alpha_fourier_cos;
    m["alpha_fourier_sin"] = c.alpha_fourier_sin;
  } else
    m["alpha"] = c.alpha;
  m["v0"] = c.v0;
  m["rigging"] = c.rigging;
  if (c.v0 != 0.0)
    m["note"] = "simplicity of the intersection operator assumed for V0 != 0";
  return m;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ModelDomainError("cannot write " + path.string());
  f << content;
}

void attach_common(CLI::App* cmd, CommonConfig& c, std::string& run_spec) {
  cmd->add_option("--run-spec", run_spec, "JSON file mirroring the flags");
  cmd->add_option("--model", c.model, "model id");
  cmd->add_option("--radius", c.radius, "boundary radius R");
  cmd->add_option("--alpha", c.alpha, "scalar boundary coefficient");
  cmd->add_option("--alpha-per-mode", c.alpha_per_mode, "comma list, indexed by |m| or l");
  cmd->add_option("--alpha-fourier-cos", c.alpha_fourier_cos, "cos coefficients c0,c1,...");
  cmd->add_option("--alpha-fourier-sin", c.alpha_fourier_sin, "sin coefficients s1,...");
  cmd->add_option("--v0", c.v0, "radial constant potential inside r < R");
  cmd->add_option("--rigging", c.rigging, "laplace-beltrami | identity | sqrt-dtn");
  cmd->add_option("--rigging-lambda0", c.rigging_lambda0, "lambda0 for sqrt-dtn");
  cmd->add_option("--lambda", c.lambda, "grid min:max:count");
  cmd->add_option("--modes", c.modes, "channel budget of the truncation");
  cmd->add_option("--strategy", c.strategy, "direct | extrapolate");
  cmd->add_option("--route", c.route, "auto | weyl | robin");
  cmd->add_option("--rank-tol-factor", c.rank_tol_factor, "channel-space rank tolerance factor");
  cmd->add_option("--unitarity-tol", c.unitarity_tol, "flagging tolerance for |SS*-I|");
  cmd->add_option("--cond-cap", c.cond_cap, "condition cap for the Weyl solve");
  cmd->add_option("--out-dir", c.out_dir, "output directory");
}

void apply_run_spec(CLI::App* cmd, CommonConfig& c, const std::string& run_spec) {
  if (run_spec.empty()) return;
  std::ifstream f(run_spec);
  if (!f) throw ModelDomainError("cannot read run spec " + run_spec);
  json j;
  f >> j;
  auto set_if_unset = [&](const char* flag, auto& field) {
    const std::string key = std::string(flag).substr(2);
    if (cmd->count(flag) == 0 && j.contains(key)) field = j[key].template get<std::decay_t<decltype(field)>>();
  };
  set_if_unset("--model", c.model);
  set_if_unset("--radius", c.radius);
  set_if_unset("--alpha", c.alpha);
  set_if_unset("--alpha-per-mode", c.alpha_per_mode);
  set_if_unset("--alpha-fourier-cos", c.alpha_fourier_cos);
  set_if_unset("--alpha-fourier-sin", c.alpha_fourier_sin);
  set_if_unset("--v0", c.v0);
  set_if_unset("--rigging", c.rigging);
  set_if_unset("--rigging-lambda0", c.rigging_lambda0);
  set_if_unset("--lambda", c.lambda);
  set_if_unset("--modes", c.modes);
  set_if_unset("--strategy", c.strategy);
  set_if_unset("--route", c.route);
  set_if_unset("--rank-tol-factor", c.rank_tol_factor);
  set_if_unset("--unitarity-tol", c.unitarity_tol);
  set_if_unset("--cond-cap", c.cond_cap);
  set_if_unset("--out-dir", c.out_dir);
}

std::string channel_label(const ChannelTruncation& trunc, const ComplexMatrix& p,
                          std::size_t col) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const double a = std::abs(p(i, col));
    if (a > mag + 1e-12) {
      mag = a;
      best = i;
    }
  }
  return trunc.labels[best].name;
}

int cmd_smatrix(const CommonConfig& c, bool phases_only) {
  if (c.model.empty()) throw ModelDomainError("--model is required");
  const ModelHandle model = make_model(c.model, to_params(c));
  const ChannelTruncation trunc = model->truncation(c.modes);
  const std::vector<double> grid = parse_grid(c.lambda);
  const SweepOptions opt = to_sweep_options(c);
  const auto sweep = smatrix_sweep(model, grid, trunc, opt);

  std::string csv;
  json manifest;
  manifest["tool"] = kVersion;
  manifest["command"] = phases_only ? "eigenphases" : "smatrix";
  manifest["model"] = model_json(c);
  manifest["truncation"] = {{"channels", trunc.size()}, {"budget", c.modes}};
  manifest["strategy"] = c.strategy;
  manifest["route"] = c.route;
  manifest["lambda_grid"] = c.lambda;
  manifest["tolerances"] = tolerances_json(c);
  json points = json::array();
  std::size_t failures = 0;

  if (phases_only) {
    csv = "lambda,channel,phase_rad\n";
  } else {
    csv = "lambda,row_label,col_label,re,im\n";
  }
  for (const SweepPoint& pt : sweep) {
    json rec;
    rec["lambda"] = pt.lambda;
    if (!pt.sample) {
      ++failures;
      rec["error"] = pt.error;
      points.push_back(rec);
      continue;
    }
    const ScatteringMatrixSample& s = *pt.sample;
    rec["unitarity_defect"] = s.unitarity_defect;
    rec["rank"] = s.S.rows();
    rec["flagged"] = s.flagged;
    if (phases_only && s.flagged) {
      ++failures;
      rec["error"] = "non-unitary sample: defect above tolerance";
      points.push_back(rec);
      continue;
    }
    points.push_back(rec);
    if (phases_only) {
      for (std::size_t k = 0; k < s.eigenphases.size(); ++k) {
        csv += fmt(pt.lambda) + "," + std::to_string(s.eigenphase_channels[k]) + "," +
               fmt(s.eigenphases[k]) + "\n";
      }
    } else {
      for (std::size_t i = 0; i < s.S.rows(); ++i)
        for (std::size_t j = 0; j < s.S.cols(); ++j) {
          csv += fmt(pt.lambda) + "," + channel_label(trunc, s.channel_isometry, i) +
                 "," + channel_label(trunc, s.channel_isometry, j) + "," +
                 fmt(s.S(i, j).real()) + "," + fmt(s.S(i, j).imag()) + "\n";
        }
    }
  }
  manifest["points"] = points;
  manifest["failed_points"] = failures;

  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  write_file(dir / (phases_only ? "eigenphases.csv" : "smatrix.csv"), csv);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return failures == 0 ? 0 : 2;
}

int cmd_krein(CLI::App* cmd) {
  static std::string pair_kind = "jacobi-halfline";
  static double alpha = 0.7;
  static long truncation = 2000;
  static double length = 200.0, h = 0.01;
  static int probes = 16;
  static std::vector<std::string> zs = {"0.5+0.5i"};
  static std::string out_dir = ".";
  cmd->add_option("--pair", pair_kind, "jacobi-halfline | delta-line-fd");
  cmd->add_option("--alpha", alpha, "coupling");
  cmd->add_option("--truncation", truncation, "chain length (jacobi)");
  cmd->add_option("--length", length, "line length (delta fd)");
  cmd->add_option("--grid-h", h, "grid spacing (delta fd)");
  cmd->add_option("--probes", probes, "number of random probes");
  cmd->add_option("--z", zs, "spectral points a+bi (repeatable)");
  cmd->add_option("--out-dir", out_dir, "output directory");
  cmd->callback([&] {
    std::string csv = "z_re,z_im,residual\n";
    json manifest;
    manifest["tool"] = kVersion;
    manifest["command"] = "krein-check";
    manifest["pair"] = pair_kind;
    manifest["alpha"] = alpha;
    json rows = json::array();
    for (const std::string& zs_ : zs) {
      const std::complex<double> z = parse_complex(zs_);
      double r = 0.0;
      if (pair_kind == "jacobi-halfline") {
        const JacobiChainPair pair(std::size_t(truncation), alpha);
        r = krein_residual(pair, z, pair.probes(std::size_t(probes)));
        manifest["truncation"] = truncation;
      } else if (pair_kind == "delta-line-fd") {
        const DeltaLineGrid grid(length, h, alpha);
        r = krein_residual(grid, z, grid.probes(std::size_t(probes)));
        manifest["length"] = length;
        manifest["grid_h"] = h;
      } else {
        throw ModelDomainError("unknown pair: " + pair_kind);
      }
      csv += fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(r) + "\n";
      rows.push_back({{"z_re", z.real()}, {"z_im", z.imag()}, {"residual", r}});
    }
    manifest["rows"] = rows;
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "krein.csv", csv);
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  });
  return 0;
}

int cmd_sv_decay(CLI::App* cmd) {
  static CommonConfig c;
  static std::string run_spec;
  static std::string entity = "im-weyl";
  static std::string z_str = "0+1i";
  static int max_modes = 128;
  static double exponent = 2.0;
  attach_common(cmd, c, run_spec);
  cmd->add_option("--entity", entity, "im-weyl | krein-difference | gamma-field");
  cmd->add_option("--z", z_str, "spectral point a+bi in C+");
  cmd->add_option("--max-modes", max_modes, "largest Fourier index / degree");
  cmd->add_option("--bound-exponent", exponent, "claimed decay exponent p");
  cmd->callback([cmd, &run_spec = run_spec] {
    apply_run_spec(cmd, c, run_spec);
    if (c.model.empty()) throw ModelDomainError("--model is required");
    const ModelHandle model = make_model(c.model, to_params(c));
    DecayEntity e = DecayEntity::im_weyl_at_z;
    if (entity == "krein-difference") e = DecayEntity::krein_difference;
    else if (entity == "gamma-field") e = DecayEntity::gamma_field;
    else if (entity != "im-weyl") throw ModelDomainError("unknown entity: " + entity);
    const auto rep = sv_decay(model, e, parse_complex(z_str), max_modes, exponent);

    std::string csv = "j,s_j\n";
    for (std::size_t j = 0; j < rep.s.size(); ++j)
      csv += std::to_string(j + 1) + "," + fmt(rep.s[j]) + "\n";
    json verdict;
    verdict["tool"] = kVersion;
    verdict["command"] = "sv-decay";
    verdict["model"] = model_json(c);
    verdict["entity"] = to_string(rep.entity);
    verdict["z"] = {{"re", rep.z.real()}, {"im", rep.z.imag()}};
    verdict["bound_exponent"] = rep.bound_exponent;
    verdict["fitted_exponent"] = rep.fitted_exponent;
    verdict["bound_constant"] = rep.bound_constant;
    verdict["monotone"] = rep.monotone;
    verdict["pass"] = rep.pass;
    const fs::path dir(c.out_dir);
    fs::create_directories(dir);
    write_file(dir / "svdecay.csv", csv);
    write_file(dir / "verdict.json", verdict.dump(2) + "\n");
  });
  return 0;
}

int cmd_stationary(CLI::App* cmd) {
  static double alpha = 0.7;
  static long truncation = 4000;
  static std::string lambdas = "-1.5,-0.5,0,0.5,1.5";
  static std::string out_dir = ".";
  cmd->add_option("--alpha", alpha, "chain boundary coupling");
  cmd->add_option("--truncation", truncation, "chain length");
  cmd->add_option("--lambdas", lambdas, "comma list of energies inside (-2,2)");
  cmd->add_option("--out-dir", out_dir, "output directory");
  cmd->callback([&] {
    StationarySetup setup;
    setup.truncation = std::size_t(truncation);
    const StationaryOracle st(alpha, setup);
    const ModelHandle model = make_jacobi_halfline(alpha);
    const ChannelTruncation t = model->truncation(1);

    std::string csv = "lambda,route,entry_re,entry_im\n";
    json agree;
    agree["tool"] = kVersion;
    agree["command"] = "stationary-check";
    agree["alpha"] = alpha;
    agree["truncation"] = truncation;
    json rows = json::array();
    double worst = 0.0, worst_z = 0.0;
    for (double l : parse_list(lambdas)) {
      const std::complex<double> s_weyl = smatrix(boundary_limit(model, l, t)).S(0, 0);
      const auto stat = st.stationary_smatrix(l);
      const std::complex<double> s_cls = model->oracle_smatrix_full(l, t)(0, 0);
      csv += fmt(l) + ",weyl," + fmt(s_weyl.real()) + "," + fmt(s_weyl.imag()) + "\n";
      csv += fmt(l) + ",stationary," + fmt(stat.S.real()) + "," + fmt(stat.S.imag()) + "\n";
      csv += fmt(l) + ",rank-one," + fmt(s_cls.real()) + "," + fmt(s_cls.imag()) + "\n";
      const double pair_dev = std::max({std::abs(s_weyl - stat.S),
                                        std::abs(s_weyl - s_cls),
                                        std::abs(stat.S - s_cls)});
      // Z-identity residual: stationary Z vs -M(lambda+i0)^{-1}/(1+lambda^2)
      const auto zv = st.z_value(l);
      const std::complex<double> m_plus =
          model->weyl_boundary(l, t)(0, 0);
      const double zres = std::abs(zv.z + 1.0 / ((1.0 + l * l) * m_plus));
      worst = std::max(worst, pair_dev);
      worst_z = std::max(worst_z, zres);
      rows.push_back({{"lambda", l},
                      {"max_pairwise_deviation", pair_dev},
                      {"z_identity_residual", zres},
                      {"density", stat.K}});
    }
    agree["rows"] = rows;
    agree["max_pairwise_deviation"] = worst;
    agree["max_z_identity_residual"] = worst_z;
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "stationary.csv", csv);
    write_file(dir / "agreement.json", agree.dump(2) + "\n");
  });
  return 0;
}

int cmd_audit(CLI::App* cmd) {
  static CommonConfig c;
  static std::string run_spec;
  static std::string z_res = "-2:2:5";
  static std::string z_ims = "0.1,1.0";
  attach_common(cmd, c, run_spec);
  cmd->add_option("--z-re", z_res, "real parts, min:max:count");
  cmd->add_option("--z-im", z_ims, "imaginary parts, comma list");
  cmd->callback([cmd, &run_spec = run_spec] {
    apply_run_spec(cmd, c, run_spec);
    if (c.model.empty()) throw ModelDomainError("--model is required");
    const ModelHandle model = make_model(c.model, to_params(c));
    const ChannelTruncation trunc = model->truncation(c.modes);
    std::vector<SpectralPoint> grid;
    for (double re : parse_grid(z_res))
      for (double im : parse_list(z_ims)) grid.push_back({re, im});
    const auto rep = nevanlinna_audit(model, grid, trunc);

    json out;
    out["tool"] = kVersion;
    out["command"] = "nevanlinna-audit";
    out["model"] = model_json(c);
    out["channels"] = trunc.size();
    out["strict"] = rep.strict;
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"z_re", r.z.real()},
                      {"z_im", r.z.imag()},
                      {"min_im_eigenvalue", r.min_im_eigenvalue},
                      {"conj_symmetry_residual", r.conj_symmetry_residual}});
    out["rows"] = rows;
    json decay = json::array();
    for (std::size_t k = 0; k < rep.truncation_sizes.size(); ++k)
      decay.push_back({{"channels", rep.truncation_sizes[k]},
                       {"im_singular_values", rep.im_singular_values[k]}});
    out["im_decay_across_truncations"] = decay;
    const fs::path dir(c.out_dir);
    fs::create_directories(dir);
    write_file(dir / "audit.json", out.dump(2) + "\n");
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - scattering matrices from boundary values of Weyl functions"};
  app.require_subcommand(1);

  static CommonConfig sm_cfg;
  static std::string sm_spec;
  CLI::App* sm = app.add_subcommand("smatrix", "sweep S(lambda) over a grid");
  attach_common(sm, sm_cfg, sm_spec);

  static CommonConfig ep_cfg;
  static std::string ep_spec;
  CLI::App* ep = app.add_subcommand("eigenphases", "eigenphase table over a grid");
  attach_common(ep, ep_cfg, ep_spec);

  CLI::App* kr = app.add_subcommand("krein-check", "resolvent-formula residuals");
  cmd_krein(kr);
  CLI::App* sv = app.add_subcommand("sv-decay", "singular-value decay verdict");
  cmd_sv_decay(sv);
  CLI::App* st = app.add_subcommand("stationary-check", "three-route comparison");
  cmd_stationary(st);
  CLI::App* au = app.add_subcommand("nevanlinna-audit", "Nevanlinna property report");
  cmd_audit(au);

  try {
    app.parse(argc, argv);
    if (sm->parsed()) {
      apply_run_spec(sm, sm_cfg, sm_spec);
      return cmd_smatrix(sm_cfg, false);
    }
    if (ep->parsed()) {
      apply_run_spec(ep, ep_cfg, ep_spec);
      return cmd_smatrix(ep_cfg, true);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
