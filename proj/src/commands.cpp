// Copyright 2026 The sqthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sqthermo/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sqthermo/collisional.hpp"
#include "sqthermo/errors.hpp"
#include "sqthermo/fock.hpp"
#include "sqthermo/io.hpp"
#include "sqthermo/otto.hpp"
#include "sqthermo/thermo.hpp"

namespace sqt {

namespace fs = std::filesystem;

namespace {

struct OutputFile {
  std::string name;
  std::string contents;
};

struct Outputs {
  std::vector<OutputFile> files;
  std::vector<std::string> warnings;
};

struct Common {
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::string out = ".";
};

using Task = std::function<Outputs()>;

// --- shared config pieces --------------------------------------------------

SqueezeParams read_squeeze(ConfigReader& c, double r0, double theta0) {
  const double r = c.non_negative("r", r0);
  const double theta = c.number("theta", theta0);
  return SqueezeParams(r, theta);
}

struct ReservoirCfg {
  double beta, omega, gamma;
  SqueezeParams sq;
  ReservoirSpec spec() const { return ReservoirSpec(beta, omega, sq, gamma); }
  json to_json() const {
    return {{"beta", beta}, {"omega", omega}, {"gamma", gamma}, {"r", sq.r()}, {"theta", sq.theta()}};
  }
};

ReservoirCfg read_reservoir(ConfigReader& c, double gamma0) {
  ReservoirCfg rc{c.positive("beta", 1.0), c.positive("omega", 1.0), c.positive("gamma", gamma0),
                  read_squeeze(c, 0.5, 0.0)};
  return rc;
}

struct InitialCfg {
  std::string type = "vacuum";
  double n_th = 0.0;
  SqueezeParams sq;
  long n = 0;
  std::optional<GaussianState> state;

  bool gaussian() const { return type != "diagonal_pi" && type != "number"; }

  GaussianState gaussian_state() const {
    if (type == "vacuum") return GaussianState::vacuum();
    if (type == "thermal") return GaussianState::thermal(n_th);
    if (type == "squeezed_thermal") return apply_squeeze(GaussianState::thermal(n_th), sq);
    return *state;
  }

  json to_json() const {
    json j = {{"type", type}};
    if (type == "thermal" || type == "squeezed_thermal") j["n_th"] = n_th;
    if (type == "squeezed_thermal") {
      j["r"] = sq.r();
      j["theta"] = sq.theta();
    }
    if (type == "number") j["n"] = n;
    if (type == "gaussian") j["state"] = sqt::to_json(*state);
    return j;
  }
};

InitialCfg read_initial(ConfigReader& parent, const std::string& fallback_type, bool allow_fock) {
  ConfigReader c = parent.child("initial");
  InitialCfg ic;
  ic.type = c.string("type", fallback_type);
  if (ic.type == "vacuum" || ic.type == "diagonal_pi") {
    if (ic.type == "diagonal_pi" && !allow_fock) c.fail("type", "non-Gaussian state not supported here");
  } else if (ic.type == "thermal") {
    ic.n_th = c.non_negative("n_th", 0.5);
  } else if (ic.type == "squeezed_thermal") {
    ic.n_th = c.non_negative("n_th", 0.5);
    ic.sq = read_squeeze(c, 0.3, 0.0);
  } else if (ic.type == "number") {
    if (!allow_fock) c.fail("type", "non-Gaussian state not supported here");
    ic.n = c.integer("n", 1);
    if (ic.n < 0) c.fail("n", "must be >= 0");
  } else if (ic.type == "gaussian") {
    const std::optional<json> st = c.raw("state");
    if (!st) c.fail("state", "required for type 'gaussian'");
    try {
      ic.state = gaussian_from_json(*st);
    } catch (const std::exception& e) {
      c.fail("state", e.what());
    }
    if (ic.state->n_modes() != 1) c.fail("state", "single-mode state required");
    if (min_symplectic_eigenvalue(*ic.state) < 0.5 - 1e-12) c.fail("state", "unphysical covariance");
  } else {
    c.fail("type", "expected one of vacuum, thermal, squeezed_thermal, gaussian" +
                       std::string(allow_fock ? ", number, diagonal_pi" : ""));
  }
  c.finish();
  return ic;
}

std::string table_text(const Table& t, const std::string& format) {
  return format == "json" ? dump(t.to_json()) : t.to_csv();
}

std::string table_name(const std::string& stem, const std::string& format) {
  return stem + (format == "json" ? ".json" : ".csv");
}

Table ledger_table(const ThermoLedger& l) {
  Table t{{"t", "S", "Q", "A", "Phi", "Sigma"}, {}};
  for (std::size_t i = 0; i < l.size(); ++i) {
    t.add_row({l.times[i], l.S[i], l.Q[i], l.A[i], l.Phi[i], l.Sigma[i]});
  }
  return t;
}

json ledger_summary(const ThermoLedger& l) {
  const std::size_t e = l.size() - 1;
  return {{"Q", l.Q[e]},
          {"DeltaS", l.S[e] - l.S[0]},
          {"DeltaPhi", l.Phi[e]},
          {"Sigma", l.Sigma[e]},
          {"max_sigma_decrease", l.max_sigma_decrease()},
          {"max_balance_error", l.max_balance_error()}};
}

}  // namespace

namespace {

// --- relax -------------------------------------------------------------------

Task parse_relax(ConfigReader& c, const Common& common, json& eff) {
  const ReservoirCfg rc = read_reservoir(c, 1.0);
  const double t_end = c.positive("t_end", 10.0);
  const long n_samples = c.integer("n_samples", 201);
  if (n_samples < 2) c.fail("n_samples", "must be >= 2");
  const double dt_max = c.positive("dt_max", 0.01);
  const long dim_cfg = c.integer("dim", 0);
  if (dim_cfg != 0 && dim_cfg < 2) c.fail("dim", "must be 0 (automatic) or >= 2");
  const double floor = c.positive("eigen_floor", kEigenFloor);
  const InitialCfg init = read_initial(c, "diagonal_pi", true);
  const ReservoirSpec res = rc.spec();

  eff = rc.to_json();
  eff.update({{"t_end", t_end}, {"n_samples", n_samples}, {"dt_max", dt_max}, {"dim", dim_cfg},
              {"eigen_floor", floor}, {"initial", init.to_json()}});
  const std::string format = common.format;

  return [=]() {
    int dim = static_cast<int>(dim_cfg);
    if (dim == 0) {
      dim = default_dim(res);
      if (init.gaussian()) dim = std::max(dim, default_dim(init.gaussian_state()));
      if (init.type == "number") dim = std::max<int>(dim, static_cast<int>(init.n) + 40);
    }
    if (init.type == "number" && init.n >= dim) {
      throw TruncationError("relax: number state above truncation", static_cast<int>(init.n) + 40);
    }
    FockDensityMatrix rho0 = init.type == "diagonal_pi" ? dephased_steady_state(dim, res)
                             : init.type == "number"    ? FockDensityMatrix::number_state(dim, init.n)
                                                        : gaussian_to_fock(init.gaussian_state(), dim);
    // Moment equations are closed for any state, so the Gaussian backend runs
    // on the moment-matched Gaussian state.
    const GaussianState g0 = init.gaussian() ? init.gaussian_state() : from_moments(fock_moments(rho0));
    const LindbladGenerator gen(dim, res);
    const FockRun fr = fock_ledger(rho0, gen, t_end, static_cast<int>(n_samples), dt_max, floor);
    const ThermoLedger gl = gaussian_ledger(g0, res, t_end, static_cast<int>(n_samples));

    double dev_moments = 0.0, dev_energy = 0.0, dev_asym = 0.0, dev_entropy = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const ModeMoments mg = moments(relax_moments_analytic(g0, res, gl.times[i]));
      const ModeMoments& mf = fr.moments[i];
      dev_moments = std::max({dev_moments, std::abs(mg.a - mf.a), std::abs(mg.a2 - mf.a2),
                              std::abs(mg.n - mf.n)});
      dev_energy = std::max(dev_energy, std::abs(fr.energy[i] - (gl.Q[i] + mean_energy(g0, res.mode()))));
      dev_asym = std::max(dev_asym, std::abs(fr.asymmetry[i] - gl.A[i]));
      dev_entropy = std::max(dev_entropy, std::abs(fr.ledger.S[i] - gl.S[i]));
    }

    Table traj{{"t", "energy", "asymmetry", "entropy", "rel_entropy_to_pi", "trace_drift"}, {}};
    for (std::size_t i = 0; i < fr.ledger.size(); ++i) {
      traj.add_row({fr.ledger.times[i], fr.energy[i], fr.asymmetry[i], fr.ledger.S[i],
                    fr.rel_entropy[i], fr.trace_drift[i]});
    }

    const json fsum = ledger_summary(fr.ledger);
    const double q = fsum["Q"], dphi = fsum["DeltaPhi"], ds = fsum["DeltaS"], sig = fsum["Sigma"];
    json summary = {
        {"dim", dim},
        {"steps", fr.stats.steps},
        {"dt", fr.stats.dt},
        {"initial_gaussian", init.gaussian()},
        {"max_moment_deviation", dev_moments},
        {"max_energy_deviation", dev_energy},
        {"max_asymmetry_deviation", dev_asym},
        {"max_entropy_deviation", init.gaussian() ? json(dev_entropy) : json(nullptr)},
        {"fock",
         {{"ledger", fsum},
          {"D_initial", fr.rel_entropy.front()},
          {"D_final", fr.rel_entropy.back()},
          {"max_trace_drift", fr.stats.max_trace_drift},
          {"max_hermiticity_drift", fr.stats.max_hermiticity_drift},
          {"max_top_population", fr.stats.max_top_population}}},
        {"gaussian", {{"ledger", ledger_summary(gl)}}},
        {"flags",
         {{"heat_zero", std::abs(q) <= 1e-8},
          {"DeltaPhi_negative", dphi < 0.0},
          {"DeltaS_negative", ds < 0.0},
          {"Sigma_positive", sig > 0.0}}}};

    Outputs out;
    out.files.push_back({table_name("ledger_fock", format), table_text(ledger_table(fr.ledger), format)});
    out.files.push_back({table_name("ledger_gaussian", format), table_text(ledger_table(gl), format)});
    out.files.push_back({table_name("trajectory_fock", format), table_text(traj, format)});
    out.files.push_back({"summary.json", dump(summary)});
    return out;
  };
}

// --- cycle -------------------------------------------------------------------

CycleParams read_cycle(ConfigReader& c, bool with_omega2_r) {
  CycleParams p;
  p.beta1 = c.positive("beta1", 1.0);
  p.beta2 = c.positive("beta2", 0.2);
  p.omega1 = c.positive("omega1", 1.0);
  p.omega2 = with_omega2_r ? c.positive("omega2", 3.0) : std::max(p.omega1, 1.0);
  p.sq = with_omega2_r ? read_squeeze(c, 0.5, 0.0) : SqueezeParams(0.0, c.number("theta", 0.0));
  if (p.beta2 > p.beta1) c.fail("beta2", "must be <= beta1");
  if (with_omega2_r && p.omega2 < p.omega1) c.fail("omega2", "must be >= omega1");
  return p;
}

Task parse_cycle(ConfigReader& c, const Common&, json& eff) {
  const CycleParams p = read_cycle(c, true);
  eff = to_json(p);
  return [=]() {
    const CycleReport rep = analyze_cycle(p);
    const CycleReport num = verify_cycle_numeric(p);
    const FreeEnergySplit fe = free_energy_decomposition(p);
    const double dev = std::max({std::abs(num.W_AB - rep.W_AB), std::abs(num.Q_BC - rep.Q_BC),
                                 std::abs(num.W_CD - rep.W_CD), std::abs(num.Q_DA - rep.Q_DA),
                                 std::abs(num.W_out - rep.W_out),
                                 std::abs(num.DeltaA_BC - rep.DeltaA_BC)});
    json j = {{"params", to_json(p)},
              {"report", to_json(rep)},
              {"numeric", to_json(num)},
              {"numeric_max_deviation", dev},
              {"free_energy", to_json(fe)}};
    return Outputs{{{"cycle.json", dump(j)}}, {}};
  };
}

// --- phase diagram and figures -------------------------------------------------

Table phase_table(const std::vector<PhaseCell>& cells) {
  Table t{{"omega2", "r", "region", "eta"}, {}};
  for (const auto& cell : cells) {
    t.add_row({cell.omega2, cell.r, to_string(cell.region), optional_cell(cell.eta)});
  }
  return t;
}

Task parse_phase(ConfigReader& c, const Common& common, json& eff) {
  const CycleParams base = read_cycle(c, false);
  PhaseGrid g;
  g.omega2_min = c.positive("omega2_min", 1.0);
  g.omega2_max = c.positive("omega2_max", 8.0);
  g.n_omega2 = static_cast<int>(c.integer("n_omega2", 200));
  g.r_min = c.non_negative("r_min", 0.0);
  g.r_max = c.positive("r_max", 1.5);
  g.n_r = static_cast<int>(c.integer("n_r", 200));
  if (g.omega2_min < base.omega1) c.fail("omega2_min", "must be >= omega1");
  if (!(g.omega2_max > g.omega2_min)) c.fail("omega2_max", "must be > omega2_min");
  if (!(g.r_max > g.r_min)) c.fail("r_max", "must be > r_min");
  if (g.n_omega2 < 2) c.fail("n_omega2", "must be >= 2");
  if (g.n_r < 2) c.fail("n_r", "must be >= 2");
  eff = {{"beta1", base.beta1}, {"beta2", base.beta2}, {"omega1", base.omega1},
         {"theta", base.sq.theta()}, {"omega2_min", g.omega2_min}, {"omega2_max", g.omega2_max},
         {"n_omega2", g.n_omega2}, {"r_min", g.r_min}, {"r_max", g.r_max}, {"n_r", g.n_r}};
  const std::string format = common.format;
  return [=]() {
    const auto cells = phase_diagram(g, base);
    Outputs out;
    out.files.push_back({table_name("phase_diagram", format), table_text(phase_table(cells), format)});
    for (const auto& cell : cells) {
      if (cell.region == Region::Infeasible) {
        out.warnings.push_back("infeasible sign pattern at omega2=" + format_double(cell.omega2) +
                               " r=" + format_double(cell.r));
      }
    }
    return out;
  };
}

Task parse_figures(ConfigReader& c, const Common& common, json& eff) {
  const long n_w = c.integer("n_omega2", 400);
  const double w_max = c.positive("omega2_max", 8.0);
  const long n_r = c.integer("n_r", 241);
  const long res = c.integer("phase_resolution", 200);
  if (n_w < 2) c.fail("n_omega2", "must be >= 2");
  if (!(w_max > 1.0)) c.fail("omega2_max", "must be > 1");
  if (n_r < 2) c.fail("n_r", "must be >= 2");
  if (res < 2) c.fail("phase_resolution", "must be >= 2");
  eff = {{"n_omega2", n_w}, {"omega2_max", w_max}, {"n_r", n_r}, {"phase_resolution", res}};
  const std::string format = common.format;
  return [=]() {
    CycleParams base;  // beta1 = 1, beta2 = 0.2, omega1 = 1
    const std::vector<double> rs = {0.0, 0.5, 0.7, 0.8, 0.9};
    Table fig2{{"omega2"}, {}};
    for (double r : rs) fig2.columns.push_back("W_out_r" + format_double(r));
    for (long i = 0; i < n_w; ++i) {
      CycleParams p = base;
      p.omega2 = 1.0 + (w_max - 1.0) * static_cast<double>(i) / static_cast<double>(n_w - 1);
      std::vector<Cell> row{p.omega2};
      for (double r : rs) {
        p.sq = SqueezeParams(r, 0.0);
        row.push_back(analyze_cycle(p).W_out);
      }
      fig2.add_row(std::move(row));
    }

    PhaseGrid g;
    g.n_omega2 = static_cast<int>(res);
    g.n_r = static_cast<int>(res);
    const auto cells = phase_diagram(g, base);

    Table fig4{{"r", "eta", "eta_max", "eta_c", "eta_ht"}, {}};
    for (long j = 0; j < n_r; ++j) {
      CycleParams p = base;
      p.omega2 = 3.0;
      p.sq = SqueezeParams(1.2 * static_cast<double>(j) / static_cast<double>(n_r - 1), 0.0);
      const CycleReport rep = analyze_cycle(p);
      fig4.add_row({p.sq.r(), optional_cell(rep.eta), optional_cell(rep.eta_max), rep.eta_c, rep.eta_ht});
    }

    Outputs out;
    out.files.push_back({table_name("fig2", format), table_text(fig2, format)});
    out.files.push_back({table_name("fig3", format), table_text(phase_table(cells), format)});
    out.files.push_back({table_name("fig4", format), table_text(fig4, format)});
    return out;
  };
}

// --- collide -----------------------------------------------------------------

Task parse_collide(ConfigReader& c, const Common& common, json& eff) {
  const double beta = c.positive("beta", 1.0);
  const double omega = c.positive("omega", 1.0);
  const SqueezeParams sq = read_squeeze(c, 0.5, 0.0);
  const double gamma = c.positive("gamma", 0.01);
  const std::vector<double> g_taus = c.numbers("g_tau", {0.1, 0.05, 0.025});
  for (double gt : g_taus) {
    if (!(gt > 0.0) || gt > 0.1) c.fail("g_tau", "entries must lie in (0, 0.1]");
  }
  EnsembleOptions opt;
  opt.n_traj = static_cast<int>(c.integer("n_traj", 256));
  opt.t_end = c.positive("t_end", 200.0);
  opt.n_samples = static_cast<int>(c.integer("n_samples", 41));
  if (opt.n_traj < 2) c.fail("n_traj", "must be >= 2");
  if (opt.n_samples < 3) c.fail("n_samples", "must be >= 3");
  const double trace_g_tau = c.positive("trace_g_tau", g_taus.front());
  if (trace_g_tau > 0.1) c.fail("trace_g_tau", "must be <= 0.1");
  const long trace_n = c.integer("trace_collisions", 1000);
  if (trace_n < 0) c.fail("trace_collisions", "must be >= 0");
  const InitialCfg init = read_initial(c, "vacuum", false);
  const std::uint64_t seed = common.seed;
  // Constructing the trace config validates the collision invariants.
  try {
    (void)CollisionConfig::for_gamma(gamma, trace_g_tau, trace_n, seed, beta, omega, sq);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("collide: ") + e.what());
  }

  eff = {{"beta", beta}, {"omega", omega}, {"r", sq.r()}, {"theta", sq.theta()},
         {"gamma", gamma}, {"g_tau", g_taus}, {"n_traj", opt.n_traj}, {"t_end", opt.t_end},
         {"n_samples", opt.n_samples}, {"trace_g_tau", trace_g_tau},
         {"trace_collisions", trace_n}, {"initial", init.to_json()}};
  const std::string format = common.format;

  return [=]() {
    const GaussianState g0 = init.gaussian_state();
    const CollisionConfig tcfg = CollisionConfig::for_gamma(gamma, trace_g_tau, trace_n, seed, beta, omega, sq);
    const CollisionTrace trace = run_collisions(g0, tcfg);
    const EntropyBalance bal = reservoir_entropy_balance(trace);
    Table tt{{"collision_index", "t", "n_sys", "var_sq", "var_anti", "dS_ancilla"}, {}};
    for (const auto& rec : trace.records) {
      tt.add_row({rec.index, rec.t, rec.n_sys, rec.var_sq, rec.var_anti, rec.dS_ancilla});
    }

    const LimitReport lim = lindblad_limit_check(gamma, g_taus, beta, omega, sq, g0, opt, seed);
    Outputs out;
    json points = json::array();
    for (const auto& p : lim.points) {
      points.push_back({{"g_tau", p.g_tau},
                        {"collision_rate", p.rate},
                        {"gamma_eff", p.gamma_eff},
                        {"fitted_rate", p.fit.rate},
                        {"fitted_rate_sigma", p.fit.sigma},
                        {"r_squared", p.fit.r_squared},
                        {"rel_error", p.rel_error},
                        {"expected_rel_error", p.expected_rel_error},
                        {"regime_ok", p.regime_ok},
                        {"sum_dSR", p.sum_dSR},
                        {"minus_Phi", p.minus_Phi},
                        {"discrepancy", p.discrepancy},
                        {"discrepancy_sigma", p.discrepancy_sigma},
                        {"n_traj", opt.n_traj},
                        {"seed", seed}});
      if (!p.regime_ok) {
        out.warnings.push_back("regime violation: exponential fit R^2 = " +
                               format_double(p.fit.r_squared) + " at g_tau = " + format_double(p.g_tau));
      }
    }
    json summary = {{"gamma", gamma},
                    {"n_traj", opt.n_traj},
                    {"seed", seed},
                    {"points", points},
                    {"trace",
                     {{"g_tau", trace_g_tau},
                      {"n_collisions", trace_n},
                      {"sum_dSR", bal.sum_dSR},
                      {"minus_Phi", bal.minus_Phi},
                      {"discrepancy", bal.discrepancy},
                      {"final_state", to_json(trace.final_state)}}}};
    out.files.push_back({table_name("trace", format), table_text(tt, format)});
    out.files.push_back({"ensemble.json", dump(summary)});
    return out;
  };
}

// --- single reservoir ----------------------------------------------------------

Task parse_single(ConfigReader& c, const Common&, json& eff) {
  const ReservoirCfg rc = read_reservoir(c, 1.0);
  ConfigReader u = c.child("unitary");
  const std::string type = u.string("type", "unsqueeze");
  GaussianUnitary gu;
  json ueff = {{"type", type}};
  if (type == "unsqueeze") {
    gu = GaussianUnitary::squeeze(rc.sq.inverse());
  } else if (type == "identity") {
  } else if (type == "squeeze") {
    const SqueezeParams s = read_squeeze(u, 0.1, rc.sq.theta());
    gu = GaussianUnitary::squeeze(s);
    ueff.update({{"r", s.r()}, {"theta", s.theta()}});
  } else if (type == "rotation") {
    const double phi = u.number("phi", 0.0);
    gu = GaussianUnitary::rotation(phi);
    ueff["phi"] = phi;
  } else if (type == "displacement") {
    const double re = u.number("re", 0.0), im = u.number("im", 0.0);
    gu = GaussianUnitary::displacement_op({re, im});
    ueff.update({{"re", re}, {"im", im}});
  } else {
    u.fail("type", "expected one of unsqueeze, identity, squeeze, rotation, displacement");
  }
  u.finish();
  eff = rc.to_json();
  eff["unitary"] = ueff;
  return [=]() {
    const ReservoirSpec res = rc.spec();
    const ProtocolResult pr = two_stroke_protocol(res, gu);
    const MaxWork mw = max_extractable_work(res);
    json j = {{"W_out", pr.W_out}, {"Q", pr.Q},       {"Sigma", pr.Sigma},
              {"bound", pr.bound}, {"deltaA", pr.deltaA}, {"W_max", mw.W_max},
              {"Sigma_W_max", mw.Sigma}};
    return Outputs{{{"protocol.json", dump(j)}}, {}};
  };
}

using Parser = std::function<Task(ConfigReader&, const Common&, json&)>;

const std::map<std::string, Parser>& parsers() {
  static const std::map<std::string, Parser> table = {
      {"relax", parse_relax},   {"cycle", parse_cycle},     {"phase-diagram", parse_phase},
      {"figures", parse_figures}, {"collide", parse_collide}, {"single-reservoir", parse_single}};
  return table;
}

json load_config(const std::optional<std::string>& path) {
  if (!path) return json::object();
  std::ifstream in(*path);
  if (!in) throw ConfigError("config: cannot read '" + *path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: invalid JSON (" + std::string(e.what()) + ")");
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"relax",   "cycle",   "phase-diagram",
                                                 "figures", "collide", "single-reservoir"};
  return names;
}

int run_command(const std::string& name, const CommonOptions& opts, std::ostream& err) {
  Task task;
  Common common;
  json eff;
  try {
    auto it = parsers().find(name);
    if (it == parsers().end()) throw ConfigError("unknown command '" + name + "'");
    ConfigReader root(load_config(opts.config_path), "");
    common.format = root.string("format", "csv");
    const long seed = root.integer("seed", 1);
    if (seed < 0) root.fail("seed", "must be >= 0");
    common.seed = static_cast<std::uint64_t>(seed);
    common.out = root.string("out", ".");
    const long threads = root.integer("threads", 0);
    if (opts.format) common.format = *opts.format;
    if (opts.seed) common.seed = *opts.seed;
    if (opts.out_dir) common.out = *opts.out_dir;
    int n_threads = static_cast<int>(opts.threads.value_or(static_cast<int>(threads)));
    if (common.format != "csv" && common.format != "json") {
      throw ConfigError("format: expected csv or json");
    }
    if (n_threads < 0) throw ConfigError("threads: must be >= 0");
    task = it->second(root, common, eff);
    root.finish();
    if (n_threads > 0) omp_set_num_threads(n_threads);
    eff["format"] = common.format;
    eff["seed"] = common.seed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  Outputs out;
  try {
    out = task();
  } catch (const TruncationError& e) {
    err << "numerical failure: " << e.what() << " (suggested dim: " << e.required_dim() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  for (const auto& w : out.warnings) err << "warning: " << w << '\n';

  try {
    fs::create_directories(common.out);
    out.files.push_back({"config.json", dump(eff)});
    for (const auto& f : out.files) {
      std::ofstream os(fs::path(common.out) / f.name, std::ios::binary);
      os << f.contents;
      if (!os) throw std::runtime_error("cannot write " + f.name);
    }
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace sqt
