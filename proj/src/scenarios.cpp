#include "qd/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qd/rng.hpp"

namespace qd {

namespace {

constexpr const char* kVersion = "1.0.0";

ordered_json conventions_block() {
  ordered_json c;
  c["entropy_base"] = "log2";
  c["fidelity"] = "uhlmann_squared";
  c["basis_order"] = "|00>,|01>,|10>,|11>, qubit A left";
  c["correlation_matrix"] = "raw Pauli expectation values, m00 = 1";
  c["rotation"] = "R_n(theta) = cos(theta/2) I - i sin(theta/2) n.sigma";
  c["rng"] = "splitmix64";
  c["optimizer"] = "fibonacci grid + compass pattern search";
  return c;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> grid_or(const std::vector<double>& grid,
                            std::vector<double> fallback) {
  return grid.empty() ? std::move(fallback) : grid;
}

void require_unit_interval(const std::vector<double>& grid,
                           const std::string& name) {
  for (double p : grid) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument(name + ": grid value outside [0,1]");
    }
  }
}

struct StateQuantities {
  DiscordResult da, db;
  double mi, tangle_v;
  Eigen::Vector4d sv;
  int rank;
};

StateQuantities quantify(const DensityOperator& rho,
                         const ScenarioConfig& cfg) {
  StateQuantities q{discord(rho, Qubit::A, cfg.optimizer),
                    discord(rho, Qubit::B, cfg.optimizer),
                    mutual_information(rho),
                    tangle(rho),
                    Eigen::Vector4d::Zero(),
                    0};
  const RankReport rr = correlation_rank(rho, cfg.rank_tolerance);
  q.sv = rr.singular_values;
  q.rank = rr.rank;
  return q;
}

}  // namespace

ScenarioConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "seed",       "out",        "tolerance",   "shots",
      "copies",     "bins",       "instances",   "damping_grid",
      "werner_grid", "shots_grid", "optimizer",  "prepare",
      "p",          "state_file"};
  if (!j.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  ScenarioConfig cfg;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("tolerance")) cfg.rank_tolerance = j.at("tolerance").get<double>();
  if (j.contains("shots")) cfg.shots = j.at("shots").get<long>();
  if (j.contains("copies")) cfg.copies = j.at("copies").get<int>();
  if (j.contains("bins")) cfg.bins = j.at("bins").get<int>();
  if (j.contains("instances")) cfg.instances = j.at("instances").get<int>();
  if (j.contains("damping_grid"))
    cfg.damping_grid = j.at("damping_grid").get<std::vector<double>>();
  if (j.contains("werner_grid"))
    cfg.werner_grid = j.at("werner_grid").get<std::vector<double>>();
  if (j.contains("shots_grid"))
    cfg.shots_grid = j.at("shots_grid").get<std::vector<long>>();
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    static const std::set<std::string> opt_known = {"grid_points",
                                                    "axis_tolerance"};
    for (const auto& [key, _] : o.items()) {
      if (!opt_known.count(key)) {
        throw std::invalid_argument("config: unknown key 'optimizer." + key +
                                    "'");
      }
    }
    if (o.contains("grid_points"))
      cfg.optimizer.grid_points = o.at("grid_points").get<int>();
    if (o.contains("axis_tolerance"))
      cfg.optimizer.axis_tolerance = o.at("axis_tolerance").get<double>();
  }
  if (j.contains("prepare")) cfg.prepare_name = j.at("prepare").get<std::string>();
  if (j.contains("p")) cfg.prepare_p = j.at("p").get<double>();
  if (j.contains("state_file"))
    cfg.state_file = j.at("state_file").get<std::string>();

  if (!(cfg.rank_tolerance > 0.0 && cfg.rank_tolerance < 0.5)) {
    throw std::invalid_argument("config: tolerance outside (0, 0.5)");
  }
  if (cfg.shots < 1) throw std::invalid_argument("config: shots < 1");
  if (cfg.copies < 2) throw std::invalid_argument("config: copies < 2");
  if (cfg.bins < 2) throw std::invalid_argument("config: bins < 2");
  if (cfg.instances < 1) throw std::invalid_argument("config: instances < 1");
  if (cfg.optimizer.grid_points < 8) {
    throw std::invalid_argument("config: optimizer.grid_points < 8");
  }
  return cfg;
}

ordered_json config_to_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out_dir;
  j["tolerance"] = cfg.rank_tolerance;
  j["shots"] = cfg.shots;
  j["copies"] = cfg.copies;
  j["bins"] = cfg.bins;
  j["instances"] = cfg.instances;
  j["damping_grid"] = grid_or(cfg.damping_grid, default_damping_grid());
  j["werner_grid"] = grid_or(cfg.werner_grid, default_werner_grid());
  j["shots_grid"] = cfg.shots_grid;
  j["optimizer"]["grid_points"] = cfg.optimizer.grid_points;
  j["optimizer"]["axis_tolerance"] = cfg.optimizer.axis_tolerance;
  if (!cfg.prepare_name.empty()) {
    j["prepare"] = cfg.prepare_name;
    j["p"] = cfg.prepare_p;
  }
  if (!cfg.state_file.empty()) j["state_file"] = cfg.state_file;
  return j;
}

std::vector<double> default_damping_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

std::vector<double> default_werner_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(i / 20.0);
  return g;
}

Report::Report(std::string scenario, const ScenarioConfig& cfg)
    : scenario_(std::move(scenario)) {
  doc_["artifact"] = "qdsim";
  doc_["version"] = kVersion;
  doc_["scenario"] = scenario_;
  doc_["seed"] = cfg.seed;
  doc_["conventions"] = conventions_block();
  doc_["config"] = config_to_json(cfg);
  doc_["tables"] = ordered_json::object();
  doc_["operators"] = ordered_json::object();
}

void Report::add_table(const std::string& name,
                       const std::vector<std::string>& columns) {
  doc_["tables"][name]["columns"] = columns;
  doc_["tables"][name]["rows"] = ordered_json::array();
}

void Report::add_row(const std::string& name,
                     std::vector<ordered_json> cells) {
  for (const auto& c : cells) {
    if (c.is_number_float() && !std::isfinite(c.get<double>())) {
      throw std::invalid_argument("Report: non-finite table cell");
    }
  }
  doc_["tables"][name]["rows"].push_back(std::move(cells));
}

void Report::add_operator(const std::string& name, const Eigen::MatrixXcd& m) {
  ordered_json entries = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  doc_["operators"][name] = std::move(entries);
}

std::string Report::json_text() const { return doc_.dump(2) + "\n"; }

void Report::write(const std::filesystem::path& out_dir) const {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / (scenario_ + ".json"), std::ios::binary);
    out << json_text();
  }
  for (const auto& [name, table] : doc_["tables"].items()) {
    std::ofstream out(out_dir / (scenario_ + "." + name + ".tsv"),
                      std::ios::binary);
    const auto& columns = table["columns"];
    for (size_t i = 0; i < columns.size(); ++i) {
      out << columns[i].get<std::string>()
          << (i + 1 < columns.size() ? "\t" : "\n");
    }
    for (const auto& row : table["rows"]) {
      for (size_t i = 0; i < row.size(); ++i) {
        const auto& cell = row[i];
        if (cell.is_null()) {
          // empty field
        } else if (cell.is_string()) {
          out << cell.get<std::string>();
        } else if (cell.is_number_integer()) {
          out << cell.get<long>();
        } else {
          out << fmt_double(cell.get<double>());
        }
        out << (i + 1 < row.size() ? "\t" : "\n");
      }
    }
  }
}

Report run_fig2(const ScenarioConfig& cfg) {
  const auto grid = grid_or(cfg.damping_grid, default_damping_grid());
  require_unit_interval(grid, "fig2");
  Report rep("fig2", cfg);
  rep.add_table(
      "sweep",
      {"p", "discord_a", "discord_b", "mutual_information", "tau_plus_x",
       "tau_plus_y", "tau_plus_z", "tau_minus_x", "tau_minus_y", "tau_minus_z",
       "cm1", "cm2", "cm3", "cm4"});
  const DensityOperator rho1 = prepare(ScenarioState::Rho1);
  for (double p : grid) {
    const DensityOperator rho =
        apply_channel(on_qubit(amplitude_damping(p), Qubit::B), rho1);
    const StateQuantities q = quantify(rho, cfg);
    const auto cond =
        conditional_ensemble(rho, Qubit::A, Eigen::Vector3d(1, 0, 0));
    const Eigen::Vector3d tp = bloch_vector(cond[0].state);
    const Eigen::Vector3d tm = bloch_vector(cond[1].state);
    rep.add_row("sweep",
                {p, q.da.value, q.db.value, q.mi, tp.x(), tp.y(), tp.z(),
                 tm.x(), tm.y(), tm.z(), q.sv[0], q.sv[1], q.sv[2], q.sv[3]});
    char label[32];
    std::snprintf(label, sizeof(label), "ad_p%g", p);
    rep.add_operator(label, rho.mat());
  }
  return rep;
}

namespace {

void add_state_row(Report& rep, const std::string& table,
                   const std::string& label, const DensityOperator& rho,
                   const ScenarioConfig& cfg, ordered_json predicted) {
  const StateQuantities q = quantify(rho, cfg);
  rep.add_row(table, {label, q.sv[0], q.sv[1], q.sv[2], q.sv[3], q.rank,
                      std::move(predicted), q.da.value, q.db.value,
                      q.tangle_v});
  rep.add_operator(label, rho.mat());
}

const std::vector<std::string> kStateColumns = {
    "state", "cm1",  "cm2",  "cm3",       "cm4",
    "rank",  "predicted_rank", "discord_a", "discord_b", "tangle"};

ordered_json try_predict(const DensityOperator& input, const RotationAxis& n) {
  try {
    return predict_dephasing_rank(fano_decompose(input), n);
  } catch (const unsupported_state_class&) {
    return nullptr;
  }
}

}  // namespace

Report run_fig3(const ScenarioConfig& cfg) {
  Report rep("fig3", cfg);
  rep.add_table("states", kStateColumns);
  const DensityOperator rho1 = prepare(ScenarioState::Rho1);
  for (double p : {0.0, 0.79, 1.0}) {
    const DensityOperator rho =
        apply_channel(on_qubit(amplitude_damping(p), Qubit::B), rho1);
    char label[32];
    std::snprintf(label, sizeof(label), "ad_p%.2f", p);
    add_state_row(rep, "states", label, rho, cfg, nullptr);
  }
  return rep;
}

Report run_fig4(const ScenarioConfig& cfg) {
  Report rep("fig4", cfg);
  rep.add_table("states", kStateColumns);
  const RotationAxis z = RotationAxis::z();
  const KrausChannel dephase_z = correlated_dephasing(z);

  const DensityOperator rho1 = prepare(ScenarioState::Rho1);
  const DensityOperator rho2 = prepare(ScenarioState::Rho2);
  const DensityOperator pp = prepare(ScenarioState::PlusPlus);

  add_state_row(rep, "states", "a_cd_rho1", apply_channel(dephase_z, rho1),
                cfg, try_predict(rho1, z));
  add_state_row(rep, "states", "b_rho2", rho2, cfg, nullptr);
  add_state_row(rep, "states", "c_cd_rho2", apply_channel(dephase_z, rho2),
                cfg, try_predict(rho2, z));
  add_state_row(rep, "states", "d_plus_plus", pp, cfg, nullptr);
  add_state_row(rep, "states", "e_cd_plus_plus", apply_channel(dephase_z, pp),
                cfg, try_predict(pp, z));

  // dephase, rotate both qubits by pi/2 about y, dephase again
  const DensityOperator stage1 = apply_channel(dephase_z, pp);
  const Eigen::Matrix4cd k =
      correlated_rotation(RotationAxis::y(), std::numbers::pi / 2.0);
  const DensityOperator rotated(k * stage1.mat() * k.adjoint());
  add_state_row(rep, "states", "f_cd_rot_cd_plus_plus",
                apply_channel(dephase_z, rotated), cfg,
                try_predict(rotated, z));
  return rep;
}

Report run_fig5(const ScenarioConfig& cfg) {
  const auto grid = grid_or(cfg.werner_grid, default_werner_grid());
  require_unit_interval(grid, "fig5");
  Report rep("fig5", cfg);
  rep.add_table("sweep",
                {"p", "discord_a", "discord_b", "tangle", "cm1", "cm2", "cm3",
                 "cm4", "variant_fidelity", "variant_trace_distance",
                 "variant_tangle", "variant_discord_a",
                 "variant_spectrum_deviation"});
  const Eigen::Matrix4cd ms2 = ms2_gate(std::numbers::pi / 4.0);
  for (double p : grid) {
    const DensityOperator ideal = prepare(ScenarioState::Werner, p);
    const DensityOperator input = prepare(ScenarioState::WernerInput, p);
    const DensityOperator variant(ms2 * input.mat() * ms2.adjoint());
    const StateQuantities q = quantify(ideal, cfg);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ei(ideal.mat(),
                                                       Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ev(variant.mat(),
                                                       Eigen::EigenvaluesOnly);
    const double spectrum_dev =
        (ei.eigenvalues() - ev.eigenvalues()).cwiseAbs().maxCoeff();

    rep.add_row("sweep",
                {p, q.da.value, q.db.value, q.tangle_v, q.sv[0], q.sv[1],
                 q.sv[2], q.sv[3], fidelity(variant, ideal),
                 trace_distance(variant, ideal), tangle(variant),
                 discord(variant, Qubit::A, cfg.optimizer).value,
                 spectrum_dev});
    char label[32];
    std::snprintf(label, sizeof(label), "werner_p%g", p);
    rep.add_operator(label, ideal.mat());
  }
  return rep;
}

Report run_supp_noise(const ScenarioConfig& cfg) {
  if (cfg.shots_grid.empty()) {
    throw std::invalid_argument("supp-noise: empty shots grid");
  }
  Report rep("supp_noise", cfg);
  rep.add_table("bias_vs_shots",
                {"shots", "discord_a_mean", "discord_a_std", "discord_b_mean",
                 "discord_b_std", "tangle_mean", "tangle_std", "cm1_mean",
                 "cm1_std", "cm2_mean", "cm2_std", "cm3_mean", "cm3_std",
                 "cm4_mean", "cm4_std", "fidelity_mean", "fidelity_std"});
  const DensityOperator rho1 = prepare(ScenarioState::Rho1);

  size_t hist_index = cfg.shots_grid.size() - 1;
  for (size_t i = 0; i < cfg.shots_grid.size(); ++i) {
    if (cfg.shots_grid[i] == 1000) hist_index = i;
  }

  for (size_t i = 0; i < cfg.shots_grid.size(); ++i) {
    const uint64_t stream = SplitMix64::derive_stream(cfg.seed, i);
    const MonteCarloSummary s =
        monte_carlo_study(rho1, cfg.shots_grid[i], cfg.copies, stream);
    rep.add_row("bias_vs_shots",
                {s.shots, s.discord_a.mean, s.discord_a.stddev,
                 s.discord_b.mean, s.discord_b.stddev, s.tangle.mean,
                 s.tangle.stddev, s.cm[0].mean, s.cm[0].stddev, s.cm[1].mean,
                 s.cm[1].stddev, s.cm[2].mean, s.cm[2].stddev, s.cm[3].mean,
                 s.cm[3].stddev, s.fidelity.mean, s.fidelity.stddev});
  }

  const uint64_t hist_stream = SplitMix64::derive_stream(cfg.seed, hist_index);
  const SingularValueHistogram h = singular_value_histogram(
      rho1, cfg.shots_grid[hist_index], cfg.copies, hist_stream, cfg.bins);
  rep.add_table("cm_histogram",
                {"bin_lo", "bin_hi", "cm1", "cm2", "cm3", "cm4"});
  for (int b = 0; b < h.bins; ++b) {
    const double lo = h.lo + (h.hi - h.lo) * b / h.bins;
    const double hi = h.lo + (h.hi - h.lo) * (b + 1) / h.bins;
    rep.add_row("cm_histogram", {lo, hi, h.counts[0][b], h.counts[1][b],
                                 h.counts[2][b], h.counts[3][b]});
  }
  return rep;
}

DensityOperator load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("load_state_file: cannot open " +
                                path.string());
  }
  Eigen::Matrix4cd m;
  for (int i = 0; i < 16; ++i) {
    double re, im;
    if (!(in >> re >> im)) {
      throw std::invalid_argument(
          "load_state_file: expected 16 lines of 're im'");
    }
    m(i / 4, i % 4) = cxd(re, im);
  }
  return DensityOperator(m);
}

Report run_state(const ScenarioConfig& cfg) {
  DensityOperator rho = DensityOperator::maximally_mixed(4);
  std::string source;
  if (!cfg.state_file.empty()) {
    rho = load_state_file(cfg.state_file);
    source = cfg.state_file;
  } else if (!cfg.prepare_name.empty()) {
    const auto s = scenario_state_from_name(cfg.prepare_name);
    if (!s) {
      throw std::invalid_argument("state: unknown scenario state '" +
                                  cfg.prepare_name + "'");
    }
    rho = prepare(*s, cfg.prepare_p);
    source = cfg.prepare_name;
  } else {
    throw std::invalid_argument("state: need either a prepare id or a file");
  }

  Report rep("state", cfg);
  const StateQuantities q = quantify(rho, cfg);
  const FanoForm f = fano_decompose(rho);

  ordered_json out;
  out["source"] = source;
  out["entropy"] = von_neumann_entropy(rho);
  out["mutual_information"] = q.mi;
  out["discord_a"] = {{"value", q.da.value},
                      {"classical_correlation", q.da.classical_correlation},
                      {"axis", {q.da.optimal_axis.x(), q.da.optimal_axis.y(),
                                q.da.optimal_axis.z()}}};
  out["discord_b"] = {{"value", q.db.value},
                      {"classical_correlation", q.db.classical_correlation},
                      {"axis", {q.db.optimal_axis.x(), q.db.optimal_axis.y(),
                                q.db.optimal_axis.z()}}};
  out["tangle"] = q.tangle_v;
  out["singular_values"] = {q.sv[0], q.sv[1], q.sv[2], q.sv[3]};
  out["rank"] = q.rank;
  out["rank_tolerance"] = cfg.rank_tolerance;
  out["bloch_a"] = {f.r_a.x(), f.r_a.y(), f.r_a.z()};
  out["bloch_b"] = {f.r_b.x(), f.r_b.y(), f.r_b.z()};
  ordered_json beta = ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    beta.push_back({f.beta(i, 0), f.beta(i, 1), f.beta(i, 2)});
  }
  out["beta"] = beta;
  rep.doc_mutable()["quantities"] = out;
  rep.add_operator("state", rho.mat());
  return rep;
}

namespace {

Eigen::Vector3d random_unit(SplitMix64& rng) {
  const double z = 2.0 * rng.next_double() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.next_double();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Eigen::Vector3d random_perp(const Eigen::Vector3d& n, SplitMix64& rng) {
  for (;;) {
    const Eigen::Vector3d r = random_unit(rng);
    Eigen::Vector3d t = r - r.dot(n) * n;
    if (t.norm() > 1e-3) return t.normalized();
  }
}

enum class OverlapClass { One, Zero, Between };

Eigen::Vector3d vector_with_overlap(const Eigen::Vector3d& n, OverlapClass c,
                                    SplitMix64& rng) {
  const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
  switch (c) {
    case OverlapClass::One:
      return sign * n;
    case OverlapClass::Zero:
      return random_perp(n, rng);
    case OverlapClass::Between: {
      const double u = 0.1 + 0.8 * rng.next_double();
      const Eigen::Vector3d t = random_perp(n, rng);
      return sign * (u * n + std::sqrt(1.0 - u * u) * t);
    }
  }
  return n;
}

struct RankCell {
  std::string label;
  bool rank1;                  // one of the two product-state rules
  bool axis_along_marginal;    // rank-1 rule selector
  OverlapClass v_class, w_class;
};

const std::vector<RankCell>& rank_cells() {
  static const std::vector<RankCell> cells = [] {
    std::vector<RankCell> out;
    const char* names[3] = {"n=v", "n.v=0", "0<n.v<1"};
    const char* wnames[3] = {"n=w", "n.w=0", "0<n.w<1"};
    const OverlapClass classes[3] = {OverlapClass::One, OverlapClass::Zero,
                                     OverlapClass::Between};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out.push_back({std::string("r2:") + names[i] + "," + wnames[j], false,
                       false, classes[i], classes[j]});
      }
    }
    out.push_back({"r1:n=along_marginal", true, true, OverlapClass::One,
                   OverlapClass::One});
    out.push_back({"r1:n=generic", true, false, OverlapClass::One,
                   OverlapClass::One});
    return out;
  }();
  return cells;
}

struct RankInstance {
  DensityOperator state;
  RotationAxis axis;
};

RankInstance make_rank_instance(const RankCell& cell, SplitMix64& rng) {
  const Eigen::Vector3d n = random_unit(rng);
  if (cell.rank1) {
    FanoForm f;
    f.r_a = (0.2 + 0.78 * rng.next_double()) * random_unit(rng);
    f.r_b = (0.2 + 0.78 * rng.next_double()) * random_unit(rng);
    f.beta = f.r_a * f.r_b.transpose();
    Eigen::Vector3d axis;
    if (cell.axis_along_marginal) {
      const double which = rng.next_double();
      const Eigen::Vector3d base =
          which < 0.5 ? f.r_a.normalized() : f.r_b.normalized();
      axis = (rng.next_double() < 0.5 ? -1.0 : 1.0) * base;
    } else {
      for (;;) {
        axis = random_unit(rng);
        if (axis.cross(f.r_a.normalized()).norm() > 0.05 &&
            axis.cross(f.r_b.normalized()).norm() > 0.05) {
          break;
        }
      }
    }
    return {fano_compose(f), RotationAxis(axis)};
  }
  FanoForm f;
  const double d = 0.2 + 0.8 * rng.next_double();
  const Eigen::Vector3d v = vector_with_overlap(n, cell.v_class, rng);
  const Eigen::Vector3d w = vector_with_overlap(n, cell.w_class, rng);
  f.beta = d * v * w.transpose();
  return {fano_compose(f), RotationAxis(n)};
}

}  // namespace

Report run_rank_table(const ScenarioConfig& cfg) {
  Report rep("rank_table", cfg);
  rep.add_table("cells", {"cell", "instances", "agree", "disagree"});
  const auto& cells = rank_cells();
  for (size_t c = 0; c < cells.size(); ++c) {
    SplitMix64 rng(SplitMix64::derive_stream(cfg.seed, c));
    int agree = 0, disagree = 0;
    for (int i = 0; i < cfg.instances; ++i) {
      const RankInstance inst = make_rank_instance(cells[c], rng);
      const int predicted =
          predict_dephasing_rank(fano_decompose(inst.state), inst.axis);
      const DensityOperator dephased =
          apply_channel(correlated_dephasing(inst.axis), inst.state);
      const int actual = correlation_rank(dephased, cfg.rank_tolerance).rank;
      (predicted == actual ? agree : disagree)++;
    }
    rep.add_row("cells", {cells[c].label, cfg.instances, agree, disagree});
  }
  return rep;
}

}  // namespace qd
