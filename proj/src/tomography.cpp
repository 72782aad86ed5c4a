#include "qd/tomography.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qd/rng.hpp"

namespace qd {

namespace {

Eigen::Matrix2cd basis_matrix(PauliBasis b) {
  switch (b) {
    case PauliBasis::X: return pauli(1);
    case PauliBasis::Y: return pauli(2);
    case PauliBasis::Z: return pauli(3);
  }
  throw std::invalid_argument("basis_matrix: bad basis");
}

char basis_char(PauliBasis b) {
  switch (b) {
    case PauliBasis::X: return 'X';
    case PauliBasis::Y: return 'Y';
    case PauliBasis::Z: return 'Z';
  }
  return '?';
}

const char* kOutcomeNames[4] = {"++", "+-", "-+", "--"};

// The 36 joint eigenprojectors, setting-major, outcome order ++, +-, -+, --.
const std::vector<Eigen::Matrix4cd>& all_projectors() {
  static const std::vector<Eigen::Matrix4cd> projs = [] {
    std::vector<Eigen::Matrix4cd> out;
    out.reserve(kNumSettings * kNumOutcomes);
    const Eigen::Matrix2cd id = pauli(0);
    for (int s = 0; s < kNumSettings; ++s) {
      const MeasurementSetting setting = setting_at(s);
      const Eigen::Matrix2cd wa = basis_matrix(setting.basis_a);
      const Eigen::Matrix2cd wb = basis_matrix(setting.basis_b);
      for (double sa : {+1.0, -1.0}) {
        for (double sb : {+1.0, -1.0}) {
          const Eigen::Matrix2cd pa = 0.5 * (id + sa * wa);
          const Eigen::Matrix2cd pb = 0.5 * (id + sb * wb);
          out.push_back(tensor(pa, pb));
        }
      }
    }
    return out;
  }();
  return projs;
}

}  // namespace

MeasurementSetting setting_at(int index) {
  if (index < 0 || index >= kNumSettings) {
    throw std::invalid_argument("setting_at: index outside 0..8");
  }
  const PauliBasis bases[3] = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
  return {bases[index / 3], bases[index % 3]};
}

std::string setting_name(const MeasurementSetting& s) {
  return std::string() + basis_char(s.basis_a) + basis_char(s.basis_b);
}

std::array<double, 4> outcome_probabilities(const DensityOperator& rho,
                                            const MeasurementSetting& s) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("outcome_probabilities: input must be two-qubit");
  }
  const int sidx = (static_cast<int>(s.basis_a)) * 3 + static_cast<int>(s.basis_b);
  const auto& projs = all_projectors();
  std::array<double, 4> p{};
  double sum = 0.0;
  for (int o = 0; o < 4; ++o) {
    p[o] = std::max(0.0, (projs[sidx * 4 + o] * rho.mat()).trace().real());
    sum += p[o];
  }
  for (auto& v : p) v /= sum;
  return p;
}

CountRecord sample_counts(const DensityOperator& rho, long shots,
                          uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots < 1");
  CountRecord rec;
  rec.shots_per_setting = static_cast<double>(shots);
  rec.seed = seed;
  SplitMix64 rng(seed);
  for (int s = 0; s < kNumSettings; ++s) {
    const auto p = outcome_probabilities(rho, setting_at(s));
    for (long shot = 0; shot < shots; ++shot) {
      const double u = rng.next_double();
      double acc = 0.0;
      int outcome = 3;
      for (int o = 0; o < 4; ++o) {
        acc += p[o];
        if (u < acc) {
          outcome = o;
          break;
        }
      }
      rec.counts[s][outcome] += 1.0;
    }
  }
  return rec;
}

CountRecord exact_frequency_counts(const DensityOperator& rho) {
  CountRecord rec;
  rec.shots_per_setting = 1.0;
  for (int s = 0; s < kNumSettings; ++s) {
    const auto p = outcome_probabilities(rho, setting_at(s));
    for (int o = 0; o < 4; ++o) rec.counts[s][o] = p[o];
  }
  return rec;
}

std::string count_record_to_text(const CountRecord& rec) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", rec.shots_per_setting);
  out << "# counts v1\n";
  out << "# seed " << rec.seed << "\n";
  out << "# shots_per_setting " << buf << "\n";
  for (int s = 0; s < kNumSettings; ++s) {
    const std::string name = setting_name(setting_at(s));
    for (int o = 0; o < 4; ++o) {
      std::snprintf(buf, sizeof(buf), "%.17g", rec.counts[s][o]);
      out << name << " " << kOutcomeNames[o] << " " << buf << "\n";
    }
  }
  return out.str();
}

CountRecord count_record_from_text(const std::string& text) {
  CountRecord rec;
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string key;
      meta >> key;
      if (key == "seed") meta >> rec.seed;
      if (key == "shots_per_setting") meta >> rec.shots_per_setting;
      continue;
    }
    std::istringstream row(line);
    std::string setting, outcome;
    double count;
    if (!(row >> setting >> outcome >> count)) {
      throw std::invalid_argument("count_record_from_text: bad row: " + line);
    }
    int sidx = -1, oidx = -1;
    for (int s = 0; s < kNumSettings; ++s) {
      if (setting_name(setting_at(s)) == setting) sidx = s;
    }
    for (int o = 0; o < 4; ++o) {
      if (outcome == kOutcomeNames[o]) oidx = o;
    }
    if (sidx < 0 || oidx < 0) {
      throw std::invalid_argument("count_record_from_text: bad labels: " + line);
    }
    rec.counts[sidx][oidx] = count;
    ++rows;
  }
  if (rows != kNumSettings * kNumOutcomes) {
    throw std::invalid_argument("count_record_from_text: expected 36 rows");
  }
  for (int s = 0; s < kNumSettings; ++s) {
    double sum = 0.0;
    for (int o = 0; o < 4; ++o) sum += rec.counts[s][o];
    if (std::abs(sum - rec.shots_per_setting) > 1e-6 * std::max(1.0, sum)) {
      throw std::invalid_argument(
          "count_record_from_text: counts do not sum to shots_per_setting");
    }
  }
  return rec;
}

ReconstructionResult mle_reconstruct(const CountRecord& counts,
                                     int max_iterations, double tolerance) {
  double total = 0.0;
  for (const auto& row : counts.counts) {
    for (double c : row) {
      if (c < 0.0) throw std::invalid_argument("mle_reconstruct: negative count");
      total += c;
    }
  }
  if (total <= 0.0) throw std::invalid_argument("mle_reconstruct: empty counts");

  const auto& projs = all_projectors();

  auto log_likelihood = [&](const Eigen::Matrix4cd& rho) {
    double ll = 0.0;
    for (int i = 0; i < kNumSettings * kNumOutcomes; ++i) {
      const double c = counts.counts[i / 4][i % 4];
      if (c <= 0.0) continue;
      const double p =
          std::max((projs[i] * rho).trace().real(), 1e-12);
      ll += c * std::log(p);
    }
    return ll;
  };

  auto r_operator = [&](const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < kNumSettings * kNumOutcomes; ++i) {
      const double c = counts.counts[i / 4][i % 4];
      if (c <= 0.0) continue;
      const double p =
          std::max((projs[i] * rho).trace().real(), 1e-12);
      r += (c / total / p) * projs[i];
    }
    return r;
  };

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
  double ll = log_likelihood(rho);
  int iter = 0;
  bool converged = false;

  for (; iter < max_iterations; ++iter) {
    const Eigen::Matrix4cd r = r_operator(rho);

    Eigen::Matrix4cd next = r * rho * r;
    next /= next.trace().real();
    next = 0.5 * (next + next.adjoint().eval());
    double ll_next = log_likelihood(next);

    if (ll_next < ll) {
      // dilute until the step no longer lowers the likelihood
      double eps = 0.1;
      bool accepted = false;
      for (int k = 0; k < 8; ++k, eps *= 0.1) {
        const Eigen::Matrix4cd d =
            Eigen::Matrix4cd::Identity() + eps * r;
        Eigen::Matrix4cd cand = d * rho * d.adjoint();
        cand /= cand.trace().real();
        cand = 0.5 * (cand + cand.adjoint().eval());
        const double ll_cand = log_likelihood(cand);
        if (ll_cand >= ll) {
          next = cand;
          ll_next = ll_cand;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        converged = true;  // no ascent direction left at this scale
        break;
      }
    }

    const double gain = ll_next - ll;
    rho = next;
    ll = ll_next;
    if (gain < tolerance) {
      converged = true;
      ++iter;
      break;
    }
  }

  return {DensityOperator(rho), ll, iter, converged};
}

namespace {

struct CopyQuantities {
  double discord_a, discord_b, tangle_v, fidelity_v;
  Eigen::Vector4d cm_sv;
};

CopyQuantities quantify_copy(const DensityOperator& rho_hat,
                             const DensityOperator& ideal) {
  CopyQuantities q;
  q.discord_a = discord(rho_hat, Qubit::A).value;
  q.discord_b = discord(rho_hat, Qubit::B).value;
  q.tangle_v = tangle(rho_hat);
  q.fidelity_v = fidelity(rho_hat, ideal);
  q.cm_sv = correlation_matrix(rho_hat).singular_values;
  return q;
}

SummaryStat stat_of(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = (xs.size() > 1) ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var)};
}

std::vector<DensityOperator> mc_reconstructions(const DensityOperator& ideal,
                                                long shots, int copies,
                                                uint64_t seed) {
  if (copies < 2) {
    throw std::invalid_argument("monte_carlo: copies must be >= 2");
  }
  std::vector<DensityOperator> out;
  out.reserve(copies);
  for (int k = 0; k < copies; ++k) {
    const uint64_t stream = SplitMix64::derive_stream(seed, k);
    const CountRecord rec = sample_counts(ideal, shots, stream);
    out.push_back(mle_reconstruct(rec).rho_hat);
  }
  return out;
}

}  // namespace

MonteCarloSummary monte_carlo_study(const DensityOperator& rho_ideal,
                                    long shots, int copies, uint64_t seed) {
  const auto recs = mc_reconstructions(rho_ideal, shots, copies, seed);
  std::vector<double> da, db, tg, fid;
  std::array<std::vector<double>, 4> cm;
  for (const auto& rho_hat : recs) {
    const CopyQuantities q = quantify_copy(rho_hat, rho_ideal);
    da.push_back(q.discord_a);
    db.push_back(q.discord_b);
    tg.push_back(q.tangle_v);
    fid.push_back(q.fidelity_v);
    for (int i = 0; i < 4; ++i) cm[i].push_back(q.cm_sv[i]);
  }
  MonteCarloSummary s;
  s.copies = copies;
  s.shots = shots;
  s.discord_a = stat_of(da);
  s.discord_b = stat_of(db);
  s.tangle = stat_of(tg);
  s.fidelity = stat_of(fid);
  for (int i = 0; i < 4; ++i) s.cm[i] = stat_of(cm[i]);
  return s;
}

SingularValueHistogram singular_value_histogram(
    const DensityOperator& rho_ideal, long shots, int copies, uint64_t seed,
    int bins) {
  if (bins < 2) {
    throw std::invalid_argument("singular_value_histogram: bins must be >= 2");
  }
  SingularValueHistogram h;
  h.bins = bins;
  h.lo = 0.0;
  h.hi = 1.25;
  for (auto& c : h.counts) c.assign(bins, 0);
  const auto recs = mc_reconstructions(rho_ideal, shots, copies, seed);
  for (const auto& rho_hat : recs) {
    const Eigen::Vector4d sv = correlation_matrix(rho_hat).singular_values;
    for (int i = 0; i < 4; ++i) {
      int b = static_cast<int>((sv[i] - h.lo) / (h.hi - h.lo) * bins);
      b = std::min(std::max(b, 0), bins - 1);
      ++h.counts[i][b];
    }
  }
  return h;
}

}  // namespace qd
