#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qd/correlations.hpp"
#include "qd/densop.hpp"

namespace qd {

enum class PauliBasis { X, Y, Z };

// One of the 9 product-Pauli measurement settings.
struct MeasurementSetting {
  PauliBasis basis_a;
  PauliBasis basis_b;
};

inline constexpr int kNumSettings = 9;

// Fixed enumeration order XX, XY, XZ, YX, ..., ZZ.
MeasurementSetting setting_at(int index);
std::string setting_name(const MeasurementSetting& s);

// Outcome order within a setting: ++, +-, -+, --.
inline constexpr int kNumOutcomes = 4;

// Born-rule probabilities of the four eigenprojector outcomes.
std::array<double, 4> outcome_probabilities(const DensityOperator& rho,
                                            const MeasurementSetting& s);

// Per-setting outcome counts. Counts are stored as doubles so that exact
// Born frequencies can stand in for the infinite-shot limit; sampled records
// hold integers.
struct CountRecord {
  std::array<std::array<double, 4>, kNumSettings> counts{};
  double shots_per_setting = 0.0;
  uint64_t seed = 0;
};

// One multinomial draw of `shots` outcomes per setting, deterministic in the
// seed.
CountRecord sample_counts(const DensityOperator& rho, long shots,
                          uint64_t seed);

// Exact Born frequencies as a CountRecord with shots_per_setting = 1.
CountRecord exact_frequency_counts(const DensityOperator& rho);

// Plain-text serialization (setting, outcome, count); lossless round trip.
std::string count_record_to_text(const CountRecord& rec);
CountRecord count_record_from_text(const std::string& text);

struct ReconstructionResult {
  DensityOperator rho_hat;
  double log_likelihood;
  int iterations;
  bool converged;
};

// Diluted iterative R-rho-R maximum-likelihood reconstruction. Accepted
// iterations never decrease the log-likelihood: when the plain fixed-point
// step would, the update is diluted to (I + eps R) rho (I + eps R) with
// eps = 0.1 (reduced further if needed). Stops when the improvement drops
// below `tolerance` or at `max_iterations`. The output is PSD with unit
// trace by construction.
ReconstructionResult mle_reconstruct(const CountRecord& counts,
                                     int max_iterations = 100000,
                                     double tolerance = 1e-10);

struct SummaryStat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
};

struct MonteCarloSummary {
  int copies = 0;
  long shots = 0;
  SummaryStat discord_a;
  SummaryStat discord_b;
  SummaryStat tangle;
  std::array<SummaryStat, 4> cm;  // correlation-matrix singular values
  SummaryStat fidelity;           // to the ideal input state
};

// Projection-noise study: `copies` independent finite-shot data sets from
// the ideal state, each reconstructed by maximum likelihood, each quantified.
// Copy k draws from the derived stream (seed, k), so results do not depend
// on evaluation order.
MonteCarloSummary monte_carlo_study(const DensityOperator& rho_ideal,
                                    long shots, int copies, uint64_t seed);

struct SingularValueHistogram {
  int bins = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::array<std::vector<int>, 4> counts;  // per CM1..CM4
};

// Distribution of the reconstructed correlation-matrix singular values over
// the same Monte Carlo ensemble as monte_carlo_study.
SingularValueHistogram singular_value_histogram(
    const DensityOperator& rho_ideal, long shots, int copies, uint64_t seed,
    int bins);

}  // namespace qd
