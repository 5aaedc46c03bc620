#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tscout/fingerprint.hpp"

namespace tscout::stats {

// --- fitted curves and models ---------------------------------------------------

enum class CurveForm { PowerOffset, Linear, Power };

// PowerOffset: coeff * s^exponent + offset
// Linear:      coeff * s
// Power:       coeff * s^exponent
struct FitCurve {
  CurveForm form = CurveForm::PowerOffset;
  double coeff = 0.0;
  double exponent = 1.0;
  double offset = 0.0;
  double residual_rms = 0.0;  // per-group residual after fitting

  double operator()(double s) const;
};

enum class Purpose { Cumulative, Clustering };

std::string purpose_name(Purpose p);
Purpose purpose_from_name(const std::string& name);

// Background statistics for one (subset, purpose): similarity threshold, the
// fitted mean/std curves and the comparison count used for E-values.
struct StatModel {
  int subset = 1;  // 1, 2 or 3
  Purpose purpose = Purpose::Cumulative;
  double ts = 0.0;
  FitCurve mean_curve;
  FitCurve std_curve;
  std::uint64_t n_db = 1;
};

struct SampledPoint {
  std::int64_t s = 0;  // i*j set-size product
  double raw = 0.0;
};

// --- raw score --------------------------------------------------------------------

// Sum of pairwise Tanimoto similarities >= ts between two compound sets.
double raw_score(std::span<const Fingerprint> set_a, std::span<const Fingerprint> set_b,
                 double ts);

// --- background sampling ------------------------------------------------------------

struct SamplingConfig {
  double scale = 1.0;  // shrinks the protocol proportionally for desk runs
};

// Subset 1 protocol: S values drawn uniformly from [10^2, 300^2], factored as
// i*j with i,j in [10, 300]; 30 repetitions per S. Set pairs are drawn
// without replacement within each set; overlap between sets is permitted.
std::vector<SampledPoint> sample_background_subset1(std::span<const Fingerprint> pool,
                                                    double ts, std::uint64_t seed,
                                                    const SamplingConfig& config = {});

// Subset 2 protocol: S in [100^2, 2000^2], i,j in [100, 2000]; the pool must
// already be scaffold-deduplicated (one molecule per scaffold key).
std::vector<SampledPoint> sample_background_subset2(std::span<const Fingerprint> pool,
                                                    double ts, std::uint64_t seed,
                                                    const SamplingConfig& config = {});

// Subset 3 protocol: every (i, j) in 1..50 x 1..50, 100 repetitions each,
// points keyed by s = i*j.
std::vector<SampledPoint> sample_background_subset3(std::span<const Fingerprint> pool,
                                                    double ts, std::uint64_t seed,
                                                    const SamplingConfig& config = {});

// --- fitting -----------------------------------------------------------------------

enum class Statistic { Mean, Std };

struct GroupStat {
  std::int64_t s;
  double mean;
  double stdev;  // sample standard deviation; NaN when count < 2
  int count;
};

// Per-S grouping applied before any curve fit.
std::vector<GroupStat> group_by_s(std::span<const SampledPoint> points);

// Least-squares fit of coeff*s^exponent + offset to the per-S statistic.
// Initialized from log-space linear regression, refined by damped
// Gauss-Newton to 1e-9 (max 200 iterations), with a grid-search fallback over
// the exponent if the iteration diverges.
FitCurve fit_power_offset(std::span<const SampledPoint> points, Statistic statistic);

// Least-squares coeff for F(s) = coeff*s.
FitCurve fit_linear_through_origin(std::span<const SampledPoint> points, Statistic statistic);

// Least-squares (coeff, exponent) for F(s) = coeff*s^exponent.
FitCurve fit_power(std::span<const SampledPoint> points, Statistic statistic);

// --- score statistics -----------------------------------------------------------------

// (raw - mean_curve(s)) / std_curve(s); throws when the std curve is not
// positive at s.
double z_score(double raw, std::int64_t s, const StatModel& model);

// Extreme-value tail probability of a z-score:
//   P(z) = 1 - exp(-y),  y = exp(-z*pi/sqrt(6) - gamma),
// evaluated through expm1 below z = 28 and through the series
// y - y^2/2 + y^3/6 above it.
double p_value(double z);

double e_value(double p, std::uint64_t n_db);

// --- extreme value fitting ---------------------------------------------------------------

struct GumbelFit {
  double location = 0.0;
  double scale = 1.0;

  double cdf(double x) const;
};

// Maximum-likelihood Gumbel fit via one-dimensional root finding on the scale
// profile equation (tolerance 1e-9). Requires >= 30 samples with nonzero
// variance.
GumbelFit fit_gumbel(std::span<const double> samples);

struct ChiSquareResult {
  double statistic = 0.0;
  double p = 1.0;
  int bins_used = 0;
};

// Pearson goodness-of-fit against the fitted Gumbel CDF. Equal-width interior
// bins with open tails; sparse bins (expected < 5) are merged inward;
// degrees of freedom = bins - 1 - 2.
ChiSquareResult chi_square_gof(std::span<const double> samples, const GumbelFit& fit, int bins);

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi2_sf(double x, int dof);

// --- threshold selection -------------------------------------------------------------------

struct TrainingPair {
  std::string query_id;
  std::vector<std::string> true_targets;
};

// Recall of true targets achieved by `screen` under each candidate model; the
// ts with the highest recall wins, ties toward larger ts.
double select_ts_by_recall(
    std::span<const StatModel> candidates, std::span<const TrainingPair> pairs,
    const std::function<std::vector<std::string>(const StatModel&, const TrainingPair&)>& screen);

struct TsGofCandidate {
  double ts;
  double gof_p;
};

// The ts whose background z-scores best match the fitted extreme-value
// distribution (highest chi-square p; ties toward larger ts).
double select_ts_by_gof(std::span<const TsGofCandidate> candidates);

// --- reference parameters --------------------------------------------------------------------

// Stock models used as configuration defaults: thresholds and curve
// parameters for all six (subset, purpose) combinations. n_db is a
// placeholder of 1 until a database build fills it in.
std::vector<StatModel> default_models();

const StatModel& find_model(std::span<const StatModel> models, int subset, Purpose purpose);

}  // namespace tscout::stats
