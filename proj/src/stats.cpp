#include "tscout/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "tscout/errors.hpp"
#include "tscout/util.hpp"

namespace tscout::stats {

namespace {

constexpr double kPiOverSqrt6 = 1.2825498301618641;
constexpr double kEulerGamma = 0.577215665;

constexpr std::uint64_t kTagSubset1 = 0x51;
constexpr std::uint64_t kTagSubset2 = 0x52;
constexpr std::uint64_t kTagSubset3 = 0x53;

}  // namespace

double FitCurve::operator()(double s) const {
  switch (form) {
    case CurveForm::PowerOffset: return coeff * std::pow(s, exponent) + offset;
    case CurveForm::Linear: return coeff * s;
    case CurveForm::Power: return coeff * std::pow(s, exponent);
  }
  return 0.0;
}

std::string purpose_name(Purpose p) {
  return p == Purpose::Cumulative ? "cumulative" : "clustering";
}

Purpose purpose_from_name(const std::string& name) {
  if (name == "cumulative") return Purpose::Cumulative;
  if (name == "clustering") return Purpose::Clustering;
  throw ConfigError("unknown model purpose: " + name);
}

double raw_score(std::span<const Fingerprint> set_a, std::span<const Fingerprint> set_b,
                 double ts) {
  if (set_a.empty() || set_b.empty()) throw Error("raw_score on an empty compound set");
  if (ts < 0.0 || ts > 1.0) throw ConfigError("similarity threshold outside [0,1]");
  double sum = 0.0;
  for (const Fingerprint& fa : set_a) {
    for (const Fingerprint& fb : set_b) {
      const double t = tanimoto(fa, fb);
      if (t >= ts) sum += t;
    }
  }
  return sum;
}

// --- background sampling -------------------------------------------------------

namespace {

struct RandomProtocol {
  std::int64_t s_min, s_max;
  std::int64_t ij_min, ij_max;
  int n_s;
  int reps;
  std::uint64_t tag;
};

// Factor pairs (i, S/i) with both factors inside the protocol range.
std::vector<std::int64_t> factors_in_range(std::int64_t s, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = lo; i <= hi && i * i <= s; ++i) {
    if (s % i != 0) continue;
    const std::int64_t j = s / i;
    if (j < lo || j > hi) continue;
    out.push_back(i);
    if (j != i) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SampledPoint> sample_random_protocol(std::span<const Fingerprint> pool, double ts,
                                                 std::uint64_t seed, const SamplingConfig& config,
                                                 const RandomProtocol& proto) {
  if (static_cast<std::int64_t>(pool.size()) < proto.ij_max)
    throw Error("background pool too small: need at least " + std::to_string(proto.ij_max) +
                " compounds, have " + std::to_string(pool.size()));
  if (config.scale <= 0.0 || config.scale > 1.0)
    throw ConfigError("sampling scale factor must lie in (0, 1]");
  const int n_s = std::max(1, static_cast<int>(std::llround(proto.n_s * config.scale)));
  const int pool_n = static_cast<int>(pool.size());

  std::vector<SampledPoint> points(static_cast<std::size_t>(n_s) *
                                   static_cast<std::size_t>(proto.reps));
  parallel_for(static_cast<std::size_t>(n_s), [&](std::size_t k) {
    SplitMix64 srng(mix_seed({seed, proto.tag, 0xD1Au, static_cast<std::uint64_t>(k)}));
    std::int64_t s = 0;
    std::vector<std::int64_t> divisors;
    // redraw until the integer factors inside the protocol range
    do {
      s = proto.s_min +
          static_cast<std::int64_t>(srng.below(static_cast<std::uint64_t>(proto.s_max - proto.s_min + 1)));
      divisors = factors_in_range(s, proto.ij_min, proto.ij_max);
    } while (divisors.empty());
    const std::int64_t i = divisors[srng.below(divisors.size())];
    const std::int64_t j = s / i;
    for (int rep = 0; rep < proto.reps; ++rep) {
      SplitMix64 rng(mix_seed({seed, proto.tag, static_cast<std::uint64_t>(k),
                               static_cast<std::uint64_t>(rep)}));
      const auto ia = rng.sample_without_replacement(pool_n, static_cast<int>(i));
      const auto ib = rng.sample_without_replacement(pool_n, static_cast<int>(j));
      std::vector<Fingerprint> fa, fb;
      fa.reserve(ia.size());
      fb.reserve(ib.size());
      for (int idx : ia) fa.push_back(pool[static_cast<std::size_t>(idx)]);
      for (int idx : ib) fb.push_back(pool[static_cast<std::size_t>(idx)]);
      points[k * static_cast<std::size_t>(proto.reps) + static_cast<std::size_t>(rep)] = {
          s, raw_score(fa, fb, ts)};
    }
  });
  return points;
}

}  // namespace

std::vector<SampledPoint> sample_background_subset1(std::span<const Fingerprint> pool, double ts,
                                                    std::uint64_t seed,
                                                    const SamplingConfig& config) {
  return sample_random_protocol(pool, ts, seed, config,
                                {100, 300 * 300, 10, 300, 1000, 30, kTagSubset1});
}

std::vector<SampledPoint> sample_background_subset2(std::span<const Fingerprint> pool, double ts,
                                                    std::uint64_t seed,
                                                    const SamplingConfig& config) {
  return sample_random_protocol(
      pool, ts, seed, config, {100 * 100, 2000LL * 2000LL, 100, 2000, 1000, 30, kTagSubset2});
}

std::vector<SampledPoint> sample_background_subset3(std::span<const Fingerprint> pool, double ts,
                                                    std::uint64_t seed,
                                                    const SamplingConfig& config) {
  constexpr int kMaxSetSize = 50;
  if (static_cast<int>(pool.size()) < kMaxSetSize)
    throw Error("background pool too small: need at least 50 compounds, have " +
                std::to_string(pool.size()));
  if (config.scale <= 0.0 || config.scale > 1.0)
    throw ConfigError("sampling scale factor must lie in (0, 1]");
  const int reps = std::max(1, static_cast<int>(std::llround(100 * config.scale)));
  const int pool_n = static_cast<int>(pool.size());

  std::vector<SampledPoint> points(static_cast<std::size_t>(kMaxSetSize) * kMaxSetSize *
                                   static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(kMaxSetSize) * kMaxSetSize, [&](std::size_t cell) {
    const int i = static_cast<int>(cell) / kMaxSetSize + 1;
    const int j = static_cast<int>(cell) % kMaxSetSize + 1;
    for (int rep = 0; rep < reps; ++rep) {
      SplitMix64 rng(mix_seed({seed, kTagSubset3, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(rep)}));
      const auto ia = rng.sample_without_replacement(pool_n, i);
      const auto ib = rng.sample_without_replacement(pool_n, j);
      std::vector<Fingerprint> fa, fb;
      for (int idx : ia) fa.push_back(pool[static_cast<std::size_t>(idx)]);
      for (int idx : ib) fb.push_back(pool[static_cast<std::size_t>(idx)]);
      points[cell * static_cast<std::size_t>(reps) + static_cast<std::size_t>(rep)] = {
          static_cast<std::int64_t>(i) * j, raw_score(fa, fb, ts)};
    }
  });
  return points;
}

// --- grouping and fitting ---------------------------------------------------------

std::vector<GroupStat> group_by_s(std::span<const SampledPoint> points) {
  std::map<std::int64_t, std::vector<double>> groups;
  for (const SampledPoint& p : points) groups[p.s].push_back(p.raw);
  std::vector<GroupStat> out;
  out.reserve(groups.size());
  for (const auto& [s, values] : groups) {
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double stdev = std::numeric_limits<double>::quiet_NaN();
    if (values.size() >= 2) {
      double acc = 0.0;
      for (double v : values) acc += (v - mean) * (v - mean);
      stdev = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    out.push_back({s, mean, stdev, static_cast<int>(values.size())});
  }
  return out;
}

namespace {

struct XY {
  std::vector<double> x;  // s values
  std::vector<double> y;  // per-s statistic
};

XY collect_statistic(std::span<const SampledPoint> points, Statistic statistic) {
  XY out;
  for (const GroupStat& g : group_by_s(points)) {
    const double y = statistic == Statistic::Mean ? g.mean : g.stdev;
    if (std::isnan(y)) continue;  // std undefined for single-point groups
    out.x.push_back(static_cast<double>(g.s));
    out.y.push_back(y);
  }
  return out;
}

bool nearly_constant(const std::vector<double>& y) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return (*hi - *lo) <= 1e-12 * std::max(1.0, std::abs(*hi));
}

double sse_power_offset(const XY& d, double u, double r, double c) {
  double sse = 0.0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double f = u * std::pow(d.x[i], r) + c - d.y[i];
    sse += f * f;
  }
  return sse;
}

// Solves the symmetric 3x3 (or leading 2x2) normal equations in place.
bool solve_normal(std::array<std::array<double, 3>, 3>& a, std::array<double, 3>& b, int dim) {
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int row = col + 1; row < dim; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < dim; ++row) {
      const double f = a[row][col] / a[col][col];
      for (int k = col; k < dim; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  for (int col = dim - 1; col >= 0; --col) {
    double acc = b[col];
    for (int k = col + 1; k < dim; ++k) acc -= a[col][k] * b[k];
    b[col] = acc / a[col][col];
  }
  return true;
}

// Damped Gauss-Newton for u*s^r + c (and the offset-free variant). Returns
// false on divergence.
bool gauss_newton(const XY& d, bool with_offset, double& u, double& r, double& c) {
  const int dim = with_offset ? 3 : 2;
  double sse = sse_power_offset(d, u, r, c);
  if (!std::isfinite(sse)) return false;
  for (int iter = 0; iter < 200; ++iter) {
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (std::size_t i = 0; i < d.x.size(); ++i) {
      const double sr = std::pow(d.x[i], r);
      const double res = u * sr + c - d.y[i];
      const std::array<double, 3> jac = {sr, u * sr * std::log(d.x[i]), 1.0};
      for (int p = 0; p < dim; ++p) {
        jtr[static_cast<std::size_t>(p)] += jac[static_cast<std::size_t>(p)] * res;
        for (int q = 0; q < dim; ++q)
          jtj[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] +=
              jac[static_cast<std::size_t>(p)] * jac[static_cast<std::size_t>(q)];
      }
    }
    std::array<double, 3> step = jtr;
    if (!solve_normal(jtj, step, dim)) return false;

    double lambda = 1.0;
    bool improved = false;
    for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
      const double nu = u - lambda * step[0];
      const double nr = r - lambda * step[1];
      const double nc = with_offset ? c - lambda * step[2] : c;
      const double nsse = sse_power_offset(d, nu, nr, nc);
      if (std::isfinite(nsse) && nsse <= sse) {
        const double rel = std::max({std::abs(lambda * step[0]) / (1.0 + std::abs(u)),
                                     std::abs(lambda * step[1]) / (1.0 + std::abs(r)),
                                     with_offset ? std::abs(lambda * step[2]) / (1.0 + std::abs(c))
                                                 : 0.0});
        u = nu;
        r = nr;
        c = nc;
        sse = nsse;
        improved = true;
        if (rel < 1e-9) return true;
        break;
      }
    }
    if (!improved) return true;  // stalled at a local optimum
  }
  return true;
}

// Log-space regression ln(y) = ln(u) + r ln(s) over positive statistics.
bool log_space_init(const XY& d, double& u, double& r) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (d.y[i] <= 0) continue;
    const double lx = std::log(d.x[i]);
    const double ly = std::log(d.y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return false;
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return false;
  r = (n * sxy - sx * sy) / denom;
  u = std::exp((sy - r * sx) / n);
  return std::isfinite(u) && std::isfinite(r);
}

// For fixed exponent the model is linear in (u, c); exact least squares.
void linear_given_exponent(const XY& d, double r, bool with_offset, double& u, double& c) {
  double sxx = 0, sx = 0, sxy = 0, sy = 0;
  const double n = static_cast<double>(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double x = std::pow(d.x[i], r);
    sxx += x * x;
    sx += x;
    sxy += x * d.y[i];
    sy += d.y[i];
  }
  if (!with_offset) {
    u = sxx > 0 ? sxy / sxx : 0.0;
    c = 0.0;
    return;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) {
    u = 0.0;
    c = sy / n;
    return;
  }
  u = (n * sxy - sx * sy) / denom;
  c = (sy - u * sx) / n;
}

// Exponent grid search fallback (and init of last resort).
void grid_search(const XY& d, bool with_offset, double& u, double& r, double& c) {
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 900; ++k) {
    const double rr = 0.3 + 0.001 * k;
    double uu, cc;
    linear_given_exponent(d, rr, with_offset, uu, cc);
    const double sse = sse_power_offset(d, uu, rr, cc);
    if (sse < best_sse) {
      best_sse = sse;
      u = uu;
      r = rr;
      c = cc;
    }
  }
}

double residual_rms(const XY& d, double u, double r, double c) {
  return std::sqrt(sse_power_offset(d, u, r, c) / static_cast<double>(d.x.size()));
}

void check_curve(const FitCurve& curve, Statistic statistic, double s_min, double s_max) {
  if (statistic == Statistic::Mean) {
    if (curve(s_max) <= curve(s_min))
      throw FitError("fit-degenerate: mean curve not increasing over the fitted range");
  } else {
    if (curve(s_min) <= 0.0 || curve(s_max) <= 0.0)
      throw FitError("fit-degenerate: std curve not positive over the fitted range");
  }
}

}  // namespace

FitCurve fit_power_offset(std::span<const SampledPoint> points, Statistic statistic) {
  const XY d = collect_statistic(points, statistic);
  if (d.x.size() < 3) throw FitError("fit needs at least 3 distinct S values");
  if (nearly_constant(d.y)) throw FitError("fit-degenerate: constant statistic");

  double u = 1.0, r = 1.0, c = 0.0;
  if (!log_space_init(d, u, r)) grid_search(d, true, u, r, c);
  if (!gauss_newton(d, true, u, r, c) || !std::isfinite(u * r * c)) {
    grid_search(d, true, u, r, c);
    gauss_newton(d, true, u, r, c);
  }
  FitCurve curve{CurveForm::PowerOffset, u, r, c, residual_rms(d, u, r, c)};
  check_curve(curve, statistic, d.x.front(), d.x.back());
  return curve;
}

FitCurve fit_linear_through_origin(std::span<const SampledPoint> points, Statistic statistic) {
  const XY d = collect_statistic(points, statistic);
  if (d.x.empty()) throw FitError("fit needs at least 1 S group");
  bool all_zero = true;
  for (double y : d.y) all_zero &= (y == 0.0);
  if (all_zero) throw FitError("fit-degenerate: all statistics zero");
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    sxy += d.x[i] * d.y[i];
    sxx += d.x[i] * d.x[i];
  }
  const double mu = sxy / sxx;
  FitCurve curve{CurveForm::Linear, mu, 1.0, 0.0, 0.0};
  curve.residual_rms = residual_rms(d, mu, 1.0, 0.0);
  check_curve(curve, statistic, d.x.front(), d.x.back());
  return curve;
}

FitCurve fit_power(std::span<const SampledPoint> points, Statistic statistic) {
  const XY d = collect_statistic(points, statistic);
  if (d.x.size() < 2) throw FitError("fit-degenerate: power form needs at least 2 distinct S values");
  if (nearly_constant(d.y)) throw FitError("fit-degenerate: constant statistic");

  double u = 1.0, r = 1.0, c = 0.0;
  if (!log_space_init(d, u, r)) grid_search(d, false, u, r, c);
  if (!gauss_newton(d, false, u, r, c) || !std::isfinite(u * r)) {
    grid_search(d, false, u, r, c);
    gauss_newton(d, false, u, r, c);
  }
  FitCurve curve{CurveForm::Power, u, r, 0.0, residual_rms(d, u, r, 0.0)};
  check_curve(curve, statistic, d.x.front(), d.x.back());
  return curve;
}

// --- score statistics ----------------------------------------------------------

double z_score(double raw, std::int64_t s, const StatModel& model) {
  const double stdev = model.std_curve(static_cast<double>(s));
  if (!(stdev > 0.0))
    throw Error("std curve not positive at S=" + std::to_string(s));
  return (raw - model.mean_curve(static_cast<double>(s))) / stdev;
}

double p_value(double z) {
  const double y = std::exp(-z * kPiOverSqrt6 - kEulerGamma);
  if (z <= 28.0) return -std::expm1(-y);
  return y * (1.0 - y * 0.5 + y * y / 6.0);
}

double e_value(double p, std::uint64_t n_db) {
  if (p < 0.0 || p > 1.0) throw ConfigError("p-value outside [0,1]");
  return p * static_cast<double>(n_db);
}

// --- Gumbel fit ------------------------------------------------------------------

double GumbelFit::cdf(double x) const {
  return std::exp(-std::exp(-(x - location) / scale));
}

namespace {

// Profile equation g(beta) = beta - mean(x) + sum(x w)/sum(w), w = exp(-x/beta),
// computed with a shift for stability. g is increasing with a single root.
double gumbel_profile(std::span<const double> x, double x_ref, double mean, double beta) {
  double sw = 0.0, sxw = 0.0;
  for (double v : x) {
    const double w = std::exp(-(v - x_ref) / beta);
    sw += w;
    sxw += v * w;
  }
  return beta - mean + sxw / sw;
}

}  // namespace

GumbelFit fit_gumbel(std::span<const double> samples) {
  if (samples.size() < 30) throw FitError("Gumbel fit needs at least 30 samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  if (var <= 0.0) throw FitError("Gumbel fit on zero-variance samples");

  const double x_ref = *std::min_element(samples.begin(), samples.end());
  const double beta0 = std::sqrt(6.0 * var) / M_PI;

  // bracket the root of the profile equation
  double lo = beta0, hi = beta0;
  double glo = gumbel_profile(samples, x_ref, mean, lo);
  double ghi = glo;
  for (int k = 0; k < 80 && glo > 0.0; ++k) {
    lo *= 0.5;
    glo = gumbel_profile(samples, x_ref, mean, lo);
  }
  for (int k = 0; k < 80 && ghi < 0.0; ++k) {
    hi *= 2.0;
    ghi = gumbel_profile(samples, x_ref, mean, hi);
  }
  if (glo > 0.0 || ghi < 0.0) throw FitError("Gumbel profile equation has no bracketed root");

  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (gumbel_profile(samples, x_ref, mean, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double beta = 0.5 * (lo + hi);

  double sw = 0.0;
  for (double v : samples) sw += std::exp(-(v - x_ref) / beta);
  const double mu = x_ref - beta * std::log(sw / n);
  return {mu, beta};
}

ChiSquareResult chi_square_gof(std::span<const double> samples, const GumbelFit& fit, int bins) {
  if (bins < 3) throw ConfigError("chi-square test needs at least 3 bins");
  const std::size_t n = samples.size();
  if (n < 15) throw FitError("too few samples for binning");
  if (!(fit.scale > 0.0)) throw FitError("invalid Gumbel scale");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  if (!(hi > lo)) throw FitError("too few samples for binning");

  // equal-width interior edges; outermost bins extend to the tails
  std::vector<double> edges;
  for (int k = 1; k < bins; ++k)
    edges.push_back(lo + (hi - lo) * static_cast<double>(k) / bins);

  std::vector<double> expected(static_cast<std::size_t>(bins));
  std::vector<double> observed(static_cast<std::size_t>(bins));
  double prev_cdf = 0.0;
  std::size_t prev_idx = 0;
  for (int k = 0; k < bins; ++k) {
    const bool last = k == bins - 1;
    const double edge_cdf = last ? 1.0 : fit.cdf(edges[static_cast<std::size_t>(k)]);
    expected[static_cast<std::size_t>(k)] = static_cast<double>(n) * (edge_cdf - prev_cdf);
    const std::size_t idx =
        last ? n
             : static_cast<std::size_t>(
                   std::upper_bound(sorted.begin(), sorted.end(),
                                    edges[static_cast<std::size_t>(k)]) -
                   sorted.begin());
    observed[static_cast<std::size_t>(k)] = static_cast<double>(idx - prev_idx);
    prev_cdf = edge_cdf;
    prev_idx = idx;
  }

  // merge sparse bins inward so every expected count reaches 5
  std::vector<double> mo, me;
  double acc_o = 0.0, acc_e = 0.0;
  for (int k = 0; k < bins; ++k) {
    acc_o += observed[static_cast<std::size_t>(k)];
    acc_e += expected[static_cast<std::size_t>(k)];
    if (acc_e >= 5.0) {
      mo.push_back(acc_o);
      me.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0) {
    if (me.empty()) throw FitError("too few samples for binning");
    mo.back() += acc_o;
    me.back() += acc_e;
  }
  const int m = static_cast<int>(me.size());
  const int dof = m - 1 - 2;
  if (dof < 1) throw FitError("too few bins after merging for a chi-square test");

  double statistic = 0.0;
  for (int k = 0; k < m; ++k) {
    const double d = mo[static_cast<std::size_t>(k)] - me[static_cast<std::size_t>(k)];
    statistic += d * d / me[static_cast<std::size_t>(k)];
  }
  return {statistic, chi2_sf(statistic, dof), m};
}

namespace {

// Regularized incomplete gamma, series and continued-fraction branches.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi2_sf(double x, int dof) {
  if (dof < 1) throw ConfigError("chi-square needs dof >= 1");
  if (x <= 0.0) return 1.0;
  const double a = 0.5 * dof;
  const double xx = 0.5 * x;
  return xx < a + 1.0 ? 1.0 - gamma_p_series(a, xx) : gamma_q_contfrac(a, xx);
}

// --- threshold selection ----------------------------------------------------------

double select_ts_by_recall(
    std::span<const StatModel> candidates, std::span<const TrainingPair> pairs,
    const std::function<std::vector<std::string>(const StatModel&, const TrainingPair&)>& screen) {
  if (candidates.empty()) throw ConfigError("empty ts candidate grid");
  if (pairs.empty()) throw ConfigError("empty training set");
  double best_ts = candidates.front().ts;
  double best_recall = -1.0;
  for (const StatModel& model : candidates) {
    std::size_t recovered = 0, total = 0;
    for (const TrainingPair& pair : pairs) {
      const std::vector<std::string> hits = screen(model, pair);
      for (const std::string& t : pair.true_targets) {
        ++total;
        if (std::find(hits.begin(), hits.end(), t) != hits.end()) ++recovered;
      }
    }
    const double recall = total ? static_cast<double>(recovered) / static_cast<double>(total) : 0.0;
    if (recall > best_recall || (recall == best_recall && model.ts > best_ts)) {
      best_recall = recall;
      best_ts = model.ts;
    }
  }
  return best_ts;
}

double select_ts_by_gof(std::span<const TsGofCandidate> candidates) {
  if (candidates.empty()) throw ConfigError("empty ts candidate grid");
  double best_ts = candidates.front().ts;
  double best_p = -1.0;
  for (const TsGofCandidate& c : candidates) {
    if (c.gof_p > best_p || (c.gof_p == best_p && c.ts > best_ts)) {
      best_p = c.gof_p;
      best_ts = c.ts;
    }
  }
  return best_ts;
}

// --- reference parameters -----------------------------------------------------------

std::vector<StatModel> default_models() {
  auto po = [](double u, double r, double c) {
    return FitCurve{CurveForm::PowerOffset, u, r, c, 0.0};
  };
  auto lin = [](double mu) { return FitCurve{CurveForm::Linear, mu, 1.0, 0.0, 0.0}; };
  auto pw = [](double q, double r) { return FitCurve{CurveForm::Power, q, r, 0.0, 0.0}; };
  return {
      {1, Purpose::Cumulative, 0.25, po(3.1e-3, 0.983, -0.818), po(1.45e-2, 0.652, 0.273), 1},
      {1, Purpose::Clustering, 0.19, po(1.23e-2, 0.999, -0.187), po(1.63e-2, 0.728, 1.36), 1},
      {2, Purpose::Cumulative, 0.18, lin(1.5e-2), pw(4.12e-2, 0.632), 1},
      {2, Purpose::Clustering, 0.19, lin(1.11e-2), pw(3.78e-2, 0.617), 1},
      {3, Purpose::Cumulative, 0.24, po(2.92e-3, 0.999, -1.61), po(5.6e-3, 0.725, 4.87), 1},
      {3, Purpose::Clustering, 0.50, po(9.54e-5, 0.999, -0.108), po(1.47e-3, 0.64, 0.108), 1},
  };
}

const StatModel& find_model(std::span<const StatModel> models, int subset, Purpose purpose) {
  for (const StatModel& m : models)
    if (m.subset == subset && m.purpose == purpose) return m;
  throw ConfigError("no model for subset " + std::to_string(subset) + " purpose " +
                    purpose_name(purpose));
}

}  // namespace tscout::stats
