#include "hurstlab/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "parallel.hpp"

namespace hurstlab {

CalibrationResult calibrate(Scalar hurst, Index length, Index replicas,
                            Scalar delta_h, std::uint64_t master_seed,
                            Estimator estimator, Scalar bin_fraction,
                            FbmMethod method) {
  if (replicas < 1) throw std::out_of_range("replicas must be at least 1");
  if (delta_h <= 0) throw std::out_of_range("delta_h must be positive");

  CalibrationResult res;
  res.hurst = hurst;
  res.series_length = length;
  res.replicas = replicas;
  res.delta_h = delta_h;
  res.master_seed = master_seed;
  res.estimator = estimator;
  res.bin_fraction = bin_fraction;
  res.estimates.assign(static_cast<std::size_t>(replicas),
                       std::numeric_limits<Scalar>::quiet_NaN());

  std::mutex skip_mutex;
  detail::parallel_for(static_cast<std::size_t>(replicas), [&](std::size_t i) {
    FbmConfig cfg;
    cfg.hurst = hurst;
    cfg.length = length;
    cfg.seed = replica_seed(master_seed, static_cast<std::uint64_t>(i));
    cfg.method = method;
    const FbmPath path = generate(cfg);
    try {
      res.estimates[i] = fit_series(path.increments, estimator, bin_fraction).delta;
    } catch (const DataError&) {
      // constant replica; probability zero but never dropped silently
      std::lock_guard lock(skip_mutex);
      res.skipped.push_back(static_cast<Index>(i));
    }
  });
  std::sort(res.skipped.begin(), res.skipped.end());

  Scalar sum = 0, sum2 = 0;
  Index valid = 0, inside = 0;
  for (const Scalar d : res.estimates) {
    if (std::isnan(d)) continue;
    ++valid;
    sum += d;
    sum2 += d * d;
    if (d >= hurst - delta_h && d <= hurst + delta_h) ++inside;
  }
  if (valid > 0) {
    res.mean = sum / static_cast<Scalar>(valid);
    res.std = std::sqrt(std::max<Scalar>(sum2 / static_cast<Scalar>(valid) -
                                             res.mean * res.mean, 0));
    res.p_conf = static_cast<Scalar>(inside) / static_cast<Scalar>(valid);
  }
  return res;
}

std::vector<std::pair<Index, Scalar>> certainty_curve(
    Scalar hurst, const std::vector<Index>& lengths, Index replicas,
    Scalar delta_h, std::uint64_t master_seed, Estimator estimator,
    Scalar bin_fraction) {
  std::vector<std::pair<Index, Scalar>> out;
  out.reserve(lengths.size());
  for (const Index n : lengths) {
    const auto res = calibrate(hurst, n, replicas, delta_h, master_seed,
                               estimator, bin_fraction);
    out.emplace_back(n, res.p_conf);
  }
  return out;
}

}  // namespace hurstlab
