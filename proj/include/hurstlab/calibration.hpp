#pragma once

#include <cstdint>
#include <vector>

#include "hurstlab/fbm.hpp"
#include "hurstlab/scaling.hpp"
#include "hurstlab/types.hpp"

namespace hurstlab {

struct CalibrationResult {
  Scalar hurst = 0;
  Index series_length = 0;
  Index replicas = 0;
  std::vector<Scalar> estimates;  // fitted delta per replica, by index
  std::vector<Index> skipped;     // replica indices that degenerated
  Scalar mean = 0;
  Scalar std = 0;
  Scalar p_conf = 0;  // fraction of estimates within [hurst +- delta_h]
  Scalar delta_h = 0;
  std::uint64_t master_seed = 0;
  Estimator estimator = Estimator::balanced;
  Scalar bin_fraction = kDefaultBinFraction;
};

/// Monte Carlo sampling distribution of the fitted exponent over an fGn
/// ensemble. Deterministic given master_seed; replicas run concurrently with
/// per-replica seeds derived by replica_seed().
CalibrationResult calibrate(Scalar hurst, Index length, Index replicas,
                            Scalar delta_h, std::uint64_t master_seed,
                            Estimator estimator = Estimator::balanced,
                            Scalar bin_fraction = kDefaultBinFraction,
                            FbmMethod method = FbmMethod::circulant);

/// One calibrate run per length; pairs (length, p_conf) in input order.
std::vector<std::pair<Index, Scalar>> certainty_curve(
    Scalar hurst, const std::vector<Index>& lengths, Index replicas,
    Scalar delta_h, std::uint64_t master_seed,
    Estimator estimator = Estimator::balanced,
    Scalar bin_fraction = kDefaultBinFraction);

}  // namespace hurstlab
