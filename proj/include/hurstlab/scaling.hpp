#pragma once

#include <vector>

#include "hurstlab/entropy.hpp"
#include "hurstlab/series.hpp"
#include "hurstlab/types.hpp"

namespace hurstlab {

/// Pipeline defaults, shared by the CLI and the calibration module.
inline constexpr Scalar kDefaultBinFraction = 0.85;
inline constexpr Index kMinTrajectories = 32;
inline constexpr Index kDenseGridLimit = 64;     // every integer s up to here
inline constexpr Scalar kGridThinningRatio = 1.05;
inline constexpr Index kDefaultFitSMin = 3;
/// Fit window upper bound s_max = length / kFitSMaxDivisor. Bounds the
/// correlation bias of overlapping windows: at scale s only about N/s
/// independent excursions exist, so the fit stays where that count is large.
inline constexpr Index kFitSMaxDivisor = 32;
inline constexpr Index kDefaultSegmentLength = 650;

struct CurvePoint {
  Index s = 0;
  Scalar entropy = 0;  // nats
  Index total = 0;     // trajectories at this s
  Index bin_count = 0;
};

struct EntropyCurve {
  std::vector<CurvePoint> points;  // s strictly increasing
  Estimator estimator = Estimator::balanced;
  Scalar bin_fraction = kDefaultBinFraction;
  Index series_length = 0;
};

struct ScalingFit {
  Scalar delta = 0;
  Scalar intercept = 0;
  Index s_min = 0;
  Index s_max = 0;
  Scalar r_squared = 0;
  Scalar stderr_delta = 0;
  Index point_count = 0;
};

struct LocalPoint {
  Index t = 0;  // 1-based source index (segment end minus offset)
  Scalar delta = 0;
  Scalar r_squared = 0;
  Scalar stderr_delta = 0;
};

struct LocalScalingSeries {
  std::vector<LocalPoint> points;
  Index segment_length = 0;
  Index offset = 0;
  Index stride = 1;
};

struct TransitionEvent {
  Index t = 0;
  Scalar delta_before = 0;
  Scalar delta_after = 0;
  Scalar magnitude = 0;
};

/// Integers 2..floor(n/4), thinned to a geometric progression above
/// kDenseGridLimit, capped so every s keeps at least min_trajectories windows.
std::vector<Index> default_s_grid(Index n, Index min_trajectories = kMinTrajectories);

Index default_fit_s_max(Index n);

EntropyCurve entropy_curve(const RawSeries& series, Estimator estimator,
                           Scalar bin_fraction, const std::vector<Index>& s_grid);

/// OLS of entropy against ln s over curve points with s in [s_min, s_max].
ScalingFit fit_scaling(const EntropyCurve& curve, Index s_min, Index s_max);

/// Curve + fit with the default grid and fit window.
ScalingFit fit_series(const RawSeries& series,
                      Estimator estimator = Estimator::balanced,
                      Scalar bin_fraction = kDefaultBinFraction);

LocalScalingSeries local_scaling(const RawSeries& series,
                                 Index segment_length = kDefaultSegmentLength,
                                 Index offset = 0,
                                 Estimator estimator = Estimator::balanced,
                                 Scalar bin_fraction = kDefaultBinFraction,
                                 Index stride = 1);

/// Flags abrupt shifts of the local exponent. Compares mean delta over
/// [t-window, t) against [t, t+window), extracts maxima of the difference
/// above `threshold`, and reports each event at the estimated break onset:
/// the centroid of the exceedance region shifted back by 0.4x segment length,
/// the empirical response delay of segment-end-indexed local fits.
std::vector<TransitionEvent> detect_transitions(const LocalScalingSeries& local,
                                                Index window = 600,
                                                Scalar threshold = 0.08);

}  // namespace hurstlab
