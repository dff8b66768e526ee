#include "hurstlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace hurstlab {

std::vector<Index> default_s_grid(Index n, Index min_trajectories) {
  std::vector<Index> grid;
  Index s_max = n / 4;
  // keep at least min_trajectories windows at every s
  s_max = std::min(s_max, n + 1 - min_trajectories);
  for (Index s = 2; s <= std::min(s_max, kDenseGridLimit); ++s) grid.push_back(s);
  Scalar g = static_cast<Scalar>(kDenseGridLimit);
  while (true) {
    g *= kGridThinningRatio;
    const Index s = static_cast<Index>(std::llround(g));
    if (s > s_max) break;
    if (grid.empty() || s > grid.back()) grid.push_back(s);
  }
  return grid;
}

Index default_fit_s_max(Index n) {
  return std::max<Index>(kDefaultFitSMin + 1, n / kFitSMaxDivisor);
}

EntropyCurve entropy_curve(const RawSeries& series, Estimator estimator,
                           Scalar bin_fraction, const std::vector<Index>& s_grid) {
  const Index n = series.size();
  const SeriesStats st = stats(series);
  const Scalar eps = bin_width(st, bin_fraction);  // throws on constant series

  EntropyCurve curve;
  curve.estimator = estimator;
  curve.bin_fraction = bin_fraction;
  curve.series_length = n;
  curve.points.reserve(s_grid.size());

  Index prev_s = 0;
  for (const Index s : s_grid) {
    if (s <= prev_s) throw std::invalid_argument("s grid must be strictly increasing");
    prev_s = s;
    if (s < 1 || s > n || n - s + 1 < kMinTrajectories) {
      throw DataError("segment length s=" + std::to_string(s) +
                      " violates grid preconditions for series length " +
                      std::to_string(n));
    }
    const auto ens = displacements(series, s);
    const auto hist = build_histogram(ens, eps);
    const auto ent = compute_entropy(hist, estimator);
    curve.points.push_back({s, ent.value, hist.total, hist.counts.size()});
  }
  return curve;
}

ScalingFit fit_scaling(const EntropyCurve& curve, Index s_min, Index s_max) {
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  Index n = 0;
  for (const auto& p : curve.points) {
    if (p.s < s_min || p.s > s_max) continue;
    const Scalar x = std::log(static_cast<Scalar>(p.s));
    sx += x;
    sy += p.entropy;
    sxx += x * x;
    sxy += x * p.entropy;
    syy += p.entropy * p.entropy;
    ++n;
  }
  if (n < 2) {
    throw DataError("fewer than 2 curve points in fit range [" +
                    std::to_string(s_min) + ", " + std::to_string(s_max) + "]");
  }

  const Scalar nn = static_cast<Scalar>(n);
  const Scalar ss_xx = sxx - sx * sx / nn;
  const Scalar ss_xy = sxy - sx * sy / nn;
  const Scalar ss_yy = syy - sy * sy / nn;

  ScalingFit fit;
  fit.s_min = s_min;
  fit.s_max = s_max;
  fit.point_count = n;
  fit.delta = ss_xy / ss_xx;
  fit.intercept = (sy - fit.delta * sx) / nn;

  const Scalar ss_res = std::max<Scalar>(ss_yy - fit.delta * ss_xy, 0);
  fit.r_squared = ss_yy > 0 ? 1 - ss_res / ss_yy : 1;
  fit.stderr_delta = n > 2 ? std::sqrt(ss_res / (nn - 2) / ss_xx) : 0;
  return fit;
}

ScalingFit fit_series(const RawSeries& series, Estimator estimator,
                      Scalar bin_fraction) {
  const auto curve =
      entropy_curve(series, estimator, bin_fraction, default_s_grid(series.size()));
  return fit_scaling(curve, kDefaultFitSMin, default_fit_s_max(series.size()));
}

LocalScalingSeries local_scaling(const RawSeries& series, Index segment_length,
                                 Index offset, Estimator estimator,
                                 Scalar bin_fraction, Index stride) {
  const Index n = series.size();
  if (segment_length < 1) throw std::invalid_argument("segment length must be positive");
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  if (n < segment_length) {
    throw DataError("series length " + std::to_string(n) +
                    " is shorter than segment length " +
                    std::to_string(segment_length));
  }

  const auto grid = default_s_grid(segment_length);
  const Index fit_max = default_fit_s_max(segment_length);

  std::vector<Index> ends;
  for (Index t = segment_length; t <= n; t += stride) ends.push_back(t);

  LocalScalingSeries local;
  local.segment_length = segment_length;
  local.offset = offset;
  local.stride = stride;
  local.points.resize(ends.size());

  detail::parallel_for(ends.size(), [&](std::size_t i) {
    const Index t = ends[i];
    RawSeries segment(series.values.segment(t - segment_length, segment_length),
                      series.label, series.origin);
    const auto curve = entropy_curve(segment, estimator, bin_fraction, grid);
    const auto fit = fit_scaling(curve, kDefaultFitSMin, fit_max);
    local.points[i] = {t - offset, fit.delta, fit.r_squared, fit.stderr_delta};
  });
  return local;
}

namespace {

// Mean of delta over point indices [a, b).
Scalar range_mean(const LocalScalingSeries& local, Index a, Index b) {
  Scalar acc = 0;
  for (Index i = a; i < b; ++i) acc += local.points[static_cast<std::size_t>(i)].delta;
  return acc / static_cast<Scalar>(b - a);
}

}  // namespace

std::vector<TransitionEvent> detect_transitions(const LocalScalingSeries& local,
                                                Index window, Scalar threshold) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  if (threshold <= 0) throw std::invalid_argument("threshold must be positive");

  const Index stride = std::max<Index>(local.stride, 1);
  const Index wp = std::max<Index>(window / stride, 1);  // window in points
  const Index np = static_cast<Index>(local.points.size());
  if (np < 2 * wp + 1) {
    throw DataError("local series has " + std::to_string(np) +
                    " points; need at least " + std::to_string(2 * wp + 1));
  }

  // Signed mean difference around each admissible split point.
  std::vector<Scalar> diff(static_cast<std::size_t>(np), 0);
  std::vector<bool> masked(static_cast<std::size_t>(np), false);
  for (Index i = wp; i + wp <= np; ++i) {
    diff[static_cast<std::size_t>(i)] =
        range_mean(local, i, i + wp) - range_mean(local, i - wp, i);
  }
  for (Index i = 0; i < wp; ++i) {
    masked[static_cast<std::size_t>(i)] = true;
    masked[static_cast<std::size_t>(np - 1 - i)] = true;
  }

  // Response of a segment-end-indexed local fit to a break at time b ramps
  // over roughly 0.8x segment length starting at b; the difference peak sits
  // near the ramp centre.
  const Index delay = static_cast<Index>(std::llround(0.4 * static_cast<Scalar>(local.segment_length)));
  const Index gap_pts = std::max<Index>(
      static_cast<Index>(std::llround(0.35 * static_cast<Scalar>(local.segment_length))) / stride, 1);

  std::vector<TransitionEvent> events;
  while (true) {
    Index peak = -1;
    Scalar best = threshold;
    for (Index i = 0; i < np; ++i) {
      if (masked[static_cast<std::size_t>(i)]) continue;
      if (std::abs(diff[static_cast<std::size_t>(i)]) >= best) {
        best = std::abs(diff[static_cast<std::size_t>(i)]);
        peak = i;
      }
    }
    if (peak < 0) break;

    const Scalar sign = diff[static_cast<std::size_t>(peak)] >= 0 ? 1 : -1;
    const Scalar level = 0.4 * best;
    Index lo = peak, hi = peak;
    while (lo > 0 && sign * diff[static_cast<std::size_t>(lo - 1)] > level &&
           !masked[static_cast<std::size_t>(lo - 1)])
      --lo;
    while (hi + 1 < np && sign * diff[static_cast<std::size_t>(hi + 1)] > level &&
           !masked[static_cast<std::size_t>(hi + 1)])
      ++hi;

    // centroid of the exceedance region, weighted by excess over the level
    Scalar wsum = 0, tsum = 0;
    for (Index i = lo; i <= hi; ++i) {
      const Scalar w = sign * diff[static_cast<std::size_t>(i)] - level;
      wsum += w;
      tsum += w * static_cast<Scalar>(local.points[static_cast<std::size_t>(i)].t);
    }
    const Scalar centre_t = wsum > 0
        ? tsum / wsum
        : static_cast<Scalar>(local.points[static_cast<std::size_t>(peak)].t);
    const Index centre_idx = (lo + hi) / 2;

    // plateau levels on either side, skipping the transition ramp itself
    const Index pre_hi = std::max<Index>(centre_idx - gap_pts, 0);
    const Index pre_lo = std::max<Index>(pre_hi - wp, 0);
    const Index post_lo = std::min<Index>(centre_idx + gap_pts, np - 1);
    const Index post_hi = std::min<Index>(post_lo + wp, np);

    TransitionEvent ev;
    ev.t = static_cast<Index>(std::llround(centre_t)) - delay;
    ev.delta_before = pre_hi > pre_lo ? range_mean(local, pre_lo, pre_hi)
                                      : local.points[static_cast<std::size_t>(pre_hi)].delta;
    ev.delta_after = post_hi > post_lo ? range_mean(local, post_lo, post_hi)
                                       : local.points[static_cast<std::size_t>(post_lo)].delta;
    ev.magnitude = std::abs(ev.delta_after - ev.delta_before);
    if (ev.magnitude >= threshold) events.push_back(ev);

    for (Index i = std::max<Index>(lo - wp, 0);
         i <= std::min<Index>(hi + wp, np - 1); ++i)
      masked[static_cast<std::size_t>(i)] = true;
  }

  std::sort(events.begin(), events.end(),
            [](const TransitionEvent& a, const TransitionEvent& b) { return a.t < b.t; });
  return events;
}

}  // namespace hurstlab
