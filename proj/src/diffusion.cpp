#include "hurstlab/diffusion.hpp"

#include <cmath>
#include <string>

namespace hurstlab {

DisplacementEnsemble displacements(const RawSeries& series, Index s) {
  const Index n = series.size();
  if (s < 1 || s > n) {
    throw DataError("segment length " + std::to_string(s) +
                    " out of range for series of length " + std::to_string(n));
  }

  DisplacementEnsemble out;
  out.s = s;
  out.displacements.resize(n - s + 1);

  // Rolling window sum; resynced by a full recomputation every 2^16 steps to
  // keep accumulated rounding below 1e-9 relative.
  const auto& xi = series.values;
  Scalar sum = xi.head(s).sum();
  out.displacements[0] = sum;
  for (Index i = 1; i <= n - s; ++i) {
    if ((i & 0xFFFF) == 0) {
      sum = xi.segment(i, s).sum();
    } else {
      sum += xi[i + s - 1] - xi[i - 1];
    }
    out.displacements[i] = sum;
  }
  return out;
}

Scalar bin_width(const SeriesStats& stats, Scalar fraction) {
  if (fraction <= 0) throw DataError("bin fraction must be positive");
  if (stats.std <= 0) throw DataError("degenerate series: zero variance");
  return fraction * stats.std;
}

Histogram build_histogram(const DisplacementEnsemble& ensemble, Scalar width) {
  const Index total = ensemble.trajectory_count();
  if (total < 1) throw DataError("empty displacement ensemble");
  if (width <= 0) throw DataError("bin width must be positive");

  const Scalar x_min = ensemble.displacements.minCoeff();
  const Scalar x_max = ensemble.displacements.maxCoeff();

  Index m = 1;
  if (x_max > x_min) {
    m = static_cast<Index>(std::ceil((x_max - x_min) / width));
    if (m < 1) m = 1;
  }

  Histogram hist;
  hist.grid = BinGrid{x_min, width, m};
  hist.counts = IndexVector::Zero(m);
  hist.total = total;
  for (Index i = 0; i < total; ++i) {
    Index j = static_cast<Index>(
        std::floor((ensemble.displacements[i] - x_min) / width));
    if (j >= m) j = m - 1;  // x_max lands on the closed right edge
    if (j < 0) j = 0;
    ++hist.counts[j];
  }
  return hist;
}

}  // namespace hurstlab
