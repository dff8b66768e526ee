#pragma once

#include "hurstlab/series.hpp"
#include "hurstlab/types.hpp"

namespace hurstlab {

/// All overlapping window sums of length s, stride 1, in starting-index order.
struct DisplacementEnsemble {
  Index s = 0;
  Vector displacements;  // N - s + 1 entries

  Index trajectory_count() const { return displacements.size(); }
};

/// Uniform grid over the displacement range. Bin j (1-based) covers
/// [x_min + (j-1)*width, x_min + j*width); the last bin is closed on the right.
struct BinGrid {
  Scalar x_min = 0;
  Scalar width = 0;
  Index bin_count = 0;
};

struct Histogram {
  BinGrid grid;
  IndexVector counts;  // length grid.bin_count, empty interior bins retained
  Index total = 0;     // sum of counts == trajectory count of the source
};

DisplacementEnsemble displacements(const RawSeries& series, Index s);

/// Bin width as a fraction of the series standard deviation, constant in s.
Scalar bin_width(const SeriesStats& stats, Scalar fraction);

Histogram build_histogram(const DisplacementEnsemble& ensemble, Scalar width);

}  // namespace hurstlab
