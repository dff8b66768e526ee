#pragma once

#include "hurstlab/diffusion.hpp"
#include "hurstlab/types.hpp"

namespace hurstlab {

enum class Estimator { naive, corrected, balanced };

const char* estimator_name(Estimator e);
Estimator estimator_from_name(const std::string& name);

struct EntropyValue {
  Scalar value = 0;  // nats
  Estimator estimator = Estimator::naive;
  Index sample_count = 0;  // N - s + 1
  Index bin_count = 0;     // M(s)
};

/// Plug-in entropy -sum p ln p with p = count/total and 0 ln 0 = 0.
EntropyValue naive_entropy(const Histogram& hist);

/// Plug-in entropy plus the leading bias term (M-1)/(2 total).
EntropyValue corrected_entropy(const Histogram& hist);

/// Optimal per-bin estimate for a bin with count n out of `total` samples:
/// (n+1)/(total+2) * sum_{k=n+2}^{total+2} 1/k. O(1) per call after an
/// O(total) harmonic-table build, which is cached and thread-safe.
Scalar balanced_term(Index n, Index total);

/// Sum of balanced_term over all bins, empty ones included.
EntropyValue balanced_entropy(const Histogram& hist);

EntropyValue compute_entropy(const Histogram& hist, Estimator est);

}  // namespace hurstlab
