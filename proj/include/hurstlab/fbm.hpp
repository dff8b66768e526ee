#pragma once

#include <cstdint>
#include <random>

#include "hurstlab/series.hpp"
#include "hurstlab/types.hpp"

namespace hurstlab {

enum class FbmMethod { circulant, hosking };

const char* fbm_method_name(FbmMethod m);
FbmMethod fbm_method_from_name(const std::string& name);

struct FbmConfig {
  Scalar hurst = 0.5;
  Index length = 0;
  std::uint64_t seed = 0;
  FbmMethod method = FbmMethod::circulant;
};

struct FbmPath {
  RawSeries increments;  // fractional Gaussian noise, unit-variance steps
  RawSeries path;        // cumulative sums
  FbmConfig config;
  FbmMethod method_used = FbmMethod::circulant;  // differs from config on fallback
};

/// Identifier of the sampling pipeline, recorded in provenance output.
inline constexpr const char* kRngAlgorithm = "splitmix64/mt19937_64/box-muller";

/// Stationary autocovariance of unit-variance fGn:
/// gamma(k) = ((k+1)^2H - 2 k^2H + |k-1|^2H) / 2.
Scalar fgn_autocovariance(Index k, Scalar hurst);

/// Exact-covariance fGn/fBm sampler. Deterministic per config. circulant is
/// Davies-Harte embedding; if the embedding spectrum has negative entries the
/// call falls back to hosking and says so on stderr.
FbmPath generate(const FbmConfig& config);

/// splitmix64-mixed per-replica seed, a pure function of (master, index).
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index);

/// Standard normals from mt19937_64 via the basic Box-Muller transform.
/// Self-contained so streams do not depend on the C++ library's
/// normal_distribution implementation.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  Scalar operator()();

 private:
  std::mt19937_64 engine_;
  Scalar spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace hurstlab
