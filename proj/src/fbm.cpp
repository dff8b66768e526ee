#include "hurstlab/fbm.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <vector>

namespace hurstlab {

const char* fbm_method_name(FbmMethod m) {
  return m == FbmMethod::circulant ? "circulant" : "hosking";
}

FbmMethod fbm_method_from_name(const std::string& name) {
  if (name == "circulant") return FbmMethod::circulant;
  if (name == "hosking") return FbmMethod::hosking;
  throw std::invalid_argument("unknown fbm method '" + name + "'");
}

Scalar fgn_autocovariance(Index k, Scalar hurst) {
  if (hurst <= 0 || hurst >= 1) throw std::out_of_range("hurst must be in (0,1)");
  if (k < 0) throw std::out_of_range("lag must be non-negative");
  if (k == 0) return 1;
  const Scalar h2 = 2 * hurst;
  const Scalar kk = static_cast<Scalar>(k);
  return 0.5 * (std::pow(kk + 1, h2) - 2 * std::pow(kk, h2) +
                std::pow(kk - 1, h2));
}

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over master xor golden-ratio-stepped index
  std::uint64_t z = master ^ (index * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Scalar GaussianSource::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // uniforms in (0,1]; 53-bit mantissa
  const Scalar u1 =
      (static_cast<Scalar>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const Scalar u2 =
      (static_cast<Scalar>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const Scalar r = std::sqrt(-2.0 * std::log(u1));
  const Scalar theta = 2.0 * std::numbers::pi_v<Scalar> * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

void validate(const FbmConfig& c) {
  if (c.hurst <= 0 || c.hurst >= 1) throw std::out_of_range("hurst must be in (0,1)");
  if (c.length < 2) throw std::out_of_range("length must be at least 2");
}

Vector hosking_fgn(const FbmConfig& c) {
  const Index n = c.length;
  Vector gamma(n);
  for (Index k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(k, c.hurst);

  GaussianSource normal(c.seed);
  Vector x(n);
  std::vector<Scalar> phi, phi_prev;
  Scalar v = gamma[0];
  x[0] = std::sqrt(v) * normal();
  for (Index i = 1; i < n; ++i) {
    Scalar acc = gamma[i];
    for (std::size_t j = 0; j < phi_prev.size(); ++j)
      acc -= phi_prev[j] * gamma[i - 1 - static_cast<Index>(j)];
    const Scalar phi_ii = acc / v;

    phi.assign(phi_prev.begin(), phi_prev.end());
    phi.push_back(phi_ii);
    for (std::size_t j = 0; j + 1 < phi.size(); ++j)
      phi[j] = phi_prev[j] - phi_ii * phi_prev[phi_prev.size() - 1 - j];

    v *= (1 - phi_ii * phi_ii);
    Scalar mean = 0;
    for (std::size_t j = 0; j < phi.size(); ++j)
      mean += phi[j] * x[i - 1 - static_cast<Index>(j)];
    x[i] = mean + std::sqrt(std::max<Scalar>(v, 0)) * normal();
    phi_prev.swap(phi);
  }
  return x;
}

// Davies-Harte circulant embedding of size 2n. Returns false when the
// embedding spectrum has a materially negative eigenvalue.
bool davies_harte_fgn(const FbmConfig& c, Vector& out) {
  const Index n = c.length;
  const Index m = 2 * n;

  std::vector<std::complex<Scalar>> row(static_cast<std::size_t>(m));
  for (Index k = 0; k <= n; ++k) row[static_cast<std::size_t>(k)] = fgn_autocovariance(k, c.hurst);
  for (Index k = 1; k < n; ++k)
    row[static_cast<std::size_t>(m - k)] = row[static_cast<std::size_t>(k)];

  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> lambda;
  fft.fwd(lambda, row);

  Scalar max_ev = 0;
  for (const auto& l : lambda) max_ev = std::max(max_ev, l.real());
  for (const auto& l : lambda) {
    if (l.real() < -1e-8 * max_ev) return false;
  }

  GaussianSource normal(c.seed);
  std::vector<std::complex<Scalar>> w(static_cast<std::size_t>(m));
  const Scalar inv_m = 1.0 / static_cast<Scalar>(m);
  auto ev = [&](Index k) {
    return std::max<Scalar>(lambda[static_cast<std::size_t>(k)].real(), 0);
  };
  w[0] = std::sqrt(ev(0) * inv_m) * normal();
  w[static_cast<std::size_t>(n)] = std::sqrt(ev(n) * inv_m) * normal();
  for (Index k = 1; k < n; ++k) {
    const Scalar amp = std::sqrt(ev(k) * inv_m * 0.5);
    const Scalar re = normal();
    const Scalar im = normal();
    w[static_cast<std::size_t>(k)] = {amp * re, amp * im};
    w[static_cast<std::size_t>(m - k)] = {amp * re, -amp * im};
  }

  std::vector<std::complex<Scalar>> field;
  fft.fwd(field, w);
  out.resize(n);
  for (Index i = 0; i < n; ++i) out[i] = field[static_cast<std::size_t>(i)].real();
  return true;
}

}  // namespace

FbmPath generate(const FbmConfig& config) {
  validate(config);

  Vector fgn;
  FbmMethod used = config.method;
  if (config.method == FbmMethod::circulant) {
    if (!davies_harte_fgn(config, fgn)) {
      std::cerr << "hurstlab: circulant embedding not positive semidefinite "
                   "(H=" << config.hurst << ", n=" << config.length
                << "); falling back to hosking\n";
      used = FbmMethod::hosking;
      fgn = hosking_fgn(config);
    }
  } else {
    fgn = hosking_fgn(config);
  }

  Vector path(fgn.size());
  Scalar acc = 0;
  for (Index i = 0; i < fgn.size(); ++i) {
    acc += fgn[i];
    path[i] = acc;
  }

  FbmPath out;
  out.increments = RawSeries(std::move(fgn), "fgn", "synthetic");
  out.path = RawSeries(std::move(path), "fbm", "synthetic");
  out.config = config;
  out.method_used = used;
  return out;
}

}  // namespace hurstlab
