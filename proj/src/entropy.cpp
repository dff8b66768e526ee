#include "hurstlab/entropy.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace hurstlab {

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::naive: return "naive";
    case Estimator::corrected: return "corrected";
    case Estimator::balanced: return "balanced";
  }
  return "?";
}

Estimator estimator_from_name(const std::string& name) {
  if (name == "naive") return Estimator::naive;
  if (name == "corrected") return Estimator::corrected;
  if (name == "balanced") return Estimator::balanced;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

namespace {

// Prefix harmonic numbers H_0..H_k, grown on demand. Readers take a shared
// lock on an immutable snapshot; growth swaps in a larger table.
class HarmonicTable {
 public:
  std::shared_ptr<const std::vector<Scalar>> get(std::size_t upto) {
    {
      std::shared_lock lock(mutex_);
      if (table_ && table_->size() > upto) return table_;
    }
    std::unique_lock lock(mutex_);
    if (!table_ || table_->size() <= upto) {
      auto grown = std::make_shared<std::vector<Scalar>>();
      std::size_t cap = std::max<std::size_t>(upto + 1, 1024);
      grown->resize(cap);
      (*grown)[0] = 0;
      for (std::size_t k = 1; k < cap; ++k)
        (*grown)[k] = (*grown)[k - 1] + Scalar(1) / static_cast<Scalar>(k);
      table_ = std::move(grown);
    }
    return table_;
  }

 private:
  std::shared_mutex mutex_;
  std::shared_ptr<const std::vector<Scalar>> table_;
};

HarmonicTable g_harmonics;

}  // namespace

EntropyValue naive_entropy(const Histogram& hist) {
  const Index total = hist.total;
  if (total < 1) throw DataError("empty histogram");
  Scalar s = 0;
  for (Index j = 0; j < hist.counts.size(); ++j) {
    const Index n = hist.counts[j];
    if (n == 0) continue;
    const Scalar p = static_cast<Scalar>(n) / static_cast<Scalar>(total);
    s -= p * std::log(p);
  }
  return {s, Estimator::naive, total, hist.counts.size()};
}

EntropyValue corrected_entropy(const Histogram& hist) {
  EntropyValue v = naive_entropy(hist);
  const Scalar m = static_cast<Scalar>(hist.counts.size());
  v.value += (m - 1) / (2 * static_cast<Scalar>(hist.total));
  v.estimator = Estimator::corrected;
  return v;
}

Scalar balanced_term(Index n, Index total) {
  if (total < 1) throw DataError("total must be positive");
  if (n < 0 || n > total) {
    throw std::out_of_range("bin count " + std::to_string(n) +
                            " exceeds total " + std::to_string(total));
  }
  auto h = g_harmonics.get(static_cast<std::size_t>(total) + 2);
  const Scalar tail = (*h)[static_cast<std::size_t>(total) + 2] -
                      (*h)[static_cast<std::size_t>(n) + 1];
  return static_cast<Scalar>(n + 1) / static_cast<Scalar>(total + 2) * tail;
}

EntropyValue balanced_entropy(const Histogram& hist) {
  const Index total = hist.total;
  if (total < 1) throw DataError("empty histogram");
  auto h = g_harmonics.get(static_cast<std::size_t>(total) + 2);
  const Scalar h_top = (*h)[static_cast<std::size_t>(total) + 2];
  Scalar s = 0;
  for (Index j = 0; j < hist.counts.size(); ++j) {
    const Index n = hist.counts[j];
    s += static_cast<Scalar>(n + 1) *
         (h_top - (*h)[static_cast<std::size_t>(n) + 1]);
  }
  s /= static_cast<Scalar>(total + 2);
  return {s, Estimator::balanced, total, hist.counts.size()};
}

EntropyValue compute_entropy(const Histogram& hist, Estimator est) {
  switch (est) {
    case Estimator::naive: return naive_entropy(hist);
    case Estimator::corrected: return corrected_entropy(hist);
    case Estimator::balanced: return balanced_entropy(hist);
  }
  throw std::invalid_argument("bad estimator");
}

}  // namespace hurstlab
