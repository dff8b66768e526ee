#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hurstlab/types.hpp"

namespace hurstlab {

/// An ordered sequence of finite real samples. Order is preserved exactly as
/// ingested; values are validated to be finite on construction.
struct RawSeries {
  Vector values;
  std::string label;
  std::string origin;

  RawSeries() = default;
  RawSeries(Vector v, std::string lbl = {}, std::string org = {});

  Index size() const { return values.size(); }
};

struct SeriesStats {
  Scalar mean = 0;
  Scalar variance = 0;  // population (1/N)
  Scalar std = 0;
};

enum class SeriesFormat { plain, csv };
enum class ReturnMode { log_ratio, literal };

/// Reads a series from disk. Plain format: one value per line; blank lines
/// and lines starting with '#' are skipped. CSV: first row is a header and
/// `column` selects the field by name (RFC-4180 style quoting accepted).
RawSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                      const std::string& column = {});

/// Writes one value per line with full round-trip precision.
void save_series(const RawSeries& series, const std::filesystem::path& path);

/// Return series of a strictly positive price series over horizon delta_t.
/// log_ratio: r(t) = log_base(p(t+dt)/p(t)); literal: the ratio of logs
/// log_base(p(t+dt)) / log_base(p(t)).
RawSeries compute_returns(const RawSeries& prices, Index delta_t = 5,
                          Scalar base = 2.718281828459045235,
                          ReturnMode mode = ReturnMode::log_ratio);

SeriesStats stats(const RawSeries& series);

}  // namespace hurstlab
