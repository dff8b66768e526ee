#include "hurstlab/series.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace hurstlab {

namespace {

Scalar parse_value(const std::string& token, std::size_t line_no) {
  const char* first = token.data();
  const char* last = first + token.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(*(last - 1)))) --last;
  Scalar out;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError("non-numeric token '" + token + "' at line " +
                     std::to_string(line_no));
  }
  if (!std::isfinite(out)) {
    throw ParseError("non-finite value at line " + std::to_string(line_no));
  }
  return out;
}

// Splits one CSV record; handles quoted fields with embedded commas/quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

RawSeries::RawSeries(Vector v, std::string lbl, std::string org)
    : values(std::move(v)), label(std::move(lbl)), origin(std::move(org)) {
  if (values.size() < 1) throw DataError("series must contain at least one value");
  if (!values.allFinite()) throw DataError("series contains NaN or Inf");
}

RawSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                      const std::string& column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<Scalar> vals;
  std::string line;
  std::size_t line_no = 0;

  if (format == SeriesFormat::plain) {
    while (std::getline(in, line)) {
      ++line_no;
      std::string trimmed = line;
      while (!trimmed.empty() &&
             std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.pop_back();
      std::size_t start = 0;
      while (start < trimmed.size() &&
             std::isspace(static_cast<unsigned char>(trimmed[start])))
        ++start;
      trimmed = trimmed.substr(start);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      vals.push_back(parse_value(trimmed, line_no));
    }
  } else {
    if (!std::getline(in, line)) throw ParseError("empty CSV file: " + path.string());
    ++line_no;
    auto header = split_csv(line);
    Index col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == column) col = static_cast<Index>(i);
    }
    if (col < 0) throw ParseError("column '" + column + "' not found in " + path.string());
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      auto fields = split_csv(line);
      if (static_cast<Index>(fields.size()) <= col) {
        throw ParseError("too few fields at line " + std::to_string(line_no));
      }
      vals.push_back(parse_value(fields[static_cast<std::size_t>(col)], line_no));
    }
  }

  if (vals.empty()) throw ParseError("no values parsed from " + path.string());
  return RawSeries(Eigen::Map<Vector>(vals.data(), static_cast<Index>(vals.size())),
                   path.stem().string(), path.string());
}

void save_series(const RawSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  for (Index i = 0; i < series.size(); ++i) out << series.values[i] << '\n';
}

RawSeries compute_returns(const RawSeries& prices, Index delta_t, Scalar base,
                          ReturnMode mode) {
  const Index n = prices.size();
  if (delta_t < 1) throw DataError("delta_t must be positive");
  if (delta_t >= n) throw DataError("delta_t >= series length");
  if ((prices.values.array() <= 0).any()) throw DataError("prices must be strictly positive");
  if (base <= 1) throw DataError("log base must exceed 1");

  const Scalar ln_base = std::log(base);
  const auto head = prices.values.head(n - delta_t).array();
  const auto tail = prices.values.tail(n - delta_t).array();

  Vector out(n - delta_t);
  if (mode == ReturnMode::log_ratio) {
    out = ((tail / head).log() / ln_base).matrix();
  } else {
    if ((prices.values.array() == 1).any()) {
      throw DataError("literal mode undefined for price equal to 1");
    }
    out = (tail.log() / head.log()).matrix();
  }
  return RawSeries(std::move(out), prices.label, prices.origin);
}

SeriesStats stats(const RawSeries& series) {
  SeriesStats s;
  s.mean = series.values.mean();
  s.variance = (series.values.array() - s.mean).square().mean();
  s.std = std::sqrt(s.variance);
  return s;
}

}  // namespace hurstlab
