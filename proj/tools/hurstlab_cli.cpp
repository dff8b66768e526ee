// Command-line front end: synthesis, analysis, calibration, local scanning.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hurstlab/calibration.hpp"
#include "hurstlab/fbm.hpp"
#include "hurstlab/scaling.hpp"
#include "hurstlab/series.hpp"

namespace hl = hurstlab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format = "plain";
  std::string column;
  std::string estimator = "balanced";
  double bin_fraction = hl::kDefaultBinFraction;
  std::string returns = "none";
  long delta_t = 5;
  double log_base = 2.718281828459045235;
};

void add_input_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-i,--input", o.input, "Input series file")->required();
  cmd->add_option("--format", o.format, "Input format: plain or csv")
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();
  cmd->add_option("--column", o.column, "CSV column name (format csv)");
  cmd->add_option("--returns", o.returns,
                  "Transform prices to returns: none, log_ratio or literal")
      ->check(CLI::IsMember({"none", "log_ratio", "literal"}))
      ->capture_default_str();
  cmd->add_option("--delta-t", o.delta_t, "Return horizon in samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--log-base", o.log_base, "Logarithm base for returns")
      ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e12))
      ->capture_default_str();
}

void add_estimator_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-e,--estimator", o.estimator,
                  "Entropy estimator: naive, corrected or balanced")
      ->check(CLI::IsMember({"naive", "corrected", "balanced"}))
      ->capture_default_str();
  cmd->add_option("-f,--bin-fraction", o.bin_fraction,
                  "Bin width as a fraction of the series std")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

hl::RawSeries load_input(const CommonOpts& o) {
  auto series = hl::load_series(
      o.input, o.format == "csv" ? hl::SeriesFormat::csv : hl::SeriesFormat::plain,
      o.column);
  if (o.returns != "none") {
    series = hl::compute_returns(series, o.delta_t, o.log_base,
                                 o.returns == "literal" ? hl::ReturnMode::literal
                                                        : hl::ReturnMode::log_ratio);
  }
  return series;
}

json input_config(const CommonOpts& o) {
  json cfg{{"input", o.input},
           {"format", o.format},
           {"estimator", o.estimator},
           {"bin_fraction", o.bin_fraction},
           {"returns", o.returns},
           {"log_base", o.log_base}};
  if (!o.column.empty()) cfg["column"] = o.column;
  if (o.returns != "none") cfg["delta_t"] = o.delta_t;
  return cfg;
}

void write_config_header(std::ostream& out, const json& cfg) {
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    out << "# " << it.key() << "=" << it.value().dump() << "\n";
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_curve_csv(const std::string& path, const hl::EntropyCurve& curve,
                     const json& cfg) {
  auto out = open_out(path);
  out.precision(12);
  write_config_header(out, cfg);
  out << "s,ln_s,entropy,estimator,total_trajectories,bin_count\n";
  for (const auto& p : curve.points) {
    out << p.s << ',' << std::log(static_cast<double>(p.s)) << ',' << p.entropy
        << ',' << hl::estimator_name(curve.estimator) << ',' << p.total << ','
        << p.bin_count << '\n';
  }
}

json fit_to_json(const hl::ScalingFit& fit) {
  return json{{"delta", fit.delta},
              {"intercept", fit.intercept},
              {"s_min", fit.s_min},
              {"s_max", fit.s_max},
              {"r_squared", fit.r_squared},
              {"stderr_delta", fit.stderr_delta},
              {"point_count", fit.point_count}};
}

void dump_histograms(const std::string& path, const hl::RawSeries& series,
                     const std::vector<hl::Index>& grid, double fraction) {
  const auto st = hl::stats(series);
  const double eps = hl::bin_width(st, fraction);
  auto out = open_out(path);
  out.precision(12);
  out << "s,bin_index,left_edge,count\n";
  for (const auto s : grid) {
    const auto hist = hl::build_histogram(hl::displacements(series, s), eps);
    for (hl::Index j = 0; j < hist.counts.size(); ++j) {
      out << s << ',' << (j + 1) << ','
          << hist.grid.x_min + static_cast<double>(j) * hist.grid.width << ','
          << hist.counts[j] << '\n';
    }
  }
}

int run_synth(const std::string& output, double hurst, long length,
              std::uint64_t seed, const std::string& method,
              const std::string& emit) {
  hl::FbmConfig cfg;
  cfg.hurst = hurst;
  cfg.length = length;
  cfg.seed = seed;
  cfg.method = hl::fbm_method_from_name(method);
  const auto path = hl::generate(cfg);

  hl::save_series(emit == "path" ? path.path : path.increments, output);
  json prov{{"hurst", hurst},
            {"length", length},
            {"seed", seed},
            {"method", method},
            {"method_used", hl::fbm_method_name(path.method_used)},
            {"emit", emit},
            {"rng_algorithm", hl::kRngAlgorithm}};
  auto side = open_out(output + ".json");
  side << prov.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaling-exponent estimation for short time series"};
  app.require_subcommand(1);

  CommonOpts opts;

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "Generate fractional Gaussian noise / fBm");
  double hurst = 0.7;
  long length = hl::kDefaultSegmentLength;
  std::uint64_t seed = 0;
  std::string method = "circulant";
  std::string emit = "increments";
  synth->add_option("--hurst", hurst, "Hurst parameter in (0,1)")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  synth->add_option("--length", length, "Series length")->required()->check(CLI::Range(2l, 100000000l));
  synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
  synth->add_option("--method", method, "Sampler: circulant or hosking")
      ->check(CLI::IsMember({"circulant", "hosking"}))
      ->capture_default_str();
  synth->add_option("--emit", emit, "Write increments (fGn) or path (fBm)")
      ->check(CLI::IsMember({"increments", "path"}))
      ->capture_default_str();
  synth->add_option("-o,--output", opts.output, "Output series file")->required();

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "Entropy curve and scaling fit");
  long s_min = hl::kDefaultFitSMin;
  long s_max = 0;  // 0 = default for the series length
  std::string hist_dump;
  add_input_opts(analyze, opts);
  add_estimator_opts(analyze, opts);
  analyze->add_option("--s-min", s_min, "Lower fit bound")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--s-max", s_max, "Upper fit bound (0 = length/32)");
  analyze->add_option("--dump-histograms", hist_dump, "Also write per-s histograms to this CSV");
  analyze->add_option("-o,--output", opts.output,
                      "Output base path; writes <base>.curve.csv and <base>.fit.json")
      ->required();

  // --- local ---
  auto* local = app.add_subcommand("local", "Sliding-window local scaling and transitions");
  long segment = hl::kDefaultSegmentLength;
  long offset = 0;
  long stride = 1;
  long window = 600;
  double threshold = 0.08;
  add_input_opts(local, opts);
  add_estimator_opts(local, opts);
  local->add_option("--segment-length", segment, "Sliding segment length")
      ->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--offset", offset, "Report delta at segment end minus this delay")
      ->capture_default_str();
  local->add_option("--stride", stride, "Subsample segment end indices")
      ->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--window", window, "Transition detection window")
      ->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--threshold", threshold, "Transition detection threshold")
      ->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("-o,--output", opts.output,
                    "Output base path; writes <base>.local.csv and <base>.transitions.json")
      ->required();

  // --- calibrate ---
  auto* calib = app.add_subcommand("calibrate", "Monte Carlo sampling distribution of delta");
  double cal_hurst = 0.7;
  std::vector<long> cal_lengths{hl::kDefaultSegmentLength};
  long replicas = 1000;
  double delta_h = 0.08;
  std::string estimates_dump;
  calib->add_option("--hurst", cal_hurst, "Hurst parameter")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  calib->add_option("--length", cal_lengths,
                    "Series length; repeat for a certainty curve")
      ->capture_default_str();
  calib->add_option("--replicas", replicas, "Replicas per length")
      ->check(CLI::PositiveNumber)->capture_default_str();
  calib->add_option("--delta-h", delta_h, "Confidence half width")
      ->check(CLI::PositiveNumber)->capture_default_str();
  calib->add_option("--seed", seed, "Master seed")->capture_default_str();
  calib->add_option("--method", method, "Sampler: circulant or hosking")
      ->check(CLI::IsMember({"circulant", "hosking"}))->capture_default_str();
  add_estimator_opts(calib, opts);
  calib->add_option("--dump-estimates", estimates_dump, "Write raw estimates to this CSV");
  calib->add_option("-o,--output", opts.output, "Output JSON file (default: stdout)");

  // --- compare ---
  auto* compare = app.add_subcommand("compare", "All three estimators side by side");
  add_input_opts(compare, opts);
  compare->add_option("-f,--bin-fraction", opts.bin_fraction,
                      "Bin width as a fraction of the series std")
      ->check(CLI::PositiveNumber)->capture_default_str();
  compare->add_option("-o,--output", opts.output,
                      "Output base path; writes <base>.compare.csv and <base>.fits.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      return run_synth(opts.output, hurst, length, seed, method, emit);
    }

    if (analyze->parsed()) {
      const auto series = load_input(opts);
      const auto grid = hl::default_s_grid(series.size());
      if (grid.size() < 2) throw hl::DataError("series too short for an entropy curve");
      const auto est = hl::estimator_from_name(opts.estimator);
      const auto curve = hl::entropy_curve(series, est, opts.bin_fraction, grid);
      const long fit_max = s_max > 0 ? s_max : hl::default_fit_s_max(series.size());
      const auto fit = hl::fit_scaling(curve, s_min, fit_max);

      json cfg = input_config(opts);
      cfg["s_min"] = s_min;
      cfg["s_max"] = fit_max;
      cfg["series_length"] = series.size();
      write_curve_csv(opts.output + ".curve.csv", curve, cfg);
      json out{{"config", cfg}, {"fit", fit_to_json(fit)}};
      open_out(opts.output + ".fit.json") << out.dump(2) << '\n';
      std::cout << out.dump(2) << '\n';
      if (!hist_dump.empty()) dump_histograms(hist_dump, series, grid, opts.bin_fraction);
      return 0;
    }

    if (local->parsed()) {
      const auto series = load_input(opts);
      const auto est = hl::estimator_from_name(opts.estimator);
      const auto ls = hl::local_scaling(series, segment, offset, est,
                                        opts.bin_fraction, stride);
      json cfg = input_config(opts);
      cfg["segment_length"] = segment;
      cfg["offset"] = offset;
      cfg["stride"] = stride;
      cfg["window"] = window;
      cfg["threshold"] = threshold;

      auto csv = open_out(opts.output + ".local.csv");
      csv.precision(12);
      write_config_header(csv, cfg);
      csv << "t,delta,r_squared,stderr_delta\n";
      for (const auto& p : ls.points) {
        csv << p.t << ',' << p.delta << ',' << p.r_squared << ','
            << p.stderr_delta << '\n';
      }

      std::vector<hl::TransitionEvent> events;
      try {
        events = hl::detect_transitions(ls, window, threshold);
      } catch (const hl::DataError& e) {
        // trace shorter than the detection window: keep the local CSV,
        // report no transitions
        std::cerr << "hurstlab: transition detection skipped: " << e.what()
                  << '\n';
      }
      json ev_json = json::array();
      for (const auto& e : events) {
        ev_json.push_back({{"t", e.t},
                           {"delta_before", e.delta_before},
                           {"delta_after", e.delta_after},
                           {"magnitude", e.magnitude}});
      }
      json out{{"config", cfg}, {"transitions", ev_json}};
      open_out(opts.output + ".transitions.json") << out.dump(2) << '\n';
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (calib->parsed()) {
      const auto est = hl::estimator_from_name(opts.estimator);
      const auto fbm_method = hl::fbm_method_from_name(method);
      json cfg{{"hurst", cal_hurst},
               {"replicas", replicas},
               {"delta_h", delta_h},
               {"master_seed", seed},
               {"estimator", opts.estimator},
               {"bin_fraction", opts.bin_fraction},
               {"method", method}};
      json out;
      if (cal_lengths.size() == 1) {
        const auto res = hl::calibrate(cal_hurst, cal_lengths[0], replicas,
                                       delta_h, seed, est, opts.bin_fraction,
                                       fbm_method);
        cfg["length"] = cal_lengths[0];
        out = json{{"config", cfg},
                   {"hurst", res.hurst},
                   {"length", res.series_length},
                   {"replicas", res.replicas},
                   {"delta_h", res.delta_h},
                   {"mean", res.mean},
                   {"std", res.std},
                   {"p_conf", res.p_conf},
                   {"master_seed", res.master_seed},
                   {"estimator", hl::estimator_name(res.estimator)},
                   {"bin_fraction", res.bin_fraction},
                   {"skipped", res.skipped}};
        if (!res.skipped.empty()) {
          std::cerr << "hurstlab: " << res.skipped.size()
                    << " degenerate replica(s) skipped\n";
        }
        if (!estimates_dump.empty()) {
          auto csv = open_out(estimates_dump);
          csv.precision(12);
          csv << "replica,delta\n";
          for (std::size_t i = 0; i < res.estimates.size(); ++i)
            csv << i << ',' << res.estimates[i] << '\n';
        }
      } else {
        std::vector<hl::Index> lens(cal_lengths.begin(), cal_lengths.end());
        const auto curve = hl::certainty_curve(cal_hurst, lens, replicas,
                                               delta_h, seed, est,
                                               opts.bin_fraction);
        cfg["lengths"] = cal_lengths;
        json pts = json::array();
        for (const auto& [n, p] : curve) pts.push_back({{"length", n}, {"p_conf", p}});
        out = json{{"config", cfg}, {"certainty_curve", pts}};
      }
      if (opts.output.empty()) {
        std::cout << out.dump(2) << '\n';
      } else {
        open_out(opts.output) << out.dump(2) << '\n';
        std::cout << out.dump(2) << '\n';
      }
      return 0;
    }

    if (compare->parsed()) {
      const auto series = load_input(opts);
      const auto grid = hl::default_s_grid(series.size());
      if (grid.size() < 2) throw hl::DataError("series too short for an entropy curve");
      json cfg = input_config(opts);
      cfg.erase("estimator");
      cfg["series_length"] = series.size();

      const hl::Estimator all[] = {hl::Estimator::naive, hl::Estimator::corrected,
                                   hl::Estimator::balanced};
      std::vector<hl::EntropyCurve> curves;
      json fits;
      for (const auto est : all) {
        curves.push_back(hl::entropy_curve(series, est, opts.bin_fraction, grid));
        const auto fit = hl::fit_scaling(curves.back(), hl::kDefaultFitSMin,
                                         hl::default_fit_s_max(series.size()));
        fits[hl::estimator_name(est)] = fit_to_json(fit);
      }

      auto csv = open_out(opts.output + ".compare.csv");
      csv.precision(12);
      write_config_header(csv, cfg);
      csv << "s,ln_s,entropy_naive,entropy_corrected,entropy_balanced,"
             "total_trajectories,bin_count\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& p = curves[0].points[i];
        csv << p.s << ',' << std::log(static_cast<double>(p.s)) << ','
            << curves[0].points[i].entropy << ',' << curves[1].points[i].entropy
            << ',' << curves[2].points[i].entropy << ',' << p.total << ','
            << p.bin_count << '\n';
      }
      json out{{"config", cfg}, {"fits", fits}};
      open_out(opts.output + ".fits.json") << out.dump(2) << '\n';
      std::cout << out.dump(2) << '\n';
      return 0;
    }
  } catch (const hl::ParseError& e) {
    std::cerr << "hurstlab: " << e.what() << '\n';
    return kExitData;
  } catch (const hl::DataError& e) {
    std::cerr << "hurstlab: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hurstlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "hurstlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hurstlab: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
