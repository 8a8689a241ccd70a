#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/chain.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/series.hpp"

namespace dpcp {

// ---------------------------------------------------------------------------
// Simulation schemes
// ---------------------------------------------------------------------------

enum class Scheme { One, Two, Radon };

Scheme parse_scheme(const std::string& text);  // "1", "2", "radon"; throws ConfigError
std::string scheme_name(Scheme s);

struct SchemeSpec {
  Scheme id = Scheme::One;
  EmissionKind kind = EmissionKind::NormalMeanVar;
  std::vector<std::size_t> change_points;  // ξ_1..ξ_K, ξ_K = T
  std::vector<RegimeParams> params;

  std::size_t length() const { return change_points.empty() ? 0 : change_points.back(); }
  void validate() const;  // throws ConfigError
};

/// Two 1500-point normal schemes with seven regimes, and an eight-regime
/// linear-trend surrogate for a standardized radon series.
SchemeSpec scheme_spec(Scheme s);

/// Draws y_t from the regime of t; truth labels and parameters are attached.
TimeSeries simulate(const SchemeSpec& spec, std::uint64_t seed);

/// Family used to fit a scheme (default hyperparameters).
EmissionFamily scheme_family(Scheme s);

// ---------------------------------------------------------------------------
// CSV input and output
// ---------------------------------------------------------------------------

struct CsvOptions {
  /// Column name or 1-based index. Defaults: a column named "value", else the
  /// only column, else the second one.
  std::optional<std::string> value_column;
  /// Defaults: a column named "time" or "year", else the first column when
  /// the value column is not the first.
  std::optional<std::string> time_column;
  bool standardize = false;  // subtract the mean, divide by the sample sd
};

/// Comma-separated, optional header row. A column named "regime" is read as
/// the true segmentation. Errors name the offending line.
TimeSeries parse_csv(std::istream& in, const CsvOptions& opts = {}, const std::string& source = "<input>");
TimeSeries load_csv(const std::string& path, const CsvOptions& opts = {});

/// Writes time,value[,regime].
void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_series_csv(const std::string& path, const TimeSeries& series);

/// Subtract the sample mean, divide by the sample standard deviation (n-1).
void standardize(TimeSeries& series);

// ---------------------------------------------------------------------------
// Draw files
// ---------------------------------------------------------------------------

inline constexpr int kDrawFormatVersion = 1;

struct DrawFileHeader {
  std::string model;   // dp, chib, ko
  std::string family;  // normal, poisson, lintrend
  std::size_t length = 0;
  std::vector<double> time_labels;
  std::string meta_json = "{}";  // free-form run settings
};

struct DrawFile {
  DrawFileHeader header;
  std::vector<PosteriorDraw> draws;
};

/// Line 1 is a JSON header with a format tag and version. Each further line
/// is one draw: iteration, K, beta, run-length encoded s, per-regime
/// parameter values, log posterior (tab separated). A closing "#end N"
/// line guards against truncation.
void write_draws(std::ostream& out, const DrawFile& file);
void write_draws(const std::string& path, const DrawFile& file);
/// Throws FormatError on a bad header, version mismatch, malformed or
/// missing lines.
DrawFile read_draws(std::istream& in, const std::string& source = "<input>");
DrawFile read_draws(const std::string& path);

}  // namespace dpcp
